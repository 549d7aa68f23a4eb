#ifndef CSF_GEOMETRY_HPP_
#define CSF_GEOMETRY_HPP_

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Root data, weight semilattice and Weyl action for the supported compact
// symmetric spaces: spheres S^n, real projective spaces RP^n, complex
// projective spaces CP^n (all rank one) and circle factors T^1, together
// with finite products of these.
//
// Conventions (fixed project-wide):
//  * Per factor the weight lattice is normalized to integer coordinates,
//    so the generator of the sphere/CP semilattice maps to 1 and the RP
//    sublattice is 2 Z+.  Circle factors carry the full signed character
//    lattice Z.
//  * The radial coordinate t runs over [0, pi] on spheres and CP^n,
//    [0, pi/2] on RP^n (coordinates still live on [0, pi]; distances fold),
//    and over one period on circle factors (slice half-period pi).
//  * In these units each rooted factor carries an "effective" Jacobi pair
//    (A, B): the radial density is sin^{2A+1}(t/2) cos^{2B+1}(t/2) and the
//    spherical functions are the normalized Jacobi polynomials
//    P^{(A,B)}_k(cos t) / P^{(A,B)}_k(1).  For factors without a double
//    root (m_2a = 0) the raw pair (a, -1/2) is folded through the standard
//    quadratic parameter shift to (a, a).
//  * rho per rooted factor is (A + B + 1) / 2; the Laplace eigenvalue of
//    psi_mu is -mu(mu + 2 rho) per factor, summed over factors.

namespace csf {

class domain_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class FactorKind { Sphere, RealProjective, ComplexProjective, Circle };

struct Factor {
  FactorKind kind = FactorKind::Circle;
  int n = 0;              // dimension parameter of the family, 0 for circles
  double mult_alpha = 0;  // restricted root multiplicities
  double mult_2alpha = 0;
  int sublattice = 1;  // p: lattice is p Z+ (rooted) or Z (circle)
  double jacobi_a = 0;
  double jacobi_b = 0;     // effective pair (A, B)
  double rho = 0;          // (A + B + 1) / 2 for rooted factors
  double diameter = 0;     // farthest radial distance
  double omega_radius = 0; // |Re t| bound for the complex domain

  bool rooted() const { return kind != FactorKind::Circle; }
};

struct SpaceDescriptor {
  std::string name;
  std::vector<Factor> factors;

  std::size_t rank() const { return factors.size(); }
  // Largest radius R with D_R(o) inside the domain of holomorphic
  // extension; support radii of profiles and distributions that get
  // extended must stay below it.
  double validity_radius() const;
};

// Parses a space spec string: factor tokens "S<n>", "RP<n>", "CP<n>" (n>=2)
// or "T1", joined by 'x', e.g. "S2", "RP3", "CP2", "S2xT1".
SpaceDescriptor parse_space(std::string_view spec);

// Point of the spherical weight semilattice, one integer per factor.
struct Weight {
  std::vector<int> coords;

  double norm() const;
  friend bool operator==(const Weight&, const Weight&) = default;
};

// Ordering: by |mu|, then lexicographic.  Suitable for deterministic tables.
bool weight_less(const Weight& a, const Weight& b);

struct WeightLess {
  bool operator()(const Weight& a, const Weight& b) const {
    return weight_less(a, b);
  }
};

// Complex spectral parameter, one coordinate per factor (lattice points sit
// on the real axis; exponential growth of transforms happens along the
// imaginary direction).
struct SpectralPoint {
  std::vector<std::complex<double>> coords;

  double norm() const;
  static SpectralPoint from(const Weight& mu);
};

// Membership test for the semilattice Lambda+(M).
bool in_lattice(const SpaceDescriptor& space, const Weight& mu);

// All mu in Lambda+(M) with |mu| <= max_norm, sorted by |mu| then
// lexicographically.  Closed under addition whenever the sum stays inside.
std::vector<Weight> lattice_points(const SpaceDescriptor& space, double max_norm);

// Orbit {w(lambda + rho) - rho : w in W}: per rooted factor the nontrivial
// image coordinate is -lambda_j - 2 rho_j, per circle factor -lambda_j.
std::vector<SpectralPoint> weyl_images(const SpaceDescriptor& space,
                                       const SpectralPoint& lambda);

// dim V_mu; factors multiply, circle factors contribute 1.
double dimension(const SpaceDescriptor& space, const Weight& mu);

// omega(lambda) = sum_j lambda_j (lambda_j + 2 rho_j).
std::complex<double> eigenvalue(const SpaceDescriptor& space,
                                const SpectralPoint& lambda);
double eigenvalue(const SpaceDescriptor& space, const Weight& mu);

// mu* = -w*(mu): identity on rooted coordinates, negation on circles.
Weight contragredient(const SpaceDescriptor& space, const Weight& mu);

// Radial distance of a slice coordinate to the base point (folds RP^n
// coordinates at pi/2 and wraps circle coordinates into [0, pi]).
double radial_distance(const Factor& f, double t);

// Per-factor distances and their Euclidean norm for a slice point.
std::vector<double> radial_distances(const SpaceDescriptor& space,
                                     const std::vector<double>& t);
double radial_norm(const SpaceDescriptor& space, const std::vector<double>& t);

}  // namespace csf

#endif  // CSF_GEOMETRY_HPP_
