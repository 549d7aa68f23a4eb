#ifndef CSF_TRANSFORM_HPP_
#define CSF_TRANSFORM_HPP_

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "csf/geometry.hpp"

// Forward spherical Fourier transform of K-invariant profiles by radial
// quadrature, Fourier-series synthesis, and decay diagnostics.

namespace csf {

class resolution_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A K-invariant function given on the radial slice.  The evaluator receives
// the slice coordinate vector (rooted factors in [0, pi], circle factors any
// real angle); radial profiles are functions of the distance vector and are
// built through make_radial below.
struct RadialProfile {
  std::function<std::complex<double>(const std::vector<double>&)> eval;
  double support_radius = 0;
  bool smooth = true;
  // Optional analytic multi-index radial derivative; FD fallback otherwise.
  std::function<std::complex<double>(const std::vector<double>&,
                                     const std::vector<int>&)>
      deriv;
  // Spec-file label ("bump r", "annulus a b") for named profiles.
  std::string label;
};

// Wraps a function of the radial distance norm |t| into a profile.
RadialProfile make_radial(const SpaceDescriptor& space,
                          std::function<double(double)> g,
                          double support_radius, bool smooth = true);

// Canonical compactly supported bump exp(1 - 1/(1 - (|t|/r)^2)) on |t| < r.
RadialProfile bump_profile(const SpaceDescriptor& space, double r);

// Smooth profile supported in the radial annulus a < |t| < b, peak 1.
RadialProfile annulus_profile(const SpaceDescriptor& space, double a, double b);

// psi_nu as an input function (the character on circle factors).
RadialProfile spherical_profile(const SpaceDescriptor& space, const Weight& nu);

RadialProfile constant_profile(const SpaceDescriptor& space,
                               std::complex<double> value);

// Tensor quadrature for the normalized invariant measure: Gauss-Jacobi in
// cos t per rooted factor, equispaced per circle factor.  Exact (1e-12) for
// polynomial integrands in cos t of degree <= 2N - 1.
struct Quadrature {
  std::vector<std::vector<double>> nodes;    // per factor, slice coordinates
  std::vector<std::vector<double>> weights;  // per factor, each sums to 1

  std::size_t rank() const { return nodes.size(); }
};

Quadrature quadrature(const SpaceDescriptor& space, int nodes_per_factor);

// Default node count adequate for transforms up to the given weight norm.
int adequate_nodes(double max_norm);

// Integral of a slice function against the normalized invariant measure.
std::complex<double> integrate(
    const Quadrature& quad,
    const std::function<std::complex<double>(const std::vector<double>&)>& fn);

struct CoefficientTable {
  std::map<Weight, std::complex<double>, WeightLess> values;
  double max_norm = 0;
};

// f~(mu) = integral of f * conj(psi_mu); errors out when the rule is below
// the adequacy requirement for mu.
std::complex<double> forward(const SpaceDescriptor& space,
                             const Quadrature& quad, const RadialProfile& f,
                             const Weight& mu);

// All coefficients up to max_norm (adequate quadrature built internally
// unless nodes_per_factor > 0 is supplied).
CoefficientTable forward_table(const SpaceDescriptor& space,
                               const RadialProfile& f, double max_norm,
                               int nodes_per_factor = 0);

// Gram matrix d(mu) * forward(psi_nu)(mu) over the lattice (identity by the
// orthogonality relations); row/column order is the lattice order.
std::vector<std::vector<std::complex<double>>> schur_matrix(
    const SpaceDescriptor& space, double max_norm, int nodes_per_factor = 0);

// Truncated Fourier series sum d(mu) c(mu) psi_mu(x).
std::complex<double> synthesize(const SpaceDescriptor& space,
                                const CoefficientTable& c,
                                const std::vector<double>& x);

struct DecayReport {
  int k_max = 0;
  std::vector<double> sups;  // sup (1+|mu|)^k |c(mu)|, k = 0..k_max
};

DecayReport decay_profile(const CoefficientTable& c, int k_max = 8);

// Line-oriented table format: "mu_coords... re im", deterministic order.
std::string serialize(const CoefficientTable& c);
CoefficientTable parse_table(const std::string& text, std::size_t rank);

}  // namespace csf

#endif  // CSF_TRANSFORM_HPP_
