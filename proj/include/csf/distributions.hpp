#ifndef CSF_DISTRIBUTIONS_HPP_
#define CSF_DISTRIBUTIONS_HPP_

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "csf/transform.hpp"

// K-invariant distributions with small support: finite sums of radial atoms
// (derivatives of orbit averages of point evaluations) plus an optional
// smooth density.
//
// An atom (s, j, c) acts on a profile f as c * (d/ds)^j of the slice value
// of f at radial position s.  On circle factors the atom is the symmetric
// pair (delta_s + delta_{-s})/2, keeping transforms reflection-even.
// Derivative orders j > 0 are supported on rank-one spaces.

namespace csf {

class divergence_alarm : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Atom {
  std::vector<double> radius;  // one slice coordinate per factor
  int order = 0;               // radial derivative order j
  std::complex<double> coeff = 1.0;
};

struct InvariantDistribution {
  std::vector<Atom> atoms;
  std::optional<RadialProfile> density;

  double support_radius(const SpaceDescriptor& space) const;
};

// Convenience constructors.
InvariantDistribution delta_at_origin(const SpaceDescriptor& space);
InvariantDistribution orbit_atom(const SpaceDescriptor& space, double s,
                                 int order = 0,
                                 std::complex<double> coeff = 1.0);
InvariantDistribution density_distribution(RadialProfile density);

// Enforces the small-support invariant (support < validity radius R).
void validate(const SpaceDescriptor& space, const InvariantDistribution& F);

// F(f): atom derivatives of the slice values plus the density integral.
std::complex<double> pair(const SpaceDescriptor& space,
                          const InvariantDistribution& F,
                          const RadialProfile& f, const Quadrature& quad);
std::complex<double> pair(const SpaceDescriptor& space,
                          const InvariantDistribution& F,
                          const RadialProfile& f);

// F~(mu) = F(psi_{mu*}); atoms are evaluated through exact cosine-series
// derivatives of the kernel, densities through the forward transform
// (nodes_per_factor = 0 applies the adequacy rule; narrow densities may
// need denser rules than the rule's floor).
std::complex<double> dist_transform(const SpaceDescriptor& space,
                                    const InvariantDistribution& F,
                                    const Weight& mu,
                                    int nodes_per_factor = 0);
CoefficientTable dist_transform_table(const SpaceDescriptor& space,
                                      const InvariantDistribution& F,
                                      double max_norm,
                                      int nodes_per_factor = 0);

// Truncated pairing series sum d(mu) f~(mu*) F~(mu); throws divergence_alarm
// when the shell partial sums fail a Cauchy test.
std::complex<double> pairing_series(const SpaceDescriptor& space,
                                    const CoefficientTable& F_table,
                                    const CoefficientTable& f_table);

struct SeminormCertificate {
  int order = 0;       // smallest workable m
  double constant = 0; // fitted C
  bool ok = false;     // false if no m <= 8 works on the probes
};

// Smallest m <= 8 with |F(f)| <= C max_{j<=m} ||Lap^j f||_inf stable across
// the probe family, plus the fitted C.  Diagnostic only.
SeminormCertificate seminorm_certificate(const SpaceDescriptor& space,
                                         const InvariantDistribution& F,
                                         const std::vector<RadialProfile>& probes);

// Distribution spec files: "atom s... j re im" records and an optional
// "density bump r" / "density annulus a b" record.
InvariantDistribution parse_distribution(const SpaceDescriptor& space,
                                         const std::string& text);
std::string serialize(const SpaceDescriptor& space,
                      const InvariantDistribution& F);

}  // namespace csf

#endif  // CSF_DISTRIBUTIONS_HPP_
