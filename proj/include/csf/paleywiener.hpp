#ifndef CSF_PALEYWIENER_HPP_
#define CSF_PALEYWIENER_HPP_

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "csf/distributions.hpp"
#include "csf/geometry.hpp"
#include "csf/transform.hpp"

// Holomorphic extension of transforms, growth certificates, reconstruction
// from lattice data, the singular-support test and the solvability check.
//
// Spectral-plane convention: lattice weights sit on the real axis, so the
// exponential type of an extended transform is read off along the imaginary
// direction, |Phi(lambda)| <~ C (1+|lambda|)^order exp(r |Im lambda|), and
// polynomial order is fitted on the real axis where the exponential factor
// is 1.

namespace csf {

enum class PWKind { Smooth, Distribution };

struct GrowthProfile {
  PWKind kind = PWKind::Distribution;
  double order = 0;       // decay order k (Smooth) or growth order N
  double constant = 0;    // fitted C
  double type_radius = 0; // fitted exponential type r
  double residual = 0;    // rms residual of the tail fit
  std::string grid_spec;
};

std::string to_text(const GrowthProfile& g);
GrowthProfile parse_growth_profile(const std::string& text);

struct HoloTransform {
  enum class Provenance { Function, Distribution, Synthetic };

  std::function<std::complex<double>(const SpectralPoint&)> eval;
  Provenance provenance = Provenance::Synthetic;
  bool weyl_symmetric = true;
};

// Phi(lambda) = integral f * psi_lambda^vee by quadrature restricted to the
// support of f (which must stay below the validity radius R).
HoloTransform extend_function(const SpaceDescriptor& space,
                              const RadialProfile& f, int nodes_per_factor = 256);

// F(phi * psi_lambda^vee) with the h_delta cutoff phi of margin epsilon;
// independent of the margin, and equal to the closed-form kernel values at
// the atoms.
std::complex<double> extend_distribution(const SpaceDescriptor& space,
                                         const InvariantDistribution& F,
                                         const SpectralPoint& lambda,
                                         double margin);
HoloTransform extend_distribution_transform(const SpaceDescriptor& space,
                                            const InvariantDistribution& F,
                                            double margin);

// Radial cutoff h_delta(|t| - r): 1 on |t| <= r + delta/3, 0 from
// r + 2 delta/3, smooth in between, |d^j/dt^j| <= C_j delta^{-j}.
RadialProfile cutoff(const SpaceDescriptor& space, double r, double delta);

// Fits the exponential type along imaginary rays i sigma xi (unit real
// directions xi: coordinate axes and the diagonal) and the polynomial
// order/constant on the real axis.  The tail model per ray is
// log|Phi| ~ r sigma - gamma sqrt(sigma) + beta log(1+sigma) + c.
GrowthProfile estimate_type(const SpaceDescriptor& space,
                            const HoloTransform& Phi, PWKind kind,
                            double sigma_max = 40, int samples = 48,
                            int nodes = 0);

// Checks the certificate |Phi| <= slack * C (1+|lambda|)^order e^{r |Im|}
// over a deterministic mixed grid; returns the largest violation ratio.
double certificate_violation(const SpaceDescriptor& space,
                             const HoloTransform& Phi, const GrowthProfile& g,
                             double slack = 1.05);

// Truncated series F(f) = sum d(mu) f~(mu*) Phi(mu).
struct Reconstruction {
  CoefficientTable lattice;  // Phi sampled on the lattice
  double max_norm = 0;
  int nodes_per_factor = 0;
};

Reconstruction reconstruct_distribution(const SpaceDescriptor& space,
                                        const HoloTransform& Phi,
                                        double max_norm,
                                        const std::optional<GrowthProfile>&
                                            certificate = std::nullopt);

// Pairing of the reconstruction against a smooth probe.
std::complex<double> reconstruction_pair(const SpaceDescriptor& space,
                                         const Reconstruction& rec,
                                         const RadialProfile& f);

struct SingsuppRow {
  int m = 0;
  std::vector<double> constants;  // fitted C_m per nested grid bound
  double slope = 0;               // log C_m vs log bound
  bool pass = false;
};

struct SingsuppReport {
  std::vector<SingsuppRow> rows;
  bool pass = false;       // all rows pass
  double slope_threshold = 0;
};

// Theorem-style test: for each m, fit C_m = sup |Phi| / ((1+|l|)^N e^{s|Im l|})
// over the region |Im lambda| <= m log(1+|lambda|), |lambda| <= bound, on
// nested bounds; verdict fails when log C_m grows with the bound.
SingsuppReport singsupp_test(const SpaceDescriptor& space,
                             const HoloTransform& Phi, double s,
                             const std::vector<int>& m_list, double order_N,
                             const std::vector<double>& bounds = {20, 40, 80},
                             double slope_threshold = 0.35);

struct SolveOutcome {
  bool solvable = false;
  HoloTransform quotient;               // Phi_T, patched at removable zeros
  std::vector<Weight> lattice_zeros;    // symbol zeros on the lattice
  std::vector<Weight> blocking;         // lattice zeros with |Phi_F| >= tol
  double worst_blocking_value = 0;
  std::vector<std::complex<double>> factor_zeros;  // rank-one spectral zeros
};

// D = P(Laplacian) via its symbol multiplier P(-omega(lambda)); solvable iff
// Phi_F vanishes at every lattice-relevant zero of the symbol and the
// quotient continues across them (probed on small circles).
SolveOutcome solve(const SpaceDescriptor& space,
                   const std::vector<double>& poly_coeffs,
                   const HoloTransform& Phi_F, double max_norm = 30,
                   double zero_tol = 1e-8);

// Symbol multiplier P(-omega(lambda)).
std::complex<double> laplacian_symbol(const SpaceDescriptor& space,
                                      const std::vector<double>& poly_coeffs,
                                      const SpectralPoint& lambda);

}  // namespace csf

#endif  // CSF_PALEYWIENER_HPP_
