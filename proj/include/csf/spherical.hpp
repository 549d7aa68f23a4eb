#ifndef CSF_SPHERICAL_HPP_
#define CSF_SPHERICAL_HPP_

#include <complex>
#include <vector>

#include "csf/geometry.hpp"

// Spherical functions psi_lambda for arbitrary complex spectral parameters.
//
// Per rooted factor, psi_lambda(t) solves the radial eigenvalue problem for
// the density sin^{2A+1}(t/2) cos^{2B+1}(t/2) with psi(0) = 1:
//   psi_lambda(t) = 2F1(-lambda, lambda + 2 rho; A + 1; sin^2(t/2)).
// On the weight lattice this is the normalized Jacobi polynomial
// P^{(A,B)}_mu(cos t) / P^{(A,B)}_mu(1), evaluated by recurrence on all of
// [0, diameter]; off the lattice the hypergeometric series applies and needs
// |Re t| < omega_radius.  Circle factors contribute cos(lambda * t).

namespace csf {

struct RadialPoint {
  std::vector<std::complex<double>> t;

  static RadialPoint real(std::vector<double> coords);
};

// Per-factor evaluator (the product formula's single factor).
std::complex<double> factor_spherical(const Factor& f, std::complex<double> lam,
                                      std::complex<double> t);

// psi_lambda(x) = prod_j factor values; normalization psi(o) = 1.
std::complex<double> spherical_at(const SpaceDescriptor& space,
                                  const SpectralPoint& lambda,
                                  const RadialPoint& x);

// Kernel used by the transforms: identical to psi_mu on rooted factors,
// the character e^{i mu theta} on circle factors.
std::complex<double> lattice_kernel(const SpaceDescriptor& space,
                                    const Weight& mu,
                                    const std::vector<double>& t);

// Envelope C * exp(sum_j |Im nu_j| X_j + |Re nu_j| |Y_j|), nu = lambda + rho,
// with a constant calibrated once per space; |spherical_at| <= growth_bound
// on X in the closed Omega domain.
double growth_bound(const SpaceDescriptor& space, const SpectralPoint& lambda,
                    const RadialPoint& x);

// Multi-index radial derivative (d/dt_j)^{orders_j} psi_lambda(x) at a real
// interior point; exact cosine-series differentiation on the lattice,
// Cauchy-ring differentiation otherwise.  Orders up to 8 per factor.
std::complex<double> radial_derivative(const SpaceDescriptor& space,
                                       const SpectralPoint& lambda,
                                       const RadialPoint& x,
                                       const std::vector<int>& orders);

// Logarithmic derivative of the radial density of a rooted factor
// (the first-order coefficient of the radial Laplacian).
double radial_log_density_derivative(const Factor& f, double t);

}  // namespace csf

#endif  // CSF_SPHERICAL_HPP_
