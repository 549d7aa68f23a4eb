#include "csf/spherical.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "csf/specialfn.hpp"

namespace csf {

namespace {

constexpr double kPi = std::numbers::pi;

// Weyl-normalize a rooted-factor spectral coordinate and test whether it is
// a nonnegative integer (any integer, not only sublattice members: odd
// sphere weights are legitimate evaluation points on covering spaces).
bool lattice_value(const Factor& f, std::complex<double> lam, int* k) {
  std::complex<double> l = lam;
  if (l.real() < -f.rho) l = -l - 2.0 * f.rho;
  double re = l.real();
  long r = std::lround(re);
  if (r < 0 || std::abs(re - double(r)) > 1e-12 || std::abs(l.imag()) > 1e-12)
    return false;
  *k = int(r);
  return true;
}

std::complex<double> rooted_lattice_value(const Factor& f, int k,
                                          std::complex<double> t) {
  std::complex<double> u = std::cos(t);
  return jacobi_poly(k, f.jacobi_a, f.jacobi_b, u) /
         jacobi_poly_at_one(k, f.jacobi_a, f.jacobi_b);
}

std::complex<double> rooted_general_value(const Factor& f,
                                          std::complex<double> lam,
                                          std::complex<double> t) {
  if (std::abs(t.real()) >= f.omega_radius)
    throw domain_error("spherical evaluation outside |Re t| < pi/2");
  return jacobi_function(f.jacobi_a, f.jacobi_b, lam, std::cos(t));
}

}  // namespace

RadialPoint RadialPoint::real(std::vector<double> coords) {
  RadialPoint p;
  p.t.reserve(coords.size());
  for (double c : coords) p.t.emplace_back(c, 0.0);
  return p;
}

std::complex<double> factor_spherical(const Factor& f, std::complex<double> lam,
                                      std::complex<double> t) {
  if (!f.rooted()) return std::cos(lam * t);
  if (std::abs(t.imag()) < 1e-300) {
    double tr = t.real();
    if (tr < -1e-12 || tr > kPi + 1e-12)
      throw domain_error("real radial coordinate outside [0, pi]");
  }
  int k;
  if (lattice_value(f, lam, &k)) return rooted_lattice_value(f, k, t);
  return rooted_general_value(f, lam, t);
}

std::complex<double> spherical_at(const SpaceDescriptor& space,
                                  const SpectralPoint& lambda,
                                  const RadialPoint& x) {
  if (lambda.coords.size() != space.rank() || x.t.size() != space.rank())
    throw std::invalid_argument("rank mismatch in spherical_at");
  std::complex<double> v = 1;
  for (std::size_t j = 0; j < space.rank(); ++j)
    v *= factor_spherical(space.factors[j], lambda.coords[j], x.t[j]);
  return v;
}

std::complex<double> lattice_kernel(const SpaceDescriptor& space,
                                    const Weight& mu,
                                    const std::vector<double>& t) {
  std::complex<double> v = 1;
  for (std::size_t j = 0; j < space.rank(); ++j) {
    const Factor& f = space.factors[j];
    if (f.rooted()) {
      v *= rooted_lattice_value(f, mu.coords[j], t[j]);
    } else {
      v *= std::polar(1.0, mu.coords[j] * t[j]);
    }
  }
  return v;
}

namespace {

double envelope_exponent(const SpaceDescriptor& space,
                         const SpectralPoint& lambda, const RadialPoint& x) {
  double e = 0;
  for (std::size_t j = 0; j < space.rank(); ++j) {
    const Factor& f = space.factors[j];
    std::complex<double> nu = lambda.coords[j] + f.rho;
    double X = std::abs(x.t[j].real());
    double Y = std::abs(x.t[j].imag());
    e += std::abs(nu.imag()) * X + std::abs(nu.real()) * Y;
  }
  return e;
}

double calibrate_growth_constant(const SpaceDescriptor& space) {
  // deterministic reference grid: lattice weights, imaginary rays, and a
  // few complex radial offsets inside Omega
  double c = 1.0;
  std::vector<std::complex<double>> lams;
  for (int k = 0; k <= 6; ++k) lams.emplace_back(double(k), 0.0);
  for (double s : {1.0, 2.0, 5.0, 10.0}) lams.emplace_back(0.0, s);
  lams.emplace_back(2.0, 3.0);
  std::vector<std::complex<double>> ts;
  for (double tr : {0.15, 0.45, 0.75, 1.05, 1.35})
    for (double ti : {0.0, 0.3, 0.6}) ts.emplace_back(tr, ti);
  for (const auto& l : lams) {
    for (const auto& t : ts) {
      SpectralPoint lam;
      RadialPoint x;
      for (std::size_t j = 0; j < space.rank(); ++j) {
        lam.coords.push_back(l);
        bool inside = space.factors[j].rooted()
                          ? std::abs(t.real()) < space.factors[j].omega_radius
                          : true;
        x.t.push_back(inside ? t : std::complex<double>(t.real() * 0.5, t.imag()));
      }
      try {
        double ratio = std::abs(spherical_at(space, lam, x)) /
                       std::exp(envelope_exponent(space, lam, x));
        c = std::max(c, ratio);
      } catch (const accuracy_error&) {
        // grid point outside the series' comfort zone; skip
      }
    }
  }
  return 1.05 * c;
}

double growth_constant(const SpaceDescriptor& space) {
  static std::mutex mu;
  static std::map<std::string, double> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(space.name);
  if (it != cache.end()) return it->second;
  double c = calibrate_growth_constant(space);
  cache.emplace(space.name, c);
  return c;
}

}  // namespace

double growth_bound(const SpaceDescriptor& space, const SpectralPoint& lambda,
                    const RadialPoint& x) {
  for (std::size_t j = 0; j < space.rank(); ++j) {
    const Factor& f = space.factors[j];
    if (f.rooted() && std::abs(x.t[j].real()) > f.omega_radius + 1e-12)
      throw domain_error("growth_bound: X outside the closed Omega domain");
  }
  return growth_constant(space) * std::exp(envelope_exponent(space, lambda, x));
}

std::complex<double> radial_derivative(const SpaceDescriptor& space,
                                       const SpectralPoint& lambda,
                                       const RadialPoint& x,
                                       const std::vector<int>& orders) {
  if (orders.size() != space.rank())
    throw std::invalid_argument("derivative order rank mismatch");
  std::complex<double> v = 1;
  for (std::size_t j = 0; j < space.rank(); ++j) {
    const Factor& f = space.factors[j];
    std::complex<double> lam = lambda.coords[j];
    std::complex<double> t = x.t[j];
    int ord = orders[j];
    if (ord < 0 || ord > 8)
      throw std::invalid_argument("derivative order must be in [0, 8]");
    if (std::abs(t.imag()) > 1e-12)
      throw domain_error("radial_derivative: real interior points only");
    if (ord == 0) {
      v *= factor_spherical(f, lam, t);
      continue;
    }
    if (!f.rooted()) {
      // (d/dt)^j cos(lam t) = lam^j cos(lam t + j pi/2)
      v *= std::pow(lam, ord) * std::cos(lam * t + double(ord) * kPi / 2.0);
      continue;
    }
    int k;
    if (lattice_value(f, lam, &k)) {
      double norm = jacobi_poly_at_one(k, f.jacobi_a, f.jacobi_b);
      auto coeffs = cosine_coefficients(k, [&](double u) {
        return jacobi_poly(k, f.jacobi_a, f.jacobi_b, u) / norm;
      });
      v *= cosine_series_derivative(coeffs, t.real(), ord);
    } else {
      double margin = f.omega_radius - std::abs(t.real());
      if (margin <= 1e-6)
        throw domain_error("radial_derivative: no analyticity margin");
      double radius = std::min(0.35, 0.8 * margin);
      v *= ring_derivative(
          [&](std::complex<double> z) { return rooted_general_value(f, lam, z); },
          t, ord, radius, 32);
    }
  }
  return v;
}

double radial_log_density_derivative(const Factor& f, double t) {
  if (!f.rooted()) return 0;
  double A = f.jacobi_a, B = f.jacobi_b;
  return (2 * A + 1) / 2.0 / std::tan(t / 2) -
         (2 * B + 1) / 2.0 * std::tan(t / 2);
}

}  // namespace csf
