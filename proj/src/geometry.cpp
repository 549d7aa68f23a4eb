#include "csf/geometry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

namespace csf {

namespace {

constexpr double kPi = std::numbers::pi;

Factor make_sphere(int n) {
  Factor f;
  f.kind = FactorKind::Sphere;
  f.n = n;
  f.mult_alpha = n - 1;
  f.mult_2alpha = 0;
  f.sublattice = 1;
  // raw pair ((m_a - 1)/2, -1/2) shifted to the symmetric pair
  f.jacobi_a = (n - 2) / 2.0;
  f.jacobi_b = (n - 2) / 2.0;
  f.rho = (f.jacobi_a + f.jacobi_b + 1) / 2.0;
  f.diameter = kPi;
  f.omega_radius = kPi / 2;
  return f;
}

Factor make_real_projective(int n) {
  Factor f = make_sphere(n);
  f.kind = FactorKind::RealProjective;
  f.sublattice = 2;
  f.diameter = kPi / 2;
  return f;
}

Factor make_complex_projective(int n) {
  Factor f;
  f.kind = FactorKind::ComplexProjective;
  f.n = n;
  f.mult_alpha = 2 * (n - 1);
  f.mult_2alpha = 1;
  f.sublattice = 1;
  f.jacobi_a = (f.mult_alpha + f.mult_2alpha - 1) / 2.0;
  f.jacobi_b = (f.mult_2alpha - 1) / 2.0;
  f.rho = (f.jacobi_a + f.jacobi_b + 1) / 2.0;
  f.diameter = kPi;
  f.omega_radius = kPi / 2;
  return f;
}

Factor make_circle() {
  Factor f;
  f.kind = FactorKind::Circle;
  f.n = 1;
  f.sublattice = 1;
  f.rho = 0;
  f.diameter = kPi;  // half period
  f.omega_radius = std::numeric_limits<double>::infinity();
  return f;
}

}  // namespace

double SpaceDescriptor::validity_radius() const {
  double r = std::numeric_limits<double>::infinity();
  for (const auto& f : factors)
    r = std::min(r, f.rooted() ? kPi / 2 : kPi);
  return r;
}

SpaceDescriptor parse_space(std::string_view spec) {
  SpaceDescriptor sd;
  sd.name = std::string(spec);
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t next = spec.find('x', pos);
    std::string_view tok = spec.substr(pos, next == std::string_view::npos
                                                ? std::string_view::npos
                                                : next - pos);
    if (tok.empty())
      throw std::invalid_argument("empty factor token in space spec '" +
                                  std::string(spec) + "'");
    auto parse_n = [&](std::string_view digits) {
      if (digits.empty() ||
          !std::all_of(digits.begin(), digits.end(),
                       [](unsigned char c) { return std::isdigit(c); }))
        throw std::invalid_argument("bad factor token '" + std::string(tok) + "'");
      return std::stoi(std::string(digits));
    };
    if (tok == "T1" || tok == "T") {
      sd.factors.push_back(make_circle());
    } else if (tok.starts_with("RP")) {
      int n = parse_n(tok.substr(2));
      if (n < 2) throw std::invalid_argument("RP requires n >= 2");
      sd.factors.push_back(make_real_projective(n));
    } else if (tok.starts_with("CP")) {
      int n = parse_n(tok.substr(2));
      if (n < 2) throw std::invalid_argument("CP requires n >= 2");
      sd.factors.push_back(make_complex_projective(n));
    } else if (tok.starts_with("S")) {
      int n = parse_n(tok.substr(1));
      if (n < 2) throw std::invalid_argument("S requires n >= 2");
      sd.factors.push_back(make_sphere(n));
    } else {
      throw std::invalid_argument("unknown factor token '" + std::string(tok) + "'");
    }
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  if (sd.factors.empty())
    throw std::invalid_argument("space spec has no factors");
  return sd;
}

double Weight::norm() const {
  double s = 0;
  for (int c : coords) s += double(c) * c;
  return std::sqrt(s);
}

bool weight_less(const Weight& a, const Weight& b) {
  double na = a.norm(), nb = b.norm();
  if (std::abs(na - nb) > 1e-12) return na < nb;
  return a.coords < b.coords;
}

double SpectralPoint::norm() const {
  double s = 0;
  for (const auto& c : coords) s += std::norm(c);
  return std::sqrt(s);
}

SpectralPoint SpectralPoint::from(const Weight& mu) {
  SpectralPoint p;
  p.coords.reserve(mu.coords.size());
  for (int c : mu.coords) p.coords.emplace_back(double(c), 0.0);
  return p;
}

bool in_lattice(const SpaceDescriptor& space, const Weight& mu) {
  if (mu.coords.size() != space.rank()) return false;
  for (std::size_t j = 0; j < space.rank(); ++j) {
    const Factor& f = space.factors[j];
    int c = mu.coords[j];
    if (f.rooted() && (c < 0 || c % f.sublattice != 0)) return false;
  }
  return true;
}

std::vector<Weight> lattice_points(const SpaceDescriptor& space,
                                   double max_norm) {
  if (max_norm < 0) throw std::invalid_argument("max_norm must be >= 0");
  std::vector<Weight> out;
  Weight mu;
  mu.coords.assign(space.rank(), 0);
  // odometer over per-factor coordinate ranges
  std::vector<std::vector<int>> ranges(space.rank());
  for (std::size_t j = 0; j < space.rank(); ++j) {
    const Factor& f = space.factors[j];
    int cap = int(std::floor(max_norm + 1e-12));
    if (f.rooted()) {
      for (int k = 0; k <= cap; k += f.sublattice) ranges[j].push_back(k);
    } else {
      for (int k = -cap; k <= cap; ++k) ranges[j].push_back(k);
    }
  }
  std::vector<std::size_t> idx(space.rank(), 0);
  while (true) {
    for (std::size_t j = 0; j < space.rank(); ++j)
      mu.coords[j] = ranges[j][idx[j]];
    if (mu.norm() <= max_norm + 1e-12) out.push_back(mu);
    std::size_t j = 0;
    for (; j < space.rank(); ++j) {
      if (++idx[j] < ranges[j].size()) break;
      idx[j] = 0;
    }
    if (j == space.rank()) break;
  }
  std::sort(out.begin(), out.end(), weight_less);
  return out;
}

std::vector<SpectralPoint> weyl_images(const SpaceDescriptor& space,
                                       const SpectralPoint& lambda) {
  if (lambda.coords.size() != space.rank())
    throw std::invalid_argument("spectral point rank mismatch");
  std::vector<SpectralPoint> orbit{lambda};
  for (std::size_t j = 0; j < space.rank(); ++j) {
    const Factor& f = space.factors[j];
    std::size_t count = orbit.size();
    for (std::size_t i = 0; i < count; ++i) {
      SpectralPoint img = orbit[i];
      img.coords[j] = -img.coords[j] - 2.0 * f.rho;
      bool fresh = true;
      for (const auto& o : orbit)
        if (std::abs(o.coords[j] - img.coords[j]) < 1e-14) {
          bool same = true;
          for (std::size_t k = 0; k < space.rank(); ++k)
            if (std::abs(o.coords[k] - img.coords[k]) > 1e-14) same = false;
          if (same) { fresh = false; break; }
        }
      if (fresh) orbit.push_back(img);
    }
  }
  return orbit;
}

double dimension(const SpaceDescriptor& space, const Weight& mu) {
  if (!in_lattice(space, mu))
    throw std::invalid_argument("weight not in the spherical semilattice");
  double d = 1;
  for (std::size_t j = 0; j < space.rank(); ++j) {
    const Factor& f = space.factors[j];
    if (!f.rooted()) continue;  // characters are one-dimensional
    double A = f.jacobi_a, B = f.jacobi_b;
    int k = mu.coords[j];
    // 1 / || psi_k ||^2 for the normalized measure, via Jacobi norms
    double logd = std::log(2 * k + A + B + 1) + std::lgamma(k + A + 1) +
                  std::lgamma(k + A + B + 1) + std::lgamma(B + 1) -
                  std::lgamma(A + 1) - std::lgamma(A + B + 2) -
                  std::lgamma(k + B + 1) - std::lgamma(k + 1.0);
    d *= std::exp(logd);
  }
  // the product is an integer; round away quadrature-free float fuzz
  return std::round(d);
}

std::complex<double> eigenvalue(const SpaceDescriptor& space,
                                const SpectralPoint& lambda) {
  if (lambda.coords.size() != space.rank())
    throw std::invalid_argument("spectral point rank mismatch");
  std::complex<double> w = 0;
  for (std::size_t j = 0; j < space.rank(); ++j) {
    const auto& l = lambda.coords[j];
    w += l * (l + 2.0 * space.factors[j].rho);
  }
  return w;
}

double eigenvalue(const SpaceDescriptor& space, const Weight& mu) {
  return eigenvalue(space, SpectralPoint::from(mu)).real();
}

Weight contragredient(const SpaceDescriptor& space, const Weight& mu) {
  if (!in_lattice(space, mu))
    throw std::invalid_argument("weight not in the spherical semilattice");
  Weight out = mu;
  for (std::size_t j = 0; j < space.rank(); ++j)
    if (!space.factors[j].rooted()) out.coords[j] = -out.coords[j];
  return out;
}

double radial_distance(const Factor& f, double t) {
  switch (f.kind) {
    case FactorKind::RealProjective: {
      double s = std::abs(t);
      return std::min(s, kPi - s);
    }
    case FactorKind::Circle: {
      double s = std::fmod(std::abs(t), 2 * kPi);
      return std::min(s, 2 * kPi - s);
    }
    default:
      return std::abs(t);
  }
}

std::vector<double> radial_distances(const SpaceDescriptor& space,
                                     const std::vector<double>& t) {
  if (t.size() != space.rank())
    throw std::invalid_argument("slice point rank mismatch");
  std::vector<double> d(t.size());
  for (std::size_t j = 0; j < t.size(); ++j)
    d[j] = radial_distance(space.factors[j], t[j]);
  return d;
}

double radial_norm(const SpaceDescriptor& space, const std::vector<double>& t) {
  double s = 0;
  for (std::size_t j = 0; j < t.size(); ++j) {
    double d = radial_distance(space.factors[j], t[j]);
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace csf
