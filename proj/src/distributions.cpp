#include "csf/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "csf/specialfn.hpp"
#include "csf/spherical.hpp"

namespace csf {

namespace {

double atom_norm(const Atom& a) {
  double s = 0;
  for (double r : a.radius) s += r * r;
  return std::sqrt(s);
}

// c * (d/ds)^j of the slice value at the atom.  On circle factors the atom
// is the symmetric pair, so the profile is averaged over reflections there.
std::complex<double> atom_pairing(const SpaceDescriptor& space, const Atom& a,
                                  const RadialProfile& f) {
  if (a.radius.size() != space.rank())
    throw std::invalid_argument("atom rank mismatch");
  std::vector<std::size_t> circles;
  for (std::size_t j = 0; j < space.rank(); ++j)
    if (!space.factors[j].rooted() && std::abs(a.radius[j]) > 1e-15)
      circles.push_back(j);

  auto symmetrized_eval = [&](const std::vector<double>& base) {
    std::complex<double> acc = 0;
    std::size_t combos = std::size_t(1) << circles.size();
    std::vector<double> p = base;
    for (std::size_t mask = 0; mask < combos; ++mask) {
      p = base;
      for (std::size_t b = 0; b < circles.size(); ++b)
        if (mask & (std::size_t(1) << b)) p[circles[b]] = -p[circles[b]];
      acc += f.eval(p);
    }
    return acc / double(combos);
  };

  if (a.order == 0) return a.coeff * symmetrized_eval(a.radius);

  if (space.rank() != 1)
    throw std::invalid_argument("derivative atoms require a rank-one space");
  if (!f.smooth)
    throw std::invalid_argument("derivative atom applied to a non-smooth profile");
  double s = a.radius[0];
  bool circle = !space.factors[0].rooted();
  std::vector<int> orders{a.order};
  if (f.deriv) {
    if (!circle || std::abs(s) < 1e-15) return a.coeff * f.deriv({s}, orders);
    double sign = (a.order % 2 == 0) ? 1.0 : -1.0;
    return a.coeff * 0.5 *
           (f.deriv({s}, orders) + sign * f.deriv({-s}, orders));
  }
  std::function<std::complex<double>(double)> slice =
      circle ? std::function<std::complex<double>(double)>(
                   [&f](double x) { return 0.5 * (f.eval({x}) + f.eval({-x})); })
             : std::function<std::complex<double>(double)>(
                   [&f](double x) { return f.eval({x}); });
  return a.coeff * fd_derivative(slice, s, a.order);
}

// Kernel psi_{mu*} evaluated (with radial derivatives) at an atom.
std::complex<double> atom_transform(const SpaceDescriptor& space, const Atom& a,
                                    const Weight& mu_star) {
  std::complex<double> v = a.coeff;
  for (std::size_t j = 0; j < space.rank(); ++j) {
    const Factor& f = space.factors[j];
    double s = a.radius[j];
    int ord = (j == 0) ? a.order : 0;
    if (!f.rooted()) {
      int k = mu_star.coords[j];
      if (ord == 0) {
        // symmetric atom pair averages the character to cos(k s)
        v *= std::cos(k * s);
      } else {
        v *= std::pow(double(k), ord) *
             std::cos(k * s + ord * std::numbers::pi / 2);
      }
      continue;
    }
    int k = mu_star.coords[j];
    if (ord == 0) {
      v *= jacobi_poly(k, f.jacobi_a, f.jacobi_b, std::cos(s)) /
           jacobi_poly_at_one(k, f.jacobi_a, f.jacobi_b);
    } else {
      double norm = jacobi_poly_at_one(k, f.jacobi_a, f.jacobi_b);
      auto coeffs = cosine_coefficients(k, [&](double u) {
        return jacobi_poly(k, f.jacobi_a, f.jacobi_b, u) / norm;
      });
      v *= cosine_series_derivative(coeffs, s, ord);
    }
  }
  return v;
}

}  // namespace

double InvariantDistribution::support_radius(const SpaceDescriptor& space) const {
  double r = 0;
  for (const auto& a : atoms) {
    if (a.radius.size() != space.rank())
      throw std::invalid_argument("atom rank mismatch");
    std::vector<double> d = radial_distances(space, a.radius);
    double s = 0;
    for (double x : d) s += x * x;
    r = std::max(r, std::sqrt(s));
  }
  if (density) r = std::max(r, density->support_radius);
  return r;
}

InvariantDistribution delta_at_origin(const SpaceDescriptor& space) {
  InvariantDistribution F;
  Atom a;
  a.radius.assign(space.rank(), 0.0);
  F.atoms.push_back(a);
  return F;
}

InvariantDistribution orbit_atom(const SpaceDescriptor& space, double s,
                                 int order, std::complex<double> coeff) {
  InvariantDistribution F;
  Atom a;
  a.radius.assign(space.rank(), 0.0);
  if (space.rank() == 1) {
    a.radius[0] = s;
  } else {
    // generic placement at |radius| = s along the diagonal direction
    double c = s / std::sqrt(double(space.rank()));
    for (auto& x : a.radius) x = c;
  }
  a.order = order;
  a.coeff = coeff;
  F.atoms.push_back(a);
  return F;
}

InvariantDistribution density_distribution(RadialProfile density) {
  InvariantDistribution F;
  F.density = std::move(density);
  return F;
}

void validate(const SpaceDescriptor& space, const InvariantDistribution& F) {
  double r = F.support_radius(space);
  if (r >= space.validity_radius())
    throw domain_error("distribution support reaches the validity radius");
  for (const auto& a : F.atoms)
    if (a.order > 0 && space.rank() != 1)
      throw std::invalid_argument("derivative atoms require a rank-one space");
}

std::complex<double> pair(const SpaceDescriptor& space,
                          const InvariantDistribution& F,
                          const RadialProfile& f, const Quadrature& quad) {
  std::complex<double> acc = 0;
  for (const auto& a : F.atoms) acc += atom_pairing(space, a, f);
  if (F.density) {
    const RadialProfile& g = *F.density;
    acc += integrate(quad, [&](const std::vector<double>& t) {
      return g.eval(t) * f.eval(t);
    });
  }
  return acc;
}

std::complex<double> pair(const SpaceDescriptor& space,
                          const InvariantDistribution& F,
                          const RadialProfile& f) {
  return pair(space, F, f, quadrature(space, 128));
}

std::complex<double> dist_transform(const SpaceDescriptor& space,
                                    const InvariantDistribution& F,
                                    const Weight& mu, int nodes_per_factor) {
  if (!in_lattice(space, mu))
    throw std::invalid_argument("dist_transform: weight not in lattice");
  Weight mu_star = contragredient(space, mu);
  std::complex<double> acc = 0;
  for (const auto& a : F.atoms) acc += atom_transform(space, a, mu_star);
  if (F.density) {
    int n = nodes_per_factor > 0 ? nodes_per_factor : adequate_nodes(mu.norm());
    acc += forward(space, quadrature(space, n), *F.density, mu);
  }
  return acc;
}

CoefficientTable dist_transform_table(const SpaceDescriptor& space,
                                      const InvariantDistribution& F,
                                      double max_norm, int nodes_per_factor) {
  CoefficientTable table;
  table.max_norm = max_norm;
  CoefficientTable density_part;
  if (F.density)
    density_part = forward_table(space, *F.density, max_norm, nodes_per_factor);
  for (const auto& mu : lattice_points(space, max_norm)) {
    Weight mu_star = contragredient(space, mu);
    std::complex<double> acc = 0;
    for (const auto& a : F.atoms) acc += atom_transform(space, a, mu_star);
    if (F.density) acc += density_part.values.at(mu);
    table.values[mu] = acc;
  }
  return table;
}

std::complex<double> pairing_series(const SpaceDescriptor& space,
                                    const CoefficientTable& F_table,
                                    const CoefficientTable& f_table) {
  // accumulate in |mu| order; the lattice order of the map is exactly that
  std::vector<std::complex<double>> shells;
  std::complex<double> acc = 0;
  for (const auto& [mu, Fmu] : F_table.values) {
    Weight mu_star = contragredient(space, mu);
    auto it = f_table.values.find(mu_star);
    if (it == f_table.values.end()) continue;
    std::complex<double> term = dimension(space, mu) * it->second * Fmu;
    acc += term;
    shells.push_back(acc);
  }
  if (shells.size() >= 16) {
    // Cauchy test: the last-quarter drift must be small against the scale
    std::size_t q = shells.size() / 4;
    double scale = 0;
    for (const auto& s : shells) scale = std::max(scale, std::abs(s));
    double drift = 0;
    for (std::size_t i = shells.size() - q; i < shells.size(); ++i)
      drift = std::max(drift, std::abs(shells[i] - shells[shells.size() - q - 1]));
    if (drift > 0.05 * (scale + 1e-30))
      throw divergence_alarm("pairing series fails the Cauchy test");
  }
  return acc;
}

SeminormCertificate seminorm_certificate(
    const SpaceDescriptor& space, const InvariantDistribution& F,
    const std::vector<RadialProfile>& probes) {
  // tau_j(f) = ||Lap^j f||_inf estimated through the transform side:
  // Lap^j f has coefficients (-omega)^j f~, synthesized sup over a grid.
  SeminormCertificate cert;
  const double max_norm = 24;
  std::vector<std::vector<double>> taus;  // per probe, j = 0..8
  std::vector<double> values;             // |F(probe)|
  Quadrature quad = quadrature(space, 128);
  std::vector<std::vector<double>> grid;
  for (int i = 0; i <= 24; ++i) {
    std::vector<double> x(space.rank());
    for (std::size_t j = 0; j < space.rank(); ++j)
      x[j] = space.factors[j].diameter * i / 24.0 * 0.999;
    grid.push_back(x);
  }
  for (const auto& f : probes) {
    values.push_back(std::abs(pair(space, F, f, quad)));
    CoefficientTable table = forward_table(space, f, max_norm);
    std::vector<double> tau(9, 0.0);
    for (const auto& x : grid) {
      for (int j = 0; j <= 8; ++j) {
        CoefficientTable powered = table;
        for (auto& [mu, v] : powered.values)
          v *= std::pow(-eigenvalue(space, mu), j);
        tau[j] = std::max(tau[j], std::abs(synthesize(space, powered, x)));
      }
    }
    taus.push_back(tau);
  }
  // smallest m whose worst ratio does not grow from the first half of the
  // probe family to the second half
  for (int m = 0; m <= 8; ++m) {
    std::vector<double> ratios;
    for (std::size_t i = 0; i < probes.size(); ++i) {
      double denom = 0;
      for (int j = 0; j <= m; ++j) denom = std::max(denom, taus[i][j]);
      ratios.push_back(values[i] / (denom + 1e-300));
    }
    std::size_t half = ratios.size() / 2;
    double lo = 0, hi = 0;
    for (std::size_t i = 0; i < half; ++i) lo = std::max(lo, ratios[i]);
    for (std::size_t i = half; i < ratios.size(); ++i) hi = std::max(hi, ratios[i]);
    if (hi <= 2.0 * lo + 1e-300) {
      cert.order = m;
      cert.constant = std::max(lo, hi);
      cert.ok = true;
      return cert;
    }
  }
  cert.order = 8;
  cert.ok = false;
  double worst = 0;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    double denom = 0;
    for (int j = 0; j <= 8; ++j) denom = std::max(denom, taus[i][j]);
    worst = std::max(worst, values[i] / (denom + 1e-300));
  }
  cert.constant = worst;
  return cert;
}

InvariantDistribution parse_distribution(const SpaceDescriptor& space,
                                         const std::string& text) {
  InvariantDistribution F;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "atom") {
      Atom a;
      a.radius.resize(space.rank());
      for (std::size_t j = 0; j < space.rank(); ++j)
        if (!(ls >> a.radius[j]))
          throw std::invalid_argument("bad atom record: " + line);
      double re, im;
      if (!(ls >> a.order >> re >> im))
        throw std::invalid_argument("bad atom record: " + line);
      a.coeff = {re, im};
      F.atoms.push_back(a);
    } else if (tag == "density") {
      std::string kind;
      ls >> kind;
      if (kind == "bump") {
        double r;
        if (!(ls >> r)) throw std::invalid_argument("bad density record: " + line);
        F.density = bump_profile(space, r);
      } else if (kind == "annulus") {
        double a, b;
        if (!(ls >> a >> b))
          throw std::invalid_argument("bad density record: " + line);
        F.density = annulus_profile(space, a, b);
      } else {
        throw std::invalid_argument("unknown density profile: " + kind);
      }
    } else {
      throw std::invalid_argument("unknown record tag: " + tag);
    }
  }
  return F;
}

std::string serialize(const SpaceDescriptor& space,
                      const InvariantDistribution& F) {
  std::ostringstream os;
  os.precision(17);
  for (const auto& a : F.atoms) {
    os << "atom";
    for (double s : a.radius) os << " " << s;
    os << " " << a.order << " " << a.coeff.real() << " " << a.coeff.imag()
       << "\n";
  }
  if (F.density) {
    if (F.density->label.empty())
      throw std::invalid_argument("density profile has no spec-file label");
    os << "density " << F.density->label << "\n";
  }
  (void)space;
  return os.str();
}

}  // namespace csf
