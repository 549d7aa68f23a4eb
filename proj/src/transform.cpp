#include "csf/transform.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include "csf/specialfn.hpp"
#include "csf/spherical.hpp"

namespace csf {

namespace {

constexpr double kPi = std::numbers::pi;

double canonical_bump(double x) {
  // exp(1 - 1/(1 - x^2)) on |x| < 1, zero outside
  if (std::abs(x) >= 1) return 0;
  return std::exp(1.0 - 1.0 / (1.0 - x * x));
}

std::complex<double> canonical_bump_c(std::complex<double> x) {
  return std::exp(1.0 - 1.0 / (1.0 - x * x));
}

void for_each_node(const Quadrature& quad,
                   const std::function<void(const std::vector<double>&, double)>& fn) {
  std::size_t r = quad.rank();
  std::vector<std::size_t> idx(r, 0);
  std::vector<double> t(r);
  while (true) {
    double w = 1;
    for (std::size_t j = 0; j < r; ++j) {
      t[j] = quad.nodes[j][idx[j]];
      w *= quad.weights[j][idx[j]];
    }
    fn(t, w);
    std::size_t j = 0;
    for (; j < r; ++j) {
      if (++idx[j] < quad.nodes[j].size()) break;
      idx[j] = 0;
    }
    if (j == r) break;
  }
}

int max_abs_coord(const SpaceDescriptor& space, double max_norm, std::size_t j) {
  (void)space;
  (void)j;
  return int(std::floor(max_norm + 1e-12));
}

}  // namespace

RadialProfile make_radial(const SpaceDescriptor& space,
                          std::function<double(double)> g,
                          double support_radius, bool smooth) {
  RadialProfile p;
  p.support_radius = support_radius;
  p.smooth = smooth;
  p.eval = [&space, g = std::move(g)](const std::vector<double>& t) {
    return std::complex<double>(g(radial_norm(space, t)), 0.0);
  };
  return p;
}

RadialProfile bump_profile(const SpaceDescriptor& space, double r) {
  if (r <= 0) throw std::invalid_argument("bump radius must be positive");
  RadialProfile p = make_radial(
      space, [r](double s) { return canonical_bump(s / r); }, r, true);
  {
    std::ostringstream lb;
    lb.precision(17);
    lb << "bump " << r;
    p.label = lb.str();
  }
  if (space.rank() == 1) {
    p.deriv = [r](const std::vector<double>& t,
                  const std::vector<int>& orders) -> std::complex<double> {
      double s = std::abs(t[0]);
      int j = orders[0];
      if (j == 0) return canonical_bump(s / r);
      if (s >= r - 1e-12) return 0.0;
      double margin = 0.7 * (r - s);
      double radius = std::min(0.3, margin);
      if (radius < 5e-3) {
        return fd_derivative(
            std::function<double(double)>(
                [r](double x) { return canonical_bump(x / r); }),
            s, j);
      }
      return ring_derivative(
          [r](cplx z) { return canonical_bump_c(z / r); }, cplx(s, 0.0), j,
          radius, 32);
    };
  }
  return p;
}

RadialProfile annulus_profile(const SpaceDescriptor& space, double a, double b) {
  if (!(0 <= a && a < b))
    throw std::invalid_argument("annulus requires 0 <= a < b");
  double mid = (b - a) * (b - a) / 4;
  auto g = [a, b, mid](double s) {
    if (s <= a || s >= b) return 0.0;
    return std::exp(1.0 / mid - 1.0 / ((s - a) * (b - s)));
  };
  RadialProfile p = make_radial(space, g, b, true);
  std::ostringstream lb;
  lb.precision(17);
  lb << "annulus " << a << " " << b;
  p.label = lb.str();
  return p;
}

RadialProfile spherical_profile(const SpaceDescriptor& space, const Weight& nu) {
  if (!in_lattice(space, nu))
    throw std::invalid_argument("spherical_profile: weight not in lattice");
  RadialProfile p;
  double sup2 = 0;
  for (const auto& f : space.factors) sup2 += f.diameter * f.diameter;
  p.support_radius = std::sqrt(sup2);
  p.smooth = true;
  p.eval = [&space, nu](const std::vector<double>& t) {
    return lattice_kernel(space, nu, t);
  };
  p.deriv = [&space, nu](const std::vector<double>& t,
                         const std::vector<int>& orders) {
    std::complex<double> v = 1;
    for (std::size_t j = 0; j < space.rank(); ++j) {
      const Factor& f = space.factors[j];
      int k = nu.coords[j];
      if (!f.rooted()) {
        std::complex<double> ik(0.0, double(k));
        v *= std::pow(ik, orders[j]) * std::polar(1.0, k * t[j]);
        continue;
      }
      if (orders[j] == 0) {
        v *= jacobi_poly(k, f.jacobi_a, f.jacobi_b, std::cos(t[j])) /
             jacobi_poly_at_one(k, f.jacobi_a, f.jacobi_b);
        continue;
      }
      double norm = jacobi_poly_at_one(k, f.jacobi_a, f.jacobi_b);
      auto coeffs = cosine_coefficients(k, [&](double u) {
        return jacobi_poly(k, f.jacobi_a, f.jacobi_b, u) / norm;
      });
      v *= cosine_series_derivative(coeffs, t[j], orders[j]);
    }
    return v;
  };
  return p;
}

RadialProfile constant_profile(const SpaceDescriptor& space,
                               std::complex<double> value) {
  RadialProfile p;
  double sup2 = 0;
  for (const auto& f : space.factors) sup2 += f.diameter * f.diameter;
  p.support_radius = std::sqrt(sup2);
  p.smooth = true;
  p.eval = [value](const std::vector<double>&) { return value; };
  p.deriv = [value](const std::vector<double>&, const std::vector<int>& orders) {
    for (int o : orders)
      if (o > 0) return std::complex<double>(0.0);
    return value;
  };
  return p;
}

namespace {

// Gauss rules are eigensolves; memoize per (space, N).
const Quadrature& cached_quadrature(const SpaceDescriptor& space,
                                    int nodes_per_factor,
                                    const std::function<Quadrature()>& build) {
  static std::mutex mu;
  static std::map<std::pair<std::string, int>, Quadrature> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(space.name, nodes_per_factor);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build()).first;
  return it->second;
}

Quadrature build_quadrature(const SpaceDescriptor& space, int nodes_per_factor);

}  // namespace

Quadrature quadrature(const SpaceDescriptor& space, int nodes_per_factor) {
  if (nodes_per_factor < 1)
    throw std::invalid_argument("quadrature needs at least one node");
  return cached_quadrature(space, nodes_per_factor, [&] {
    return build_quadrature(space, nodes_per_factor);
  });
}

namespace {

Quadrature build_quadrature(const SpaceDescriptor& space, int nodes_per_factor) {
  Quadrature quad;
  quad.nodes.resize(space.rank());
  quad.weights.resize(space.rank());
  for (std::size_t j = 0; j < space.rank(); ++j) {
    const Factor& f = space.factors[j];
    auto& ns = quad.nodes[j];
    auto& ws = quad.weights[j];
    ns.resize(nodes_per_factor);
    ws.resize(nodes_per_factor);
    if (f.rooted()) {
      QuadRule rule = gauss_jacobi(nodes_per_factor, f.jacobi_a, f.jacobi_b);
      double mass = jacobi_weight_mass(f.jacobi_a, f.jacobi_b);
      // ascending u -> descending t; store ascending in t
      for (int i = 0; i < nodes_per_factor; ++i) {
        int k = nodes_per_factor - 1 - i;
        ns[i] = std::acos(rule.nodes[k]);
        ws[i] = rule.weights[k] / mass;
      }
    } else {
      for (int i = 0; i < nodes_per_factor; ++i) {
        ns[i] = 2 * kPi * (i + 0.5) / nodes_per_factor;
        ws[i] = 1.0 / nodes_per_factor;
      }
    }
  }
  return quad;
}

}  // namespace

int adequate_nodes(double max_norm) {
  return std::max(64, 2 * int(std::ceil(max_norm)) + 16);
}

std::complex<double> integrate(
    const Quadrature& quad,
    const std::function<std::complex<double>(const std::vector<double>&)>& fn) {
  std::complex<double> acc = 0;
  for_each_node(quad, [&](const std::vector<double>& t, double w) {
    acc += w * fn(t);
  });
  return acc;
}

std::complex<double> forward(const SpaceDescriptor& space,
                             const Quadrature& quad, const RadialProfile& f,
                             const Weight& mu) {
  if (!in_lattice(space, mu))
    throw std::invalid_argument("forward: weight not in lattice");
  for (std::size_t j = 0; j < space.rank(); ++j) {
    int need = 2 * std::abs(mu.coords[j]) + 16;
    if (int(quad.nodes[j].size()) < need)
      throw resolution_error("forward: quadrature below the adequacy rule");
  }
  std::complex<double> acc = 0;
  for_each_node(quad, [&](const std::vector<double>& t, double w) {
    acc += w * f.eval(t) * std::conj(lattice_kernel(space, mu, t));
  });
  return acc;
}

namespace {

// Per-factor kernel value tables: K[j](c, i) = conj(psi-kernel coordinate c
// at node i).  Rooted coordinates c = 0..cap, circle c = -cap..cap shifted.
struct KernelTables {
  std::vector<Eigen::MatrixXcd> K;
  std::vector<int> offset;  // coordinate c maps to row c + offset[j]

  std::complex<double> value(std::size_t j, int c, int node) const {
    return K[j](c + offset[j], node);
  }
};

KernelTables kernel_tables(const SpaceDescriptor& space, const Quadrature& quad,
                           double max_norm, bool conjugated) {
  KernelTables kt;
  kt.K.resize(space.rank());
  kt.offset.resize(space.rank());
  for (std::size_t j = 0; j < space.rank(); ++j) {
    const Factor& f = space.factors[j];
    int cap = max_abs_coord(space, max_norm, j);
    int n = int(quad.nodes[j].size());
    if (f.rooted()) {
      kt.offset[j] = 0;
      kt.K[j].resize(cap + 1, n);
      for (int i = 0; i < n; ++i) {
        double u = std::cos(quad.nodes[j][i]);
        auto vals = jacobi_poly_sweep(cap, f.jacobi_a, f.jacobi_b, u);
        for (int k = 0; k <= cap; ++k)
          kt.K[j](k, i) =
              vals[k] / jacobi_poly_at_one(k, f.jacobi_a, f.jacobi_b);
      }
    } else {
      kt.offset[j] = cap;
      kt.K[j].resize(2 * cap + 1, n);
      for (int i = 0; i < n; ++i) {
        double th = quad.nodes[j][i];
        for (int k = -cap; k <= cap; ++k) {
          double sign = conjugated ? -1.0 : 1.0;
          kt.K[j](k + cap, i) = std::polar(1.0, sign * k * th);
        }
      }
    }
  }
  return kt;
}

}  // namespace

CoefficientTable forward_table(const SpaceDescriptor& space,
                               const RadialProfile& f, double max_norm,
                               int nodes_per_factor) {
  int n = nodes_per_factor > 0 ? nodes_per_factor : adequate_nodes(max_norm);
  Quadrature quad = quadrature(space, n);
  KernelTables kt = kernel_tables(space, quad, max_norm, /*conjugated=*/true);
  auto lattice = lattice_points(space, max_norm);

  CoefficientTable table;
  table.max_norm = max_norm;
  for (const auto& mu : lattice) table.values[mu] = 0;

  std::size_t r = space.rank();
  std::vector<std::size_t> idx(r, 0);
  std::vector<double> t(r);
  std::vector<int> node_index(r);
  while (true) {
    double w = 1;
    for (std::size_t j = 0; j < r; ++j) {
      t[j] = quad.nodes[j][idx[j]];
      node_index[j] = int(idx[j]);
      w *= quad.weights[j][idx[j]];
    }
    std::complex<double> fw = w * f.eval(t);
    if (fw != std::complex<double>(0.0)) {
      for (auto& [mu, acc] : table.values) {
        std::complex<double> k = fw;
        for (std::size_t j = 0; j < r; ++j)
          k *= kt.value(j, mu.coords[j], node_index[j]);
        acc += k;
      }
    }
    std::size_t j = 0;
    for (; j < r; ++j) {
      if (++idx[j] < quad.nodes[j].size()) break;
      idx[j] = 0;
    }
    if (j == r) break;
  }
  return table;
}

std::vector<std::vector<std::complex<double>>> schur_matrix(
    const SpaceDescriptor& space, double max_norm, int nodes_per_factor) {
  int n = nodes_per_factor > 0 ? nodes_per_factor : adequate_nodes(max_norm);
  Quadrature quad = quadrature(space, n);
  auto lattice = lattice_points(space, max_norm);
  KernelTables kt = kernel_tables(space, quad, max_norm, /*conjugated=*/false);

  // Psi(row = weight, col = grid node), then G = Psi_w * Psi^H
  std::size_t r = space.rank();
  std::size_t grid = 1;
  for (std::size_t j = 0; j < r; ++j) grid *= quad.nodes[j].size();
  Eigen::MatrixXcd Psi(lattice.size(), grid);
  Eigen::VectorXd wts(grid);

  std::vector<std::size_t> idx(r, 0);
  std::size_t col = 0;
  while (true) {
    double w = 1;
    for (std::size_t j = 0; j < r; ++j) w *= quad.weights[j][idx[j]];
    wts(col) = w;
    for (std::size_t row = 0; row < lattice.size(); ++row) {
      std::complex<double> k = 1;
      for (std::size_t j = 0; j < r; ++j)
        k *= kt.value(j, lattice[row].coords[j], int(idx[j]));
      Psi(row, col) = k;
    }
    ++col;
    std::size_t j = 0;
    for (; j < r; ++j) {
      if (++idx[j] < quad.nodes[j].size()) break;
      idx[j] = 0;
    }
    if (j == r) break;
  }

  Eigen::MatrixXcd G = (Psi * wts.asDiagonal()) * Psi.adjoint();
  std::vector<std::vector<std::complex<double>>> out(
      lattice.size(), std::vector<std::complex<double>>(lattice.size()));
  for (std::size_t m = 0; m < lattice.size(); ++m) {
    double d = dimension(space, lattice[m]);
    for (std::size_t nu = 0; nu < lattice.size(); ++nu)
      out[m][nu] = d * G(m, nu);  // d(mu) * forward(psi_nu)(mu)
  }
  return out;
}

std::complex<double> synthesize(const SpaceDescriptor& space,
                                const CoefficientTable& c,
                                const std::vector<double>& x) {
  std::complex<double> acc = 0;
  for (const auto& [mu, val] : c.values)
    acc += dimension(space, mu) * val * lattice_kernel(space, mu, x);
  return acc;
}

DecayReport decay_profile(const CoefficientTable& c, int k_max) {
  if (c.max_norm < 20)
    throw std::invalid_argument("decay_profile needs a table with max_norm >= 20");
  DecayReport rep;
  rep.k_max = k_max;
  rep.sups.assign(k_max + 1, 0.0);
  for (const auto& [mu, val] : c.values) {
    double base = 1 + mu.norm();
    double a = std::abs(val);
    double p = 1;
    for (int k = 0; k <= k_max; ++k) {
      rep.sups[k] = std::max(rep.sups[k], p * a);
      p *= base;
    }
  }
  return rep;
}

std::string serialize(const CoefficientTable& c) {
  std::ostringstream os;
  os.precision(17);
  os << "# coefficient table max_norm=" << c.max_norm << "\n";
  for (const auto& [mu, val] : c.values) {
    for (int k : mu.coords) os << k << " ";
    os << std::scientific << val.real() << " " << val.imag() << "\n";
  }
  return os.str();
}

CoefficientTable parse_table(const std::string& text, std::size_t rank) {
  CoefficientTable c;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') {
      auto pos = line.find("max_norm=");
      if (pos != std::string::npos)
        c.max_norm = std::stod(line.substr(pos + 9));
      continue;
    }
    std::istringstream ls(line);
    Weight mu;
    mu.coords.resize(rank);
    for (std::size_t j = 0; j < rank; ++j)
      if (!(ls >> mu.coords[j]))
        throw std::invalid_argument("bad table line: " + line);
    double re, im;
    if (!(ls >> re >> im))
      throw std::invalid_argument("bad table line: " + line);
    c.values[mu] = {re, im};
  }
  return c;
}

}  // namespace csf
