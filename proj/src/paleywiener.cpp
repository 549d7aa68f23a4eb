#include "csf/paleywiener.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "csf/specialfn.hpp"
#include "csf/spherical.hpp"

namespace csf {

namespace {

constexpr double kPi = std::numbers::pi;

// psi_lambda^vee at a real slice point: psi_lambda on rooted factors (self-
// dual by Weyl symmetry), the conjugate character e^{-i lambda theta} on
// circle factors.  RP coordinates are folded to the fundamental domain.
std::complex<double> psi_vee(const SpaceDescriptor& space,
                             const SpectralPoint& lambda,
                             const std::vector<double>& t) {
  std::complex<double> v = 1;
  for (std::size_t j = 0; j < space.rank(); ++j) {
    const Factor& f = space.factors[j];
    std::complex<double> lam = lambda.coords[j];
    if (!f.rooted()) {
      v *= std::exp(std::complex<double>(0, -1) * lam * t[j]);
      continue;
    }
    double tc = radial_distance(f, t[j]);
    v *= factor_spherical(f, lam, std::complex<double>(tc, 0.0));
  }
  return v;
}

// j-th radial derivative of the psi_vee factor of a rooted factor at a real
// point (cosine series on the lattice, Cauchy ring otherwise).
std::complex<double> psi_vee_factor_derivative(const Factor& f,
                                               std::complex<double> lam,
                                               double s, int order) {
  if (order == 0) return factor_spherical(f, lam, {s, 0.0});
  // lattice shortcut
  std::complex<double> l = lam;
  if (l.real() < -f.rho) l = -l - 2.0 * f.rho;
  long k = std::lround(l.real());
  if (k >= 0 && std::abs(l.real() - double(k)) < 1e-12 &&
      std::abs(l.imag()) < 1e-12) {
    double norm = jacobi_poly_at_one(int(k), f.jacobi_a, f.jacobi_b);
    auto coeffs = cosine_coefficients(int(k), [&](double u) {
      return jacobi_poly(int(k), f.jacobi_a, f.jacobi_b, u) / norm;
    });
    return cosine_series_derivative(coeffs, s, order);
  }
  double margin = f.omega_radius - std::abs(s);
  if (margin <= 1e-6)
    throw domain_error("derivative point has no analyticity margin");
  double radius = std::min(0.3, 0.8 * margin);
  return ring_derivative(
      [&](cplx z) { return factor_spherical(f, lam, z); },
      {s, 0.0}, order, radius, 32);
}

struct SupportNodes {
  std::vector<std::vector<double>> points;
  std::vector<double> weights;
  std::vector<std::complex<double>> values;  // profile values
};

SupportNodes collect_support_nodes(const SpaceDescriptor& space,
                                   const RadialProfile& f,
                                   int nodes_per_factor) {
  Quadrature quad = quadrature(space, nodes_per_factor);
  SupportNodes sn;
  std::size_t r = space.rank();
  std::vector<std::size_t> idx(r, 0);
  std::vector<double> t(r);
  while (true) {
    double w = 1;
    for (std::size_t j = 0; j < r; ++j) {
      t[j] = quad.nodes[j][idx[j]];
      w *= quad.weights[j][idx[j]];
    }
    std::complex<double> v = f.eval(t);
    if (v != std::complex<double>(0.0)) {
      sn.points.push_back(t);
      sn.weights.push_back(w);
      sn.values.push_back(v);
    }
    std::size_t j = 0;
    for (; j < r; ++j) {
      if (++idx[j] < quad.nodes[j].size()) break;
      idx[j] = 0;
    }
    if (j == r) break;
  }
  return sn;
}

double poly_magnitude(const std::vector<double>& coeffs, double x) {
  double m = 0, p = 1;
  for (double c : coeffs) {
    m += std::abs(c) * p;
    p *= x;
  }
  return m;
}

}  // namespace

std::string to_text(const GrowthProfile& g) {
  std::ostringstream os;
  os.precision(17);
  os << "kind " << (g.kind == PWKind::Smooth ? "smooth" : "distribution")
     << "\norder " << g.order << "\nconstant " << g.constant << "\ntype_radius "
     << g.type_radius << "\nresidual " << g.residual << "\ngrid " << g.grid_spec
     << "\n";
  return os.str();
}

GrowthProfile parse_growth_profile(const std::string& text) {
  GrowthProfile g;
  std::istringstream is(text);
  std::string key;
  while (is >> key) {
    if (key == "kind") {
      std::string k;
      is >> k;
      g.kind = (k == "smooth") ? PWKind::Smooth : PWKind::Distribution;
    } else if (key == "order") {
      is >> g.order;
    } else if (key == "constant") {
      is >> g.constant;
    } else if (key == "type_radius") {
      is >> g.type_radius;
    } else if (key == "residual") {
      is >> g.residual;
    } else if (key == "grid") {
      std::getline(is, g.grid_spec);
      if (!g.grid_spec.empty() && g.grid_spec[0] == ' ')
        g.grid_spec.erase(0, 1);
    }
  }
  return g;
}

HoloTransform extend_function(const SpaceDescriptor& space,
                              const RadialProfile& f, int nodes_per_factor) {
  double R = space.validity_radius();
  if (f.support_radius >= R)
    throw domain_error("extend_function: support radius reaches R");
  auto sn = std::make_shared<SupportNodes>(
      collect_support_nodes(space, f, nodes_per_factor));
  for (const auto& p : sn->points)
    if (radial_norm(space, p) >= R)
      throw domain_error("extend_function: profile is nonzero beyond R");
  const SpaceDescriptor* sp = &space;
  HoloTransform phi;
  phi.provenance = HoloTransform::Provenance::Function;
  phi.weyl_symmetric = true;
  phi.eval = [sp, sn](const SpectralPoint& lambda) {
    std::complex<double> acc = 0;
    for (std::size_t i = 0; i < sn->points.size(); ++i)
      acc += sn->weights[i] * sn->values[i] * psi_vee(*sp, lambda, sn->points[i]);
    return acc;
  };
  return phi;
}

RadialProfile cutoff(const SpaceDescriptor& space, double r, double delta) {
  if (r < 0 || delta <= 0)
    throw std::invalid_argument("cutoff needs r >= 0 and delta > 0");
  if (r + delta >= space.validity_radius())
    throw domain_error("cutoff: r + delta reaches the validity radius");
  auto step = [](double x) {
    // smooth monotone step: 1 for x <= 0, 0 for x >= 1
    if (x <= 0) return 1.0;
    if (x >= 1) return 0.0;
    double b0 = std::exp(-1.0 / (1 - x));
    double b1 = std::exp(-1.0 / x);
    return b0 / (b0 + b1);
  };
  auto h = [step, delta](double u) {
    // h_delta: 1 for u <= delta/3, 0 for u >= 2 delta/3
    return step((u - delta / 3) / (delta / 3));
  };
  RadialProfile p = make_radial(
      space, [h, r](double s) { return h(s - r); }, r + 2 * delta / 3, true);
  std::ostringstream lb;
  lb.precision(17);
  lb << "cutoff " << r << " " << delta;
  p.label = lb.str();
  return p;
}

HoloTransform extend_distribution_transform(const SpaceDescriptor& space,
                                            const InvariantDistribution& F,
                                            double margin) {
  validate(space, F);
  double r = F.support_radius(space);
  double R = space.validity_radius();
  if (margin <= 0 || r + margin >= R)
    throw domain_error("extend_distribution: support + margin reaches R");
  RadialProfile phi_cut = cutoff(space, r, margin);

  // density nodes, cutoff applied once (phi == 1 on the support)
  auto sn = std::make_shared<SupportNodes>();
  if (F.density) {
    *sn = collect_support_nodes(space, *F.density, 192);
    for (std::size_t i = 0; i < sn->points.size(); ++i)
      sn->values[i] *= phi_cut.eval(sn->points[i]).real();
  }
  auto atoms = std::make_shared<std::vector<Atom>>(F.atoms);
  const SpaceDescriptor* sp = &space;

  HoloTransform phi;
  phi.provenance = HoloTransform::Provenance::Distribution;
  phi.weyl_symmetric = true;
  phi.eval = [sp, sn, atoms](const SpectralPoint& lambda) {
    std::complex<double> acc = 0;
    for (const auto& a : *atoms) {
      // phi == 1 on a neighborhood of the atom; derivatives hit psi_vee alone
      std::complex<double> term = a.coeff;
      for (std::size_t j = 0; j < sp->rank(); ++j) {
        const Factor& f = sp->factors[j];
        std::complex<double> lam = lambda.coords[j];
        double s = a.radius[j];
        int ord = (j == 0) ? a.order : 0;
        if (!f.rooted()) {
          // symmetric pair against e^{-i lam th}: (d/ds)^j cos(lam s)
          term *=
              std::pow(lam, ord) * std::cos(lam * s + double(ord) * kPi / 2.0);
        } else {
          term *= psi_vee_factor_derivative(f, lam, s, ord);
        }
      }
      acc += term;
    }
    for (std::size_t i = 0; i < sn->points.size(); ++i)
      acc += sn->weights[i] * sn->values[i] * psi_vee(*sp, lambda, sn->points[i]);
    return acc;
  };
  return phi;
}

std::complex<double> extend_distribution(const SpaceDescriptor& space,
                                         const InvariantDistribution& F,
                                         const SpectralPoint& lambda,
                                         double margin) {
  return extend_distribution_transform(space, F, margin).eval(lambda);
}

namespace {

std::vector<std::vector<double>> direction_set(const SpaceDescriptor& space) {
  std::vector<std::vector<double>> dirs;
  for (std::size_t j = 0; j < space.rank(); ++j) {
    std::vector<double> e(space.rank(), 0.0);
    e[j] = 1;
    dirs.push_back(e);
  }
  if (space.rank() > 1) {
    std::vector<double> d(space.rank(), 1.0 / std::sqrt(double(space.rank())));
    dirs.push_back(d);
  }
  return dirs;
}

SpectralPoint scaled_direction(const std::vector<double>& dir,
                               std::complex<double> scale) {
  SpectralPoint p;
  p.coords.reserve(dir.size());
  for (double d : dir) p.coords.push_back(scale * d);
  return p;
}

double safe_log_abs(std::complex<double> v) {
  double a = std::abs(v);
  return a > 0 ? std::max(std::log(a), -700.0) : -700.0;
}

}  // namespace

GrowthProfile estimate_type(const SpaceDescriptor& space,
                            const HoloTransform& Phi, PWKind kind,
                            double sigma_max, int samples, int nodes) {
  (void)nodes;
  GrowthProfile g;
  g.kind = kind;
  double best_r = 0, best_res = 0;
  auto dirs = direction_set(space);
  for (const auto& dir : dirs) {
    // tail model log|Phi(i sigma xi)| ~ r s - gamma sqrt(s) + beta log(1+s) + c
    Eigen::MatrixXd M(samples, 4);
    Eigen::VectorXd y(samples);
    for (int i = 0; i < samples; ++i) {
      double s = sigma_max / 2 + (sigma_max / 2) * (i + 1.0) / samples;
      auto v = Phi.eval(scaled_direction(dir, {0.0, s}));
      y(i) = safe_log_abs(v);
      M(i, 0) = s;
      M(i, 1) = -std::sqrt(s);
      M(i, 2) = std::log1p(s);
      M(i, 3) = 1;
    }
    Eigen::VectorXd coef = M.colPivHouseholderQr().solve(y);
    double res = (M * coef - y).norm() / std::sqrt(double(samples));
    if (coef(0) > best_r) {
      best_r = coef(0);
      best_res = res;
    }
  }
  g.type_radius = std::max(0.0, best_r);
  g.residual = best_res;

  // order and constant on the real (lattice) axis, where the exponential
  // factor is 1; sample off-integer points to dodge lattice zeros
  std::vector<double> xs;
  for (int i = 0; i < samples; ++i)
    xs.push_back(0.3 + (sigma_max - 0.6) * i / (samples - 1.0) + 0.1381);
  double slope_num = 0, slope_den = 0, mx = 0, my = 0;
  std::vector<std::pair<double, double>> pts;
  for (const auto& dir : dirs) {
    for (double x : xs) {
      auto v = Phi.eval(scaled_direction(dir, {x, 0.0}));
      double la = safe_log_abs(v);
      if (la <= -690) continue;
      pts.emplace_back(std::log1p(x), la);
    }
  }
  if (pts.size() >= 2) {
    for (auto& [u, w] : pts) {
      mx += u;
      my += w;
    }
    mx /= pts.size();
    my /= pts.size();
    for (auto& [u, w] : pts) {
      slope_num += (u - mx) * (w - my);
      slope_den += (u - mx) * (u - mx);
    }
  }
  double slope = slope_den > 0 ? slope_num / slope_den : 0;
  if (kind == PWKind::Distribution) {
    g.order = std::max(0.0, slope);
  } else {
    g.order = std::max(0.0, -slope);
  }
  double c = 0;
  for (const auto& dir : dirs)
    for (double x : xs) {
      double a = std::abs(Phi.eval(scaled_direction(dir, {x, 0.0})));
      double weightpow = (kind == PWKind::Distribution)
                             ? std::pow(1 + x, -g.order)
                             : std::pow(1 + x, g.order);
      c = std::max(c, a * weightpow);
    }
  g.constant = c;
  std::ostringstream gs;
  gs << "imag[" << sigma_max / 2 << "," << sigma_max << "]x" << samples
     << ";real[0.3," << sigma_max << "]x" << samples << ";dirs=" << dirs.size();
  g.grid_spec = gs.str();
  return g;
}

double certificate_violation(const SpaceDescriptor& space,
                             const HoloTransform& Phi, const GrowthProfile& g,
                             double slack) {
  auto dirs = direction_set(space);
  double worst = 0;
  for (const auto& dir : dirs)
    for (double x : {0.45, 2.45, 5.45, 9.45, 14.45, 20.45, 27.45, 35.45})
      for (double yy : {0.0, 1.0, 3.0, 7.0, 12.0, 20.0, 30.0}) {
        SpectralPoint lam = scaled_direction(dir, {x, yy});
        double a = std::abs(Phi.eval(lam));
        double mod = std::hypot(x, yy);
        double powfac = (g.kind == PWKind::Distribution)
                            ? std::pow(1 + mod, g.order)
                            : std::pow(1 + mod, -g.order);
        double bound =
            slack * g.constant * powfac * std::exp(g.type_radius * yy);
        worst = std::max(worst, a / (bound + 1e-300));
      }
  return worst;
}

Reconstruction reconstruct_distribution(
    const SpaceDescriptor& space, const HoloTransform& Phi, double max_norm,
    const std::optional<GrowthProfile>& certificate) {
  GrowthProfile cert = certificate
                           ? *certificate
                           : estimate_type(space, Phi, PWKind::Distribution);
  if (cert.type_radius >= space.validity_radius())
    throw domain_error("reconstruct_distribution: certificate type exceeds R");
  Reconstruction rec;
  rec.max_norm = max_norm;
  rec.nodes_per_factor = adequate_nodes(max_norm);
  rec.lattice.max_norm = max_norm;
  for (const auto& mu : lattice_points(space, max_norm))
    rec.lattice.values[mu] = Phi.eval(SpectralPoint::from(mu));
  return rec;
}

std::complex<double> reconstruction_pair(const SpaceDescriptor& space,
                                         const Reconstruction& rec,
                                         const RadialProfile& f) {
  CoefficientTable f_table =
      forward_table(space, f, rec.max_norm, rec.nodes_per_factor);
  return pairing_series(space, rec.lattice, f_table);
}

SingsuppReport singsupp_test(const SpaceDescriptor& space,
                             const HoloTransform& Phi, double s,
                             const std::vector<int>& m_list, double order_N,
                             const std::vector<double>& bounds,
                             double slope_threshold) {
  SingsuppReport rep;
  rep.slope_threshold = slope_threshold;
  rep.pass = true;
  double top = *std::max_element(bounds.begin(), bounds.end());
  auto dirs = direction_set(space);
  for (int m : m_list) {
    SingsuppRow row;
    row.m = m;
    row.constants.assign(bounds.size(), 0.0);
    const int nrho = 28;
    for (int i = 0; i < nrho; ++i) {
      double rho = 2.0 * std::pow(top / 2.0, (i + 1.0) / nrho);
      double ycap = m * std::log1p(rho);
      for (double frac : {0.25, 0.5, 0.75, 1.0}) {
        double yy = std::min(frac * ycap, 0.95 * rho);
        double x = std::sqrt(std::max(0.0, rho * rho - yy * yy));
        for (const auto& dir : dirs) {
          double a = std::abs(Phi.eval(scaled_direction(dir, {x, yy})));
          double ratio =
              a / (std::pow(1 + rho, order_N) * std::exp(s * yy) + 1e-300);
          for (std::size_t b = 0; b < bounds.size(); ++b)
            if (rho <= bounds[b] + 1e-9)
              row.constants[b] = std::max(row.constants[b], ratio);
        }
      }
    }
    // log-log slope across the nested bounds
    double mx = 0, my = 0;
    std::vector<std::pair<double, double>> pts;
    for (std::size_t b = 0; b < bounds.size(); ++b)
      pts.emplace_back(std::log(bounds[b]),
                       std::log(row.constants[b] + 1e-300));
    for (auto& [u, v] : pts) {
      mx += u;
      my += v;
    }
    mx /= pts.size();
    my /= pts.size();
    double num = 0, den = 0;
    for (auto& [u, v] : pts) {
      num += (u - mx) * (v - my);
      den += (u - mx) * (u - mx);
    }
    row.slope = den > 0 ? num / den : 0;
    row.pass = row.slope <= slope_threshold;
    rep.pass = rep.pass && row.pass;
    rep.rows.push_back(row);
  }
  return rep;
}

std::complex<double> laplacian_symbol(const SpaceDescriptor& space,
                                      const std::vector<double>& poly_coeffs,
                                      const SpectralPoint& lambda) {
  std::complex<double> w = -eigenvalue(space, lambda);
  std::complex<double> acc = 0;
  for (std::size_t k = poly_coeffs.size(); k-- > 0;) acc = acc * w + poly_coeffs[k];
  return acc;
}

namespace {

std::vector<std::complex<double>> poly_roots(const std::vector<double>& coeffs) {
  // roots of sum c_k w^k via the companion matrix
  int deg = int(coeffs.size()) - 1;
  while (deg > 0 && std::abs(coeffs[deg]) < 1e-300) --deg;
  if (deg < 1) return {};
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) C(i, i - 1) = 1;
  for (int i = 0; i < deg; ++i) C(i, deg - 1) = -coeffs[i] / coeffs[deg];
  Eigen::EigenSolver<Eigen::MatrixXd> es(C);
  std::vector<std::complex<double>> roots;
  for (int i = 0; i < deg; ++i) roots.push_back(es.eigenvalues()(i));
  return roots;
}

}  // namespace

SolveOutcome solve(const SpaceDescriptor& space,
                   const std::vector<double>& poly_coeffs,
                   const HoloTransform& Phi_F, double max_norm,
                   double zero_tol) {
  if (poly_coeffs.empty())
    throw std::invalid_argument("solve: empty symbol polynomial");
  SolveOutcome out;

  // rank-one pullback of the omega-roots for reporting
  if (space.rank() == 1) {
    double rho = space.factors[0].rho;
    for (auto w : poly_roots(poly_coeffs)) {
      // lambda (lambda + 2 rho) = -w  (symbol is P(-omega))
      std::complex<double> disc = std::sqrt(rho * rho - w);
      out.factor_zeros.push_back(-rho + disc);
      out.factor_zeros.push_back(-rho - disc);
    }
  }

  // lattice-relevant zeros and the blocking test
  auto lattice = lattice_points(space, max_norm);
  bool continuous = true;
  for (const auto& mu : lattice) {
    SpectralPoint lam = SpectralPoint::from(mu);
    std::complex<double> sym = laplacian_symbol(space, poly_coeffs, lam);
    double sym_scale = poly_magnitude(poly_coeffs, std::abs(eigenvalue(space, mu)));
    if (std::abs(sym) > zero_tol * (1 + sym_scale)) continue;
    out.lattice_zeros.push_back(mu);
    double fval = std::abs(Phi_F.eval(lam));
    if (fval > zero_tol) {
      out.blocking.push_back(mu);
      out.worst_blocking_value = std::max(out.worst_blocking_value, fval);
      continue;
    }
    // removability probe: two patch strategies on small circles must agree
    auto quotient = [&](const SpectralPoint& p) {
      return Phi_F.eval(p) / laplacian_symbol(space, poly_coeffs, p);
    };
    auto circle_mean = [&](double radius) {
      std::complex<double> acc = 0;
      const int K = 16;
      for (int k = 0; k < K; ++k) {
        SpectralPoint p = lam;
        p.coords[0] += std::polar(radius, 2 * kPi * k / K);
        acc += quotient(p);
      }
      return acc / double(K);
    };
    std::complex<double> a = circle_mean(1e-2);
    std::complex<double> b = circle_mean(5e-3);
    if (std::abs(a - b) > 1e-9 * (1 + std::abs(a))) continuous = false;
  }
  out.solvable = out.blocking.empty() && continuous;
  if (!out.solvable) return out;

  // patched quotient
  const SpaceDescriptor* sp = &space;
  auto coeffs = std::make_shared<std::vector<double>>(poly_coeffs);
  auto phi_eval = Phi_F.eval;
  out.quotient.provenance = HoloTransform::Provenance::Synthetic;
  out.quotient.weyl_symmetric = Phi_F.weyl_symmetric;
  out.quotient.eval = [sp, coeffs, phi_eval, zero_tol](const SpectralPoint& p) {
    std::complex<double> sym = laplacian_symbol(*sp, *coeffs, p);
    double scale =
        poly_magnitude(*coeffs, std::abs(eigenvalue(*sp, p)));
    if (std::abs(sym) > 1e-7 * (1 + scale)) return phi_eval(p) / sym;
    // removable point: average the quotient on a small circle around it
    std::complex<double> acc = 0;
    const int K = 16;
    for (int k = 0; k < K; ++k) {
      SpectralPoint q = p;
      q.coords[0] += std::polar(1e-2, 2 * kPi * k / K);
      acc += phi_eval(q) / laplacian_symbol(*sp, *coeffs, q);
    }
    return acc / double(K);
  };
  return out;
}

}  // namespace csf
