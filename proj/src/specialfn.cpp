#include "csf/specialfn.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace csf {

namespace {

constexpr double kPi = std::numbers::pi;

// Recurrence coefficients shared by both evaluators:
// P_{q} = (aq * x - bq) * P_{q-1} - cq * P_{q-2}.
struct Rec3 {
  double aq, bq, cq;
};

Rec3 jacobi_rec(int q, double a, double b) {
  double apb = a + b;
  double q2 = 2 * q + apb;
  double den = 2 * q * (q + apb) * (q2 - 2);
  Rec3 r;
  r.aq = q2 * (q2 - 1) * (q2 - 2) / den;
  r.bq = (q2 - 1) * (a * a - b * b) / den;
  r.cq = 2 * (q + a - 1) * (q + b - 1) * q2 / den;
  return r;
}

template <typename T>
T jacobi_poly_impl(int n, double a, double b, T x) {
  if (n < 0) throw std::invalid_argument("jacobi_poly: negative degree");
  T p0 = T(1);
  if (n == 0) return p0;
  T p1 = (a + b + 2) / 2.0 * x + (a - b) / 2.0;
  for (int q = 2; q <= n; ++q) {
    Rec3 r = jacobi_rec(q, a, b);
    T p2 = (r.aq * x + r.bq) * p1 - r.cq * p0;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace

cplx jacobi_poly(int n, double a, double b, cplx x) {
  return jacobi_poly_impl(n, a, b, x);
}

double jacobi_poly(int n, double a, double b, double x) {
  return jacobi_poly_impl(n, a, b, x);
}

double jacobi_poly_at_one(int n, double a, double b) {
  (void)b;
  return std::exp(std::lgamma(n + a + 1) - std::lgamma(a + 1) -
                  std::lgamma(n + 1.0));
}

std::vector<double> jacobi_poly_sweep(int n, double a, double b, double x) {
  std::vector<double> p(n + 1);
  p[0] = 1;
  if (n == 0) return p;
  p[1] = (a + b + 2) / 2.0 * x + (a - b) / 2.0;
  for (int q = 2; q <= n; ++q) {
    Rec3 r = jacobi_rec(q, a, b);
    p[q] = (r.aq * x + r.bq) * p[q - 1] - r.cq * p[q - 2];
  }
  return p;
}

double jacobi_weight_mass(double a, double b) {
  return std::exp((a + b + 1) * std::numbers::ln2 + std::lgamma(a + 1) +
                  std::lgamma(b + 1) - std::lgamma(a + b + 2));
}

QuadRule gauss_jacobi(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi: n must be >= 1");
  // Symmetric tridiagonal recurrence matrix (Golub-Welsch).
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  auto alpha = [&](int k) {
    if (k == 0) return (b - a) / (a + b + 2);
    double s = 2 * k + a + b;
    return (b * b - a * a) / (s * (s + 2));
  };
  auto beta = [&](int k) {  // off-diagonal squares, k >= 1
    double s = 2 * k + a + b;
    return 4.0 * k * (k + a) * (k + b) * (k + a + b) /
           (s * s * (s + 1) * (s - 1));
  };
  for (int k = 0; k < n; ++k) J(k, k) = alpha(k);
  for (int k = 1; k < n; ++k) {
    double e = std::sqrt(beta(k));
    J(k, k - 1) = e;
    J(k - 1, k) = e;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  double mass = jacobi_weight_mass(a, b);
  for (int k = 0; k < n; ++k) {
    rule.nodes[k] = es.eigenvalues()(k);
    double v0 = es.eigenvectors()(0, k);
    rule.weights[k] = mass * v0 * v0;
  }
  return rule;
}

cplx hyp2f1(cplx A, cplx B, cplx C, cplx z) {
  if (std::abs(z) > 0.92)
    throw accuracy_error("hyp2f1: |z| too close to 1 for the series");
  cplx term = 1, sum = 1;
  const int cap = 2000;
  for (int k = 0; k < cap; ++k) {
    term *= (A + double(k)) * (B + double(k)) /
            ((C + double(k)) * double(k + 1)) * z;
    sum += term;
    if (std::abs(term) <= 1e-16 * (1.0 + std::abs(sum))) {
      // negative-integer A or B terminates exactly; otherwise run two more
      // terms to be sure the tail really collapsed
      cplx t2 = term * (A + double(k + 1)) * (B + double(k + 1)) /
                ((C + double(k + 1)) * double(k + 2)) * z;
      if (std::abs(t2) <= 1e-15 * (1.0 + std::abs(sum))) return sum;
    }
  }
  throw accuracy_error("hyp2f1: series did not reach the target tail");
}

cplx jacobi_function(double a, double b, cplx deg, cplx x) {
  cplx z = (1.0 - x) / 2.0;
  double rho2 = a + b + 1;  // twice the half-sum in these units
  if (deg.real() < -rho2 / 2) deg = -deg - rho2;  // exact reflection symmetry
  int n = int(std::floor(deg.real()));
  auto seed = [&](cplx d) { return hyp2f1(-d, d + rho2, a + 1, z); };
  if (n < 2) return seed(deg);
  cplx nu = deg - double(n);
  cplx r_prev = seed(nu);
  cplx r_cur = seed(nu + 1.0);
  for (int m = 1; m < n; ++m) {
    cplx q = nu + double(m);  // current degree, stepping to q + 1
    cplx qt = q + 1.0;
    cplx q2 = 2.0 * qt + a + b;
    cplx den = 2.0 * qt * (qt + a + b) * (q2 - 2.0);
    cplx A = q2 * (q2 - 1.0) * (q2 - 2.0) / den;
    cplx B = (q2 - 1.0) * (a * a - b * b) / den;
    cplx C = 2.0 * (qt + a - 1.0) * (qt + b - 1.0) * q2 / den;
    // normalization transfer P -> P / P(1)
    cplx g1 = (q + 1.0) / (q + a + 1.0);
    cplx g2 = q * (q + 1.0) / ((q + a) * (q + a + 1.0));
    cplx r_next = (A * x + B) * g1 * r_cur - C * g2 * r_prev;
    r_prev = r_cur;
    r_cur = r_next;
  }
  return r_cur;
}

std::vector<double> cosine_coefficients(
    int deg, const std::function<double(double)>& value_at_u) {
  // Chebyshev projection with deg+1 Gauss-Chebyshev nodes: exact for
  // polynomials of degree <= deg in u = cos t.
  int m = deg + 1;
  std::vector<double> vals(m);
  for (int j = 0; j < m; ++j) {
    double theta = kPi * (j + 0.5) / m;
    vals[j] = value_at_u(std::cos(theta));
  }
  std::vector<double> c(m);
  for (int k = 0; k < m; ++k) {
    double s = 0;
    for (int j = 0; j < m; ++j) s += vals[j] * std::cos(k * kPi * (j + 0.5) / m);
    c[k] = (k == 0 ? 1.0 : 2.0) * s / m;
  }
  return c;
}

double cosine_series_derivative(const std::vector<double>& c, double t, int j) {
  double s = 0;
  for (std::size_t m = 0; m < c.size(); ++m) {
    // (d/dt)^j cos(m t) = m^j cos(m t + j pi/2)
    double phase = m * t + j * kPi / 2;
    s += c[m] * std::pow(double(m), j) * std::cos(phase);
  }
  return s;
}

cplx ring_derivative(const std::function<cplx(cplx)>& fn, cplx center, int j,
                     double radius, int points) {
  if (j == 0) return fn(center);
  cplx acc = 0;
  for (int k = 0; k < points; ++k) {
    double th = 2 * kPi * k / points;
    cplx w = std::polar(1.0, th);
    acc += fn(center + radius * w) * std::polar(1.0, -j * th);
  }
  double jfac = std::tgamma(j + 1.0);
  return acc * jfac / (double(points) * std::pow(radius, j));
}

namespace {

template <typename T>
T fd_impl(const std::function<T(double)>& fn, double s, int j) {
  if (j == 0) return fn(s);
  // balanced step: truncation h^4 * f^(j+4) against round-off eps / h^j
  double h = std::pow(2.2e-16, 1.0 / (j + 4)) * (1 + std::abs(s));
  auto d1 = [&](auto&& g, double x) {
    return (-g(x + 2 * h) + 8.0 * g(x + h) - 8.0 * g(x - h) + g(x - 2 * h)) /
           (12 * h);
  };
  if (j == 1) return d1(fn, s);
  if (j == 2) {
    return (-fn(s + 2 * h) + 16.0 * fn(s + h) - 30.0 * fn(s) +
            16.0 * fn(s - h) - fn(s - 2 * h)) /
           (12 * h * h);
  }
  // compose: j-2 outer on the 2nd-difference kernel
  std::function<T(double)> d2 = [&fn, h](double x) {
    return (-fn(x + 2 * h) + 16.0 * fn(x + h) - 30.0 * fn(x) +
            16.0 * fn(x - h) - fn(x - 2 * h)) /
           (12 * h * h);
  };
  return fd_impl<T>(d2, s, j - 2);
}

}  // namespace

double fd_derivative(const std::function<double(double)>& fn, double s, int j) {
  return fd_impl<double>(fn, s, j);
}

cplx fd_derivative(const std::function<cplx(double)>& fn, double s, int j) {
  return fd_impl<cplx>(fn, s, j);
}

}  // namespace csf
