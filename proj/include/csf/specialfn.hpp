#ifndef CSF_SPECIALFN_HPP_
#define CSF_SPECIALFN_HPP_

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace csf {

class accuracy_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

using cplx = std::complex<double>;

// Jacobi polynomial P^{(a,b)}_n(x) by the three-term recurrence.
cplx jacobi_poly(int n, double a, double b, cplx x);
double jacobi_poly(int n, double a, double b, double x);

// P^{(a,b)}_n(1) = binom(n + a, n).
double jacobi_poly_at_one(int n, double a, double b);

// All degrees 0..n at one point in a single recurrence sweep.
std::vector<double> jacobi_poly_sweep(int n, double a, double b, double x);

// Total mass of the weight (1-x)^a (1+x)^b on [-1, 1].
double jacobi_weight_mass(double a, double b);

struct QuadRule {
  std::vector<double> nodes;    // ascending in [-1, 1]
  std::vector<double> weights;  // sum equals jacobi_weight_mass(a, b)
};

// Gauss-Jacobi rule, exact for polynomials of degree <= 2n - 1
// (Golub-Welsch on the symmetric recurrence matrix).
QuadRule gauss_jacobi(int n, double a, double b);

// Gauss 2F1(A, B; C; z) by the defining series.  Reliable for |z| <~ 0.9;
// throws accuracy_error when the series cannot reach ~1e-14 relative tails.
cplx hyp2f1(cplx A, cplx B, cplx C, cplx z);

// Normalized Jacobi function of (possibly non-integer, complex) degree:
//   2F1(-deg, deg + a + b + 1; a + 1; (1 - x)/2),
// which is P^{(a,b)}_deg(x) / P^{(a,b)}_deg(1) on integer degrees.  Seeded
// by short series at degree < 2 and carried up by the degree recurrence,
// which avoids the cancellation the raw series hits at large degree.
cplx jacobi_function(double a, double b, cplx deg, cplx x);

// Cosine expansion of a degree-deg polynomial Q(cos t):
// Q(cos t) = sum_{m=0}^{deg} c_m cos(m t).  Exact up to round-off.
std::vector<double> cosine_coefficients(
    int deg, const std::function<double(double)>& value_at_u);

// j-th derivative at t of sum c_m cos(m t).
double cosine_series_derivative(const std::vector<double>& c, double t, int j);

// j-th derivative of an analytic function by Cauchy's formula on a ring of
// the given radius (K sample points; spectrally accurate while the ring
// stays inside the domain of analyticity).
cplx ring_derivative(const std::function<cplx(cplx)>& fn, cplx center, int j,
                     double radius, int points = 24);

// j-th derivative by balanced-step 4th-order central differences (fallback
// for plain closures without an analytic extension).
double fd_derivative(const std::function<double(double)>& fn, double s, int j);
cplx fd_derivative(const std::function<cplx(double)>& fn, double s, int j);

}  // namespace csf

#endif  // CSF_SPECIALFN_HPP_
