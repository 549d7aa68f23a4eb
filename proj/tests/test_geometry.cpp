#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "csf/geometry.hpp"
#include "csf/spherical.hpp"
#include "oracles.hpp"

using namespace csf;
using std::numbers::pi;

namespace {

Weight w(std::vector<int> c) { return Weight{std::move(c)}; }

}  // namespace

TEST_CASE("space parsing") {
  auto s2 = parse_space("S2");
  CHECK(s2.rank() == 1);
  CHECK(s2.factors[0].kind == FactorKind::Sphere);
  CHECK(s2.factors[0].mult_alpha == 1);
  CHECK(s2.factors[0].rho == doctest::Approx(0.5));

  auto rp3 = parse_space("RP3");
  CHECK(rp3.factors[0].sublattice == 2);
  CHECK(rp3.factors[0].diameter == doctest::Approx(pi / 2));

  auto cp2 = parse_space("CP2");
  CHECK(cp2.factors[0].mult_alpha == 2);
  CHECK(cp2.factors[0].mult_2alpha == 1);
  CHECK(cp2.factors[0].jacobi_a == doctest::Approx(1.0));
  CHECK(cp2.factors[0].jacobi_b == doctest::Approx(0.0));

  auto prod = parse_space("S2xT1");
  CHECK(prod.rank() == 2);
  CHECK(prod.factors[1].kind == FactorKind::Circle);
  CHECK(prod.validity_radius() == doctest::Approx(pi / 2));

  CHECK_THROWS_AS(parse_space("S1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_space("RP1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_space("X2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_space(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_space("S2x"), std::invalid_argument);
}

TEST_CASE("registry consistency") {
  for (const char* name : {"S2", "S3", "S4", "S5", "RP2", "RP3", "CP2", "CP3"}) {
    auto sp = parse_space(name);
    const Factor& f = sp.factors[0];
    // rho matches the effective Jacobi pair
    CHECK(f.rho == doctest::Approx((f.jacobi_a + f.jacobi_b + 1) / 2));
    if (f.mult_2alpha == 0) {
      // single-root factors: rho = (m_a + 2 m_2a) / 2 holds verbatim
      CHECK(f.rho == doctest::Approx((f.mult_alpha + 2 * f.mult_2alpha) / 2));
      CHECK(f.jacobi_a == doctest::Approx((f.mult_alpha - 1) / 2));
      CHECK(f.jacobi_b == doctest::Approx(f.jacobi_a));
    } else {
      // double-root factors in lattice units carry the quarter rule
      CHECK(f.rho == doctest::Approx((f.mult_alpha + 2 * f.mult_2alpha) / 4));
      CHECK(f.jacobi_a ==
            doctest::Approx((f.mult_alpha + f.mult_2alpha - 1) / 2));
      CHECK(f.jacobi_b == doctest::Approx((f.mult_2alpha - 1) / 2));
    }
    CHECK(f.omega_radius == doctest::Approx(pi / 2));
  }
  auto t1 = parse_space("T1");
  CHECK(t1.factors[0].rho == 0);
  CHECK(t1.factors[0].sublattice == 1);
}

TEST_CASE("lattice_points examples") {
  auto s2 = parse_space("S2");
  auto pts = lattice_points(s2, 3.5);
  REQUIRE(pts.size() == 4);
  for (int k = 0; k <= 3; ++k) CHECK(pts[k] == w({k}));

  auto rp2 = parse_space("RP2");
  auto rpts = lattice_points(rp2, 5);
  REQUIRE(rpts.size() == 3);
  CHECK(rpts[0] == w({0}));
  CHECK(rpts[1] == w({2}));
  CHECK(rpts[2] == w({4}));

  for (const char* name : {"S2", "CP2", "S2xT1"}) {
    auto sp = parse_space(name);
    auto zero = lattice_points(sp, 0);
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].norm() == 0);
  }

  auto prod = parse_space("S2xT1");
  auto ppts = lattice_points(prod, 2);
  CHECK(ppts.size() == 9);  // (0,0),(0,+-1),(1,0),(1,+-1),(0,+-2),(2,0)
  CHECK(ppts[0] == w({0, 0}));
}

TEST_CASE("lattice parity oracle for RP2") {
  // p = 2 sublattice = the sphere weights whose functions survive the
  // antipodal identification: psi_k(pi - t) = (-1)^k psi_k(t)
  auto s2 = parse_space("S2");
  for (int k = 0; k <= 6; ++k) {
    double t = 0.73;
    double a = lattice_kernel(s2, w({k}), {t}).real();
    double b = lattice_kernel(s2, w({k}), {pi - t}).real();
    bool even = std::abs(a - b) < 1e-12;
    bool odd = std::abs(a + b) < 1e-12;
    CHECK((even || odd));
    CHECK(even == (k % 2 == 0));
  }
}

TEST_CASE("semilattice closure") {
  for (const char* name : {"S2", "RP2", "CP2"}) {
    auto sp = parse_space(name);
    auto pts = lattice_points(sp, 20);
    for (const auto& a : pts)
      for (const auto& b : pts) {
        Weight s = a;
        for (std::size_t j = 0; j < s.coords.size(); ++j)
          s.coords[j] += b.coords[j];
        if (s.norm() <= 20) CHECK(in_lattice(sp, s));
      }
  }
  auto prod = parse_space("S2xT1");
  auto pts = lattice_points(prod, 8);
  for (const auto& a : pts)
    for (const auto& b : pts) {
      Weight s = a;
      for (std::size_t j = 0; j < s.coords.size(); ++j)
        s.coords[j] += b.coords[j];
      if (s.norm() <= 8) CHECK(in_lattice(prod, s));
    }
}

TEST_CASE("weyl_images") {
  auto s2 = parse_space("S2");
  SpectralPoint zero{{0.0}};
  auto orbit = weyl_images(s2, zero);
  REQUIRE(orbit.size() == 2);
  CHECK(orbit[1].coords[0].real() == doctest::Approx(-1.0));

  SpectralPoint fixed{{std::complex<double>(-0.5, 0.0)}};
  CHECK(weyl_images(s2, fixed).size() == 1);

  auto prod = parse_space("S2xT1");
  SpectralPoint lam{{{1.0, 0.0}, {3.0, 0.0}}};
  auto porb = weyl_images(prod, lam);
  REQUIRE(porb.size() == 4);
  // per-factor images: sphere 1 -> -1 - 2*(1/2) = -2, circle 3 -> -3
  bool found = false;
  for (const auto& p : porb)
    if (std::abs(p.coords[0].real() + 2.0) < 1e-14 &&
        std::abs(p.coords[1].real() + 3.0) < 1e-14)
      found = true;
  CHECK(found);
}

TEST_CASE("dimension closed forms and quadrature oracle") {
  auto s2 = parse_space("S2");
  CHECK(dimension(s2, w({0})) == 1);
  for (int l : {1, 2, 5, 11}) CHECK(dimension(s2, w({l})) == 2 * l + 1);

  auto s3 = parse_space("S3");
  for (int k : {1, 2, 3}) CHECK(dimension(s3, w({k})) == (k + 1) * (k + 1));

  auto cp2 = parse_space("CP2");
  CHECK(dimension(cp2, w({1})) == 8);
  CHECK(dimension(cp2, w({2})) == 27);

  auto cp3 = parse_space("CP3");
  CHECK(dimension(cp3, w({1})) == 15);

  auto prod = parse_space("S2xT1");
  CHECK(dimension(prod, w({2, -5})) == 5);

  // Schur-relation oracle: d(mu) = 1 / int psi_mu^2 against the normalized
  // radial measure, by composite Simpson (independent of the Gauss rules).
  for (const char* name : {"S2", "S3", "CP2"}) {
    auto sp = parse_space(name);
    const Factor& f = sp.factors[0];
    auto density = [&](double t) {
      return std::pow(std::sin(t / 2), 2 * f.jacobi_a + 1) *
             std::pow(std::cos(t / 2), 2 * f.jacobi_b + 1);
    };
    double mass = oracle::simpson(density, 0, pi);
    for (int k = 1; k <= 3; ++k) {
      double nrm = oracle::simpson(
          [&](double t) {
            double v = lattice_kernel(sp, w({k}), {t}).real();
            return v * v * density(t);
          },
          0, pi);
      CHECK(dimension(sp, w({k})) == doctest::Approx(mass / nrm).epsilon(1e-8));
    }
  }
}

TEST_CASE("eigenvalue") {
  auto s2 = parse_space("S2");
  CHECK(eigenvalue(s2, w({0})) == doctest::Approx(0.0));
  CHECK(eigenvalue(s2, w({2})) == doctest::Approx(6.0));
  SpectralPoint minus1{{std::complex<double>(-1.0, 0.0)}};
  CHECK(std::abs(eigenvalue(s2, minus1)) < 1e-15);

  auto cp2 = parse_space("CP2");
  CHECK(eigenvalue(cp2, w({1})) == doctest::Approx(3.0));  // k (k + 2 rho), rho = 1

  // Weyl invariance on random complex points
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(-4, 4);
  for (const char* name : {"S2", "CP2", "S2xT1"}) {
    auto sp = parse_space(name);
    for (int it = 0; it < 50; ++it) {
      SpectralPoint lam;
      for (std::size_t j = 0; j < sp.rank(); ++j)
        lam.coords.emplace_back(U(rng), U(rng));
      auto base = eigenvalue(sp, lam);
      for (const auto& img : weyl_images(sp, lam))
        CHECK(std::abs(eigenvalue(sp, img) - base) < 1e-12 * (1 + std::abs(base)));
    }
  }
}

TEST_CASE("contragredient") {
  auto s2 = parse_space("S2");
  CHECK(contragredient(s2, w({0})) == w({0}));
  CHECK(contragredient(s2, w({3})) == w({3}));

  auto prod = parse_space("S2xT1");
  CHECK(contragredient(prod, w({2, -5})) == w({2, 5}));

  // involution, norm and dimension preservation on an enumerated lattice
  auto pts = lattice_points(prod, 6);
  for (const auto& mu : pts) {
    auto ms = contragredient(prod, mu);
    CHECK(contragredient(prod, ms) == mu);
    CHECK(ms.norm() == doctest::Approx(mu.norm()));
    CHECK(dimension(prod, ms) == doctest::Approx(dimension(prod, mu)));
  }

  // circle-character conjugation oracle: conj(e^{ik th}) = e^{-ik th}
  auto t1 = parse_space("T1");
  double th = 1.234;
  auto val = lattice_kernel(t1, w({-5}), {th});
  auto conj_val = lattice_kernel(t1, w({5}), {th});
  CHECK(std::abs(std::conj(val) - conj_val) < 1e-15);
}

TEST_CASE("radial distances") {
  auto rp2 = parse_space("RP2");
  CHECK(radial_distance(rp2.factors[0], 1.8) == doctest::Approx(pi - 1.8));
  auto t1 = parse_space("T1");
  CHECK(radial_distance(t1.factors[0], 5.0) == doctest::Approx(2 * pi - 5.0));
  auto prod = parse_space("S2xT1");
  CHECK(radial_norm(prod, {0.3, -0.4}) == doctest::Approx(0.5));
}
