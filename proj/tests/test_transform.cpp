#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "csf/spherical.hpp"
#include "csf/transform.hpp"
#include "oracles.hpp"

using namespace csf;
using std::numbers::pi;

TEST_CASE("quadrature normalization and orthogonality") {
  auto s2 = parse_space("S2");
  for (int N : {1, 4, 64}) {
    auto quad = quadrature(s2, N);
    auto one = integrate(quad, [](const std::vector<double>&) {
      return std::complex<double>(1.0);
    });
    CHECK(std::abs(one - 1.0) < 1e-13);
  }
  // int psi_1 psi_1 = 1/3 on S^2
  auto quad = quadrature(s2, 8);
  auto v = integrate(quad, [&](const std::vector<double>& t) {
    auto p = lattice_kernel(s2, Weight{{1}}, t);
    return p * p;
  });
  CHECK(v.real() == doctest::Approx(1.0 / 3).epsilon(1e-12));

  // circle rule: int cos^2(k th) = 1/2
  auto t1 = parse_space("T1");
  auto cquad = quadrature(t1, 32);
  for (int k : {1, 3, 7}) {
    auto c = integrate(cquad, [&](const std::vector<double>& t) {
      double x = std::cos(k * t[0]);
      return std::complex<double>(x * x);
    });
    CHECK(c.real() == doctest::Approx(0.5).epsilon(1e-13));
  }

  // polynomial exactness in cos t up to degree 2N-1
  auto q5 = quadrature(s2, 5);
  for (int d = 0; d <= 9; ++d) {
    auto got = integrate(q5, [&](const std::vector<double>& t) {
      return std::complex<double>(std::pow(std::cos(t[0]), d));
    });
    double exact = oracle::simpson(
        [&](double t) { return std::pow(std::cos(t), d) * std::sin(t) / 2; }, 0,
        pi);
    CHECK(std::abs(got.real() - exact) < 1e-10);
  }
}

TEST_CASE("forward: Schur orthogonality and bounds") {
  for (const char* name : {"S2", "RP2", "CP2"}) {
    auto space = parse_space(name);
    auto lattice = lattice_points(space, 10);
    auto quad = quadrature(space, adequate_nodes(10));
    for (const auto& nu : lattice) {
      auto f = spherical_profile(space, nu);
      for (const auto& mu : lattice) {
        auto v = forward(space, quad, f, mu);
        double expect = (mu == nu) ? 1.0 / dimension(space, mu) : 0.0;
        CHECK(std::abs(v - expect) < 1e-11);
        CHECK(std::abs(v) <= 1.0 + 1e-12);  // |forward| <= sup |psi_nu| = 1
      }
    }
  }
}

TEST_CASE("forward on the signed product lattice") {
  auto prod = parse_space("S2xT1");
  auto lattice = lattice_points(prod, 3);
  auto quad = quadrature(prod, 64);
  for (const auto& nu : lattice) {
    auto f = spherical_profile(prod, nu);
    for (const auto& mu : lattice) {
      auto v = forward(prod, quad, f, mu);
      double expect = (mu == nu) ? 1.0 / dimension(prod, mu) : 0.0;
      CHECK(std::abs(v - expect) < 1e-11);
    }
  }
}

TEST_CASE("forward examples") {
  auto s2 = parse_space("S2");
  auto quad = quadrature(s2, 64);
  auto one = constant_profile(s2, 1.0);
  CHECK(std::abs(forward(s2, quad, one, Weight{{0}}) - 1.0) < 1e-12);
  CHECK(std::abs(forward(s2, quad, one, Weight{{3}})) < 1e-12);

  // f = bump(0.5): zeroth coefficient equals the direct integral
  auto f = bump_profile(s2, 0.5);
  auto direct = integrate(quad, [&](const std::vector<double>& t) {
    return f.eval(t);
  });
  CHECK(std::abs(forward(s2, quad, f, Weight{{0}}) - direct) < 1e-10);

  // resolution guard
  auto small = quadrature(s2, 16);
  CHECK_THROWS_AS(forward(s2, small, f, Weight{{20}}), resolution_error);
}

TEST_CASE("forward_table matches forward") {
  auto s2 = parse_space("S2");
  auto f = bump_profile(s2, 0.8);
  auto table = forward_table(s2, f, 12);
  auto quad = quadrature(s2, adequate_nodes(12));
  for (const auto& [mu, v] : table.values)
    CHECK(std::abs(v - forward(s2, quad, f, mu)) < 1e-13);

  auto prod = parse_space("S2xT1");
  auto g = bump_profile(prod, 0.7);
  auto ptable = forward_table(prod, g, 5);
  auto pquad = quadrature(prod, adequate_nodes(5));
  for (const auto& [mu, v] : ptable.values)
    CHECK(std::abs(v - forward(prod, pquad, g, mu)) < 1e-13);
}

TEST_CASE("synthesize") {
  auto s2 = parse_space("S2");
  // single Schur term reproduces psi_nu
  Weight nu{{4}};
  CoefficientTable c;
  c.max_norm = 20;
  c.values[nu] = 1.0 / dimension(s2, nu);
  for (double t : {0.3, 1.2, 2.5})
    CHECK(synthesize(s2, c, {t}).real() ==
          doctest::Approx(lattice_kernel(s2, nu, {t}).real()).epsilon(1e-12));

  CoefficientTable c0;
  c0.max_norm = 20;
  c0.values[Weight{{0}}] = 1.0;
  for (double t : {0.1, 1.8})
    CHECK(synthesize(s2, c0, {t}).real() == doctest::Approx(1.0));
}

TEST_CASE("round trip converges with the truncation") {
  auto s2 = parse_space("S2");
  auto f = bump_profile(s2, 1.0);
  double prev = 1e9;
  for (double B : {40.0, 80.0, 160.0}) {
    auto table = forward_table(s2, f, B);
    double sup = 0;
    for (int i = 0; i <= 60; ++i) {
      double t = pi * i / 60 * 0.999;
      sup = std::max(sup, std::abs(synthesize(s2, table, {t}) - f.eval({t})));
    }
    CHECK(sup < prev);
    prev = sup;
  }
  // edge-regularity limited: roughly e^{-sqrt(2 r B)} coefficient tails
  CHECK(prev < 5e-4);
}

TEST_CASE("Parseval consistency") {
  auto s2 = parse_space("S2");
  auto f = bump_profile(s2, 1.0);
  auto table = forward_table(s2, f, 80);
  double sum = 0;
  for (const auto& [mu, v] : table.values)
    sum += dimension(s2, mu) * std::norm(v);
  auto quad = quadrature(s2, 256);
  auto l2 = integrate(quad, [&](const std::vector<double>& t) {
    return std::complex<double>(std::norm(f.eval(t)));
  });
  CHECK(sum == doctest::Approx(l2.real()).epsilon(1e-8));
}

TEST_CASE("Laplacian intertwining") {
  auto s2 = parse_space("S2");
  const Factor& fac = s2.factors[0];
  auto f = bump_profile(s2, 1.2);
  // radial Laplacian of the bump through its analytic derivatives
  RadialProfile lapf;
  lapf.support_radius = f.support_radius;
  lapf.smooth = true;
  lapf.eval = [&](const std::vector<double>& t) {
    double s = std::abs(t[0]);
    if (s >= 1.2) return std::complex<double>(0.0);
    auto d2 = f.deriv(t, {2});
    auto d1 = f.deriv(t, {1});
    return d2 + radial_log_density_derivative(fac, s) * d1;
  };
  // the edge-flat integrand needs dense rules to reach 1e-6 coefficients
  auto table = forward_table(s2, f, 12, 320);
  auto quad = quadrature(s2, 320);
  for (const auto& [mu, v] : table.values) {
    auto lhs = forward(s2, quad, lapf, mu);
    auto rhs = -eigenvalue(s2, mu) * v;
    CHECK(std::abs(lhs - rhs) < 1e-6 * (1 + std::abs(rhs)));
  }
}

TEST_CASE("absolute convergence is Cauchy in the truncation") {
  auto s2 = parse_space("S2");
  auto f = bump_profile(s2, 1.0);
  auto table = forward_table(s2, f, 120);
  double inc40 = 0, inc120 = 0;
  for (const auto& [mu, v] : table.values) {
    double term = dimension(s2, mu) * std::abs(v);
    if (mu.norm() > 20 && mu.norm() <= 40) inc40 += term;
    if (mu.norm() > 100 && mu.norm() <= 120) inc120 += term;
  }
  CHECK(inc120 < 0.05 * inc40);
}

TEST_CASE("decay profile") {
  auto s2 = parse_space("S2");
  // single Schur table: sups are exact powers
  Weight nu{{3}};
  CoefficientTable c;
  c.max_norm = 30;
  c.values[nu] = 1.0 / dimension(s2, nu);
  auto rep = decay_profile(c, 8);
  for (int k = 0; k <= 8; ++k)
    CHECK(rep.sups[k] ==
          doctest::Approx(std::pow(1 + nu.norm(), k) / dimension(s2, nu)));

  // constant table (delta at o): weighted sups grow with the truncation
  auto delta_sup = [&](double B) {
    CoefficientTable t;
    t.max_norm = B;
    for (const auto& mu : lattice_points(s2, B)) t.values[mu] = 1.0;
    return decay_profile(t, 2).sups[1];
  };
  CHECK(delta_sup(80) > 1.9 * delta_sup(40));

  CoefficientTable small;
  small.max_norm = 10;
  CHECK_THROWS_AS(decay_profile(small, 4), std::invalid_argument);
}

TEST_CASE("table serialization round trip") {
  auto prod = parse_space("S2xT1");
  auto f = bump_profile(prod, 0.6);
  auto table = forward_table(prod, f, 4);
  auto text = serialize(table);
  auto back = parse_table(text, prod.rank());
  CHECK(back.max_norm == table.max_norm);
  REQUIRE(back.values.size() == table.values.size());
  for (const auto& [mu, v] : table.values)
    CHECK(std::abs(back.values.at(mu) - v) < 1e-16);
  // deterministic bytes
  CHECK(serialize(table) == text);
}

TEST_CASE("profile support declaration") {
  auto s2 = parse_space("S2");
  for (double r : {0.4, 1.0}) {
    auto f = bump_profile(s2, r);
    for (int i = 0; i <= 50; ++i) {
      double t = pi * i / 50;
      if (t > r) CHECK(std::abs(f.eval({t})) == 0.0);
    }
  }
  // RP folding: a radial profile sees the distance, not the coordinate
  auto rp2 = parse_space("RP2");
  auto g = bump_profile(rp2, 0.5);
  CHECK(g.eval({pi - 0.2}).real() == doctest::Approx(g.eval({0.2}).real()));
}
