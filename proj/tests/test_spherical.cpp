#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "csf/spherical.hpp"
#include "csf/specialfn.hpp"
#include "oracles.hpp"

using namespace csf;
using std::numbers::pi;

namespace {

SpectralPoint sp1(std::complex<double> l) { return SpectralPoint{{l}}; }
RadialPoint rp1(std::complex<double> t) { return RadialPoint{{t}}; }

}  // namespace

TEST_CASE("normalization at the base point") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> U(-3, 3);
  for (const char* name : {"S2", "S3", "CP2", "RP3", "S2xT1"}) {
    auto space = parse_space(name);
    for (int it = 0; it < 10; ++it) {
      SpectralPoint lam;
      RadialPoint o;
      for (std::size_t j = 0; j < space.rank(); ++j) {
        lam.coords.emplace_back(U(rng), U(rng) / 2);
        o.t.emplace_back(0.0, 0.0);
      }
      CHECK(std::abs(spherical_at(space, lam, o) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("Legendre values on the sphere") {
  auto s2 = parse_space("S2");
  CHECK(spherical_at(s2, sp1(1.0), rp1(pi / 3)).real() ==
        doctest::Approx(0.5).epsilon(1e-13));
  for (double t : {0.2, 1.0, 2.8})
    CHECK(std::abs(spherical_at(s2, sp1(0.0), rp1(t)) - 1.0) < 1e-13);
  for (int l = 0; l <= 6; ++l)
    for (double t : {0.3, 1.3, 2.4}) {
      CHECK(spherical_at(s2, sp1(double(l)), rp1(t)).real() ==
            doctest::Approx(oracle::legendre(l, std::cos(t))).epsilon(1e-12));
    }
}

TEST_CASE("lattice vs continuation evaluator") {
  // the polynomial recurrence and the continuation path must agree on
  // lattice points
  for (const char* name : {"S2", "S3", "CP2", "RP3"}) {
    auto space = parse_space(name);
    const Factor& f = space.factors[0];
    for (int k = 0; k <= 25; k += 3) {
      for (double t : {0.1, 0.6, 1.2, 1.5}) {
        auto poly = factor_spherical(f, double(k), t);
        auto cont = jacobi_function(f.jacobi_a, f.jacobi_b, double(k),
                                    std::cos(t));
        CHECK(std::abs(poly - cont) < 1e-10 * (1 + std::abs(poly)));
      }
    }
  }
}

TEST_CASE("Weyl symmetry in the spectral parameter") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> U(-4, 4);
  std::uniform_real_distribution<double> T(0.05, 1.5);
  for (const char* name : {"S2", "CP2", "S2xT1"}) {
    auto space = parse_space(name);
    for (int it = 0; it < 60; ++it) {
      SpectralPoint lam;
      RadialPoint x;
      for (std::size_t j = 0; j < space.rank(); ++j) {
        lam.coords.emplace_back(U(rng), U(rng) / 2);
        x.t.emplace_back(T(rng), 0.0);
      }
      auto base = spherical_at(space, lam, x);
      for (const auto& img : weyl_images(space, lam)) {
        auto v = spherical_at(space, img, x);
        CHECK(std::abs(v - base) < 1e-10 * (1 + std::abs(base)));
      }
    }
  }
}

TEST_CASE("boundedness on the real slice") {
  for (const char* name : {"S2", "S3", "CP2"}) {
    auto space = parse_space(name);
    for (int k = 0; k <= 20; ++k)
      for (int i = 0; i <= 40; ++i) {
        double t = pi * i / 40;
        auto v = lattice_kernel(space, Weight{{k}}, {t});
        CHECK(std::abs(v) <= 1 + 1e-12);
      }
  }
}

TEST_CASE("eigenfunction property under the radial Laplacian") {
  // 4th-order FD radial Laplacian matches -omega(mu) psi_mu
  for (const char* name : {"S2", "S3", "S4", "RP2", "CP2", "CP3"}) {
    auto space = parse_space(name);
    const Factor& f = space.factors[0];
    for (int k = f.sublattice; k <= 10; k += f.sublattice) {
      Weight mu{{k}};
      double om = eigenvalue(space, mu);
      double h = 2e-3;
      for (double t : {0.5, 0.9, 1.3}) {
        auto psi = [&](double x) {
          return lattice_kernel(space, mu, {x}).real();
        };
        double p0 = psi(t);
        if (std::abs(p0) < 0.1) continue;
        double d1 = (-psi(t + 2 * h) + 8 * psi(t + h) - 8 * psi(t - h) +
                     psi(t - 2 * h)) / (12 * h);
        double d2 = (-psi(t + 2 * h) + 16 * psi(t + h) - 30 * p0 +
                     16 * psi(t - h) - psi(t - 2 * h)) / (12 * h * h);
        double lap = d2 + radial_log_density_derivative(f, t) * d1;
        CHECK(-lap / p0 == doctest::Approx(om).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("growth bound envelope") {
  auto s2 = parse_space("S2");
  // lattice weights on the real slice: bound >= 1 >= |psi|
  for (int k : {0, 1, 5, 12})
    for (double t : {0.2, 0.9, 1.4}) {
      double b = growth_bound(s2, sp1(double(k)), rp1(t));
      CHECK(b >= std::abs(spherical_at(s2, sp1(double(k)), rp1(t))));
      CHECK(b >= 1.0);
    }
  // imaginary spectral rays grow like e^{sigma t}
  for (double sigma : {5.0, 10.0, 20.0}) {
    double t = 0.4;
    auto v = std::abs(spherical_at(s2, sp1({0.0, sigma}), rp1(t)));
    double b = growth_bound(s2, sp1({0.0, sigma}), rp1(t));
    CHECK(v <= b);
    CHECK(b <= growth_bound(s2, sp1({0.0, 0.0}), rp1(0.0)) *
                   std::exp(sigma * t) * std::exp(0.5 * t) + 1e-9);
  }
  // real spectral parameter at real points: no exponential factor
  for (double sigma : {5.0, 10.0, 20.0}) {
    double b = growth_bound(s2, sp1(sigma), rp1(0.4));
    CHECK(std::abs(spherical_at(s2, sp1(sigma), rp1(0.4))) <= b);
  }
  // random complex grid inside 0.95 * closed Omega
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> X(0.0, 0.95 * pi / 2);
  std::uniform_real_distribution<double> Y(-0.7, 0.7);
  std::uniform_real_distribution<double> L(-6, 6);
  for (int it = 0; it < 120; ++it) {
    SpectralPoint lam = sp1({L(rng), L(rng)});
    RadialPoint x = rp1({X(rng), Y(rng)});
    try {
      auto v = std::abs(spherical_at(s2, lam, x));
      CHECK(v <= growth_bound(s2, lam, x) * (1 + 1e-9));
    } catch (const accuracy_error&) {
      // outside the series' reliable region; acceptable for the sweep
    }
  }
}

TEST_CASE("radial derivatives") {
  auto s2 = parse_space("S2");
  // order 0 is the plain value
  CHECK(radial_derivative(s2, sp1(3.0), rp1(0.7), {0}).real() ==
        doctest::Approx(spherical_at(s2, sp1(3.0), rp1(0.7)).real()));
  // d/dt P_2(cos t) vanishes at pi/2
  CHECK(std::abs(radial_derivative(s2, sp1(2.0), rp1(pi / 2), {1})) < 1e-10);
  // first derivative vanishes at the origin (even functions)
  CHECK(std::abs(radial_derivative(s2, sp1(5.0), rp1(0.0), {1})) < 1e-10);
  // Legendre derivative closed form
  for (int l = 1; l <= 5; ++l)
    for (double t : {0.4, 1.1, 2.0}) {
      double expect = -std::sin(t) * oracle::legendre_derivative(l, std::cos(t));
      CHECK(radial_derivative(s2, sp1(double(l)), rp1(t), {1}).real() ==
            doctest::Approx(expect).epsilon(1e-10));
    }
  // general-lambda ring derivative against finite differences
  SpectralPoint lam = sp1({2.3, 1.1});
  auto f = [&](double t) { return spherical_at(s2, lam, rp1(t)); };
  for (int j : {1, 2, 3}) {
    auto ring = radial_derivative(s2, lam, rp1(0.6), {j});
    auto fd = fd_derivative(std::function<cplx(double)>(f), 0.6, j);
    CHECK(std::abs(ring - fd) < 1e-6 * (1 + std::abs(ring)));
  }
  // derivative envelope: |psi^(j)| <= C (1+|lam|)^j e^{|x| |Im lam|}
  double C = 0;
  for (double sigma : {5.0, 10.0, 20.0, 35.0, 50.0})
    for (int j = 0; j <= 4; ++j)
      for (double t : {0.2, 0.45, 0.7}) {
        auto d = std::abs(radial_derivative(s2, sp1({0.0, sigma}), rp1(t), {j}));
        double env = std::pow(1 + sigma, j) * std::exp(t * sigma);
        C = std::max(C, d / env);
      }
  double Cfit = 1.05 * C;
  for (double sigma : {7.0, 18.0, 42.0})
    for (int j = 0; j <= 4; ++j) {
      double t = 0.55;
      auto d = std::abs(radial_derivative(s2, sp1({0.0, sigma}), rp1(t), {j}));
      CHECK(d <= Cfit * std::pow(1 + sigma, j) * std::exp(t * sigma));
    }
}

TEST_CASE("products and domain errors") {
  auto prod = parse_space("S2xT1");
  SpectralPoint lam{{{2.0, 0.0}, {3.0, 0.0}}};
  RadialPoint x{{{0.8, 0.0}, {1.1, 0.0}}};
  auto v = spherical_at(prod, lam, x);
  auto s2 = parse_space("S2");
  CHECK(v.real() == doctest::Approx(spherical_at(s2, sp1(2.0), rp1(0.8)).real() *
                                    std::cos(3 * 1.1)));

  // circle factor accepts any angle; spectral kernel is the cosine
  auto t1 = parse_space("T1");
  CHECK(spherical_at(t1, sp1(2.5), rp1(7.0)).real() ==
        doctest::Approx(std::cos(2.5 * 7.0)));

  // real coordinates must stay in [0, pi] on rooted factors
  CHECK_THROWS_AS(spherical_at(s2, sp1(1.0), rp1(-0.2)), domain_error);
  CHECK_THROWS_AS(spherical_at(s2, sp1(1.0), rp1(3.5)), domain_error);
  // complex evaluation requires |Re t| < pi/2 off the lattice
  CHECK_THROWS_AS(spherical_at(s2, sp1({1.3, 0.2}), rp1({1.7, 0.1})),
                  domain_error);
}
