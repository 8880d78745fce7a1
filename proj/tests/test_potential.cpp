// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "common.hpp"
#include "widom/potential.hpp"

using namespace widom;
using widom::test::Approx;
using widom::test::asym;
using widom::test::e6;
using widom::test::interval;

namespace {

// Values from tests/oracles/generate.py (mpmath quadrature of Q / sqrt|R|).
constexpr double kAsymQZero = 0.10494657358000714;
constexpr double kAsymLogCap = -0.74085952895580132;
constexpr double kAsymOmega1 = 0.53426340719791108;
constexpr double kE6G03 = 0.61082102237668735;

// g for [-1, 1]: log|z + sqrt(z^2 - 1)| on the branch outside the interval.
double green_interval(std::complex<double> z) {
  std::complex<double> s = std::sqrt(z - 1.0) * std::sqrt(z + 1.0);
  return std::log(std::abs(z + s));
}

}  // namespace

TEST_SUITE("potential") {
  TEST_CASE("interval: capacity, density, Green function") {
    const Equilibrium eq(interval());
    CHECK(eq.capacity() == Approx(0.5).epsilon(1e-14));
    CHECK(eq.robin() == Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(eq.q_zeros().empty());
    CHECK(eq.density(0.0) == Approx(1.0 / std::numbers::pi));
    CHECK(eq.density(1.5) == 0.0);
    CHECK(eq.mass(-1.0, 1.0) == Approx(1.0).epsilon(1e-13));
    CHECK(eq.mass(0.0, 0.5) == Approx(std::asin(0.5) / std::numbers::pi).epsilon(1e-12));
    for (double x : {1.01, 1.5, 2.0, 3.7, 10.0, 1e3, -2.0}) CHECK(eq.green(x) == Approx(green_interval(x)).epsilon(1e-13));
    for (auto z : {std::complex<double>(0.0, 0.5), std::complex<double>(0.9, 0.01), std::complex<double>(-3.0, 2.0)})
      CHECK(eq.green(z) == Approx(green_interval(z)).epsilon(1e-12));
    CHECK(eq.green_derivative(2.0) == Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  }

  TEST_CASE("two symmetric bands: capacity 0.4, g(0) = log 2") {
    const Equilibrium eq(e6());
    CHECK(eq.capacity() == Approx(0.4).epsilon(1e-12));
    REQUIRE(eq.q_zeros().size() == 1);
    CHECK(std::abs(eq.q_zeros()[0]) < 1e-13);
    CHECK(eq.green(0.0) == Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(eq.green(0.3) == Approx(kE6G03).epsilon(1e-12));
    // E6 is the preimage of [0.36, 1] under x^2, so g_E6(z) = g_[0.36,1](z^2) / 2.
    for (double x : {0.1, 0.5, 1.2, 4.0}) {
      const double u = (x * x - 0.68) / 0.32;
      CHECK(eq.green(x) == Approx(0.5 * green_interval(u)).epsilon(1e-12));
    }
  }

  TEST_CASE("asymmetric two bands against frozen quadrature values") {
    const Equilibrium eq(asym());
    CHECK(eq.log_capacity() == Approx(kAsymLogCap).epsilon(1e-12));
    REQUIRE(eq.q_zeros().size() == 1);
    CHECK(eq.q_zeros()[0] == Approx(kAsymQZero).epsilon(1e-12));
    CHECK(eq.green(0.1) == Approx(0.31135110582548266).epsilon(1e-12));
    CHECK(eq.green(-0.1) == Approx(0.23120607834565079).epsilon(1e-12));
    CHECK(eq.green(0.3) == Approx(0.23630530360436678).epsilon(1e-12));
    CHECK(eq.green(1.5) == Approx(1.0010842055141004).epsilon(1e-12));
    CHECK(eq.green(-3.0) == Approx(1.8063319728094871).epsilon(1e-12));
    CHECK(eq.mass(-1.0, -0.2) == Approx(kAsymOmega1).epsilon(1e-12));
    for (double r : eq.gap_periods()) CHECK(std::abs(r) < 1e-13);
  }

  TEST_CASE("g vanishes on the set and is positive off it") {
    for (const auto& s : {interval(), e6(), asym()}) {
      const Equilibrium eq(s);
      for (double x : sample_grid(s, 25)) CHECK(eq.green(x) == 0.0);
      for (const auto& g : s.gaps())
        if (g.kind == GapKind::Bounded) CHECK(eq.green(0.5 * (g.left + g.right)) > 0.0);
      CHECK(eq.green(std::complex<double>(0.0, 1e-3)) > 0.0);
    }
  }

  TEST_CASE("g(z) - log|z| tends to -log cap") {
    const Equilibrium eq(asym());
    CHECK(eq.green(1e7) - std::log(1e7) == Approx(-kAsymLogCap).epsilon(1e-7));
  }

  TEST_CASE("finite poles: interval closed form") {
    // g(z, x0) for [-1, 1], x0 real outside: log |(1 - z x0 - s(z) s(x0)) / (z - x0)|.
    const GreenFunction g(interval(), ExtendedPoint::finite(2.0));
    const double s2 = std::sqrt(3.0);
    for (double z : {1.5, -1.5, 5.0}) {
      const double sz = std::copysign(std::sqrt(z * z - 1.0), z);
      const double exact = std::log(std::abs((1.0 - z * 2.0 - sz * s2) / (z - 2.0)));
      CHECK(g(z) == Approx(exact).epsilon(1e-11));
    }
    CHECK(g(ExtendedPoint::infinity()) == Approx(std::log(2.0 + s2)).epsilon(1e-12));
    CHECK(g(0.5) == 0.0);
  }

  TEST_CASE("symmetry g(a, b) = g(b, a)") {
    std::mt19937 rng(7);
    for (const auto& s : {e6(), asym()}) {
      std::vector<double> pts;
      for (const auto& gap : s.gaps()) {
        if (gap.kind == GapKind::Bounded) {
          std::uniform_real_distribution<double> u(gap.left + 0.02, gap.right - 0.02);
          for (int i = 0; i < 3; ++i) pts.push_back(u(rng));
        }
      }
      for (double x : {-2.5, 1.7, 9.0}) pts.push_back(x);
      for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
          const double ab = GreenFunction(s, ExtendedPoint::finite(pts[j]))(pts[i]);
          const double ba = GreenFunction(s, ExtendedPoint::finite(pts[i]))(pts[j]);
          CHECK(ab == Approx(ba).epsilon(1e-9));
        }
    }
  }

  TEST_CASE("pole shift identity agrees with direct evaluation") {
    const auto s = asym();
    const GreenFunction g(s, ExtendedPoint::finite(0.1));
    for (double z : {-0.1, 0.3, 2.0, -4.0}) CHECK(green_cross(s, z, std::complex<double>(0.1)) == Approx(g(z)).epsilon(1e-9));
    const std::complex<double> z(0.2, 0.3);
    CHECK(green_cross(s, std::complex<double>(0.1), z) == Approx(g(z)).epsilon(1e-9));
    CHECK_THROWS(green_cross(s, std::complex<double>(0.0, 1.0), std::complex<double>(0.2, 1.0)));
  }

  TEST_CASE("critical points and PW") {
    const GreenFunction g(e6(), ExtendedPoint::infinity());
    REQUIRE(g.critical_points().size() == 1);
    CHECK(std::abs(g.critical_points()[0].location.value()) < 1e-12);
    CHECK(g.pw_sum() == Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(GreenFunction(interval(), ExtendedPoint::infinity()).pw_sum() == 0.0);
    // Finite pole in the bounded gap: the critical point moves to the unbounded gap.
    const GreenFunction gf(e6(), ExtendedPoint::finite(0.0));
    REQUIRE(gf.critical_points().size() == 1);
    CHECK(gf.critical_points()[0].location.is_infinite());
    for (const auto& c : g.critical_points()) CHECK(std::abs(g.derivative(c.location.value())) < 1e-10);
  }

  TEST_CASE("harmonic measure") {
    const HarmonicMeasure inf(asym(), ExtendedPoint::infinity());
    CHECK(inf.total_mass() == Approx(1.0).epsilon(1e-12));
    CHECK(inf.mass(-1.0, -0.2) == Approx(kAsymOmega1).epsilon(1e-12));
    const HarmonicMeasure h(interval(), ExtendedPoint::finite(2.0));
    CHECK(h.total_mass() == Approx(1.0).epsilon(1e-12));
    // Poisson kernel of the exterior of [-1, 1] seen from 2: sqrt(3) / (pi (2 - t) sqrt(1 - t^2)).
    CHECK(h.density(0.5) == Approx(std::sqrt(3.0) / (std::numbers::pi * 1.5 * std::sqrt(0.75))).epsilon(1e-11));
    const HarmonicMeasure hg(e6(), ExtendedPoint::finite(0.2));
    CHECK(hg.total_mass() == Approx(1.0).epsilon(1e-11));
    CHECK(hg.mass(0.6, 1.0) > hg.mass(-1.0, -0.6));
  }

  TEST_CASE("Szego factors") {
    const auto I = interval();
    const auto inf = ExtendedPoint::infinity();
    CHECK(szego_factor(I, Weight::unit(), inf).value == Approx(1.0).epsilon(1e-14));
    CHECK(szego_factor(I, Weight::semicircle({{-1.0, 1.0}}), inf).value == Approx(0.5).epsilon(1e-12));
    const auto r3 = Weight::recip_poly(widom::test::linear(3.0));
    const double closed = 2.0 / (3.0 + 2.0 * std::sqrt(2.0));
    CHECK(szego_factor(I, r3, inf).value == Approx(closed).epsilon(1e-12));
    CHECK(szego_recip_poly(I, widom::test::linear(3.0), inf) == Approx(closed).epsilon(1e-13));
    CHECK(szego_factor(I, Weight::abs_poly(widom::test::linear(0.3)), inf).value == Approx(0.5).epsilon(1e-12));
    const auto cusp = szego_factor(I, Weight::exp_cusp(0.2, 1.0), inf);
    CHECK(cusp.divergent);
    CHECK(cusp.value == 0.0);
    // Cusp centred off the set: finite.
    CHECK_FALSE(szego_factor(I, Weight::exp_cusp(1.5, 0.1), inf).divergent);
  }

  TEST_CASE("Szego factor: quadrature against closed form, finite x* and several bands") {
    for (const auto& s : {e6(), asym()}) {
      for (const auto& xs : {ExtendedPoint::infinity(), ExtendedPoint::finite(0.1), ExtendedPoint::finite(2.5)}) {
        const auto p = poly_from_coefficients(std::vector<double>{5.0, 0.0, 1.0});  // x^2 + 5
        const double q = szego_factor(s, Weight::recip_poly(p), xs).value;
        CHECK(q == Approx(szego_recip_poly(s, p, xs)).epsilon(1e-10));
        const double q2 = szego_factor(s, Weight::recip_poly(widom::test::linear(1.7)), xs).value;
        CHECK(q2 == Approx(szego_recip_poly(s, widom::test::linear(1.7), xs)).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("Szego factor with x* at a zero of P") {
    const auto s = asym();
    const auto xs = ExtendedPoint::finite(0.1);
    const auto p = widom::test::linear(0.1);
    CHECK(szego_factor(s, Weight::recip_poly(p), xs).value == Approx(szego_recip_poly(s, p, xs)).epsilon(1e-9));
  }

  TEST_CASE("scaling of S") {
    const auto I = interval();
    const auto w = Weight::abs_poly(widom::test::linear(0.3));
    CHECK(szego_factor(I, w.scaled(2.5), ExtendedPoint::infinity()).value ==
          Approx(2.5 * szego_factor(I, w, ExtendedPoint::infinity()).value).epsilon(1e-12));
  }
}
