// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "common.hpp"
#include "widom/error.hpp"
#include "widom/extremal.hpp"

using namespace widom;
using widom::test::Approx;
using widom::test::asym;
using widom::test::e6;
using widom::test::interval;

namespace {

const ExtendedPoint kInf = ExtendedPoint::infinity();

ExtremalPoly solve(const FiniteGapSet& s, const Weight& w, ExtendedPoint xs, std::size_t n) {
  const auto sol = solve_extremal(s, w, xs, n);
  const auto rep = verify_alternation(sol, s, w);
  CHECK(rep.pass);
  return sol;
}

}  // namespace

TEST_SUITE("extremal") {
  TEST_CASE("Chebyshev polynomials of [-1, 1]") {
    for (std::size_t n = 1; n <= 12; ++n) {
      const auto sol = solve(interval(), Weight::unit(), kInf, n);
      CHECK(sol.t == Approx(std::pow(2.0, 1.0 - static_cast<double>(n))).epsilon(1e-12));
      CHECK(sol.degree == n);
      CHECK(sol.points.size() == n + 1);
      CHECK(sol.points.front() == Approx(-1.0));
      CHECK(sol.points.back() == Approx(1.0));
    }
    const auto t3 = solve(interval(), Weight::unit(), kInf, 3).coefficients();
    REQUIRE(t3.size() == 4);
    CHECK(t3[3] == Approx(1.0));
    CHECK(t3[1] == Approx(-0.75));
    CHECK(std::abs(t3[0]) < 1e-14);
    CHECK(std::abs(t3[2]) < 1e-14);
  }

  TEST_CASE("residual polynomials of [-1, 1]: T_n / T_n(x*)") {
    for (double x : {2.0, -1.5}) {
      for (std::size_t n = 1; n <= 10; ++n) {
        const auto sol = solve(interval(), Weight::unit(), ExtendedPoint::finite(x), n);
        const double tn = std::cosh(static_cast<double>(n) * std::acosh(std::abs(x)));
        CHECK(sol.t == Approx(1.0 / tn).epsilon(1e-11));
        CHECK(sol.value(x) == Approx(1.0).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("semicircle weight: monic U_n with norm 2^-n") {
    const auto w = Weight::semicircle({{-1.0, 1.0}});
    for (std::size_t n = 1; n <= 10; ++n)
      CHECK(solve(interval(), w, kInf, n).t == Approx(std::pow(2.0, -static_cast<double>(n))).epsilon(1e-11));
  }

  TEST_CASE("frozen linear-programming values") {
    // tests/oracles/generate.py; the LP values are grid lower bounds.
    CHECK(solve(interval(), Weight::abs_poly(widom::test::linear(0.3)), kInf, 5).t ==
          Approx(0.03316424021882494).epsilon(1e-7));
    CHECK(solve(interval(), Weight::abs_poly(widom::test::linear(0.3)), kInf, 6).t ==
          Approx(0.01827481010969234).epsilon(1e-7));
    CHECK(solve(asym(), Weight::unit(), kInf, 4).t == Approx(0.1152).epsilon(1e-7));
    CHECK(solve(asym(), Weight::unit(), kInf, 5).t == Approx(0.06101048258473924).epsilon(1e-7));
    CHECK(solve(asym(), Weight::unit(), ExtendedPoint::finite(0.1), 4).t == Approx(0.5901392547689497).epsilon(1e-7));
    CHECK(solve(asym(), Weight::recip_poly(widom::test::linear(2.0)), kInf, 4).t ==
          Approx(0.057153308601861935).epsilon(1e-7));
    CHECK(solve(interval(), Weight::exp_cusp(0.2, 1.0), kInf, 12).t == Approx(5.6805098746757735e-05).epsilon(1e-6));
    CHECK(solve(interval(), Weight::exp_cusp(0.2, 1.0), kInf, 13).t == Approx(3.17080472476892e-05).epsilon(1e-6));
  }

  TEST_CASE("degree drops on symmetric two-band set for odd n") {
    // On E6 the residual polynomial at x* = 0 is even, so odd n gives degree n - 1.
    const auto sol = solve(e6(), Weight::unit(), ExtendedPoint::finite(0.0), 3);
    CHECK(sol.degree == 2);
    CHECK(sol.value(0.0) == Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("alternation index and sign pattern") {
    const std::vector<double> pts{-1.0, 0.0, 1.0};
    CHECK(alternation_index(pts, kInf) == 3);
    CHECK(alternation_index(pts, ExtendedPoint::finite(2.0)) == 3);
    CHECK(alternation_index(pts, ExtendedPoint::finite(-2.0)) == 0);
    CHECK(alternation_index(pts, ExtendedPoint::finite(0.5)) == 2);
    const auto s = expected_signs(pts, kInf);
    CHECK(s == std::vector<int>{1, -1, 1});
    const auto s2 = expected_signs(pts, ExtendedPoint::finite(0.5));
    CHECK(s2 == std::vector<int>{-1, 1, 1});
  }

  TEST_CASE("renormalization within a gap matches a direct solve") {
    for (const auto& [s, n] : {std::pair{interval(), std::size_t{7}}, std::pair{asym(), std::size_t{6}}}) {
      const auto w = Weight::recip_poly(widom::test::linear(-2.0));
      const auto at_inf = solve(s, w, kInf, n);
      const auto moved = renormalize(at_inf, s, ExtendedPoint::finite(3.0));
      const auto direct = solve(s, w, ExtendedPoint::finite(3.0), n);
      CHECK(moved.t == Approx(direct.t).epsilon(1e-9));
      CHECK(moved.value(3.0) == Approx(1.0).epsilon(1e-12));
      const auto back = renormalize(direct, s, kInf);
      CHECK(back.t == Approx(at_inf.t).epsilon(1e-9));
    }
    const auto sol = solve(asym(), Weight::unit(), kInf, 4);
    CHECK_THROWS_AS(renormalize(sol, asym(), ExtendedPoint::finite(0.1)), Error);
  }

  TEST_CASE("monotonicity in the weight") {
    // w1 <= w2 on E implies t_n(w1) <= t_n(w2).
    const auto s = asym();
    const auto w1 = Weight::abs_poly(widom::test::linear(0.3));
    const auto w2 = Weight::abs_poly(PolyFactor{1.0, {std::complex<double>(0.3, 0.4)}});
    for (std::size_t n : {3, 6}) CHECK(solve(s, w1, kInf, n).t <= solve(s, w2, kInf, n).t * (1.0 + 1e-12));
  }

  TEST_CASE("scaling of the weight and affine maps of the set") {
    const auto s = asym();
    const auto w = Weight::abs_poly(widom::test::linear(0.3));
    const double t = solve(s, w, kInf, 5).t;
    CHECK(solve(s, w.scaled(3.0), kInf, 5).t == Approx(3.0 * t).epsilon(1e-10));
    // x -> 2x + 1 maps E to [-1, 0.6] u [1.8, 3]; the zero 0.3 goes to 1.6, |x - 0.3| = |y - 1.6| / 2.
    const auto s2 = widom::test::set_of({{-1.0, 0.6}, {1.8, 3.0}});
    const auto w2 = Weight::abs_poly(PolyFactor{0.5, {std::complex<double>(1.6, 0.0)}});
    CHECK(solve(s2, w2, kInf, 5).t == Approx(t * std::pow(2.0, 5.0)).epsilon(1e-10));
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(solve_extremal(interval(), Weight::unit(), kInf, 0), Error);
    CHECK_THROWS_AS(solve_extremal(interval(), Weight::unit(), ExtendedPoint::finite(0.5), 3), Error);
    CHECK_THROWS_AS(solve_extremal(interval(), Weight::recip_poly(widom::test::linear(0.5)), kInf, 3), Error);
  }
}
