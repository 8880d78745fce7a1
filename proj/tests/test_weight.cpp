// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "common.hpp"
#include "widom/error.hpp"
#include "widom/quadrature.hpp"
#include "widom/weight.hpp"

using namespace widom;
using widom::test::Approx;

TEST_SUITE("weight") {
  TEST_CASE("polynomial factors from coefficients") {
    const auto p = poly_from_coefficients(std::vector<double>{2.0, -3.0, 1.0});  // (x - 1)(x - 2)
    CHECK(p.degree() == 2);
    CHECK(p.leading == 1.0);
    CHECK(p.abs_at(3.0) == Approx(2.0));
    CHECK(p.log_abs_at(0.0) == Approx(std::log(2.0)));
    auto z = p.real_zeros();
    std::sort(z.begin(), z.end());
    REQUIRE(z.size() == 2);
    CHECK(z[0] == Approx(1.0));
    CHECK(z[1] == Approx(2.0));

    const auto q = poly_from_coefficients(std::vector<double>{1.0, 0.0, 1.0});  // x^2 + 1
    CHECK(q.real_zeros().empty());
    CHECK(q.abs_at(2.0) == Approx(5.0));
    CHECK_THROWS_AS(poly_from_coefficients(std::vector<double>{0.0, 0.0}), Error);
  }

  TEST_CASE("evaluation of each kind") {
    CHECK(Weight::unit()(0.3) == 1.0);
    CHECK(Weight::abs_poly(widom::test::linear(0.3))(1.0) == Approx(0.7));
    CHECK(Weight::recip_poly(widom::test::linear(3.0))(1.0) == Approx(0.5));
    CHECK(Weight::semicircle({{-1.0, 1.0}})(0.6) == Approx(0.8));
    const auto s = Weight::sampled({0.0, 1.0}, {1.0, 3.0});
    CHECK(s(0.5) == Approx(2.0));
    CHECK(s(-1.0) == Approx(1.0));
    CHECK(s(2.0) == Approx(3.0));
    CHECK(Weight::exp_cusp(0.2, 1.0)(0.7) == Approx(std::exp(-2.0)));
    CHECK(Weight::exp_cusp(0.2, 1.0)(0.2) == 0.0);
    const auto prod = Weight::product({Weight::abs_poly(widom::test::linear(0.0)), Weight::semicircle({{-1.0, 1.0}})});
    CHECK(prod(0.6) == Approx(0.48));
  }

  TEST_CASE("log of a vanishing weight is -inf") {
    CHECK(Weight::abs_poly(widom::test::linear(0.3)).log(0.3) == -std::numeric_limits<double>::infinity());
    CHECK(Weight::exp_cusp(0.2, 1.0).log(0.7) == Approx(-2.0));
  }

  TEST_CASE("invalid weights") {
    CHECK_THROWS_AS(Weight::semicircle({{1.0, 1.0}}), Error);
    CHECK_THROWS_AS(Weight::sampled({0.0, 0.0}, {1.0, 1.0}), Error);
    CHECK_THROWS_AS(Weight::sampled({0.0}, {1.0}), Error);
    const auto r = Weight::recip_poly(widom::test::linear(0.5));
    CHECK_THROWS_AS(r.validate_on(widom::test::interval()), Error);
    CHECK_NOTHROW(r.validate_on(widom::test::e6()));
  }

  TEST_CASE("reciprocal polynomial view") {
    CHECK(Weight::unit().as_recip_poly()->degree() == 0);
    CHECK(Weight::recip_poly(widom::test::linear(3.0)).as_recip_poly()->degree() == 1);
    CHECK_FALSE(Weight::abs_poly(widom::test::linear(0.3)).as_recip_poly().has_value());
    CHECK_FALSE(Weight::semicircle({{-1.0, 1.0}}).as_recip_poly().has_value());
    const auto c = Weight::abs_poly(PolyFactor{2.0, {}}).as_recip_poly();
    REQUIRE(c.has_value());
    CHECK(c->leading == Approx(0.5));
  }

  TEST_CASE("scaling") {
    const auto w = Weight::semicircle({{-1.0, 1.0}});
    CHECK(w.scaled(3.0)(0.6) == Approx(2.4));
  }

  TEST_CASE("log zeros and singular points") {
    const auto w = Weight::product({Weight::abs_poly(widom::test::linear(0.3)), Weight::semicircle({{-1.0, 1.0}})});
    const auto z = w.log_zeros();
    REQUIRE(z.size() == 3);
    double total = 0.0;
    for (const auto& [c, a] : z) total += a;
    CHECK(total == Approx(2.0));
    const auto sp = w.singular_points();
    CHECK(std::is_sorted(sp.begin(), sp.end()));
    CHECK(sp.size() == 3);
  }
}

TEST_SUITE("quadrature") {
  TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
    const auto& r = quad::gauss_legendre(8);
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], 14);
    CHECK(s == Approx(2.0 / 15.0).epsilon(1e-14));
  }

  TEST_CASE("smooth and singular integrands") {
    CHECK(quad::smooth([](double x) { return std::exp(x); }, 0.0, 1.0) == Approx(std::numbers::e - 1.0).epsilon(1e-14));
    // int_0^1 log x dx = -1
    CHECK(quad::singular([](double x) { return std::log(x); }, 0.0, 1.0) == Approx(-1.0).epsilon(1e-12));
    // int_{-1}^{1} log|x - 0.3| dx with an interior breakpoint
    const double exact = 1.3 * std::log(1.3) + 0.7 * std::log(0.7) - 2.0;
    const double cut[] = {0.3};
    CHECK(quad::singular([](double x) { return std::log(std::abs(x - 0.3)); }, -1.0, 1.0, cut) ==
          Approx(exact).epsilon(1e-12));
  }
}
