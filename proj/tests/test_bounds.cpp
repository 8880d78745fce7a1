// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "common.hpp"
#include "widom/bounds.hpp"

using namespace widom;
using widom::test::Approx;
using widom::test::asym;
using widom::test::e6;
using widom::test::interval;
using widom::test::linear;

namespace {
const ExtendedPoint kInf = ExtendedPoint::infinity();
}

TEST_SUITE("bounds") {
  TEST_CASE("context data") {
    const auto c = make_context(e6(), Weight::unit(), kInf);
    CHECK(std::exp(c.log_capacity) == Approx(0.4).epsilon(1e-12));
    CHECK(c.pw == Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(c.szego.value == Approx(1.0));
    CHECK(c.recip.has_value());
    CHECK(c.n0 == 1);
    const auto r = make_context(interval(), Weight::recip_poly(linear(3.0)), ExtendedPoint::finite(2.0));
    CHECK(r.g_star == Approx(std::log(2.0 + std::sqrt(3.0))).epsilon(1e-12));
    REQUIRE(r.szego_closed_form.has_value());
    CHECK(r.szego.value == Approx(*r.szego_closed_form).epsilon(1e-12));
  }

  TEST_CASE("equality on an interval for 1/|x - 3|") {
    const auto c = make_context(interval(), Weight::recip_poly(linear(3.0)), kInf);
    for (std::size_t n = 2; n <= 8; ++n) {
      const auto r = bound_report(c, n);
      CHECK(r.widom == Approx(2.0 * c.szego.value).epsilon(1e-9));
      CHECK(r.pass_szego_lb);
      CHECK(r.pass_sharp_lb.value());
      CHECK(r.pass_ub.value());
      CHECK(r.ub_is_theorem);
      CHECK_FALSE(r.strict_ub.has_value());
    }
  }

  TEST_CASE("residual: sharp lower bound is attained for finite x*") {
    const auto c = make_context(interval(), Weight::unit(), ExtendedPoint::finite(2.0));
    const double g = std::log(2.0 + std::sqrt(3.0));
    for (std::size_t n = 1; n <= 6; ++n) {
      const auto r = bound_report(c, n);
      CHECK(r.widom == Approx(2.0 / (1.0 + std::exp(-2.0 * static_cast<double>(n) * g))).epsilon(1e-10));
      CHECK(r.sharp_lb.value() == Approx(r.widom).epsilon(1e-10));
    }
  }

  TEST_CASE("two bands: strict upper bound when PW > 0") {
    for (const auto& s : {e6(), asym()}) {
      const auto c = make_context(s, Weight::recip_poly(linear(2.0)), kInf);
      for (std::size_t n = c.n0; n <= c.n0 + 5; ++n) {
        const auto r = bound_report(c, n);
        CHECK(r.pass_sharp_lb.value());
        CHECK(r.pass_ub.value());
        CHECK(r.strict_ub.value());
      }
    }
    const auto u = make_context(e6(), Weight::unit(), kInf);
    const auto r = bound_report(u, 5);
    CHECK(r.pass_lb2.value());
    CHECK(r.pass_ub2.value());
  }

  TEST_CASE("general weights report only S as a per-n lower bound") {
    const auto c = make_context(interval(), Weight::abs_poly(linear(0.3)), kInf);
    const auto r = bound_report(c, 5);
    CHECK(r.pass_szego_lb);
    CHECK_FALSE(r.sharp_lb.has_value());
    CHECK_FALSE(r.ub_is_theorem);
    CHECK_FALSE(r.pass_ub.has_value());
  }

  TEST_CASE("scaling: W and S scale together, flags unchanged") {
    const auto w = Weight::recip_poly(linear(2.0));
    const auto a = make_context(asym(), w, kInf);
    const auto b = make_context(asym(), w.scaled(4.0), kInf);
    CHECK(b.szego.value == Approx(4.0 * a.szego.value).epsilon(1e-12));
    const auto ra = bound_report(a, 5), rb = bound_report(b, 5);
    CHECK(rb.widom == Approx(4.0 * ra.widom).epsilon(1e-9));
    CHECK(ra.pass_sharp_lb == rb.pass_sharp_lb);
    CHECK(ra.pass_ub == rb.pass_ub);
    CHECK(ra.strict_ub == rb.strict_ub);
  }

  TEST_CASE("affine invariance of W and the bound ratios") {
    const auto a = make_context(asym(), Weight::unit(), kInf);
    const auto b = make_context(widom::test::set_of({{-1.0, 0.6}, {1.8, 3.0}}), Weight::unit(), kInf);
    const auto ra = bound_report(a, 6), rb = bound_report(b, 6);
    CHECK(rb.widom == Approx(ra.widom).epsilon(1e-9));
    CHECK(rb.ub == Approx(ra.ub).epsilon(1e-10));
  }

  TEST_CASE("sweep rows come back in n order") {
    const auto c = make_context(interval(), Weight::unit(), kInf);
    const auto sw = sweep(c, 3, 11);
    REQUIRE(sw.rows.size() == 9);
    for (std::size_t i = 0; i < sw.rows.size(); ++i) {
      CHECK(sw.rows[i].n == 3 + i);
      CHECK(sw.rows[i].widom == Approx(2.0).epsilon(1e-10));
    }
    CHECK(sw.tail_from == 6);
    CHECK(sw.pass_tail_lb.value());
    CHECK(sw.pass_tail_ub);
  }

  TEST_CASE("dichotomy: Szego-class weights stay between S and 2S exp(PW)") {
    const auto c = make_context(interval(), Weight::recip_poly(linear(3.0)), kInf);
    const auto d = szego_dichotomy_report(c, 2, 10);
    CHECK_FALSE(d.szego.divergent);
    CHECK(d.consistent.value());
    const auto cusp = make_context(interval(), Weight::exp_cusp(0.2, 1.0), kInf);
    const auto dc = szego_dichotomy_report(cusp, 10, 14);
    CHECK(dc.szego.divergent);
    CHECK_FALSE(dc.consistent.has_value());
    CHECK(dc.decay_ratio < 1.0);
  }
}
