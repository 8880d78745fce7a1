// SPDX-License-Identifier: Apache-2.0
#include "widom/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "widom/ensets.hpp"

namespace widom {

BoundsContext make_context(const FiniteGapSet& set, const Weight& w, const ExtendedPoint& x_star,
                           const SolverOptions& opts) {
  w.validate_on(set);
  BoundsContext ctx;
  ctx.set = set;
  ctx.weight = w;
  ctx.x_star = x_star;
  ctx.options = opts;
  const Equilibrium eq(set);
  ctx.log_capacity = eq.log_capacity();
  ctx.g_star = x_star.is_infinite() ? std::numeric_limits<double>::infinity() : eq.green(x_star.value());
  ctx.pw = GreenFunction(set, x_star).pw_sum();
  ctx.szego = szego_factor(set, w, x_star);
  ctx.recip = w.as_recip_poly();
  if (ctx.recip) {
    ctx.szego_closed_form = szego_recip_poly(set, *ctx.recip, x_star);
    ctx.n0 = threshold_degree(set, *ctx.recip, x_star, opts);
  }
  return ctx;
}

double widom_factor(const ExtremalPoly& sol, const Equilibrium& eq) {
  const double n = static_cast<double>(sol.n);
  if (sol.x_star.is_infinite()) {
    // t / cap^n = t_hat (scale / cap)^n, without forming scale^n.
    return std::exp(std::log(sol.t_hat) + n * (std::log(sol.scale) - eq.log_capacity()));
  }
  return sol.t * std::exp(n * eq.green(sol.x_star.value()));
}

WidomReport bound_report(const BoundsContext& ctx, std::size_t n) {
  return bound_report(ctx, solve_extremal(ctx.set, ctx.weight, ctx.x_star, n, ctx.options));
}

WidomReport bound_report(const BoundsContext& ctx, const ExtremalPoly& sol) {
  constexpr double tol = kBoundTolerance;
  WidomReport r;
  r.n = sol.n;
  r.t = sol.t;
  r.defect = sol.defect;
  const double n = static_cast<double>(sol.n);
  if (ctx.x_star.is_infinite()) {
    r.widom = std::exp(std::log(sol.t_hat) + n * (std::log(sol.scale) - ctx.log_capacity));
  } else {
    r.widom = sol.t * std::exp(n * ctx.g_star);
  }
  const double s = ctx.szego.value;
  r.szego = s;
  r.szego_lb = s;
  r.pass_szego_lb = r.widom >= s * (1.0 - tol);

  const bool recip_theory = ctx.recip.has_value() && sol.n >= ctx.n0;
  if (recip_theory) {
    const double m = static_cast<double>(ctx.recip->degree());
    const double lb = ctx.x_star.is_infinite() ? 2.0 * s : 2.0 * s / (1.0 + std::exp(-2.0 * (n - m) * ctx.g_star));
    r.sharp_lb = lb;
    r.pass_sharp_lb = r.widom >= lb * (1.0 - tol);
    r.lb_slack = r.widom / lb - 1.0;
  }
  r.ub = 2.0 * s * std::exp(ctx.pw);
  r.ub_is_theorem = recip_theory;
  r.ub_slack = 1.0 - r.widom / r.ub;
  if (recip_theory) {
    r.pass_ub = r.widom <= r.ub * (1.0 + tol);
    if (ctx.pw > 0.0) r.strict_ub = r.widom <= r.ub * (1.0 - 1e-12);
  }
  if (ctx.weight.kind() == Weight::Kind::Unit) {
    r.ub2 = 2.0 * std::exp(ctx.pw);
    r.pass_ub2 = r.widom <= *r.ub2 * (1.0 + tol);
    if (ctx.x_star.is_infinite()) {
      r.lb2 = 2.0;
      r.pass_lb2 = r.widom >= 2.0 * (1.0 - tol);
    }
  }
  return r;
}

SweepReport sweep(const BoundsContext& ctx, std::size_t n_lo, std::size_t n_hi, double slack) {
  SweepReport rep;
  rep.slack = slack;
  if (n_hi < n_lo || n_lo < 1) return rep;
  const std::size_t count = n_hi - n_lo + 1;
  rep.rows.resize(count);

  std::vector<std::exception_ptr> errors(count);
  auto work = [&](std::size_t i) {
    try {
      rep.rows[i] = bound_report(ctx, n_lo + i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const std::size_t threads = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < count; i += threads) work(i);
      });
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  rep.tail_from = count - std::max<std::size_t>(1, count / 3);
  rep.tail_min = std::numeric_limits<double>::infinity();
  rep.tail_max = 0.0;
  for (std::size_t i = rep.tail_from; i < count; ++i) {
    rep.tail_min = std::min(rep.tail_min, rep.rows[i].widom);
    rep.tail_max = std::max(rep.tail_max, rep.rows[i].widom);
  }
  const double s = ctx.szego.value;
  if (ctx.weight.dominates_polynomial(ctx.set) && !ctx.szego.divergent) {
    rep.asymptotic_lb = 2.0 * s;
    rep.pass_tail_lb = rep.tail_min >= 2.0 * s * (1.0 - slack);
  }
  rep.asymptotic_ub = 2.0 * s * std::exp(ctx.pw);
  rep.pass_tail_ub = rep.tail_max <= rep.asymptotic_ub * (1.0 + slack);
  return rep;
}

DichotomyReport szego_dichotomy_report(const BoundsContext& ctx, std::size_t n_min, std::size_t n_max) {
  DichotomyReport rep;
  rep.szego = ctx.szego;
  rep.n_min = n_min;
  rep.n_max = n_max;
  const SweepReport sw = sweep(ctx, n_min, n_max);
  rep.min_widom = std::numeric_limits<double>::infinity();
  for (const auto& row : sw.rows) {
    rep.widom.push_back(row.widom);
    rep.min_widom = std::min(rep.min_widom, row.widom);
    rep.max_widom = std::max(rep.max_widom, row.widom);
  }
  rep.strictly_decreasing = !rep.widom.empty();
  for (std::size_t i = 1; i < rep.widom.size(); ++i)
    if (!(rep.widom[i] < rep.widom[i - 1])) rep.strictly_decreasing = false;
  if (!rep.widom.empty()) rep.decay_ratio = rep.widom.back() / rep.widom.front();
  rep.bound_upper = 2.0 * ctx.szego.value * std::exp(ctx.pw);
  if (!ctx.szego.divergent) {
    rep.consistent = rep.min_widom >= ctx.szego.value * (1.0 - kBoundTolerance) &&
                     rep.max_widom <= rep.bound_upper * (1.0 + 1e-6);
  }
  return rep;
}

}  // namespace widom
