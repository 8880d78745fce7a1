// SPDX-License-Identifier: Apache-2.0
//
// Widom factors and the bounds that pin them between Szego factors:
//
//   S <= W_n,   2S / (1 + exp(-2(n - m) g(x*, inf))) <= W_n <= 2S exp(PW(E, x*))
//
// where the last two hold for w = 1/|P_m| and n >= n0, and PW is the sum of
// g(., x*) over its critical points.
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "widom/extremal.hpp"
#include "widom/potential.hpp"
#include "widom/realset.hpp"
#include "widom/weight.hpp"

namespace widom {

/// Potential-theoretic data shared by all degrees of one configuration.
struct BoundsContext {
  FiniteGapSet set;
  Weight weight;
  ExtendedPoint x_star = ExtendedPoint::infinity();
  SolverOptions options;

  double log_capacity = 0.0;
  /// g(x*, inf); +inf for x* = inf.
  double g_star = 0.0;
  double pw = 0.0;
  SzegoFactor szego;
  /// Set when w = 1/|P_m| (unit weight included, m = 0).
  std::optional<PolyFactor> recip;
  std::optional<double> szego_closed_form;
  std::size_t n0 = 1;
};

BoundsContext make_context(const FiniteGapSet& set, const Weight& w, const ExtendedPoint& x_star,
                           const SolverOptions& opts = {});

/// t_n / cap^n for x* = inf, t_n exp(n g(x*, inf)) otherwise.
double widom_factor(const ExtremalPoly& sol, const Equilibrium& eq);

struct WidomReport {
  std::size_t n = 0;
  double t = 0.0;
  double widom = 0.0;
  double szego = 0.0;
  /// Universal lower bound S.
  double szego_lb = 0.0;
  bool pass_szego_lb = false;
  /// 2S / (1 + exp(-2(n - m) g(x*, inf))), for w = 1/|P_m| and n >= n0.
  std::optional<double> sharp_lb;
  std::optional<bool> pass_sharp_lb;
  /// 2S exp(PW). A theorem for w = 1/|P_m| and n >= n0, reported otherwise.
  double ub = 0.0;
  bool ub_is_theorem = false;
  std::optional<bool> pass_ub;
  /// W_n <= ub (1 - 1e-12), checked when PW > 0.
  std::optional<bool> strict_ub;
  /// Unweighted Chebyshev bounds 2 <= W_n <= 2 exp(PW).
  std::optional<double> lb2;
  std::optional<double> ub2;
  std::optional<bool> pass_lb2;
  std::optional<bool> pass_ub2;
  /// W / lb - 1 and 1 - W / ub.
  std::optional<double> lb_slack;
  double ub_slack = 0.0;
  double defect = 0.0;
};

inline constexpr double kBoundTolerance = 1e-7;

WidomReport bound_report(const BoundsContext& ctx, std::size_t n);
/// Report for an already solved polynomial of the same configuration.
WidomReport bound_report(const BoundsContext& ctx, const ExtremalPoly& sol);

struct SweepReport {
  std::vector<WidomReport> rows;
  /// Tail window: the last third of the rows.
  std::size_t tail_from = 0;
  double tail_min = 0.0;
  double tail_max = 0.0;
  double slack = 0.05;
  /// 2S, used when w >= |P| for a polynomial P on E.
  std::optional<double> asymptotic_lb;
  std::optional<bool> pass_tail_lb;
  /// 2S exp(PW).
  double asymptotic_ub = 0.0;
  bool pass_tail_ub = false;
};

/// Rows for n_lo..n_hi, computed concurrently and returned in n order.
SweepReport sweep(const BoundsContext& ctx, std::size_t n_lo, std::size_t n_hi, double slack = 0.05);

struct DichotomyReport {
  SzegoFactor szego;
  std::size_t n_min = 0;
  std::size_t n_max = 0;
  std::vector<double> widom;
  double min_widom = 0.0;
  double max_widom = 0.0;
  double bound_upper = 0.0;
  bool strictly_decreasing = false;
  /// W_{n_max} / W_{n_min}.
  double decay_ratio = 0.0;
  /// Finite integral: S <= min W and max W <= 2S exp(PW)(1 + 1e-6).
  /// Divergent integral: no assertion, consistent is left unset.
  std::optional<bool> consistent;
};

DichotomyReport szego_dichotomy_report(const BoundsContext& ctx, std::size_t n_min, std::size_t n_max);

}  // namespace widom
