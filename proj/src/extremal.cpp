// SPDX-License-Identifier: Apache-2.0
#include "widom/extremal.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "widom/error.hpp"
#include "widom/potential.hpp"

namespace widom {

namespace {

int sgn(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

class Problem {
 public:
  Problem(const FiniteGapSet& set, const Weight& w, const ExtendedPoint& x_star, std::size_t n)
      : set_(set), w_(w), x_star_(x_star), n_(n) {
    center_ = 0.5 * (set.lower() + set.upper());
    half_ = 0.5 * set.diameter();
    residual_ = x_star.is_finite();
    if (residual_) {
      x_star_value_ = x_star.value();
      s_star_ = to_s(x_star_value_);
    }
  }

  double to_s(double x) const { return (x - center_) / half_; }
  double center() const { return center_; }
  double half() const { return half_; }
  bool residual() const { return residual_; }
  std::size_t n() const { return n_; }
  const ExtendedPoint& x_star() const { return x_star_; }
  double s_star() const { return s_star_; }

  double tau(double x) const {
    if (!residual_) return 1.0;
    return x < x_star_value_ ? 1.0 : -1.0;
  }

  const Weight& weight() const { return w_; }
  const FiniteGapSet& set() const { return set_; }

 private:
  const FiniteGapSet& set_;
  const Weight& w_;
  ExtendedPoint x_star_;
  std::size_t n_;
  double center_ = 0.0, half_ = 1.0;
  bool residual_ = false;
  double x_star_value_ = 0.0, s_star_ = 0.0;
};


// Degree-n interpolant through (s_j, y_j) in barycentric form. The weights are
// stored as lambda_j = lam_j * exp(log_lam) to keep them in range.
class Barycentric {
 public:
  Barycentric(std::vector<double> s, std::vector<double> y) : s_(std::move(s)), y_(std::move(y)) {
    const std::size_t m = s_.size();
    std::vector<double> logs(m, 0.0);
    std::vector<int> signs(m, 1);
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < m; ++k) {
        if (k == j) continue;
        const double d = s_[j] - s_[k];
        logs[j] -= std::log(std::abs(d));
        if (d < 0) signs[j] = -signs[j];
      }
    }
    log_lam_ = *std::max_element(logs.begin(), logs.end());
    lam_.resize(m);
    for (std::size_t j = 0; j < m; ++j) lam_[j] = signs[j] * std::exp(logs[j] - log_lam_);
  }

  // Second kind; accurate on and near the nodes' support.
  double operator()(double s) const {
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < s_.size(); ++j) {
      const double d = s - s_[j];
      if (d == 0.0) return y_[j];
      const double c = lam_[j] / d;
      num += c * y_[j];
      den += c;
    }
    return num / den;
  }

  // First kind, for points far from the nodes.
  double far(double s) const {
    double sum = 0.0, log_l = log_lam_;
    int sign = 1;
    for (std::size_t j = 0; j < s_.size(); ++j) {
      const double d = s - s_[j];
      if (d == 0.0) return y_[j];
      sum += lam_[j] * y_[j] / d;
      log_l += std::log(std::abs(d));
      if (d < 0) sign = -sign;
    }
    return sign * sum * std::exp(log_l);
  }

  // Coefficient of s^n, returned as (sign, log|.|).
  std::pair<int, double> leading() const {
    double sum = 0.0;
    for (std::size_t j = 0; j < s_.size(); ++j) sum += lam_[j] * y_[j];
    return {sgn(sum), std::log(std::abs(sum)) + log_lam_};
  }

  // Sum of the n roots, from the coefficients of s^n and s^(n-1).
  double root_sum() const {
    double total = 0.0;
    for (double v : s_) total += v;
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < s_.size(); ++j) {
      num += lam_[j] * y_[j] * (total - s_[j]);
      den += lam_[j] * y_[j];
    }
    return num / den;
  }

 private:
  std::vector<double> s_, y_, lam_;
  double log_lam_ = 0.0;
};

struct Grid {
  std::vector<double> x;
  std::vector<double> w;
  std::vector<std::size_t> band;
};

Grid make_grid(const Problem& pb, std::size_t per_band) {
  Grid g;
  g.x = sample_grid(pb.set(), per_band);
  g.w.resize(g.x.size());
  g.band.resize(g.x.size());
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    g.w[i] = pb.weight()(g.x[i]);
    g.band[i] = pb.set().band_of(g.x[i]).value_or(0);
  }
  return g;
}

// n + 1 grid points with w > 0, spread over the bands in proportion to
// omega(., x*) and placed at Chebyshev extrema inside each band.
std::vector<double> initial_reference(const Problem& pb, const Grid& g) {
  const FiniteGapSet& set = pb.set();
  const std::size_t p = set.band_count();
  const std::size_t want = pb.n() + 1;

  const HarmonicMeasure omega(set, pb.x_star());
  std::vector<std::size_t> count(p, 0);
  std::vector<std::pair<double, std::size_t>> rema;
  std::size_t used = 0;
  for (std::size_t j = 0; j < p; ++j) {
    const double share = omega.mass(set.band(j).lo, set.band(j).hi) * static_cast<double>(want);
    count[j] = static_cast<std::size_t>(std::floor(share));
    used += count[j];
    rema.emplace_back(share - std::floor(share), j);
  }
  std::stable_sort(rema.begin(), rema.end(), [](auto a, auto b) { return a.first > b.first; });
  for (std::size_t i = 0; used < want; i = (i + 1) % p, ++used) ++count[rema[i].second];

  std::vector<double> targets;
  for (std::size_t j = 0; j < p; ++j) {
    const Interval& iv = set.band(j);
    const std::size_t k = count[j];
    for (std::size_t i = 0; i < k; ++i) {
      if (k == 1) {
        targets.push_back(iv.mid());
      } else {
        const double theta = std::numbers::pi * static_cast<double>(k - 1 - i) / static_cast<double>(k - 1);
        targets.push_back(iv.mid() + iv.radius() * std::cos(theta));
      }
    }
  }

  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < g.x.size(); ++i)
    if (g.w[i] > 0.0) usable.push_back(i);
  if (usable.size() < want)
    throw Error(ErrorKind::WeightDegenerate, "solve_extremal", "weight vanishes on too many grid points");

  // Snap targets, in order, to distinct usable grid points.
  std::vector<double> ref;
  std::size_t next = 0;
  for (std::size_t t = 0; t < want; ++t) {
    auto it = std::lower_bound(usable.begin() + static_cast<std::ptrdiff_t>(next), usable.end(), targets[t],
                               [&](std::size_t i, double x) { return g.x[i] < x; });
    std::size_t pos = static_cast<std::size_t>(it - usable.begin());
    if (pos > next && (pos == usable.size() || targets[t] - g.x[usable[pos - 1]] < g.x[usable[pos]] - targets[t])) --pos;
    pos = std::min(pos, usable.size() - (want - t));
    pos = std::max(pos, next);
    ref.push_back(g.x[usable[pos]]);
    next = pos + 1;
  }
  return ref;
}

Barycentric level(const Problem& pb, const std::vector<double>& ref) {
  std::vector<double> s, y;
  for (std::size_t j = 0; j < ref.size(); ++j) {
    const double tw = pb.tau(ref[j]) * pb.weight()(ref[j]);
    if (!(tw != 0.0) || !std::isfinite(tw))
      throw Error(ErrorKind::IllConditioned, "solve_extremal", "reference point with zero weight");
    s.push_back(pb.to_s(ref[j]));
    y.push_back(((j % 2 == 0) ? 1.0 : -1.0) / tw);
  }
  return Barycentric(std::move(s), std::move(y));
}

struct Candidate {
  double x;
  double f;  // signed twisted error
};

double twisted(const Problem& pb, const Barycentric& p, double x) {
  const double wx = pb.weight()(x);
  if (wx == 0.0) return 0.0;
  return pb.tau(x) * wx * p(pb.to_s(x));
}

// Local maximum of |F| near grid point i, within its band.
Candidate polish(const Problem& pb, const Grid& g, const Barycentric& p, std::size_t i, double fi) {
  const std::size_t band = g.band[i];
  const bool has_left = i > 0 && g.band[i - 1] == band;
  const bool has_right = i + 1 < g.x.size() && g.band[i + 1] == band;
  if (!has_left || !has_right) return {g.x[i], fi};
  const double sign = fi > 0 ? 1.0 : -1.0;
  auto neg = [&](double x) { return -sign * twisted(pb, p, x); };
  std::uintmax_t iters = 80;
  const auto [x, v] = boost::math::tools::brent_find_minima(neg, g.x[i - 1], g.x[i + 1], 50, iters);
  if (-v > std::abs(fi)) return {x, -v * sign};
  return {g.x[i], fi};
}

// Maxima of |F| over the sign runs of F on the grid, merged with the current
// reference, thinned to an alternating sequence with |F| >= 1.
std::vector<Candidate> alternating_candidates(const Problem& pb, const Grid& g, const Barycentric& p,
                                              const std::vector<double>& ref) {
  std::vector<Candidate> runs;
  std::size_t best = 0;
  double best_f = 0.0;
  int run_sign = 0;
  auto flush = [&] {
    if (run_sign != 0) runs.push_back(polish(pb, g, p, best, best_f));
  };
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    if (g.w[i] <= 0.0) continue;
    const double f = pb.tau(g.x[i]) * g.w[i] * p(pb.to_s(g.x[i]));
    const int s = sgn(f);
    if (s == 0) continue;
    if (s != run_sign) {
      flush();
      run_sign = s;
      best = i;
      best_f = f;
    } else if (std::abs(f) > std::abs(best_f)) {
      best = i;
      best_f = f;
    }
  }
  flush();

  for (double x : ref) runs.push_back({x, twisted(pb, p, x)});
  std::sort(runs.begin(), runs.end(), [](const Candidate& l, const Candidate& r) { return l.x < r.x; });

  std::vector<Candidate> out;
  for (const auto& c : runs) {
    if (std::abs(c.f) < 1.0 - 1e-9) continue;
    if (!out.empty() && sgn(out.back().f) == sgn(c.f)) {
      if (std::abs(c.f) > std::abs(out.back().f)) out.back() = c;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

struct RunResult {
  std::vector<double> nodes;  // reference the interpolant was built on
  std::vector<Candidate> window;
  std::vector<Candidate> all;
  double top = 0.0;
  double defect = 0.0;
  std::size_t iterations = 0;
};

RunResult run_exchange(const Problem& pb, const Grid& g, std::vector<double> ref, const SolverOptions& opts) {
  const std::size_t want = pb.n() + 1;
  RunResult res;
  for (std::size_t it = 1; it <= opts.max_iter; ++it) {
    const Barycentric p = level(pb, ref);
    auto cand = alternating_candidates(pb, g, p, ref);
    if (cand.size() < want)
      throw Error(ErrorKind::NoConvergence, "solve_extremal", "lost the alternating reference");
    std::size_t gmax = 0;
    for (std::size_t i = 1; i < cand.size(); ++i)
      if (std::abs(cand[i].f) > std::abs(cand[gmax].f)) gmax = i;
    const double top = std::abs(cand[gmax].f);

    // Window of n + 1 consecutive candidates holding the global maximum, with
    // the largest smallest entry.
    const std::size_t first = gmax >= pb.n() ? gmax - pb.n() : 0;
    const std::size_t last = std::min(gmax, cand.size() - want);
    std::size_t start = first;
    double best_min = -1.0;
    for (std::size_t s = first; s <= last; ++s) {
      double mn = std::numeric_limits<double>::infinity();
      for (std::size_t k = s; k < s + want; ++k) mn = std::min(mn, std::abs(cand[k].f));
      if (mn > best_min) {
        best_min = mn;
        start = s;
      }
    }
    res.nodes = ref;
    res.window.assign(cand.begin() + static_cast<std::ptrdiff_t>(start),
                      cand.begin() + static_cast<std::ptrdiff_t>(start + want));
    res.all = std::move(cand);
    res.top = top;
    // Alternation on the window bounds the minimal norm from below by best_min.
    res.defect = (top - best_min) / top;
    res.iterations = it;
    if (res.defect < opts.tol) return res;
    for (std::size_t k = 0; k < want; ++k) ref[k] = res.window[k].x;
  }
  throw Error(ErrorKind::NoConvergence, "solve_extremal",
              "no convergence after " + std::to_string(opts.max_iter) + " iterations");
}

// Norm of the normalized (monic in s, or 1 at s*) polynomial of a run.
double normalized_norm(const Problem& pb, const RunResult& r) {
  const Barycentric p = level(pb, r.nodes);
  if (pb.residual()) return r.top / std::abs(p.far(pb.s_star()));
  return r.top * std::exp(-p.leading().second);
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (sgn(fm) == sgn(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Zeros of the interpolant in s: one per sign change between consecutive
// reference points, plus the zero outside when the degree is n.
std::vector<double> interpolant_zeros(const Problem& pb, const Barycentric& p, const std::vector<double>& nodes_x,
                                      bool& degenerate) {
  const std::size_t n = pb.n();
  std::vector<double> s;
  for (double x : nodes_x) s.push_back(pb.to_s(x));
  std::vector<double> zs;
  for (std::size_t j = 0; j + 1 < s.size(); ++j) {
    const double a = p(s[j]), b = p(s[j + 1]);
    if (sgn(a) == sgn(b)) continue;
    zs.push_back(bisect_root([&](double v) { return p(v); }, s[j], s[j + 1]));
  }
  degenerate = false;
  if (zs.size() + 1 == n) {
    // Leading Chebyshev coefficient against the size of the interpolant on the hull.
    const auto [lead_sign, log_lead] = p.leading();
    (void)lead_sign;
    double size = 0.0;
    for (std::size_t k = 0; k <= 4 * (n + 1); ++k)
      size = std::max(size, std::abs(p.far(std::cos(std::numbers::pi * static_cast<double>(k) / (4.0 * (n + 1))))));
    const double log_cheb_lead = log_lead - static_cast<double>(n - 1) * std::log(2.0);
    degenerate = !(log_cheb_lead >= std::log(1e-10) + std::log(size));
    if (!degenerate) {
      double z = p.root_sum();
      for (double v : zs) z -= v;
      // Secant polish with the first-kind formula.
      double z0 = z * (1.0 + 1e-8) + 1e-12, f0 = p.far(z0), f1 = p.far(z);
      for (int it = 0; it < 60 && f1 != 0.0; ++it) {
        const double step = f1 * (z - z0) / (f1 - f0);
        if (!std::isfinite(step)) break;
        z0 = z;
        f0 = f1;
        z -= step;
        f1 = p.far(z);
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
      }
      zs.push_back(z);
    }
  }
  std::sort(zs.begin(), zs.end());
  return zs;
}

void assign_signs(ExtremalPoly& out) {
  out.signs.clear();
  for (double x : out.points) out.signs.push_back(sgn(out.value(x)));
  out.k_star = alternation_index(out.points, out.x_star);
}

}  // namespace

double ExtremalPoly::value(double x) const {
  double prod = sign;
  int exp2 = 0;
  for (double z : zeros) {
    prod *= (x - z) / scale;
    if (std::abs(prod) > 1e150 || (prod != 0.0 && std::abs(prod) < 1e-150)) {
      int e;
      prod = std::frexp(prod, &e);
      exp2 += e;
    }
  }
  return std::ldexp(prod, exp2) * std::exp(log_gain);
}

std::complex<double> ExtremalPoly::value(std::complex<double> z) const {
  std::complex<double> prod(static_cast<double>(sign), 0.0);
  double log_mag = log_gain;
  for (double r : zeros) {
    prod *= (z - r) / scale;
    const double a = std::abs(prod);
    if (a > 1e150 || (a != 0.0 && a < 1e-150)) {
      prod /= a;
      log_mag += std::log(a);
    }
  }
  return prod * std::exp(log_mag);
}

std::vector<double> ExtremalPoly::coefficients() const {
  std::vector<double> c{1.0};
  for (double z : zeros) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= z * c[k];
    }
    c = std::move(next);
  }
  const double f = sign * std::exp(log_gain - static_cast<double>(zeros.size()) * std::log(scale));
  for (double& v : c) v *= f;
  return c;
}

std::size_t alternation_index(std::span<const double> points, const ExtendedPoint& x_star) {
  const std::size_t m = points.size();
  if (x_star.is_infinite()) return m;
  const double xs = x_star.value();
  if (m == 0 || xs > points.back()) return m;
  if (xs < points.front()) return 0;
  for (std::size_t j = 0; j + 1 < m; ++j)
    if (points[j] < xs && xs < points[j + 1]) return j + 1;
  return m;
}

std::vector<int> expected_signs(std::span<const double> points, const ExtendedPoint& x_star) {
  const std::size_t k = alternation_index(points, x_star);
  std::vector<int> out;
  for (std::size_t j = 1; j <= points.size(); ++j) {
    const int alt = ((k + j) % 2 == 0) ? 1 : -1;  // (-1)^(k - j)
    const int side = x_star.is_infinite() || points[j - 1] < x_star.value() ? 1 : -1;
    out.push_back(alt * side);
  }
  return out;
}

ExtremalPoly solve_extremal(const FiniteGapSet& set, const Weight& w, const ExtendedPoint& x_star, std::size_t n,
                            const SolverOptions& opts) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "solve_extremal", "degree must be at least 1");
  if (x_star.is_finite() && set.contains(x_star.value()))
    throw Error(ErrorKind::PoleOnSet, "solve_extremal", "x* lies on the set");
  w.validate_on(set);
  const Problem pb(set, w, x_star, n);
  const std::size_t p = set.band_count();
  std::size_t per_band = std::max<std::size_t>(opts.grid_base * ((n + 1 + p - 1) / p), 2 * (n + 1));

  Grid g = make_grid(pb, per_band);
  RunResult res = run_exchange(pb, g, initial_reference(pb, g), opts);
  std::size_t total_iter = res.iterations;
  if (opts.refine) {
    for (int level = 0; level < 3; ++level) {
      per_band *= 2;
      g = make_grid(pb, per_band);
      std::vector<double> ref;
      for (const auto& c : res.window) ref.push_back(c.x);
      RunResult next = run_exchange(pb, g, ref, opts);
      total_iter += next.iterations;
      const double before = normalized_norm(pb, res), after = normalized_norm(pb, next);
      res = std::move(next);
      if (std::abs(after - before) <= opts.refine_tol * before) break;
    }
  }

  const Barycentric interp = level(pb, res.nodes);
  bool degenerate = false;
  const std::vector<double> zs = interpolant_zeros(pb, interp, res.nodes, degenerate);

  ExtremalPoly out;
  out.n = n;
  out.x_star = x_star;
  out.scale = pb.half();
  for (double z : zs) out.zeros.push_back(pb.center() + pb.half() * z);
  out.degree = out.zeros.size();
  if (!pb.residual()) {
    if (out.degree != n) throw Error(ErrorKind::IllConditioned, "solve_extremal", "monic solution lost a zero");
    out.sign = 1;
    out.log_gain = static_cast<double>(n) * std::log(pb.half());
  } else {
    out.sign = 1;
    out.log_gain = 0.0;
    for (double z : out.zeros) {
      const double d = (x_star.value() - z) / out.scale;
      if (d < 0) out.sign = -out.sign;
      out.log_gain -= std::log(std::abs(d));
    }
  }
  for (const auto& c : res.window) out.points.push_back(c.x);
  double t = 0.0;
  for (const auto& c : res.all) t = std::max(t, std::abs(w(c.x) * out.value(c.x)));
  out.t = t;
  out.t_hat = t / std::exp(out.log_gain);
  out.defect = res.defect;
  out.iterations = total_iter;
  out.grid_points = g.x.size();
  assign_signs(out);
  return out;
}

AlternationReport verify_alternation(const ExtremalPoly& sol, const FiniteGapSet& set, const Weight& w, double tol) {
  AlternationReport rep;
  const auto expected = expected_signs(sol.points, sol.x_star);
  rep.signs_match = sol.points.size() == sol.n + 1;
  for (std::size_t j = 0; j < sol.points.size(); ++j) {
    const double wt = w(sol.points[j]) * sol.value(sol.points[j]);
    const double r = std::abs(wt - expected[j] * sol.t) / sol.t;
    rep.point_residuals.push_back(r);
    rep.max_point_residual = std::max(rep.max_point_residual, r);
    if (sgn(wt) != expected[j]) rep.signs_match = false;
  }

  const std::size_t p = set.band_count();
  const std::size_t per_band = std::max<std::size_t>(8192 * ((sol.n + 1 + p - 1) / p), 16);
  const auto grid = sample_grid(set, per_band);
  for (double x : grid) rep.audit_max = std::max(rep.audit_max, std::abs(w(x) * sol.value(x)));
  rep.audit_points = grid.size();
  rep.audit_excess = (rep.audit_max - sol.t) / sol.t;

  // Real simple zeros, none strictly between x_{k*} and x_{k*+1}.
  rep.zeros_real_simple = sol.zeros.size() == sol.degree && (sol.degree == sol.n || sol.degree + 1 == sol.n);
  for (std::size_t i = 0; i + 1 < sol.zeros.size(); ++i)
    if (!(sol.zeros[i] < sol.zeros[i + 1])) rep.zeros_real_simple = false;
  const std::size_t k = sol.k_star;
  if (k >= 1 && k < sol.points.size()) {
    for (double z : sol.zeros)
      if (z > sol.points[k - 1] && z < sol.points[k]) rep.zeros_real_simple = false;
  }
  rep.pass = rep.signs_match && rep.max_point_residual <= tol && rep.audit_excess <= tol && rep.zeros_real_simple;
  return rep;
}

ExtremalPoly renormalize(const ExtremalPoly& sol, const FiniteGapSet& set, const ExtendedPoint& x_new) {
  if (x_new == sol.x_star) return sol;
  if (set.locate(x_new).index != set.locate(sol.x_star).index)
    throw Error(ErrorKind::DifferentGap, "renormalize", "x_new is not in the gap of x*");
  ExtremalPoly out = sol;
  out.x_star = x_new;
  if (x_new.is_finite()) {
    const double v = sol.value(x_new.value());
    if (v == 0.0 || !std::isfinite(v)) throw Error(ErrorKind::ZeroAtPoint, "renormalize", "T vanishes at x_new");
    if (v < 0) out.sign = -out.sign;
    out.log_gain -= std::log(std::abs(v));
  } else {
    if (sol.degree != sol.n) throw Error(ErrorKind::ZeroAtPoint, "renormalize", "T has degree below n");
    out.sign = 1;
    out.log_gain = static_cast<double>(sol.n) * std::log(sol.scale);
  }
  out.t = out.t_hat * std::exp(out.log_gain);
  assign_signs(out);
  return out;
}

}  // namespace widom
