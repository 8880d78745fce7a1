// SPDX-License-Identifier: Apache-2.0
#include "widom/ensets.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>

#include "widom/error.hpp"

namespace widom {

namespace {

int sgn(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// Largest x in [lo, hi] with pred true, for pred true at lo and false at hi.
double bisect_predicate(const std::function<bool(double)>& pred, double lo, double hi) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (pred(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

// Green functions of e_n needed by the identities, built once per report.
struct LevelPotentials {
  Equilibrium eq;
  std::vector<std::pair<double, GreenFunction>> real_poles;  // pole value, g(., pole)
  std::vector<std::complex<double>> complex_poles;

  explicit LevelPotentials(const BandSet& bs) : eq(bs.set) {
    for (const auto& c : bs.frame.poles) {
      if (c.imag() == 0.0) {
        real_poles.emplace_back(c.real(), GreenFunction(bs.set, ExtendedPoint::finite(c.real())));
      } else {
        complex_poles.push_back(c);
      }
    }
  }

  double exponent(const BandSet& bs, std::complex<double> z) const {
    const auto& f = bs.frame;
    double g = static_cast<double>(f.d - f.r) * eq.green(z);
    for (const auto& [c, gf] : real_poles) g += gf(z);
    for (const auto& c : complex_poles) g += green_cross(bs.set, z, c);
    return g;
  }
};

// R at real x with the real poles equal to skip left out. Conjugate pole pairs
// contribute |x - c|^2 through the member with positive imaginary part.
double eval_real(const RationalFrame& f, double x, std::optional<double> skip) {
  double v = f.k;
  int exp2 = 0;
  auto renorm = [&] {
    if (std::abs(v) > 1e150 || (v != 0.0 && std::abs(v) < 1e-150)) {
      int e;
      v = std::frexp(v, &e);
      exp2 += e;
    }
  };
  for (double z : f.zeros) {
    v *= x - z;
    renorm();
  }
  for (const auto& c : f.poles) {
    if (c.imag() == 0.0) {
      if (skip && c.real() == *skip) continue;
      v /= x - c.real();
    } else if (c.imag() > 0.0) {
      v /= std::norm(std::complex<double>(x) - c);
    }
    renorm();
  }
  return std::ldexp(v, exp2);
}

}  // namespace

double RationalFrame::operator()(double x) const { return eval_real(*this, x, std::nullopt); }

std::complex<double> RationalFrame::operator()(std::complex<double> z) const {
  std::complex<double> v(k, 0.0);
  for (double r : zeros) v *= z - r;
  for (const auto& c : poles) v /= z - c;
  return v;
}

std::size_t threshold_degree(const FiniteGapSet& set, const PolyFactor& p, const ExtendedPoint& x_star,
                             const SolverOptions& opts) {
  const std::size_t m = p.degree();
  const ExtremalPoly aux = solve_extremal(set, Weight::recip_poly(p), x_star, m + 1, opts);
  return 2 * (m + 1) - aux.degree;
}

RationalFrame build_rational_frame(const ExtremalPoly& sol, const FiniteGapSet& set, const PolyFactor& p,
                                   const SolverOptions& opts) {
  return build_rational_frame(sol, set, p, threshold_degree(set, p, sol.x_star, opts));
}

RationalFrame build_rational_frame(const ExtremalPoly& sol, const FiniteGapSet& set, const PolyFactor& p,
                                   std::size_t n0) {
  if (sol.n < n0)
    throw Error(ErrorKind::BelowN0, "build_rational_frame",
                "n = " + std::to_string(sol.n) + " is below n0 = " + std::to_string(n0));
  RationalFrame f;
  f.set = set;
  f.x_star = sol.x_star;
  f.n = sol.n;
  f.m = p.degree();
  f.degree_t = sol.degree;
  f.t = sol.t;
  f.n0 = n0;

  const double tol = 1e-8 * set.diameter();
  std::vector<bool> used(sol.zeros.size(), false);
  for (const auto& c : p.zeros) {
    std::size_t best = sol.zeros.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sol.zeros.size(); ++i) {
      if (used[i]) continue;
      const double d = std::abs(std::complex<double>(sol.zeros[i]) - c);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    if (best_d <= tol) {
      used[best] = true;
      f.cancelled.push_back(c);
    } else if (best_d <= 10.0 * tol) {
      throw Error(ErrorKind::AmbiguousCancellation, "build_rational_frame",
                  "zero of T within 10x the pairing tolerance of a pole");
    } else {
      f.poles.push_back(c);
    }
  }
  for (std::size_t i = 0; i < sol.zeros.size(); ++i)
    if (!used[i]) f.zeros.push_back(sol.zeros[i]);
  f.r = f.poles.size();
  f.d = f.zeros.size();

  // T(x) = sign exp(log_gain) scale^-deg prod (x - z_i); cancelled factors are dropped.
  const double k0 = sol.sign * std::exp(sol.log_gain - static_cast<double>(sol.degree) * std::log(sol.scale)) / p.leading;
  f.k = k0;
  int sigma = 1;
  if (f.x_star.is_infinite()) {
    sigma = sgn(k0);
  } else {
    const double xs = f.x_star.value();
    std::size_t mult = 0;
    for (const auto& c : f.poles)
      if (c == std::complex<double>(xs)) ++mult;
    if (mult == 0) {
      sigma = sgn(f(xs));
    } else {
      // Leading coefficient of the principal part at x*.
      const double a = eval_real(f, xs, xs);
      sigma = sgn(a);
    }
  }
  f.sign = sigma;
  f.k = sigma * k0;
  return f;
}

BandSet compute_band_set(const RationalFrame& frame) {
  BandSet bs;
  bs.frame = frame;
  bs.level = frame.t;
  const double t = frame.t;
  const auto& z = frame.zeros;
  if (z.empty()) throw Error(ErrorKind::BandCountMismatch, "compute_band_set", "R has no zeros");
  auto inside = [&](double x) { return std::abs(frame(x)) <= t; };

  std::vector<double> real_poles;
  for (const auto& c : frame.poles)
    if (c.imag() == 0.0) real_poles.push_back(c.real());
  std::sort(real_poles.begin(), real_poles.end());
  auto pole_between = [&](double a, double b) -> std::optional<double> {
    for (double c : real_poles)
      if (c > a && c < b) return c;
    return std::nullopt;
  };
  const double diam = frame.set.diameter();

  std::vector<double> lo(z.size()), hi(z.size());
  // Outer ends.
  {
    double left_limit = -std::numeric_limits<double>::infinity();
    for (double c : real_poles)
      if (c < z.front()) left_limit = c;
    double a = z.front(), step = diam;
    double b = std::isfinite(left_limit) ? left_limit : a - step;
    while (!std::isfinite(left_limit) && inside(b)) {
      step *= 2.0;
      b = a - step;
      if (step > 1e300) throw Error(ErrorKind::BandCountMismatch, "compute_band_set", "band unbounded on the left");
    }
    lo[0] = -bisect_predicate([&](double x) { return inside(-x); }, -a, -b);
  }
  {
    double right_limit = std::numeric_limits<double>::infinity();
    for (auto it = real_poles.rbegin(); it != real_poles.rend(); ++it)
      if (*it > z.back()) right_limit = *it;
    double a = z.back(), step = diam;
    double b = std::isfinite(right_limit) ? right_limit : a + step;
    while (!std::isfinite(right_limit) && inside(b)) {
      step *= 2.0;
      b = a + step;
      if (step > 1e300) throw Error(ErrorKind::BandCountMismatch, "compute_band_set", "band unbounded on the right");
    }
    hi.back() = bisect_predicate(inside, a, b);
  }
  // Between consecutive zeros.
  for (std::size_t i = 0; i + 1 < z.size(); ++i) {
    const double a = z[i], b = z[i + 1];
    if (auto c = pole_between(a, b)) {
      hi[i] = bisect_predicate(inside, a, *c);
      lo[i + 1] = -bisect_predicate([&](double x) { return inside(-x); }, -b, -*c);
      continue;
    }
    constexpr int samples = 256;
    double best_x = a, best_v = -1.0;
    for (int k = 1; k < samples; ++k) {
      const double x = a + (b - a) * k / samples;
      const double v = std::abs(frame(x));
      if (v > best_v) {
        best_v = v;
        best_x = x;
      }
    }
    const double h = (b - a) / samples;
    std::uintmax_t iters = 100;
    const auto [xm, neg] = boost::math::tools::brent_find_minima([&](double x) { return -std::abs(frame(x)); },
                                                                 std::max(a, best_x - h), std::min(b, best_x + h), 52,
                                                                 iters);
    const double top = -neg > best_v ? -neg : best_v;
    const double arg = -neg > best_v ? xm : best_x;
    if (std::abs(top - t) <= 1e-9 * t) {
      hi[i] = arg;
      lo[i + 1] = arg;
    } else if (top > t) {
      hi[i] = bisect_predicate(inside, a, arg);
      lo[i + 1] = -bisect_predicate([&](double x) { return inside(-x); }, -b, -arg);
    } else {
      throw Error(ErrorKind::BandCountMismatch, "compute_band_set",
                  "two zeros of R share a band; found fewer bands than d_n");
    }
  }

  for (std::size_t i = 0; i < z.size(); ++i) bs.bands.push_back({lo[i], hi[i]});
  if (bs.bands.size() != frame.d)
    throw Error(ErrorKind::BandCountMismatch, "compute_band_set", "band count differs from d_n");
  bs.set = FiniteGapSet::make(bs.bands);

  // Endpoint values and monotonicity.
  bs.monotone = true;
  for (const auto& iv : bs.bands) {
    const double ra = frame(iv.lo), rb = frame(iv.hi);
    bs.endpoint_residual = std::max({bs.endpoint_residual, std::abs(std::abs(ra) - t) / t, std::abs(std::abs(rb) - t) / t});
    if (sgn(ra) == sgn(rb)) bs.monotone = false;
    double prev = ra;
    const int dir = sgn(rb - ra);
    constexpr int samples = 64;
    for (int k = 1; k <= samples; ++k) {
      const double v = frame(iv.lo + iv.length() * k / samples);
      if (sgn(v - prev) != dir && std::abs(v - prev) > 1e-12 * t) bs.monotone = false;
      prev = v;
    }
  }

  // Containment of E.
  const auto audit = sample_grid(frame.set, 256);
  bool contained = true;
  for (double x : audit) {
    const double ratio = std::abs(frame(x)) / t;
    bs.containment_ratio = std::max(bs.containment_ratio, ratio);
    if (ratio > 1.0 + 1e-9) contained = false;
  }
  bs.contains_base = contained;

  // Gap rules.
  const auto gaps = frame.set.gaps();
  const double tiny = 1e-12 * diam;
  bs.gap_rules = true;
  for (const auto& g : gaps) {
    std::size_t count = 0;
    for (const auto& iv : bs.bands) {
      double overlap = 0.0;
      if (g.kind == GapKind::Bounded) {
        overlap = std::min(iv.hi, g.right) - std::max(iv.lo, g.left);
      } else {
        overlap = std::max(iv.hi - std::max(iv.lo, g.left), 0.0) + std::max(std::min(iv.hi, g.right) - iv.lo, 0.0);
      }
      if (overlap > tiny) ++count;
    }
    bs.gap_band_counts.push_back(count);
    if (count > 1) bs.gap_rules = false;
    bool must_be_empty = g.contains(frame.x_star);
    for (const auto& c : frame.cancelled)
      if (c.imag() == 0.0 && g.contains(c.real())) must_be_empty = true;
    if (g.kind == GapKind::Unbounded && frame.degree_t < frame.n) must_be_empty = true;
    if (must_be_empty && count > 0) bs.gap_rules = false;
  }
  return bs;
}

double blaschke_exponent(const BandSet& bs, std::complex<double> z) {
  if (z.imag() == 0.0 && bs.set.contains(z.real()))
    throw Error(ErrorKind::OnSet, "blaschke_magnitude", "point lies on e_n");
  return LevelPotentials(bs).exponent(bs, z);
}

double blaschke_magnitude(const BandSet& bs, std::complex<double> z) { return std::exp(-blaschke_exponent(bs, z)); }

std::vector<double> default_cosh_samples(const BandSet& bs, std::size_t count) {
  std::vector<double> out;
  const auto gaps = bs.set.gaps();
  const double diam = bs.set.diameter();
  std::vector<std::pair<double, double>> regions;
  for (const auto& g : gaps)
    if (g.kind == GapKind::Bounded) regions.emplace_back(g.left, g.right);
  regions.emplace_back(bs.set.upper(), bs.set.upper() + 2.0 * diam);
  regions.emplace_back(bs.set.lower() - 2.0 * diam, bs.set.lower());
  auto is_pole = [&](double x) {
    for (const auto& c : bs.frame.poles)
      if (c.imag() == 0.0 && std::abs(c.real() - x) < 1e-6 * diam) return true;
    return false;
  };
  std::size_t per = (count + regions.size() - 1) / regions.size();
  for (std::size_t r = 0; out.size() < count && r < regions.size(); ++r) {
    const auto [a, b] = regions[r];
    for (std::size_t k = 1; k <= per && out.size() < count; ++k) {
      const double x = a + (b - a) * static_cast<double>(k) / static_cast<double>(per + 1);
      if (!is_pole(x)) out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

CoshReport verify_cosh_identity(const BandSet& bs, std::span<const double> samples, double tol) {
  CoshReport rep;
  const LevelPotentials pot(bs);
  for (double x : samples) {
    if (bs.set.contains(x)) throw Error(ErrorKind::OnSet, "verify_cosh_identity", "sample lies on e_n");
    const double lhs = std::abs(bs.frame(x));
    if (!std::isfinite(lhs)) continue;
    const double rhs = bs.level * std::cosh(pot.exponent(bs, x));
    const double res = std::abs(lhs - rhs) / lhs;
    rep.samples.push_back(x);
    rep.residuals.push_back(res);
    rep.max_residual = std::max(rep.max_residual, res);
  }
  rep.pass = !rep.samples.empty() && rep.max_residual < tol;
  return rep;
}

BandMeasureReport verify_band_measures(const BandSet& bs, double tol) {
  BandMeasureReport rep;
  const auto& f = bs.frame;
  const HarmonicMeasure at_inf(bs.set, ExtendedPoint::infinity());
  std::vector<HarmonicMeasure> at_poles;
  for (const auto& c : f.poles) {
    if (c.imag() == 0.0) {
      at_poles.emplace_back(bs.set, ExtendedPoint::finite(c.real()));
    } else {
      rep.complex_poles_skipped = true;
    }
  }
  auto weighted = [&](double a, double b) {
    if (!(a < b)) return 0.0;
    double s = static_cast<double>(f.d - f.r) * at_inf.mass(a, b);
    for (const auto& hm : at_poles) s += hm.mass(a, b);
    return s;
  };
  for (const auto& iv : bs.bands) {
    const double s = weighted(iv.lo, iv.hi);
    rep.band_sums.push_back(s);
    rep.max_band_deviation = std::max(rep.max_band_deviation, std::abs(s - 1.0));
    rep.total += s;
  }
  for (const auto& g : f.set.gaps()) {
    double s = 0.0;
    for (const auto& iv : bs.bands) {
      if (g.kind == GapKind::Bounded) {
        s += weighted(std::max(iv.lo, g.left), std::min(iv.hi, g.right));
      } else {
        s += weighted(std::max(iv.lo, g.left), iv.hi) + weighted(iv.lo, std::min(iv.hi, g.right));
      }
    }
    rep.gap_sums.push_back(s);
    rep.max_gap_sum = std::max(rep.max_gap_sum, s);
  }
  rep.pass = !rep.complex_poles_skipped && rep.max_band_deviation <= tol && rep.max_gap_sum <= 1.0 + tol;
  return rep;
}

}  // namespace widom
