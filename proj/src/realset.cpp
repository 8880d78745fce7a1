// SPDX-License-Identifier: Apache-2.0
#include "widom/realset.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <sstream>

#include "widom/error.hpp"

namespace widom {

ExtendedPoint ExtendedPoint::finite(double x) {
  if (!std::isfinite(x)) throw Error(ErrorKind::NonFinite, "ExtendedPoint", "coordinate is not finite");
  ExtendedPoint p;
  p.infinite_ = false;
  p.x_ = x;
  return p;
}

double ExtendedPoint::value() const {
  if (infinite_) throw Error(ErrorKind::InvalidArgument, "ExtendedPoint", "point at infinity has no coordinate");
  return x_;
}

bool Gap::contains(double x) const {
  if (kind == GapKind::Bounded) return left < x && x < right;
  return x > left || x < right;
}

bool Gap::contains(const ExtendedPoint& p) const {
  if (p.is_infinite()) return kind == GapKind::Unbounded;
  return contains(p.value());
}

FiniteGapSet FiniteGapSet::make(std::span<const Interval> intervals) {
  if (intervals.empty()) throw Error(ErrorKind::EmptyInput, "make_set", "no intervals given");
  std::vector<Interval> sorted(intervals.begin(), intervals.end());
  for (const auto& iv : sorted) {
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi))
      throw Error(ErrorKind::NonFinite, "make_set", "interval endpoint is not finite");
    if (!(iv.lo < iv.hi)) {
      std::ostringstream msg;
      msg << "interval [" << iv.lo << ", " << iv.hi << "] has a >= b";
      throw Error(ErrorKind::Degenerate, "make_set", msg.str());
    }
  }
  std::sort(sorted.begin(), sorted.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });

  double lo = sorted.front().lo;
  double hi = lo;
  for (const auto& iv : sorted) hi = std::max(hi, iv.hi);
  const double merge_tol = 1e-12 * (hi - lo);

  FiniteGapSet set;
  set.bands_.push_back(sorted.front());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    Interval& cur = set.bands_.back();
    const Interval& next = sorted[i];
    const double gap = next.lo - cur.hi;
    if (gap < -merge_tol) {
      std::ostringstream msg;
      msg << "intervals [" << cur.lo << ", " << cur.hi << "] and [" << next.lo << ", " << next.hi
          << "] intersect";
      throw Error(ErrorKind::Overlap, "make_set", msg.str());
    }
    if (gap <= merge_tol) {
      cur.hi = std::max(cur.hi, next.hi);
    } else {
      set.bands_.push_back(next);
    }
  }
  return set;
}

FiniteGapSet make_set(std::span<const std::pair<double, double>> intervals) {
  std::vector<Interval> ivs;
  ivs.reserve(intervals.size());
  for (const auto& [a, b] : intervals) ivs.push_back({a, b});
  return FiniteGapSet::make(ivs);
}

std::optional<std::size_t> FiniteGapSet::band_of(double x) const {
  auto it = std::upper_bound(bands_.begin(), bands_.end(), x,
                             [](double v, const Interval& iv) { return v < iv.lo; });
  if (it == bands_.begin()) return std::nullopt;
  --it;
  if (x <= it->hi) return static_cast<std::size_t>(it - bands_.begin());
  return std::nullopt;
}

bool FiniteGapSet::contains(double x) const { return band_of(x).has_value(); }

double FiniteGapSet::distance(double x) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& iv : bands_) {
    if (iv.contains(x)) return 0.0;
    d = std::min(d, std::min(std::abs(x - iv.lo), std::abs(x - iv.hi)));
  }
  return d;
}

std::vector<Gap> FiniteGapSet::gaps() const {
  std::vector<Gap> out;
  out.reserve(bands_.size());
  for (std::size_t j = 0; j + 1 < bands_.size(); ++j)
    out.push_back({GapKind::Bounded, bands_[j].hi, bands_[j + 1].lo, j});
  out.push_back({GapKind::Unbounded, upper(), lower(), bands_.size() - 1});
  return out;
}

Gap FiniteGapSet::locate(const ExtendedPoint& p) const {
  auto all = gaps();
  if (p.is_infinite()) return all.back();
  const double x = p.value();
  for (const auto& g : all)
    if (g.contains(x)) return g;
  throw Error(ErrorKind::OnSet, "locate", "point lies on the set");
}

std::vector<double> sample_grid(const FiniteGapSet& set, std::size_t points_per_band) {
  if (points_per_band < 2)
    throw Error(ErrorKind::InvalidArgument, "sample_grid", "need at least 2 points per band");
  std::vector<double> out;
  out.reserve(points_per_band * set.band_count());
  const std::size_t last = points_per_band - 1;
  for (const auto& iv : set.bands()) {
    for (std::size_t k = 0; k <= last; ++k) {
      // k runs from the left endpoint (theta = pi) to the right one (theta = 0).
      double x;
      if (k == 0) {
        x = iv.lo;
      } else if (k == last) {
        x = iv.hi;
      } else if (2 * k == last) {
        x = iv.mid();
      } else {
        const double theta = std::numbers::pi * static_cast<double>(last - k) / static_cast<double>(last);
        x = iv.mid() + iv.radius() * std::cos(theta);
      }
      if (out.empty() || x > out.back()) out.push_back(x);
    }
  }
  return out;
}

}  // namespace widom
