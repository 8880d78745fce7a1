// SPDX-License-Identifier: Apache-2.0
//
// Compact subsets of the real line made of finitely many closed intervals,
// their gaps in the extended real line, and discretization grids.
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace widom {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  double radius() const { return 0.5 * (hi - lo); }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// A point of the extended real line R u {inf}.
class ExtendedPoint {
 public:
  static ExtendedPoint infinity() { return ExtendedPoint(); }
  static ExtendedPoint finite(double x);

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  /// The finite coordinate; throws InvalidArgument at infinity.
  double value() const;

  friend bool operator==(const ExtendedPoint& a, const ExtendedPoint& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.x_ == b.x_);
  }

 private:
  ExtendedPoint() = default;
  bool infinite_ = true;
  double x_ = 0.0;
};

enum class GapKind { Bounded, Unbounded };

/// A connected component of the complement of the set in R u {inf}.
/// Bounded gaps are the open intervals (left, right). The unbounded gap is
/// written (left, right) with left = max of the set and right = min of the set,
/// i.e. it wraps through infinity.
struct Gap {
  GapKind kind = GapKind::Unbounded;
  double left = 0.0;
  double right = 0.0;
  /// Position in the list returned by FiniteGapSet::gaps().
  std::size_t index = 0;

  bool contains(double x) const;
  bool contains(const ExtendedPoint& p) const;
};

class FiniteGapSet {
 public:
  /// Sorts, validates and merges nearly touching intervals (gap below
  /// 1e-12 * diameter). Throws EmptyInput, NonFinite, Degenerate or Overlap.
  static FiniteGapSet make(std::span<const Interval> intervals);

  const std::vector<Interval>& bands() const { return bands_; }
  std::size_t band_count() const { return bands_.size(); }
  const Interval& band(std::size_t j) const { return bands_[j]; }

  double lower() const { return bands_.front().lo; }
  double upper() const { return bands_.back().hi; }
  double diameter() const { return upper() - lower(); }
  Interval hull() const { return {lower(), upper()}; }

  /// Exact membership, no tolerance.
  bool contains(double x) const;
  std::optional<std::size_t> band_of(double x) const;
  /// Euclidean distance from x to the set (0 on the set).
  double distance(double x) const;

  /// p - 1 bounded gaps in increasing order followed by the unbounded gap.
  std::vector<Gap> gaps() const;
  /// The gap containing p. Throws OnSet when p is a finite point of the set.
  Gap locate(const ExtendedPoint& p) const;

 private:
  std::vector<Interval> bands_;
};

FiniteGapSet make_set(std::span<const std::pair<double, double>> intervals);

/// Per band, Chebyshev-Lobatto nodes mid + r cos(k pi / (N - 1)), k = 0..N-1,
/// so the band endpoints are included and nodes cluster toward them.
/// Output is strictly increasing.
std::vector<double> sample_grid(const FiniteGapSet& set, std::size_t points_per_band);

}  // namespace widom
