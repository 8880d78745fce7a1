// SPDX-License-Identifier: Apache-2.0
//
// Weight functions w >= 0 on a finite-gap set. A weight is a tree of simple
// factors; every factor knows its own log, its singular points and whether it
// is of the reciprocal-polynomial form 1/|P_m|.
#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "widom/realset.hpp"

namespace widom {

/// c * prod_j (x - z_j); zeros closed under conjugation.
struct PolyFactor {
  double leading = 1.0;
  std::vector<std::complex<double>> zeros;

  std::size_t degree() const { return zeros.size(); }
  /// |P(x)| as a product of distances.
  double abs_at(std::complex<double> x) const;
  double log_abs_at(double x) const;
  std::vector<double> real_zeros() const;
};

/// Build a PolyFactor from ascending real coefficients (c_0 + c_1 x + ...).
PolyFactor poly_from_coefficients(std::span<const double> ascending);

class Weight {
 public:
  enum class Kind { Unit, AbsPoly, RecipPoly, Semicircle, Sampled, ExpCusp, Product };

  static Weight unit();
  /// w = |P(x)|.
  static Weight abs_poly(PolyFactor p);
  /// w = 1 / |P(x)|; zeros must stay off the set.
  static Weight recip_poly(PolyFactor p);
  /// w = prod_k sqrt(|(b_k - x)(x - a_k)|).
  static Weight semicircle(std::vector<Interval> factors);
  /// Piecewise-linear interpolation of (x_i, y_i), clipped at 0, constant outside.
  static Weight sampled(std::vector<double> xs, std::vector<double> ys);
  /// w = exp(-strength / |x - center|), w(center) = 0. Not of Szego class when
  /// the center lies on the set.
  static Weight exp_cusp(double center, double strength);
  static Weight product(std::vector<Weight> factors);

  Kind kind() const { return kind_; }

  double operator()(double x) const;
  /// log w(x); -inf where w vanishes.
  double log(double x) const;

  /// Points where log w is not smooth (zeros, kinks, sample nodes).
  std::vector<double> singular_points() const;
  /// Real points c with exponents a such that log w - sum a log|x - c| is
  /// bounded near each c (zeros of |P| and the ends of semicircle factors).
  std::vector<std::pair<double, double>> log_zeros() const;
  /// Points where log w crosses -floor, i.e. kinks of max(log w, -floor).
  std::vector<double> clip_points(double floor) const;

  /// The weight as 1/|P_m| (Unit gives m = 0), when it has that form.
  std::optional<PolyFactor> as_recip_poly() const;
  /// True when w >= |P| on the set for some nonzero polynomial P.
  bool dominates_polynomial(const FiniteGapSet& set) const;

  /// Throws ZeroOnSet when a reciprocal-polynomial zero lies on the set.
  void validate_on(const FiniteGapSet& set) const;

  /// w scaled by a positive constant.
  Weight scaled(double lambda) const;

  const PolyFactor& poly() const { return poly_; }
  const std::vector<Interval>& semicircle_factors() const { return arcs_; }
  const std::vector<double>& sample_x() const { return xs_; }
  const std::vector<double>& sample_y() const { return ys_; }
  double cusp_center() const { return center_; }
  double cusp_strength() const { return strength_; }
  const std::vector<Weight>& factors() const { return factors_; }

 private:
  Kind kind_ = Kind::Unit;
  PolyFactor poly_;
  std::vector<Interval> arcs_;
  std::vector<double> xs_, ys_;
  double center_ = 0.0, strength_ = 0.0;
  std::vector<Weight> factors_;
};

}  // namespace widom
