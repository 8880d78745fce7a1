// SPDX-License-Identifier: Apache-2.0
//
// Logarithmic potential theory on finite unions of real intervals.
//
// The equilibrium density of E = [a_1,b_1] u ... u [a_p,b_p] is
//
//     rho(t) = |Q(t)| / (pi sqrt|R(t)|),   R(t) = prod_j (t - a_j)(t - b_j),
//
// with Q monic of degree p - 1, fixed by the p - 1 conditions that
// Q / sqrt|R| integrates to zero over every bounded gap. The Green function with
// pole at infinity is the primitive of Q / sqrt|R| in the gaps, and the log
// potential of rho minus log cap(E) elsewhere.
//
// Green functions with a finite real pole x0 and harmonic measures seen from
// x0 are obtained from the equilibrium problem of the inverted set
// {1 / (t - x0) : t in E}, which sends x0 to infinity.
#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "widom/realset.hpp"
#include "widom/weight.hpp"

namespace widom {

/// Equilibrium measure, capacity and g_E(., inf) of a finite-gap set.
class Equilibrium {
 public:
  explicit Equilibrium(FiniteGapSet set);

  const FiniteGapSet& set() const { return set_; }
  double capacity() const;
  /// Robin constant, -log cap(E).
  double robin() const { return -log_capacity_; }
  double log_capacity() const { return log_capacity_; }

  /// Zeros of Q, one per bounded gap, increasing.
  std::vector<double> q_zeros() const;
  /// Monic Q(x).
  double q(double x) const;
  /// rho(x); 0 off the set.
  double density(double x) const;
  /// rho([c, d]).
  double mass(double c, double d) const;
  /// Integral of f against rho. Interior singular points of f go in breakpoints.
  double integrate(const std::function<double(double)>& f, std::span<const double> breakpoints = {}) const;

  /// Integral of log|z - t| d rho(t).
  double log_potential(std::complex<double> z) const;
  /// g_E(x, inf); exactly 0 on the set.
  double green(double x) const;
  double green(std::complex<double> z) const;
  /// d/dx g_E(x, inf) for real x off the set.
  double green_derivative(double x) const;

  /// Residuals of the gap conditions, integral of Q / sqrt|R| over each bounded gap.
  std::vector<double> gap_periods() const;

 private:
  double to_unit(double x) const { return (x - center_) / scale_; }
  double from_unit(double u) const { return center_ + scale_ * u; }

  double q_unit(double u) const;
  double sqrt_abs_r_excluding(double u, std::size_t skip_a, std::size_t skip_b) const;
  double band_kernel(std::size_t j, double theta) const;
  double gap_kernel(std::size_t k, double theta) const;
  double green_unit(double u) const;
  double green_unit_outer(double u) const;
  double log_potential_unit(std::complex<double> z) const;

  void solve_periods();

  FiniteGapSet set_;
  double center_ = 0.0;
  double scale_ = 1.0;
  std::vector<double> ends_;     // a_1, b_1, ..., a_p, b_p in unit coordinates
  std::vector<double> q_cheb_;   // Q in the Chebyshev basis on [-1, 1] (unit coordinates)
  std::vector<double> zeta_;     // zeros of Q, unit coordinates
  double log_capacity_ = 0.0;    // of the original set
};

Equilibrium equilibrium(const FiniteGapSet& set);

struct CriticalPoint {
  Gap gap;
  ExtendedPoint location = ExtendedPoint::infinity();
  /// g_E(location, pole).
  double value = 0.0;
};

/// g_E(., pole) for a real or infinite pole off the set.
class GreenFunction {
 public:
  GreenFunction(const FiniteGapSet& set, ExtendedPoint pole);

  const FiniteGapSet& set() const { return set_; }
  const ExtendedPoint& pole() const { return pole_; }

  double operator()(double x) const;
  double operator()(std::complex<double> z) const;
  double operator()(const ExtendedPoint& p) const;
  /// d/dx g(x, pole) for real x off the set and away from the pole.
  double derivative(double x) const;

  /// One entry per gap not containing the pole.
  const std::vector<CriticalPoint>& critical_points() const { return critical_; }
  /// Sum of g over the critical points.
  double pw_sum() const;

  /// Equilibrium problem of the (inverted, for finite poles) set.
  const Equilibrium& frame() const { return frame_; }

 private:
  std::complex<double> to_frame(std::complex<double> z) const;

  FiniteGapSet set_;
  ExtendedPoint pole_;
  Equilibrium frame_;
  std::vector<CriticalPoint> critical_;
};

GreenFunction green(const FiniteGapSet& set, ExtendedPoint pole);
std::vector<CriticalPoint> critical_points(const GreenFunction& g);
double pw_sum(const GreenFunction& g);

/// Harmonic measure omega_E(., base) of the complement, base real off E or infinite.
class HarmonicMeasure {
 public:
  HarmonicMeasure(const FiniteGapSet& set, ExtendedPoint base);

  const FiniteGapSet& set() const { return set_; }
  const ExtendedPoint& base() const { return base_; }

  double density(double x) const;
  /// omega([c, d]).
  double mass(double c, double d) const;
  double total_mass() const;
  double integrate(const std::function<double(double)>& f, std::span<const double> breakpoints = {}) const;

 private:
  FiniteGapSet set_;
  ExtendedPoint base_;
  Equilibrium frame_;
};

HarmonicMeasure harmonic_measure(const FiniteGapSet& set, ExtendedPoint base);

/// g_E(z, pole) through the pole-shift identity
///   g(z, x0) = g(z, inf) - log|z - x0| + int log|t - x0| d omega(t, z),
/// applied with the real (or infinite) point of the pair as the base of the
/// harmonic measure. Throws BothComplex if neither point is real.
double green_cross(const FiniteGapSet& set, std::complex<double> z, std::complex<double> pole);
double green_cross(const FiniteGapSet& set, std::complex<double> z, const ExtendedPoint& pole);

struct SzegoFactor {
  double value = 0.0;         // S(E, w, x*), 0 when the integral diverges
  double log_integral = 0.0;  // int log w d omega(., x*), -inf when divergent
  bool divergent = false;
};

/// exp of the integral of log w against omega(., x*) by quadrature. Divergence
/// to -inf is detected from the clipped integrals int max(log w, -L): they keep
/// decreasing at a non-vanishing rate as L goes through 1e2, 1e4, 1e6, 1e8.
SzegoFactor szego_factor(const FiniteGapSet& set, const Weight& w, const ExtendedPoint& x_star);

/// Closed form of S(E, 1/|P|, x*) in terms of Green functions; limits are
/// taken at x* = inf and at zeros of P.
double szego_recip_poly(const FiniteGapSet& set, const PolyFactor& p, const ExtendedPoint& x_star);

}  // namespace widom
