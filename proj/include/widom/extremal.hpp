// SPDX-License-Identifier: Apache-2.0
//
// Weighted Chebyshev (x* = inf) and residual (finite x*) polynomials on a
// finite-gap set by multi-point Remez exchange.
//
// The twisted error F = sgn(x* - x) w P (sgn(inf - x) = 1) is leveled on
// n + 1 reference points, F(x_j) = (-1)^j, which fixes P as the barycentric
// interpolant of (-1)^j / (sgn(x* - x_j) w(x_j)). The reference is exchanged
// for alternating local maxima of |F| found on a cosine grid and polished by
// Brent's method. Normalization (monic, or T(x*) = 1) is applied only at the
// end, and the result is stored in product form through its real zeros, which
// stays accurate in the gaps where coefficient representations lose digits.
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "widom/realset.hpp"
#include "widom/weight.hpp"

namespace widom {

struct SolverOptions {
  double tol = 1e-11;
  /// Grid points per band are grid_base * ceil((n + 1) / p).
  std::size_t grid_base = 4096;
  std::size_t max_iter = 200;
  /// Repeat on doubled grids until t_n moves by less than refine_tol.
  bool refine = true;
  double refine_tol = 1e-10;
};

struct ExtremalPoly {
  std::size_t n = 0;
  ExtendedPoint x_star = ExtendedPoint::infinity();
  /// deg T, n or n - 1.
  std::size_t degree = 0;
  /// T(x) = sign * exp(log_gain) * prod_i (x - z_i) / scale, with scale the
  /// half-width of the convex hull. Monic T has sign 1 and log_gain = n log scale.
  std::vector<double> zeros;
  double scale = 1.0;
  int sign = 1;
  double log_gain = 0.0;
  /// ||w T||_E and ||w T||_E / exp(log_gain).
  double t = 0.0;
  double t_hat = 0.0;
  /// Alternation points and sgn(w T) there.
  std::vector<double> points;
  std::vector<int> signs;
  std::size_t k_star = 0;
  /// (max |F| - min_j |F(x_j)|) / max |F| at the last iteration; bounds the
  /// relative distance of t from the minimal norm.
  double defect = 0.0;
  std::size_t iterations = 0;
  std::size_t grid_points = 0;

  double value(double x) const;
  std::complex<double> value(std::complex<double> z) const;
  /// Ascending monomial coefficients of T.
  std::vector<double> coefficients() const;
};

ExtremalPoly solve_extremal(const FiniteGapSet& set, const Weight& w, const ExtendedPoint& x_star, std::size_t n,
                            const SolverOptions& opts = {});

/// k* for alternation points x_1 < ... < x_{n+1}: the j with x_j < x* < x_{j+1};
/// n + 1 when x* = inf or x* > x_{n+1}; 0 when x* < x_1.
std::size_t alternation_index(std::span<const double> points, const ExtendedPoint& x_star);
/// Expected sgn(w T)(x_j) = (-1)^(k* - j) sgn(x* - x_j), j = 1..n+1.
std::vector<int> expected_signs(std::span<const double> points, const ExtendedPoint& x_star);

struct AlternationReport {
  /// |w(x_j) T(x_j) - sigma_j t| / t per point, sigma_j from the expected pattern.
  std::vector<double> point_residuals;
  double max_point_residual = 0.0;
  bool signs_match = false;
  double audit_max = 0.0;
  std::size_t audit_points = 0;
  /// (audit_max - t) / t.
  double audit_excess = 0.0;
  bool zeros_real_simple = false;
  bool pass = false;
};

AlternationReport verify_alternation(const ExtremalPoly& sol, const FiniteGapSet& set, const Weight& w,
                                     double tol = 1e-9);

/// T / T(x_new) for x_new in the gap of x*. Throws DifferentGap or ZeroAtPoint.
ExtremalPoly renormalize(const ExtremalPoly& sol, const FiniteGapSet& set, const ExtendedPoint& x_new);

}  // namespace widom
