// SPDX-License-Identifier: Apache-2.0
//
// Rational frame R_n = T_n / P_m of an extremal polynomial for w = 1/|P_m|,
// its level set e_n = R_n^{-1}([-t_n, t_n]) and the Green-function identities
// that tie R_n to e_n.
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "widom/extremal.hpp"
#include "widom/potential.hpp"
#include "widom/realset.hpp"
#include "widom/weight.hpp"

namespace widom {

/// R(x) = k * prod_i (x - z_i) / prod_j (x - c_j) after cancelling common zeros.
struct RationalFrame {
  FiniteGapSet set;
  ExtendedPoint x_star = ExtendedPoint::infinity();
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t degree_t = 0;
  double t = 0.0;
  int sign = 1;
  double k = 1.0;
  std::vector<double> zeros;                     // retained zeros of T, increasing
  std::vector<std::complex<double>> poles;       // retained zeros of P_m
  std::vector<std::complex<double>> cancelled;   // zeros of P_m cancelled by zeros of T
  std::size_t d = 0;                             // d_n
  std::size_t r = 0;                             // r_n
  std::size_t n0 = 0;

  double operator()(double x) const;
  std::complex<double> operator()(std::complex<double> z) const;
};

/// n0 = 2(m + 1) - deg T_{m+1}, from a solve at degree m + 1.
std::size_t threshold_degree(const FiniteGapSet& set, const PolyFactor& p, const ExtendedPoint& x_star,
                             const SolverOptions& opts = {});

/// Throws BelowN0 when sol.n < n0 and AmbiguousCancellation when a zero of T
/// sits just outside the pairing tolerance of a zero of P.
RationalFrame build_rational_frame(const ExtremalPoly& sol, const FiniteGapSet& set, const PolyFactor& p,
                                   const SolverOptions& opts = {});
/// Same, with n0 already known.
RationalFrame build_rational_frame(const ExtremalPoly& sol, const FiniteGapSet& set, const PolyFactor& p,
                                   std::size_t n0);

struct BandSet {
  RationalFrame frame;
  /// One band per retained zero, increasing; neighbours may touch.
  std::vector<Interval> bands;
  /// Union of the bands.
  FiniteGapSet set;
  double level = 0.0;

  /// max |R| / t over audit nodes of E.
  double containment_ratio = 0.0;
  bool contains_base = false;
  /// Max over bands of | |R(end)| - t | / t, and whether R is monotone with
  /// opposite signs at the two ends of every band.
  double endpoint_residual = 0.0;
  bool monotone = false;
  /// Number of bands meeting each gap of E (order of FiniteGapSet::gaps()).
  std::vector<std::size_t> gap_band_counts;
  bool gap_rules = false;
};

/// Throws BandCountMismatch if the level-set bands cannot be matched to d_n zeros.
BandSet compute_band_set(const RationalFrame& frame);

/// (d - r) g_{e_n}(z, inf) + sum_j g_{e_n}(z, c_j).
double blaschke_exponent(const BandSet& bs, std::complex<double> z);
/// |B_n(z)| = exp(-blaschke_exponent). Throws OnSet on e_n.
double blaschke_magnitude(const BandSet& bs, std::complex<double> z);

struct CoshReport {
  std::vector<double> samples;
  std::vector<double> residuals;
  double max_residual = 0.0;
  bool pass = false;
};

/// Real points off e_n: inside the gaps of e_n and outside its hull.
std::vector<double> default_cosh_samples(const BandSet& bs, std::size_t count);
/// | |R(z)| - t cosh(blaschke_exponent(z)) | / |R(z)| over the samples; pass below tol.
CoshReport verify_cosh_identity(const BandSet& bs, std::span<const double> samples, double tol = 1e-6);

struct BandMeasureReport {
  /// s_l = (d - r) omega(I_l, inf) + sum_j omega(I_l, c_j) per band.
  std::vector<double> band_sums;
  double max_band_deviation = 0.0;
  /// Same sum over e_n intersected with each gap of E.
  std::vector<double> gap_sums;
  double max_gap_sum = 0.0;
  double total = 0.0;
  /// Harmonic measures from non-real poles are not evaluated.
  bool complex_poles_skipped = false;
  bool pass = false;
};

BandMeasureReport verify_band_measures(const BandSet& bs, double tol = 1e-6);

}  // namespace widom
