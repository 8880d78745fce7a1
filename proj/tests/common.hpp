// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <initializer_list>
#include <vector>

#include <doctest.h>

#include "widom/realset.hpp"
#include "widom/weight.hpp"

namespace widom::test {

inline FiniteGapSet set_of(std::initializer_list<Interval> bands) {
  std::vector<Interval> v(bands);
  return FiniteGapSet::make(v);
}

inline FiniteGapSet interval() { return set_of({{-1.0, 1.0}}); }
inline FiniteGapSet e6() { return set_of({{-1.0, -0.6}, {0.6, 1.0}}); }
inline FiniteGapSet asym() { return set_of({{-1.0, -0.2}, {0.4, 1.0}}); }

inline PolyFactor linear(double zero) { return poly_from_coefficients(std::vector<double>{-zero, 1.0}); }

/// Purely relative comparison; doctest's default adds an absolute scale of 1.
inline doctest::Approx Approx(double v) { return doctest::Approx(v).scale(0.0); }

}  // namespace widom::test
