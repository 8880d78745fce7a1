// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace widom::quad {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1]; cached per size, safe to call concurrently.
const Rule& gauss_legendre(std::size_t n);

/// Integral of a smooth f over [a, b] by Gauss-Legendre, doubling the order from
/// 16 until two successive results agree to rel_tol (absolute floor abs_tol).
double smooth(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-14,
              double abs_tol = 1e-300, std::size_t max_order = 2048);

/// Double-exponential (tanh-sinh) integral over [a, b]; tolerates integrable
/// endpoint singularities. Interior singular points must be passed as breakpoints.
double singular(const std::function<double(double)>& f, double a, double b,
                std::span<const double> breakpoints = {}, double tol = 1e-14);

}  // namespace widom::quad
