// SPDX-License-Identifier: Apache-2.0
#include "widom/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <utility>

namespace widom::quad {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(std::size_t n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (std::size_t k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
    p0 = p1;
    p1 = pk;
  }
  return {p1, static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0)};
}

Rule make_gauss_legendre(std::size_t n) {
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const Rule& gauss_legendre(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<Rule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Rule>(make_gauss_legendre(n));
  return *slot;
}

double smooth(const std::function<double(double)>& f, double a, double b, double rel_tol, double abs_tol,
              std::size_t max_order) {
  const double mid = 0.5 * (a + b);
  const double rad = 0.5 * (b - a);
  auto apply = [&](std::size_t n) {
    const Rule& r = gauss_legendre(n);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += r.weights[i] * f(mid + rad * r.nodes[i]);
    return s * rad;
  };
  double prev = apply(16);
  for (std::size_t n = 32; n <= max_order; n *= 2) {
    const double cur = apply(n);
    if (std::abs(cur - prev) <= std::max(rel_tol * std::abs(cur), abs_tol)) return cur;
    prev = cur;
  }
  return prev;
}

double singular(const std::function<double(double)>& f, double a, double b, std::span<const double> breakpoints,
                double tol) {
  static thread_local boost::math::quadrature::tanh_sinh<double> integrator(12);
  std::vector<double> cuts{a};
  for (double c : breakpoints)
    if (c > a && c < b) cuts.push_back(c);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i + 1] > cuts[i])) continue;
    double err = 0.0;
    total += integrator.integrate(f, cuts[i], cuts[i + 1], tol, &err);
  }
  return total;
}

}  // namespace widom::quad
