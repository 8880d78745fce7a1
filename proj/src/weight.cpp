// SPDX-License-Identifier: Apache-2.0
#include "widom/weight.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <unsupported/Eigen/Polynomials>

#include "widom/error.hpp"

namespace widom {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double PolyFactor::abs_at(std::complex<double> x) const {
  double v = std::abs(leading);
  for (const auto& z : zeros) v *= std::abs(x - z);
  return v;
}

double PolyFactor::log_abs_at(double x) const {
  double v = std::log(std::abs(leading));
  for (const auto& z : zeros) v += std::log(std::abs(std::complex<double>(x) - z));
  return v;
}

std::vector<double> PolyFactor::real_zeros() const {
  std::vector<double> out;
  for (const auto& z : zeros)
    if (z.imag() == 0.0) out.push_back(z.real());
  return out;
}

PolyFactor poly_from_coefficients(std::span<const double> ascending) {
  std::vector<double> c(ascending.begin(), ascending.end());
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  if (c.empty()) throw Error(ErrorKind::InvalidArgument, "poly_from_coefficients", "zero polynomial");
  PolyFactor p;
  p.leading = c.back();
  if (c.size() == 1) return p;
  Eigen::VectorXd coeffs = Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size()));
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(coeffs);
  // Snap nearly-real roots and pair conjugates so |P| stays real-symmetric.
  std::vector<std::complex<double>> raw(solver.roots().begin(), solver.roots().end());
  std::vector<std::complex<double>> upper;
  const double scale = std::max(1.0, std::abs(raw.empty() ? 1.0 : std::abs(raw[0])));
  for (auto z : raw) {
    if (std::abs(z.imag()) <= 1e-12 * std::max(scale, std::abs(z))) {
      p.zeros.emplace_back(z.real(), 0.0);
    } else if (z.imag() > 0) {
      upper.push_back(z);
    }
  }
  for (auto z : upper) {
    p.zeros.push_back(z);
    p.zeros.push_back(std::conj(z));
  }
  if (p.zeros.size() != c.size() - 1)
    throw Error(ErrorKind::IllConditioned, "poly_from_coefficients", "complex roots not in conjugate pairs");
  return p;
}

Weight Weight::unit() { return Weight(); }

Weight Weight::abs_poly(PolyFactor p) {
  if (p.leading == 0.0) throw Error(ErrorKind::InvalidArgument, "Weight::abs_poly", "zero leading coefficient");
  Weight w;
  w.kind_ = Kind::AbsPoly;
  w.poly_ = std::move(p);
  return w;
}

Weight Weight::recip_poly(PolyFactor p) {
  if (p.leading == 0.0) throw Error(ErrorKind::InvalidArgument, "Weight::recip_poly", "zero leading coefficient");
  Weight w;
  w.kind_ = Kind::RecipPoly;
  w.poly_ = std::move(p);
  return w;
}

Weight Weight::semicircle(std::vector<Interval> factors) {
  for (const auto& iv : factors)
    if (!(iv.lo < iv.hi)) throw Error(ErrorKind::InvalidArgument, "Weight::semicircle", "factor needs a < b");
  Weight w;
  w.kind_ = Kind::Semicircle;
  w.arcs_ = std::move(factors);
  return w;
}

Weight Weight::sampled(std::vector<double> xs, std::vector<double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw Error(ErrorKind::InvalidArgument, "Weight::sampled", "need matching x/y tables of length >= 2");
  if (!std::is_sorted(xs.begin(), xs.end()) || std::adjacent_find(xs.begin(), xs.end()) != xs.end())
    throw Error(ErrorKind::InvalidArgument, "Weight::sampled", "x table must be strictly increasing");
  Weight w;
  w.kind_ = Kind::Sampled;
  w.xs_ = std::move(xs);
  w.ys_ = std::move(ys);
  return w;
}

Weight Weight::exp_cusp(double center, double strength) {
  if (!(strength > 0.0)) throw Error(ErrorKind::InvalidArgument, "Weight::exp_cusp", "strength must be positive");
  Weight w;
  w.kind_ = Kind::ExpCusp;
  w.center_ = center;
  w.strength_ = strength;
  return w;
}

Weight Weight::product(std::vector<Weight> factors) {
  Weight w;
  w.kind_ = Kind::Product;
  w.factors_ = std::move(factors);
  return w;
}

Weight Weight::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw Error(ErrorKind::InvalidArgument, "Weight::scaled", "factor must be positive");
  PolyFactor c;
  c.leading = lambda;
  return product({*this, abs_poly(c)});
}

double Weight::log(double x) const {
  switch (kind_) {
    case Kind::Unit:
      return 0.0;
    case Kind::AbsPoly:
      return poly_.log_abs_at(x);
    case Kind::RecipPoly:
      return -poly_.log_abs_at(x);
    case Kind::Semicircle: {
      double s = 0.0;
      for (const auto& iv : arcs_) s += 0.5 * (std::log(std::abs(iv.hi - x)) + std::log(std::abs(x - iv.lo)));
      return s;
    }
    case Kind::Sampled: {
      const double v = (*this)(x);
      return v > 0.0 ? std::log(v) : kNegInf;
    }
    case Kind::ExpCusp: {
      const double d = std::abs(x - center_);
      return d == 0.0 ? kNegInf : -strength_ / d;
    }
    case Kind::Product: {
      double s = 0.0;
      for (const auto& f : factors_) s += f.log(x);
      return s;
    }
  }
  return 0.0;
}

double Weight::operator()(double x) const {
  switch (kind_) {
    case Kind::Unit:
      return 1.0;
    case Kind::AbsPoly:
      return poly_.abs_at(x);
    case Kind::RecipPoly:
      return 1.0 / poly_.abs_at(x);
    case Kind::Semicircle: {
      double s = 1.0;
      for (const auto& iv : arcs_) s *= std::sqrt(std::abs((iv.hi - x) * (x - iv.lo)));
      return s;
    }
    case Kind::Sampled: {
      if (x <= xs_.front()) return std::max(0.0, ys_.front());
      if (x >= xs_.back()) return std::max(0.0, ys_.back());
      const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
      const std::size_t i = static_cast<std::size_t>(it - xs_.begin()) - 1;
      const double t = (x - xs_[i]) / (xs_[i + 1] - xs_[i]);
      return std::max(0.0, ys_[i] + t * (ys_[i + 1] - ys_[i]));
    }
    case Kind::ExpCusp: {
      const double d = std::abs(x - center_);
      return d == 0.0 ? 0.0 : std::exp(-strength_ / d);
    }
    case Kind::Product: {
      double s = 1.0;
      for (const auto& f : factors_) s *= f(x);
      return s;
    }
  }
  return 0.0;
}

std::vector<double> Weight::singular_points() const {
  std::vector<double> out;
  switch (kind_) {
    case Kind::AbsPoly:
    case Kind::RecipPoly:
      out = poly_.real_zeros();
      break;
    case Kind::Semicircle:
      for (const auto& iv : arcs_) {
        out.push_back(iv.lo);
        out.push_back(iv.hi);
      }
      break;
    case Kind::Sampled:
      out = xs_;
      break;
    case Kind::ExpCusp:
      out.push_back(center_);
      break;
    case Kind::Product:
      for (const auto& f : factors_) {
        auto s = f.singular_points();
        out.insert(out.end(), s.begin(), s.end());
      }
      break;
    case Kind::Unit:
      break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::pair<double, double>> Weight::log_zeros() const {
  std::vector<std::pair<double, double>> out;
  switch (kind_) {
    case Kind::AbsPoly:
      for (double z : poly_.real_zeros()) out.emplace_back(z, 1.0);
      break;
    case Kind::RecipPoly:
      for (double z : poly_.real_zeros()) out.emplace_back(z, -1.0);
      break;
    case Kind::Semicircle:
      for (const auto& iv : arcs_) {
        out.emplace_back(iv.lo, 0.5);
        out.emplace_back(iv.hi, 0.5);
      }
      break;
    case Kind::Product:
      for (const auto& f : factors_) {
        auto s = f.log_zeros();
        out.insert(out.end(), s.begin(), s.end());
      }
      break;
    default:
      break;
  }
  return out;
}

std::vector<double> Weight::clip_points(double floor) const {
  std::vector<double> out;
  if (kind_ == Kind::ExpCusp) {
    out.push_back(center_ - strength_ / floor);
    out.push_back(center_ + strength_ / floor);
  } else if (kind_ == Kind::Product) {
    for (const auto& f : factors_) {
      auto s = f.clip_points(floor);
      out.insert(out.end(), s.begin(), s.end());
    }
  }
  return out;
}

std::optional<PolyFactor> Weight::as_recip_poly() const {
  switch (kind_) {
    case Kind::Unit:
      return PolyFactor{};
    case Kind::RecipPoly:
      return poly_;
    case Kind::AbsPoly:
      // Constants are reciprocal polynomials of degree 0.
      if (poly_.zeros.empty()) return PolyFactor{1.0 / poly_.leading, {}};
      return std::nullopt;
    case Kind::Product: {
      PolyFactor acc;
      for (const auto& f : factors_) {
        auto p = f.as_recip_poly();
        if (!p) return std::nullopt;
        acc.leading *= p->leading;
        acc.zeros.insert(acc.zeros.end(), p->zeros.begin(), p->zeros.end());
      }
      return acc;
    }
    default:
      return std::nullopt;
  }
}

bool Weight::dominates_polynomial(const FiniteGapSet& set) const {
  switch (kind_) {
    case Kind::Unit:
    case Kind::AbsPoly:
    case Kind::RecipPoly:
    case Kind::Semicircle:
      return true;
    case Kind::ExpCusp:
      return !set.contains(center_);
    case Kind::Sampled: {
      // Bounded below by a positive constant on the set.
      for (double x : sample_grid(set, 2048))
        if (!((*this)(x) > 0.0)) return false;
      return true;
    }
    case Kind::Product:
      return std::all_of(factors_.begin(), factors_.end(),
                         [&](const Weight& f) { return f.dominates_polynomial(set); });
  }
  return false;
}

void Weight::validate_on(const FiniteGapSet& set) const {
  if (kind_ == Kind::RecipPoly) {
    for (const auto& z : poly_.zeros)
      if (z.imag() == 0.0 && set.contains(z.real()))
        throw Error(ErrorKind::ZeroOnSet, "Weight::validate_on", "reciprocal-polynomial zero lies on the set");
  }
  for (const auto& f : factors_) f.validate_on(set);
}

}  // namespace widom
