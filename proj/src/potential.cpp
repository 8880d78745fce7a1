// SPDX-License-Identifier: Apache-2.0
#include "widom/potential.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "widom/error.hpp"
#include "widom/quadrature.hpp"

namespace widom {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

double chebyshev_sum(std::span<const double> c, double x) {
  // Clenshaw.
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) {
    const double b0 = 2.0 * x * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + (c.empty() ? 0.0 : c[0]);
}

double chebyshev_t(std::size_t k, double x) {
  if (k == 0) return 1.0;
  double t0 = 1.0, t1 = x;
  for (std::size_t i = 2; i <= k; ++i) {
    const double t2 = 2.0 * x * t1 - t0;
    t0 = t1;
    t1 = t2;
  }
  return t1;
}

double bisect_sign_change(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

FiniteGapSet invert_about(const FiniteGapSet& set, double x0) {
  std::vector<Interval> out;
  out.reserve(set.band_count());
  for (const auto& iv : set.bands()) out.push_back({1.0 / (iv.hi - x0), 1.0 / (iv.lo - x0)});
  return FiniteGapSet::make(out);
}

Equilibrium frame_for(const FiniteGapSet& set, const ExtendedPoint& pole, const char* op) {
  if (pole.is_infinite()) return Equilibrium(set);
  if (set.contains(pole.value())) throw Error(ErrorKind::PoleOnSet, op, "pole lies on the set");
  return Equilibrium(invert_about(set, pole.value()));
}

}  // namespace

// ---------------------------------------------------------------------------
// Equilibrium

Equilibrium::Equilibrium(FiniteGapSet set) : set_(std::move(set)) {
  center_ = 0.5 * (set_.lower() + set_.upper());
  scale_ = 0.5 * set_.diameter();
  for (const auto& iv : set_.bands()) {
    ends_.push_back(to_unit(iv.lo));
    ends_.push_back(to_unit(iv.hi));
  }
  ends_.front() = -1.0;
  ends_.back() = 1.0;
  solve_periods();
  const double log_cap_unit = log_potential_unit(3.0) - green_unit_outer(3.0);
  log_capacity_ = log_cap_unit + std::log(scale_);
}

Equilibrium equilibrium(const FiniteGapSet& set) { return Equilibrium(set); }

double Equilibrium::capacity() const { return std::exp(log_capacity_); }

double Equilibrium::q_unit(double u) const {
  if (zeta_.size() + 1 == set_.band_count()) {
    double v = 1.0;
    for (double z : zeta_) v *= (u - z);
    return v;
  }
  return chebyshev_sum(q_cheb_, u);
}

double Equilibrium::sqrt_abs_r_excluding(double u, std::size_t skip_a, std::size_t skip_b) const {
  double prod = 1.0;
  for (std::size_t i = 0; i < ends_.size(); ++i) {
    if (i == skip_a || i == skip_b) continue;
    prod *= std::abs(u - ends_[i]);
  }
  return std::sqrt(prod);
}

double Equilibrium::band_kernel(std::size_t j, double theta) const {
  const double a = ends_[2 * j], b = ends_[2 * j + 1];
  const double u = 0.5 * (a + b) + 0.5 * (b - a) * std::cos(theta);
  return std::abs(q_unit(u)) / (kPi * sqrt_abs_r_excluding(u, 2 * j, 2 * j + 1));
}

double Equilibrium::gap_kernel(std::size_t k, double theta) const {
  const double a = ends_[2 * k + 1], b = ends_[2 * k + 2];
  const double u = 0.5 * (a + b) + 0.5 * (b - a) * std::cos(theta);
  return q_unit(u) / sqrt_abs_r_excluding(u, 2 * k + 1, 2 * k + 2);
}

void Equilibrium::solve_periods() {
  const std::size_t p = set_.band_count();
  if (p == 1) {
    q_cheb_ = {1.0};
    return;
  }
  const std::size_t deg = p - 1;
  const double lead = std::ldexp(1.0, 1 - static_cast<int>(deg));  // monic: 2^(1-deg) T_deg
  Eigen::VectorXd prev;
  bool converged = false;
  for (std::size_t nodes = 64; nodes <= (1u << 18); nodes *= 2) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(deg), static_cast<Eigen::Index>(deg));
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(deg));
    for (std::size_t k = 0; k < deg; ++k) {
      const double lo = ends_[2 * k + 1], hi = ends_[2 * k + 2];
      const double m = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
      for (std::size_t i = 0; i < nodes; ++i) {
        // Gauss-Chebyshev: midpoint rule in theta after u = m + r cos(theta).
        const double theta = kPi * (static_cast<double>(i) + 0.5) / static_cast<double>(nodes);
        const double u = m + r * std::cos(theta);
        const double inv = 1.0 / sqrt_abs_r_excluding(u, 2 * k + 1, 2 * k + 2);
        for (std::size_t c = 0; c < deg; ++c)
          a(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(c)) += chebyshev_t(c, u) * inv;
        rhs(static_cast<Eigen::Index>(k)) -= lead * chebyshev_t(deg, u) * inv;
      }
    }
    Eigen::VectorXd sol = a.colPivHouseholderQr().solve(rhs);
    if (!sol.allFinite())
      throw Error(ErrorKind::IllConditioned, "equilibrium", "gap-period system is singular");
    if (prev.size() == sol.size()) {
      const double diff = (sol - prev).cwiseAbs().maxCoeff();
      if (diff <= 1e-14 * std::max(1.0, sol.cwiseAbs().maxCoeff())) {
        prev = sol;
        converged = true;
        break;
      }
    }
    prev = sol;
  }
  if (!converged) throw Error(ErrorKind::IllConditioned, "equilibrium", "gap-period quadrature did not converge");
  q_cheb_.assign(prev.data(), prev.data() + prev.size());
  q_cheb_.push_back(lead);

  auto q = [this](double u) { return chebyshev_sum(q_cheb_, u); };
  std::vector<double> zeros;
  for (std::size_t k = 0; k < deg; ++k) {
    const double lo = ends_[2 * k + 1], hi = ends_[2 * k + 2];
    const double qlo = q(lo), qhi = q(hi);
    if (!((qlo < 0) != (qhi < 0)) || qlo == 0.0 || qhi == 0.0)
      throw Error(ErrorKind::IllConditioned, "equilibrium", "Q has no simple zero in a bounded gap");
    zeros.push_back(bisect_sign_change(q, lo, hi));
  }
  zeta_ = std::move(zeros);
}

std::vector<double> Equilibrium::q_zeros() const {
  std::vector<double> out;
  for (double z : zeta_) out.push_back(from_unit(z));
  return out;
}

double Equilibrium::q(double x) const {
  return std::pow(scale_, static_cast<double>(set_.band_count() - 1)) * q_unit(to_unit(x));
}

double Equilibrium::density(double x) const {
  if (!set_.contains(x)) return 0.0;
  const double u = to_unit(x);
  return std::abs(q_unit(u)) / (kPi * sqrt_abs_r_excluding(u, kNone, kNone)) / scale_;
}

double Equilibrium::mass(double c, double d) const {
  double total = 0.0;
  for (std::size_t j = 0; j < set_.band_count(); ++j) {
    const Interval& iv = set_.band(j);
    const double lo = std::max(c, iv.lo), hi = std::min(d, iv.hi);
    if (!(lo < hi)) continue;
    const double a = ends_[2 * j], b = ends_[2 * j + 1];
    const double m = 0.5 * (a + b), r = 0.5 * (b - a);
    auto theta_of = [&](double x) { return std::acos(std::clamp((to_unit(x) - m) / r, -1.0, 1.0)); };
    const double t_hi = hi == iv.hi ? 0.0 : theta_of(hi);
    const double t_lo = lo == iv.lo ? kPi : theta_of(lo);
    total += quad::smooth([&](double t) { return band_kernel(j, t); }, t_hi, t_lo);
  }
  return total;
}

double Equilibrium::integrate(const std::function<double(double)>& f, std::span<const double> breakpoints) const {
  double total = 0.0;
  for (std::size_t j = 0; j < set_.band_count(); ++j) {
    const double a = ends_[2 * j], b = ends_[2 * j + 1];
    const double m = 0.5 * (a + b), r = 0.5 * (b - a);
    std::vector<double> cuts;
    for (double x : breakpoints) {
      const double u = to_unit(x);
      if (u > a && u < b) cuts.push_back(std::acos(std::clamp((u - m) / r, -1.0, 1.0)));
    }
    total += quad::singular(
        [&](double t) {
          const double u = m + r * std::cos(t);
          return f(from_unit(u)) * band_kernel(j, t);
        },
        0.0, kPi, cuts);
  }
  return total;
}

double Equilibrium::log_potential_unit(std::complex<double> z) const {
  double total = 0.0;
  for (std::size_t j = 0; j < set_.band_count(); ++j) {
    const double a = ends_[2 * j], b = ends_[2 * j + 1];
    const double m = 0.5 * (a + b), r = 0.5 * (b - a);
    const double xr = std::clamp(z.real(), a, b);
    const double dist = std::abs(z - std::complex<double>(xr, 0.0));
    auto f = [&](double t) { return std::log(std::abs(z - (m + r * std::cos(t)))) * band_kernel(j, t); };
    if (dist > 0.2 * r) {
      total += quad::smooth(f, 0.0, kPi, 1e-15);
    } else {
      const double cut = std::acos(std::clamp((xr - m) / r, -1.0, 1.0));
      const double cuts[] = {cut};
      total += quad::singular(f, 0.0, kPi, cuts);
    }
  }
  return total;
}

double Equilibrium::log_potential(std::complex<double> z) const {
  const std::complex<double> u((z.real() - center_) / scale_, z.imag() / scale_);
  return log_potential_unit(u) + std::log(scale_);
}

double Equilibrium::green_unit_outer(double u) const {
  // Primitive of |Q| / sqrt|R| from the nearest hull endpoint, with
  // t = e +- d v^2 removing the square-root singularity at e.
  const bool right = u > 1.0;
  const double e = right ? 1.0 : -1.0;
  const double d = std::abs(u - e);
  const std::size_t skip = right ? ends_.size() - 1 : 0;
  auto f = [&](double v) {
    const double t = right ? e + d * v * v : e - d * v * v;
    return 2.0 * std::sqrt(d) * std::abs(q_unit(t)) / sqrt_abs_r_excluding(t, skip, kNone);
  };
  return quad::smooth(f, 0.0, 1.0, 1e-15);
}

double Equilibrium::green_unit(double u) const {
  if (u >= -1.0 && u <= 1.0) {
    for (std::size_t j = 0; j < set_.band_count(); ++j)
      if (u >= ends_[2 * j] && u <= ends_[2 * j + 1]) return 0.0;
    for (std::size_t k = 0; k + 1 < set_.band_count(); ++k) {
      const double lo = ends_[2 * k + 1], hi = ends_[2 * k + 2];
      if (u > lo && u < hi) {
        const double m = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
        const double theta = std::acos(std::clamp((u - m) / r, -1.0, 1.0));
        auto h = [&](double t) { return gap_kernel(k, t); };
        const double v = theta >= 0.5 * kPi ? quad::smooth(h, theta, kPi, 1e-15) : quad::smooth(h, 0.0, theta, 1e-15);
        return std::abs(v);
      }
    }
  }
  if (std::abs(u) <= 3.0) return green_unit_outer(u);
  return log_potential_unit(u) - (log_capacity_ - std::log(scale_));
}

double Equilibrium::green(double x) const {
  if (set_.contains(x)) return 0.0;
  if (std::isinf(x)) return std::numeric_limits<double>::infinity();
  return green_unit(to_unit(x));
}

double Equilibrium::green(std::complex<double> z) const {
  if (z.imag() == 0.0) return green(z.real());
  return log_potential(z) - log_capacity_;
}

double Equilibrium::green_derivative(double x) const {
  if (set_.contains(x)) throw Error(ErrorKind::OnSet, "green_derivative", "point lies on the set");
  const double u = to_unit(x);
  const double base = q_unit(u) / sqrt_abs_r_excluding(u, kNone, kNone) / scale_;
  if (u > 1.0) return base;
  if (u < -1.0) return -std::abs(base);
  for (std::size_t k = 0; k + 1 < set_.band_count(); ++k) {
    const double lo = ends_[2 * k + 1], hi = ends_[2 * k + 2];
    if (u > lo && u < hi) return (q_unit(lo) > 0 ? 1.0 : -1.0) * base;
  }
  return base;
}

std::vector<double> Equilibrium::gap_periods() const {
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < set_.band_count(); ++k)
    out.push_back(quad::smooth([&](double t) { return gap_kernel(k, t); }, 0.0, kPi, 1e-14, 1e-15));
  return out;
}

// ---------------------------------------------------------------------------
// GreenFunction

GreenFunction::GreenFunction(const FiniteGapSet& set, ExtendedPoint pole)
    : set_(set), pole_(pole), frame_(frame_for(set, pole, "green")) {
  const auto gaps = set_.gaps();
  const auto zeros = frame_.q_zeros();
  if (pole_.is_infinite()) {
    for (std::size_t k = 0; k < zeros.size(); ++k)
      critical_.push_back({gaps[k], ExtendedPoint::finite(zeros[k]), frame_.green(zeros[k])});
  } else {
    const double x0 = pole_.value();
    const double tiny = 1e-10 * frame_.set().diameter();
    for (double z : zeros) {
      const ExtendedPoint loc = std::abs(z) <= tiny ? ExtendedPoint::infinity() : ExtendedPoint::finite(x0 + 1.0 / z);
      critical_.push_back({set_.locate(loc), loc, frame_.green(z)});
    }
    std::sort(critical_.begin(), critical_.end(),
              [](const CriticalPoint& a, const CriticalPoint& b) { return a.gap.index < b.gap.index; });
  }
}

GreenFunction green(const FiniteGapSet& set, ExtendedPoint pole) { return GreenFunction(set, pole); }

std::complex<double> GreenFunction::to_frame(std::complex<double> z) const {
  if (pole_.is_infinite()) return z;
  return 1.0 / (z - pole_.value());
}

double GreenFunction::operator()(double x) const {
  if (pole_.is_finite() && x == pole_.value()) return std::numeric_limits<double>::infinity();
  if (set_.contains(x)) return 0.0;
  if (pole_.is_infinite()) return frame_.green(x);
  return frame_.green(1.0 / (x - pole_.value()));
}

double GreenFunction::operator()(std::complex<double> z) const {
  if (z.imag() == 0.0) return (*this)(z.real());
  return frame_.green(to_frame(z));
}

double GreenFunction::operator()(const ExtendedPoint& p) const {
  if (p.is_finite()) return (*this)(p.value());
  if (pole_.is_infinite()) return std::numeric_limits<double>::infinity();
  return frame_.green(0.0);
}

double GreenFunction::derivative(double x) const {
  if (pole_.is_infinite()) return frame_.green_derivative(x);
  const double u = 1.0 / (x - pole_.value());
  return -frame_.green_derivative(u) * u * u;
}

double GreenFunction::pw_sum() const {
  double s = 0.0;
  for (const auto& c : critical_) s += c.value;
  return s;
}

std::vector<CriticalPoint> critical_points(const GreenFunction& g) { return g.critical_points(); }
double pw_sum(const GreenFunction& g) { return g.pw_sum(); }

// ---------------------------------------------------------------------------
// HarmonicMeasure

HarmonicMeasure::HarmonicMeasure(const FiniteGapSet& set, ExtendedPoint base)
    : set_(set), base_(base), frame_(frame_for(set, base, "harmonic_measure")) {}

HarmonicMeasure harmonic_measure(const FiniteGapSet& set, ExtendedPoint base) { return HarmonicMeasure(set, base); }

double HarmonicMeasure::density(double x) const {
  if (base_.is_infinite()) return frame_.density(x);
  if (!set_.contains(x)) return 0.0;
  const double u = 1.0 / (x - base_.value());
  return frame_.density(u) * u * u;
}

double HarmonicMeasure::mass(double c, double d) const {
  if (base_.is_infinite()) return frame_.mass(c, d);
  const double x0 = base_.value();
  double total = 0.0;
  for (const auto& iv : set_.bands()) {
    const double lo = std::max(c, iv.lo), hi = std::min(d, iv.hi);
    if (!(lo < hi)) continue;
    total += frame_.mass(1.0 / (hi - x0), 1.0 / (lo - x0));
  }
  return total;
}

double HarmonicMeasure::total_mass() const { return mass(set_.lower(), set_.upper()); }

double HarmonicMeasure::integrate(const std::function<double(double)>& f, std::span<const double> breakpoints) const {
  if (base_.is_infinite()) return frame_.integrate(f, breakpoints);
  const double x0 = base_.value();
  std::vector<double> mapped;
  for (double b : breakpoints)
    if (b != x0) mapped.push_back(1.0 / (b - x0));
  return frame_.integrate([&](double u) { return f(x0 + 1.0 / u); }, mapped);
}

// ---------------------------------------------------------------------------
// Pole shift

namespace {

double green_cross_real_base(const FiniteGapSet& set, double base, std::complex<double> other) {
  if (std::abs(std::complex<double>(base) - other) == 0.0) return std::numeric_limits<double>::infinity();
  if (set.contains(base)) return 0.0;
  const Equilibrium eq(set);
  const HarmonicMeasure hm(set, ExtendedPoint::finite(base));
  const double cuts[] = {other.real()};
  const double shift = hm.integrate([&](double t) { return std::log(std::abs(std::complex<double>(t) - other)); }, cuts);
  return eq.green(base) - std::log(std::abs(std::complex<double>(base) - other)) + shift;
}

}  // namespace

double green_cross(const FiniteGapSet& set, std::complex<double> z, std::complex<double> pole) {
  if (pole.imag() == 0.0 && set.contains(pole.real()))
    throw Error(ErrorKind::PoleOnSet, "green_cross", "pole lies on the set");
  if (z.imag() == 0.0) return green_cross_real_base(set, z.real(), pole);
  if (pole.imag() == 0.0) return green_cross_real_base(set, pole.real(), z);
  throw Error(ErrorKind::BothComplex, "green_cross", "both points are non-real");
}

double green_cross(const FiniteGapSet& set, std::complex<double> z, const ExtendedPoint& pole) {
  if (pole.is_infinite()) return Equilibrium(set).green(z);
  return green_cross(set, z, std::complex<double>(pole.value()));
}

// ---------------------------------------------------------------------------
// Szego factors

SzegoFactor szego_factor(const FiniteGapSet& set, const Weight& w, const ExtendedPoint& x_star) {
  const HarmonicMeasure hm(set, x_star);
  const auto singular = w.singular_points();

  // Log zeros on E are integrated in closed form: the harmonic extension of
  // log|t - c| from E is log|z - c| - g(z, inf) for c in E.
  const double end_tol = 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(set.lower()) + std::abs(set.upper()));
  auto on_set = [&](double c) {
    if (set.contains(c)) return true;
    for (const auto& b : set.bands())
      if (std::abs(c - b.lo) <= end_tol || std::abs(c - b.hi) <= end_tol) return true;
    return false;
  };
  std::vector<std::pair<double, double>> subtracted;
  for (const auto& [c, a] : w.log_zeros())
    if (on_set(c)) subtracted.emplace_back(c, a);
  double closed = 0.0;
  if (!subtracted.empty()) {
    const Equilibrium eq(set);
    for (const auto& [c, a] : subtracted) {
      closed += a * (x_star.is_infinite() ? eq.log_capacity()
                                          : std::log(std::abs(x_star.value() - c)) - eq.green(x_star.value()));
    }
  }
  auto remainder = [&](double x, double floor) {
    double v = std::max(w.log(x), -floor);
    for (const auto& [c, a] : subtracted) {
      // Nodes that round onto c carry no mass.
      if (std::abs(x - c) <= end_tol) return 0.0;
      v -= a * std::log(std::abs(x - c));
    }
    return v;
  };
  auto clipped = [&](double floor) {
    std::vector<double> cuts = singular;
    for (double c : w.clip_points(floor)) cuts.push_back(c);
    return closed + hm.integrate([&](double x) { return remainder(x, floor); }, cuts);
  };
  const double i2 = clipped(1e2);
  const double i8 = clipped(1e8);
  if (std::abs(i2 - i8) <= 1e-13 * (1.0 + std::abs(i8))) return {std::exp(i8), i8, false};
  const double i4 = clipped(1e4);
  const double i6 = clipped(1e6);
  const double d2 = i4 - i6;
  const double d3 = i6 - i8;
  if (d3 > 1e-10 * (1.0 + std::abs(i8)) && d3 >= 0.5 * d2 && i2 > i4)
    return {0.0, -std::numeric_limits<double>::infinity(), true};
  return {std::exp(i8), i8, false};
}

double szego_recip_poly(const FiniteGapSet& set, const PolyFactor& p, const ExtendedPoint& x_star) {
  for (const auto& c : p.zeros)
    if (c.imag() == 0.0 && set.contains(c.real()))
      throw Error(ErrorKind::ZeroOnSet, "szego_recip_poly", "zero of P lies on the set");
  const double m = static_cast<double>(p.degree());
  const Equilibrium eq(set);

  if (x_star.is_infinite()) {
    double s = 0.0;
    for (const auto& c : p.zeros) s += eq.green(c);
    return std::exp(-m * eq.log_capacity() - s) / std::abs(p.leading);
  }

  const double xs = x_star.value();
  if (set.contains(xs)) throw Error(ErrorKind::PoleOnSet, "szego_recip_poly", "x* lies on the set");
  const GreenFunction gx(set, x_star);
  std::size_t multiplicity = 0;
  double log_val = m * eq.green(xs) - std::log(std::abs(p.leading));
  for (const auto& c : p.zeros) {
    if (c == std::complex<double>(xs)) {
      ++multiplicity;
      continue;
    }
    log_val -= gx(c);
    log_val -= std::log(std::abs(std::complex<double>(xs) - c));
  }
  if (multiplicity > 0) {
    // g(x, x*) + log|x - x*| -> -log cap of the inverted set as x -> x*.
    log_val += static_cast<double>(multiplicity) * gx.frame().log_capacity();
  }
  return std::exp(log_val);
}

}  // namespace widom
