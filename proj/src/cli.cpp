// SPDX-License-Identifier: Apache-2.0
#include "widom/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "widom/bounds.hpp"
#include "widom/ensets.hpp"
#include "widom/error.hpp"
#include "widom/potential.hpp"

namespace widom::cli {

namespace {

using In = nlohmann::json;

std::string child(const std::string& path, std::string_view key) { return path + "/" + std::string(key); }
std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

const In& require(const In& node, std::string_view key, const std::string& path) {
  if (!node.is_object()) throw InputError(path, "expected an object");
  const auto it = node.find(std::string(key));
  if (it == node.end()) throw InputError(child(path, key), "missing field");
  return *it;
}

double number(const In& node, const std::string& path) {
  if (!node.is_number()) throw InputError(path, "expected a number");
  const double v = node.get<double>();
  if (!std::isfinite(v)) throw InputError(path, "expected a finite number");
  return v;
}

std::size_t count(const In& node, const std::string& path) {
  if (!node.is_number_integer() || node.get<long long>() < 0) throw InputError(path, "expected a non-negative integer");
  return node.get<std::size_t>();
}

std::vector<double> numbers(const In& node, const std::string& path) {
  if (!node.is_array()) throw InputError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < node.size(); ++i) out.push_back(number(node[i], child(path, i)));
  return out;
}

Interval interval(const In& node, const std::string& path) {
  if (!node.is_array() || node.size() != 2) throw InputError(path, "expected [lo, hi]");
  return {number(node[0], child(path, 0)), number(node[1], child(path, 1))};
}

std::vector<Interval> intervals(const In& node, const std::string& path) {
  if (!node.is_array() || node.empty()) throw InputError(path, "expected a nonempty array of [lo, hi]");
  std::vector<Interval> out;
  for (std::size_t i = 0; i < node.size(); ++i) out.push_back(interval(node[i], child(path, i)));
  return out;
}

ExtendedPoint point(const In& node, const std::string& path) {
  if (node.is_string()) {
    const auto s = node.get<std::string>();
    if (s == "inf" || s == "infinity") return ExtendedPoint::infinity();
    throw InputError(path, "expected \"inf\" or a number");
  }
  return ExtendedPoint::finite(number(node, path));
}

PolyFactor poly(const In& node, const std::string& path) {
  if (node.contains("coefficients")) {
    const auto c = numbers(node["coefficients"], child(path, "coefficients"));
    try {
      return poly_from_coefficients(c);
    } catch (const Error& e) {
      throw InputError(child(path, "coefficients"), e.what());
    }
  }
  if (node.contains("zeros")) {
    PolyFactor p;
    const std::string zp = child(path, "zeros");
    const In& zs = node["zeros"];
    if (!zs.is_array()) throw InputError(zp, "expected an array");
    for (std::size_t i = 0; i < zs.size(); ++i) {
      const std::string ip = child(zp, i);
      if (zs[i].is_array()) {
        if (zs[i].size() != 2) throw InputError(ip, "expected a number or [re, im]");
        p.zeros.emplace_back(number(zs[i][0], child(ip, 0)), number(zs[i][1], child(ip, 1)));
      } else {
        p.zeros.emplace_back(number(zs[i], ip), 0.0);
      }
    }
    if (node.contains("leading")) p.leading = number(node["leading"], child(path, "leading"));
    if (p.leading == 0.0) throw InputError(child(path, "leading"), "leading coefficient is zero");
    return p;
  }
  throw InputError(child(path, "coefficients"), "missing field (or \"zeros\")");
}

}  // namespace

Weight parse_weight(const In& node, const std::string& path) {
  if (node.is_string()) {
    if (node.get<std::string>() == "unit") return Weight::unit();
    throw InputError(path, "unknown weight \"" + node.get<std::string>() + "\"");
  }
  const In& type = require(node, "type", path);
  if (!type.is_string()) throw InputError(child(path, "type"), "expected a string");
  const auto t = type.get<std::string>();
  try {
    if (t == "unit") return Weight::unit();
    if (t == "abs_poly") return Weight::abs_poly(poly(node, path));
    if (t == "recip_poly") return Weight::recip_poly(poly(node, path));
    if (t == "semicircle") return Weight::semicircle(intervals(require(node, "arcs", path), child(path, "arcs")));
    if (t == "sampled")
      return Weight::sampled(numbers(require(node, "x", path), child(path, "x")),
                             numbers(require(node, "y", path), child(path, "y")));
    if (t == "exp_cusp")
      return Weight::exp_cusp(number(require(node, "center", path), child(path, "center")),
                              number(require(node, "strength", path), child(path, "strength")));
    if (t == "product") {
      const In& fs = require(node, "factors", path);
      const std::string fp = child(path, "factors");
      if (!fs.is_array()) throw InputError(fp, "expected an array of weights");
      std::vector<Weight> out;
      for (std::size_t i = 0; i < fs.size(); ++i) out.push_back(parse_weight(fs[i], child(fp, i)));
      return Weight::product(std::move(out));
    }
  } catch (const Error& e) {
    throw InputError(path, e.what());
  }
  throw InputError(child(path, "type"), "unknown weight type \"" + t + "\"");
}

Descriptor parse_descriptor(const In& doc) {
  if (!doc.is_object()) throw InputError("", "descriptor must be an object");
  Descriptor d;
  const auto bands = intervals(require(doc, "bands", ""), "/bands");
  try {
    d.set = FiniteGapSet::make(bands);
  } catch (const Error& e) {
    throw InputError("/bands", e.what());
  }
  d.weight = doc.contains("weight") ? parse_weight(doc["weight"], "/weight") : Weight::unit();
  try {
    d.weight.validate_on(d.set);
  } catch (const Error& e) {
    throw InputError("/weight", e.what());
  }
  if (doc.contains("x_star")) d.x_star = point(doc["x_star"], "/x_star");
  if (d.x_star.is_finite() && d.set.contains(d.x_star.value())) throw InputError("/x_star", "x_star lies on the set");

  if (doc.contains("n")) {
    d.n = count(doc["n"], "/n");
    if (*d.n < 1) throw InputError("/n", "degree must be at least 1");
  }
  if (doc.contains("n_range")) {
    const In& r = doc["n_range"];
    if (!r.is_array() || r.size() != 2) throw InputError("/n_range", "expected [lo, hi]");
    const std::size_t lo = count(r[0], "/n_range/0"), hi = count(r[1], "/n_range/1");
    if (lo < 1 || hi < lo) throw InputError("/n_range", "need 1 <= lo <= hi");
    d.n_range = {lo, hi};
  }
  if (doc.contains("points")) d.points = numbers(doc["points"], "/points");

  if (doc.contains("options")) {
    const In& o = doc["options"];
    if (!o.is_object()) throw InputError("/options", "expected an object");
    if (o.contains("tol")) d.options.tol = number(o["tol"], "/options/tol");
    if (o.contains("grid")) d.options.grid_base = count(o["grid"], "/options/grid");
    if (o.contains("max_iter")) d.options.max_iter = count(o["max_iter"], "/options/max_iter");
    if (o.contains("refine")) {
      if (!o["refine"].is_boolean()) throw InputError("/options/refine", "expected a boolean");
      d.options.refine = o["refine"].get<bool>();
    }
    if (o.contains("slack")) d.slack = number(o["slack"], "/options/slack");
    if (!(d.options.tol > 0.0)) throw InputError("/options/tol", "must be positive");
    if (d.options.grid_base < 16) throw InputError("/options/grid", "must be at least 16");
  }

  if (doc.contains("solution")) {
    d.solution = solution_from_json(doc["solution"], "/solution");
    if (!(d.solution->x_star == d.x_star)) throw InputError("/solution/x_star", "does not match /x_star");
    if (d.n && *d.n != d.solution->n) throw InputError("/solution/n", "does not match /n");
    if (!d.n) d.n = d.solution->n;
  }
  return d;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

Json point_json(const ExtendedPoint& p) { return p.is_infinite() ? Json("inf") : Json(p.value()); }

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json bands_json(const std::vector<Interval>& bands) {
  Json out = Json::array();
  for (const auto& b : bands) out.push_back({b.lo, b.hi});
  return out;
}

void write_number(std::string& out, double v) {
  if (std::isnan(v)) {
    out += "\"nan\"";
  } else if (std::isinf(v)) {
    out += v > 0 ? "\"inf\"" : "\"-inf\"";
  } else {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
  }
}

void write_json(std::string& out, const Json& j) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += Json(k).dump();
        out += ':';
        write_json(out, v);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        write_json(out, j[i]);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float:
      write_number(out, j.get<double>());
      break;
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const Json& doc) {
  std::string out;
  write_json(out, doc);
  out += '\n';
  return out;
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      const Json& v = row[i];
      if (v.is_null()) continue;
      if (v.is_number_float()) {
        write_number(out, v.get<double>());
      } else if (v.is_string()) {
        out += v.get<std::string>();
      } else {
        out += v.dump();
      }
    }
    out += '\n';
  }
  return out;
}

Json solution_to_json(const ExtremalPoly& sol) {
  Json j;
  j["n"] = sol.n;
  j["x_star"] = point_json(sol.x_star);
  j["degree"] = sol.degree;
  j["zeros"] = sol.zeros;
  j["scale"] = sol.scale;
  j["sign"] = sol.sign;
  j["log_gain"] = sol.log_gain;
  j["t"] = sol.t;
  j["t_hat"] = sol.t_hat;
  j["points"] = sol.points;
  j["signs"] = sol.signs;
  j["k_star"] = sol.k_star;
  j["defect"] = sol.defect;
  j["iterations"] = sol.iterations;
  j["grid_points"] = sol.grid_points;
  j["coefficients"] = sol.coefficients();
  return j;
}

ExtremalPoly solution_from_json(const In& node, const std::string& path) {
  ExtremalPoly s;
  s.n = count(require(node, "n", path), child(path, "n"));
  s.x_star = point(require(node, "x_star", path), child(path, "x_star"));
  s.degree = count(require(node, "degree", path), child(path, "degree"));
  s.zeros = numbers(require(node, "zeros", path), child(path, "zeros"));
  s.scale = number(require(node, "scale", path), child(path, "scale"));
  const double sign = number(require(node, "sign", path), child(path, "sign"));
  if (sign != 1.0 && sign != -1.0) throw InputError(child(path, "sign"), "expected 1 or -1");
  s.sign = static_cast<int>(sign);
  s.log_gain = number(require(node, "log_gain", path), child(path, "log_gain"));
  s.t = number(require(node, "t", path), child(path, "t"));
  s.t_hat = number(require(node, "t_hat", path), child(path, "t_hat"));
  s.points = numbers(require(node, "points", path), child(path, "points"));
  if (s.zeros.size() != s.degree) throw InputError(child(path, "zeros"), "length differs from degree");
  if (s.degree > s.n || s.degree + 1 < s.n) throw InputError(child(path, "degree"), "must be n or n - 1");
  if (s.points.size() != s.n + 1) throw InputError(child(path, "points"), "expected n + 1 points");
  if (!(s.scale > 0.0)) throw InputError(child(path, "scale"), "must be positive");
  if (node.contains("signs")) {
    const auto v = numbers(node["signs"], child(path, "signs"));
    for (double x : v) s.signs.push_back(x < 0 ? -1 : 1);
  } else {
    s.signs = expected_signs(s.points, s.x_star);
  }
  s.k_star = alternation_index(s.points, s.x_star);
  if (node.contains("defect")) s.defect = number(node["defect"], child(path, "defect"));
  if (node.contains("iterations")) s.iterations = count(node["iterations"], child(path, "iterations"));
  if (node.contains("grid_points")) s.grid_points = count(node["grid_points"], child(path, "grid_points"));
  return s;
}

// ---------------------------------------------------------------------------
// Commands

namespace {

Json descriptor_echo(const Descriptor& d) {
  Json j;
  j["bands"] = bands_json(d.set.bands());
  j["x_star"] = point_json(d.x_star);
  return j;
}

Json szego_json(const SzegoFactor& s) {
  return {{"value", s.value}, {"log_integral", s.log_integral}, {"divergent", s.divergent}};
}

Json alternation_json(const AlternationReport& a) {
  return {{"point_residuals", a.point_residuals}, {"max_point_residual", a.max_point_residual},
          {"signs_match", a.signs_match},         {"audit_max", a.audit_max},
          {"audit_points", a.audit_points},       {"audit_excess", a.audit_excess},
          {"zeros_real_simple", a.zeros_real_simple}, {"pass", a.pass}};
}

Json widom_json(const WidomReport& r) {
  Json j;
  j["n"] = r.n;
  j["t"] = r.t;
  j["widom"] = r.widom;
  j["szego"] = r.szego;
  j["szego_lb"] = r.szego_lb;
  j["pass_szego_lb"] = r.pass_szego_lb;
  j["sharp_lb"] = optional_json(r.sharp_lb);
  j["pass_sharp_lb"] = optional_json(r.pass_sharp_lb);
  j["ub"] = r.ub;
  j["ub_is_theorem"] = r.ub_is_theorem;
  j["pass_ub"] = optional_json(r.pass_ub);
  j["strict_ub"] = optional_json(r.strict_ub);
  j["lb2"] = optional_json(r.lb2);
  j["ub2"] = optional_json(r.ub2);
  j["pass_lb2"] = optional_json(r.pass_lb2);
  j["pass_ub2"] = optional_json(r.pass_ub2);
  j["lb_slack"] = optional_json(r.lb_slack);
  j["ub_slack"] = r.ub_slack;
  j["defect"] = r.defect;
  return j;
}

const std::vector<std::string> kBoundColumns = {"n", "t_n", "W_n", "S", "sharp_lb", "ub", "pass_lb", "pass_ub"};

std::vector<Json> bound_row(const WidomReport& r) {
  const bool pass_lb = r.pass_sharp_lb.value_or(r.pass_szego_lb);
  return {r.n, r.t, r.widom, r.szego, optional_json(r.sharp_lb), r.ub, pass_lb, optional_json(r.pass_ub)};
}

std::size_t need_n(const Descriptor& d, std::string_view command) {
  if (!d.n) throw InputError("/n", "missing field (required by " + std::string(command) + ")");
  return *d.n;
}

std::pair<std::size_t, std::size_t> need_range(const Descriptor& d, std::string_view command) {
  if (d.n_range) return *d.n_range;
  if (d.n) return {1, *d.n};
  throw InputError("/n_range", "missing field (required by " + std::string(command) + ")");
}

ExtremalPoly solution_for(const Descriptor& d, std::string_view command) {
  if (d.solution) return *d.solution;
  return solve_extremal(d.set, d.weight, d.x_star, need_n(d, command), d.options);
}

Artifacts cmd_potential(const Descriptor& d) {
  Artifacts a;
  const Equilibrium eq(d.set);
  const GreenFunction g(d.set, d.x_star);
  Json j = descriptor_echo(d);
  j["capacity"] = eq.capacity();
  j["log_capacity"] = eq.log_capacity();
  j["robin"] = eq.robin();
  j["q_zeros"] = eq.q_zeros();
  j["gap_periods"] = eq.gap_periods();
  Json crit = Json::array();
  for (const auto& c : g.critical_points()) crit.push_back({{"location", point_json(c.location)}, {"value", c.value}});
  j["critical_points"] = crit;
  j["pw"] = g.pw_sum();
  j["g_star"] = d.x_star.is_infinite() ? std::numeric_limits<double>::infinity() : eq.green(d.x_star.value());
  const HarmonicMeasure hm(d.set, d.x_star);
  Json masses = Json::array();
  for (const auto& b : d.set.bands()) masses.push_back(hm.mass(b.lo, b.hi));
  j["band_harmonic_measures"] = masses;
  j["szego"] = szego_json(szego_factor(d.set, d.weight, d.x_star));

  a.table.header = {"x", "green"};
  Json values = Json::array();
  for (double x : d.points) {
    const double v = g(x);
    values.push_back(v);
    a.table.rows.push_back({x, v});
  }
  j["points"] = d.points;
  j["green"] = values;
  a.json = std::move(j);
  return a;
}

Artifacts cmd_solve(const Descriptor& d) {
  Artifacts a;
  const ExtremalPoly sol = solution_for(d, "solve");
  Json j = descriptor_echo(d);
  j["solution"] = solution_to_json(sol);
  j["alternation"] = alternation_json(verify_alternation(sol, d.set, d.weight));
  a.json = std::move(j);
  a.table.header = {"j", "x_j", "sign"};
  for (std::size_t i = 0; i < sol.points.size(); ++i)
    a.table.rows.push_back({i + 1, sol.points[i], i < sol.signs.size() ? Json(sol.signs[i]) : Json(nullptr)});
  return a;
}

Artifacts cmd_widom(const Descriptor& d) {
  Artifacts a;
  const ExtremalPoly sol = solution_for(d, "widom");
  const Equilibrium eq(d.set);
  const double w = widom_factor(sol, eq);
  const SzegoFactor s = szego_factor(d.set, d.weight, d.x_star);
  Json j = descriptor_echo(d);
  j["n"] = sol.n;
  j["t"] = sol.t;
  j["widom"] = w;
  j["szego"] = szego_json(s);
  a.json = std::move(j);
  a.table.header = {"n", "t_n", "W_n", "S"};
  a.table.rows.push_back({sol.n, sol.t, w, s.value});
  return a;
}

Artifacts cmd_bounds(const Descriptor& d) {
  Artifacts a;
  const BoundsContext ctx = make_context(d.set, d.weight, d.x_star, d.options);
  const WidomReport r = bound_report(ctx, solution_for(d, "bounds"));
  Json j = descriptor_echo(d);
  j["log_capacity"] = ctx.log_capacity;
  j["g_star"] = ctx.g_star;
  j["pw"] = ctx.pw;
  j["szego"] = szego_json(ctx.szego);
  j["szego_closed_form"] = optional_json(ctx.szego_closed_form);
  j["n0"] = ctx.recip ? Json(ctx.n0) : Json(nullptr);
  j["report"] = widom_json(r);
  a.json = std::move(j);
  a.table.header = kBoundColumns;
  a.table.rows.push_back(bound_row(r));
  return a;
}

Artifacts cmd_enset(const Descriptor& d) {
  Artifacts a;
  const auto p = d.weight.as_recip_poly();
  if (!p) throw InputError("/weight", "enset needs a weight of the form 1/|P|");
  const ExtremalPoly sol = solution_for(d, "enset");
  const RationalFrame frame = build_rational_frame(sol, d.set, *p, d.options);
  const BandSet bs = compute_band_set(frame);
  const auto samples = default_cosh_samples(bs, 20);
  const CoshReport cosh = verify_cosh_identity(bs, samples);
  const BandMeasureReport meas = verify_band_measures(bs);

  Json fr;
  fr["n"] = frame.n;
  fr["m"] = frame.m;
  fr["degree_t"] = frame.degree_t;
  fr["t"] = frame.t;
  fr["sign"] = frame.sign;
  fr["k"] = frame.k;
  fr["zeros"] = frame.zeros;
  Json poles = Json::array();
  for (const auto& c : frame.poles) poles.push_back({c.real(), c.imag()});
  fr["poles"] = poles;
  Json cancelled = Json::array();
  for (const auto& c : frame.cancelled) cancelled.push_back({c.real(), c.imag()});
  fr["cancelled"] = cancelled;
  fr["d"] = frame.d;
  fr["r"] = frame.r;
  fr["n0"] = frame.n0;

  Json j = descriptor_echo(d);
  j["frame"] = fr;
  j["bands_en"] = bands_json(bs.bands);
  j["level"] = bs.level;
  j["containment_ratio"] = bs.containment_ratio;
  j["contains_base"] = bs.contains_base;
  j["endpoint_residual"] = bs.endpoint_residual;
  j["monotone"] = bs.monotone;
  j["gap_band_counts"] = bs.gap_band_counts;
  j["gap_rules"] = bs.gap_rules;
  j["cosh"] = {{"samples", cosh.samples}, {"residuals", cosh.residuals},
               {"max_residual", cosh.max_residual}, {"pass", cosh.pass}};
  j["band_measures"] = {{"band_sums", meas.band_sums},
                        {"max_band_deviation", meas.max_band_deviation},
                        {"gap_sums", meas.gap_sums},
                        {"max_gap_sum", meas.max_gap_sum},
                        {"total", meas.total},
                        {"complex_poles_skipped", meas.complex_poles_skipped},
                        {"pass", meas.pass}};
  a.json = std::move(j);
  a.table.header = {"band", "lo", "hi", "sum"};
  for (std::size_t i = 0; i < bs.bands.size(); ++i)
    a.table.rows.push_back({i, bs.bands[i].lo, bs.bands[i].hi,
                            i < meas.band_sums.size() ? Json(meas.band_sums[i]) : Json(nullptr)});
  return a;
}

Artifacts cmd_sweep(const Descriptor& d) {
  Artifacts a;
  const auto [lo, hi] = need_range(d, "sweep");
  const BoundsContext ctx = make_context(d.set, d.weight, d.x_star, d.options);
  const SweepReport sw = sweep(ctx, lo, hi, d.slack);
  Json j = descriptor_echo(d);
  j["szego"] = szego_json(ctx.szego);
  j["pw"] = ctx.pw;
  Json rows = Json::array();
  for (const auto& r : sw.rows) rows.push_back(widom_json(r));
  j["rows"] = rows;
  j["tail_from_n"] = lo + sw.tail_from;
  j["tail_min"] = sw.tail_min;
  j["tail_max"] = sw.tail_max;
  j["slack"] = sw.slack;
  j["asymptotic_lb"] = optional_json(sw.asymptotic_lb);
  j["pass_tail_lb"] = optional_json(sw.pass_tail_lb);
  j["asymptotic_ub"] = sw.asymptotic_ub;
  j["pass_tail_ub"] = sw.pass_tail_ub;
  a.json = std::move(j);
  a.table.header = kBoundColumns;
  for (const auto& r : sw.rows) a.table.rows.push_back(bound_row(r));
  return a;
}

Artifacts cmd_dichotomy(const Descriptor& d) {
  Artifacts a;
  const auto [lo, hi] = need_range(d, "dichotomy");
  const BoundsContext ctx = make_context(d.set, d.weight, d.x_star, d.options);
  const DichotomyReport r = szego_dichotomy_report(ctx, lo, hi);
  Json j = descriptor_echo(d);
  j["szego"] = szego_json(r.szego);
  j["n_min"] = r.n_min;
  j["n_max"] = r.n_max;
  j["widom"] = r.widom;
  j["min_widom"] = r.min_widom;
  j["max_widom"] = r.max_widom;
  j["bound_upper"] = r.bound_upper;
  j["strictly_decreasing"] = r.strictly_decreasing;
  j["decay_ratio"] = r.decay_ratio;
  j["consistent"] = optional_json(r.consistent);
  a.json = std::move(j);
  a.table.header = {"n", "W_n"};
  for (std::size_t i = 0; i < r.widom.size(); ++i) a.table.rows.push_back({lo + i, r.widom[i]});
  return a;
}

}  // namespace

Artifacts run(std::string_view command, const Descriptor& d) {
  if (command == "potential") return cmd_potential(d);
  if (command == "solve") return cmd_solve(d);
  if (command == "widom") return cmd_widom(d);
  if (command == "bounds") return cmd_bounds(d);
  if (command == "enset") return cmd_enset(d);
  if (command == "sweep") return cmd_sweep(d);
  if (command == "dichotomy") return cmd_dichotomy(d);
  throw InputError("", "unknown command \"" + std::string(command) + "\"");
}

int execute(const Invocation& inv, std::ostream& out, std::ostream& err) {
  Artifacts art;
  try {
    std::ifstream in(inv.config);
    if (!in) throw InputError("", "cannot open " + inv.config);
    In doc;
    try {
      doc = In::parse(in);
    } catch (const In::parse_error& e) {
      throw InputError("", std::string("invalid JSON: ") + e.what());
    }
    Descriptor d = parse_descriptor(doc);
    if (inv.tol) {
      if (!(*inv.tol > 0.0)) throw InputError("/options/tol", "--tol must be positive");
      d.options.tol = *inv.tol;
    }
    if (inv.grid) {
      if (*inv.grid < 16) throw InputError("/options/grid", "--grid must be at least 16");
      d.options.grid_base = *inv.grid;
    }
    art = run(inv.command, d);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error in " << e.what() << '\n';
    return is_input_error(e.kind()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  const bool want_json = inv.format != Format::Csv;
  const bool want_csv = inv.format != Format::Json;
  if (inv.out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(*inv.out_dir, ec);
    const fs::path base = fs::path(*inv.out_dir) / inv.command;
    auto write = [&](const fs::path& p, const std::string& text) {
      std::ofstream f(p, std::ios::binary);
      f << text;
      if (!f) {
        err << "error: cannot write " << p.string() << '\n';
        return false;
      }
      return true;
    };
    if (want_json && !write(base.string() + ".json", dump_json(art.json))) return 1;
    if (want_csv && !write(base.string() + ".csv", to_csv(art.table))) return 1;
  } else {
    if (want_json) out << dump_json(art.json);
    if (want_csv) out << to_csv(art.table);
  }
  return 0;
}

}  // namespace widom::cli
