// SPDX-License-Identifier: Apache-2.0
//
// Problem descriptors and command dispatch for the widom tool.
//
// Descriptor (JSON):
//   {
//     "bands":   [[a1, b1], [a2, b2], ...],
//     "weight":  "unit" | {"type": ..., ...},
//     "x_star":  "inf" | <number>,
//     "n":       <int>                  (solve, widom, bounds, enset)
//     "n_range": [lo, hi]               (sweep, dichotomy)
//     "points":  [x, ...]               (potential, optional)
//     "options": {"tol", "grid", "max_iter", "refine", "slack"}   (optional)
//     "solution": <output of solve>     (optional, skips the solve)
//   }
//
// Weight objects:
//   {"type": "unit"}
//   {"type": "abs_poly",   "coefficients": [c0, c1, ...]}  or  {"zeros": [...], "leading": k}
//   {"type": "recip_poly", same as abs_poly}
//   {"type": "semicircle", "arcs": [[a, b], ...]}
//   {"type": "sampled",    "x": [...], "y": [...]}
//   {"type": "exp_cusp",   "center": c, "strength": s}
//   {"type": "product",    "factors": [<weight>, ...]}
#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "widom/extremal.hpp"
#include "widom/realset.hpp"
#include "widom/weight.hpp"

namespace widom::cli {

using Json = nlohmann::ordered_json;

/// Malformed descriptor. path is a JSON pointer into the document.
class InputError : public std::runtime_error {
 public:
  InputError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

struct Descriptor {
  FiniteGapSet set;
  Weight weight;
  ExtendedPoint x_star = ExtendedPoint::infinity();
  std::optional<std::size_t> n;
  std::optional<std::pair<std::size_t, std::size_t>> n_range;
  std::vector<double> points;
  SolverOptions options;
  double slack = 0.05;
  std::optional<ExtremalPoly> solution;
};

Descriptor parse_descriptor(const nlohmann::json& doc);
Weight parse_weight(const nlohmann::json& node, const std::string& path);

Json solution_to_json(const ExtremalPoly& sol);
ExtremalPoly solution_from_json(const nlohmann::json& node, const std::string& path);

/// Compact JSON with every double written as %.17g; non-finite values become
/// the strings "inf", "-inf" and "nan".
std::string dump_json(const Json& doc);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Json>> rows;
};
std::string to_csv(const Table& table);

struct Artifacts {
  Json json;
  Table table;
};

inline constexpr std::string_view kCommands[] = {"potential", "solve", "widom", "bounds", "enset", "sweep", "dichotomy"};

/// Throws InputError or widom::Error.
Artifacts run(std::string_view command, const Descriptor& d);

enum class Format { Json, Csv, Both };

struct Invocation {
  std::string command;
  std::string config;
  std::optional<std::string> out_dir;
  std::optional<double> tol;
  std::optional<std::size_t> grid;
  Format format = Format::Json;
};

/// Reads the descriptor, runs the command and writes the artifacts. Returns
/// 0 on success, 1 on a computation error and 2 on an input error.
int execute(const Invocation& inv, std::ostream& out, std::ostream& err);

}  // namespace widom::cli
