// SPDX-License-Identifier: Apache-2.0
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "widom/cli.hpp"

int main(int argc, char** argv) {
  using widom::cli::Format;
  CLI::App app{"Weighted Chebyshev polynomials, Widom factors and their bounds on finite unions of intervals"};

  widom::cli::Invocation inv;
  std::string format = "json";
  double tol = 0.0;
  std::size_t grid = 0;
  std::string out_dir;

  std::vector<std::string> commands(std::begin(widom::cli::kCommands), std::end(widom::cli::kCommands));
  app.add_option("command", inv.command, "potential | solve | widom | bounds | enset | sweep | dichotomy")
      ->required()
      ->check(CLI::IsMember(commands));
  app.add_option("--config", inv.config, "problem descriptor (JSON)")->required();
  auto* out_opt = app.add_option("--out", out_dir, "output directory; stdout when omitted");
  auto* tol_opt = app.add_option("--tol", tol, "solver tolerance");
  auto* grid_opt = app.add_option("--grid", grid, "grid points per band per degree");
  app.add_option("--format", format, "json | csv | both")->check(CLI::IsMember({"json", "csv", "both"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (*out_opt) inv.out_dir = out_dir;
  if (*tol_opt) inv.tol = tol;
  if (*grid_opt) inv.grid = grid;
  inv.format = format == "csv" ? Format::Csv : format == "both" ? Format::Both : Format::Json;

  return widom::cli::execute(inv, std::cout, std::cerr);
}
