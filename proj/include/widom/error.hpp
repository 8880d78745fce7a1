// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace widom {

enum class ErrorKind {
  // realset
  Overlap,
  Degenerate,
  NonFinite,
  EmptyInput,
  // potential
  IllConditioned,
  PoleOnSet,
  BothComplex,
  ZeroOnSet,
  // extremal
  NoConvergence,
  WeightDegenerate,
  DifferentGap,
  ZeroAtPoint,
  // ensets
  BelowN0,
  AmbiguousCancellation,
  BandCountMismatch,
  OnSet,
  // generic bad argument
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// True for kinds caused by the caller's input rather than a numerical failure.
bool is_input_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string op, const std::string& what)
      : std::runtime_error(std::string(op) + ": " + std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        op_(std::move(op)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& op() const noexcept { return op_; }

 private:
  ErrorKind kind_;
  std::string op_;
};

}  // namespace widom
