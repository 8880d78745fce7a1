// SPDX-License-Identifier: Apache-2.0
#include "widom/error.hpp"

namespace widom {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Overlap: return "Overlap";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::PoleOnSet: return "PoleOnSet";
    case ErrorKind::BothComplex: return "BothComplex";
    case ErrorKind::ZeroOnSet: return "ZeroOnSet";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::WeightDegenerate: return "WeightDegenerate";
    case ErrorKind::DifferentGap: return "DifferentGap";
    case ErrorKind::ZeroAtPoint: return "ZeroAtPoint";
    case ErrorKind::BelowN0: return "BelowN0";
    case ErrorKind::AmbiguousCancellation: return "AmbiguousCancellation";
    case ErrorKind::BandCountMismatch: return "BandCountMismatch";
    case ErrorKind::OnSet: return "OnSet";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_input_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Overlap:
    case ErrorKind::Degenerate:
    case ErrorKind::NonFinite:
    case ErrorKind::EmptyInput:
    case ErrorKind::PoleOnSet:
    case ErrorKind::BothComplex:
    case ErrorKind::ZeroOnSet:
    case ErrorKind::DifferentGap:
    case ErrorKind::BelowN0:
    case ErrorKind::OnSet:
    case ErrorKind::InvalidArgument:
      return true;
    default:
      return false;
  }
}

}  // namespace widom
