#pragma once

#include <string_view>

namespace mclab {

enum class Verdict { pass, fail, indeterminate };

inline constexpr std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::pass:
      return "PASS";
    case Verdict::fail:
      return "FAIL";
    case Verdict::indeterminate:
      return "INDETERMINATE";
  }
  return "FAIL";
}

/// FAIL dominates, then INDETERMINATE, then PASS.
inline constexpr Verdict combine(Verdict a, Verdict b) noexcept {
  if (a == Verdict::fail || b == Verdict::fail) return Verdict::fail;
  if (a == Verdict::indeterminate || b == Verdict::indeterminate) return Verdict::indeterminate;
  return Verdict::pass;
}

}  // namespace mclab
