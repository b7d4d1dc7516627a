#pragma once

#include <array>
#include <string>
#include <string_view>

#include "wallkit/errors.hpp"

namespace wallkit {

// Placement of the Lambda_0(h_i) = delta_{i0} summand in the Fock-action
// exponents L_i / R_i.
//
//   printed         L_i = sum_{k>p} d_i(Y,k) + delta_{i0}         R_i = sum_{k<p} d_i(Y,k)
//   offset_none     L_i = sum_{k>p} d_i(Y,k)                      R_i = sum_{k<p} d_i(Y,k)
//   offset_in_r     L_i = sum_{k>p} d_i(Y,k)                      R_i = sum_{k<p} d_i(Y,k) - delta_{i0}
//   offset_occupied L_i = sum_{k>p} d_i(Y,k) + delta_{i0}[row > 1] R_i = sum_{k<p} d_i(Y,k)
//
// offset_occupied charges the Lambda_0 term to the first empty column, so a
// block in row 1 (which opens that column) does not see it.
enum class Convention { printed, offset_none, offset_in_r, offset_occupied };

inline constexpr std::array<Convention, 4> kAllConventions = {
    Convention::printed, Convention::offset_none, Convention::offset_in_r, Convention::offset_occupied};

inline std::string_view convention_name(Convention c) {
  switch (c) {
    case Convention::printed: return "printed";
    case Convention::offset_none: return "offset-none";
    case Convention::offset_in_r: return "offset-in-R";
    case Convention::offset_occupied: return "offset-occupied";
  }
  return "?";
}

inline Convention parse_convention(std::string_view s) {
  for (auto c : kAllConventions)
    if (convention_name(c) == s) return c;
  if (s == "offset-in-r") return Convention::offset_in_r;
  throw InvalidInput("unknown convention '" + std::string(s) + "'");
}

}  // namespace wallkit
