#pragma once

#include <map>
#include <sstream>
#include <string>

#include "wallkit/tableau.hpp"

namespace wallkit {

// Hasse diagram of the weak order, bottom to top, one rank per row.
inline std::string to_dot(const Poset& P, const std::string& name = "weak_order") {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  os << "  rankdir=BT;\n";
  os << "  node [shape=box];\n";
  for (std::size_t a = 0; a < P.size(); ++a) {
    os << "  n" << a << " [label=\"" << P.words[a].to_string() << "\"";
    if (static_cast<int>(a) == P.min || static_cast<int>(a) == P.max) os << ", style=bold";
    os << "];\n";
  }
  for (const auto& c : P.covers) os << "  n" << c.from << " -> n" << c.to << " [label=\"s" << c.k << "\"];\n";
  std::map<int, std::vector<std::size_t>> by_rank;
  for (std::size_t a = 0; a < P.size(); ++a) by_rank[P.rank[a]].push_back(a);
  for (const auto& [r, ids] : by_rank) {
    os << "  { rank=same;";
    for (auto a : ids) os << " n" << a << ";";
    os << " }\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace wallkit
