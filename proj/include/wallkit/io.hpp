#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "wallkit/cartan.hpp"
#include "wallkit/dimension.hpp"
#include "wallkit/fock.hpp"
#include "wallkit/laurent.hpp"
#include "wallkit/tableau.hpp"
#include "wallkit/wall.hpp"

namespace wallkit::io {

using json = nlohmann::ordered_json;

inline json to_json(const RootVec& b) {
  json j = json::object();
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i] != 0) j[std::to_string(i)] = b[i];
  return j;
}

inline RootVec root_from_json(const json& j, std::size_t rank) {
  if (!j.is_object()) throw InvalidInput("root vector JSON must be an object");
  RootVec b(rank);
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::size_t i = 0;
    try {
      i = std::stoul(it.key());
    } catch (const std::exception&) {
      throw InvalidInput("root vector key '" + it.key() + "' is not an index");
    }
    if (i >= rank || !it.value().is_number_integer()) throw InvalidInput("bad root vector entry '" + it.key() + "'");
    b[i] = it.value().get<std::int64_t>();
  }
  return b;
}

// Coefficients that fit in 64 bits are numbers, larger ones decimal strings.
inline json coef_json(const Int& c) {
  if (c >= Int(std::numeric_limits<std::int64_t>::min()) && c <= Int(std::numeric_limits<std::int64_t>::max()))
    return static_cast<std::int64_t>(c);
  return c.str();
}

inline json to_json(const LaurentPoly& p) {
  json j = json::object();
  for (const auto& t : p.terms()) j[std::to_string(t.exp)] = coef_json(t.coef);
  return j;
}

inline LaurentPoly laurent_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("Laurent polynomial JSON must be an object");
  std::map<int, Int> m;
  for (auto it = j.begin(); it != j.end(); ++it) {
    int e = 0;
    try {
      e = std::stoi(it.key());
    } catch (const std::exception&) {
      throw InvalidInput("exponent '" + it.key() + "' is not an integer");
    }
    const auto& v = it.value();
    if (v.is_number_integer())
      m[e] += Int(v.get<std::int64_t>());
    else if (v.is_string())
      m[e] += Int(v.get<std::string>());
    else
      throw InvalidInput("coefficient of q^" + it.key() + " is not an integer");
  }
  return LaurentPoly::from_map(m);
}

inline json to_json(const Wall& y) {
  return json{{"family", std::string(family_name(y.type().family))}, {"ell", y.type().ell}, {"parts", y.parts()}};
}

inline Wall wall_from_json(const json& j) {
  try {
    const AffineType t(parse_family(j.at("family").get<std::string>()), j.at("ell").get<int>());
    return Wall(t, j.at("parts").get<std::vector<int>>());
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("wall JSON: ") + e.what());
  }
}

inline json to_json(const Tableau& T) {
  json entries = json::array();
  for (int k = 1; k <= T.size(); ++k) {
    const auto& b = T.position(k);
    entries.push_back(json::array({b.col, b.row, k}));
  }
  return json{{"wall", to_json(T.wall())}, {"entries", entries}};
}

inline json to_json(const Word& w) { return w.letters; }

inline json to_json(const FockVector& v) {
  json terms = json::array();
  for (const auto& [y, c] : v.terms()) terms.push_back(json{{"wall", to_json(y)}, {"coeff", to_json(c)}});
  return json{{"terms", terms}};
}

inline json to_json(const DimReport& r, const AffineType& t) {
  json walls = json::array();
  for (const auto& w : r.per_wall)
    walls.push_back(json{{"wall", to_json(w.wall)},
                         {"varpi_angle", to_json(w.varpi_angle)},
                         {"F_canonical", to_json(w.F_canonical)},
                         {"m_Y", to_json(w.m_Y)},
                         {"contribution", to_json(w.value())}});
  return json{{"family", std::string(family_name(t.family))},
              {"ell", t.ell},
              {"beta", to_json(r.beta)},
              {"convention", std::string(convention_name(r.convention))},
              {"per_wall", walls},
              {"total", to_json(r.total())}};
}

inline DimReport dim_report_from_json(const json& j) {
  try {
    const AffineType t(parse_family(j.at("family").get<std::string>()), j.at("ell").get<int>());
    DimReport r;
    r.beta = root_from_json(j.at("beta"), static_cast<std::size_t>(t.rank()));
    r.convention = parse_convention(j.at("convention").get<std::string>());
    for (const auto& w : j.at("per_wall"))
      r.per_wall.push_back({wall_from_json(w.at("wall")), laurent_from_json(w.at("varpi_angle")),
                            laurent_from_json(w.at("F_canonical")), laurent_from_json(w.at("m_Y"))});
    if (r.total() != laurent_from_json(j.at("total"))) throw InvalidInput("DimReport total does not match its walls");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("DimReport JSON: ") + e.what());
  }
}

inline json to_json(const Poset& P) {
  json nodes = json::array();
  for (std::size_t a = 0; a < P.size(); ++a)
    nodes.push_back(json{{"id", a}, {"word", to_json(P.words[a])}, {"rank", P.rank[a]}, {"tableau", to_json(P.nodes[a])}});
  json covers = json::array();
  for (const auto& c : P.covers) covers.push_back(json{{"from", c.from}, {"to", c.to}, {"k", c.k}});
  return json{{"nodes", nodes}, {"covers", covers}, {"min", P.min}, {"max", P.max}};
}

inline json to_json(const AxiomReport& r) {
  json cells = json::array();
  for (const auto& c : r.cells) {
    json cell{{"relation", c.relation}, {"i", c.i}, {"j", c.j}, {"checked", c.checked}, {"failed", c.failed}};
    if (c.first_counterexample) cell["counterexample"] = *c.first_counterexample;
    cells.push_back(cell);
  }
  return json{{"family", std::string(family_name(r.type.family))},
              {"ell", r.type.ell},
              {"max_blocks", r.max_blocks},
              {"convention", std::string(convention_name(r.convention))},
              {"ok", r.ok()},
              {"cells", cells}};
}

inline json to_json(const CalibrationReport& r) {
  json cols = json::array();
  for (const auto& col : r.columns) {
    json checks = json::array();
    for (const auto& c : col.checks) {
      json cj{{"id", c.id},           {"name", c.name},     {"convention_free", c.convention_free},
              {"fatal", c.fatal},             {"checked", c.checked}, {"failed", c.failed}, {"ok", c.ok()}};
      if (c.witness) cj["witness"] = *c.witness;
      checks.push_back(cj);
    }
    cols.push_back(json{{"convention", std::string(convention_name(col.convention))},
                        {"passed", col.passed()},
                        {"checks", checks}});
  }
  json j{{"family", std::string(family_name(r.type.family))},
         {"ell", r.type.ell},
         {"max_blocks", r.max_blocks},
         {"columns", cols},
         {"default_convention",
          r.default_convention ? json(std::string(convention_name(*r.default_convention))) : json(nullptr)},
         {"findings", r.findings}};
  return j;
}

}  // namespace wallkit::io
