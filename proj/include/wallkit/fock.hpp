#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wallkit/cartan.hpp"
#include "wallkit/convention.hpp"
#include "wallkit/laurent.hpp"
#include "wallkit/parallel.hpp"
#include "wallkit/wall.hpp"

namespace wallkit {

// Finite linear combination of proper walls with Laurent coefficients.
class FockVector {
 public:
  using Map = std::map<Wall, LaurentPoly>;

  FockVector() = default;
  explicit FockVector(const Wall& y, LaurentPoly c = 1) { add(y, std::move(c)); }

  static FockVector vacuum(const AffineType& t) { return FockVector(Wall(t)); }

  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  LaurentPoly coeff(const Wall& y) const {
    auto it = terms_.find(y);
    return it == terms_.end() ? LaurentPoly{} : it->second;
  }

  void add(const Wall& y, const LaurentPoly& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(y, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  FockVector& operator+=(const FockVector& o) {
    for (const auto& [y, c] : o.terms_) add(y, c);
    return *this;
  }
  FockVector& operator-=(const FockVector& o) {
    for (const auto& [y, c] : o.terms_) add(y, -c);
    return *this;
  }
  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
  friend FockVector operator*(const LaurentPoly& s, const FockVector& v) {
    FockVector r;
    for (const auto& [y, c] : v.terms_) r.add(y, s * c);
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [y, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.to_string() + ")" + y.to_string();
    }
    return s;
  }

  friend bool operator==(const FockVector&, const FockVector&) = default;

 private:
  Map terms_;
};

// (1 - (-q^2)^l) / q.
inline LaurentPoly delta_factor(int l) { return one_minus_neg_q2(l).shifted(-1); }

inline FockVector apply_f(const CartanData& cd, int i, const FockVector& v, Convention conv) {
  FockVector out;
  for (const auto& [y, c] : v.terms()) {
    for (const auto& b : sites(y, i).addable) {
      const auto lr = L_R(cd, y, b, i, conv);
      LaurentPoly coef = LaurentPoly::q(static_cast<int>(cd.d(i) * lr.L));
      if (delta_pm(y.type(), b.row).minus) coef *= delta_factor(l_count(y, b));
      out.add(add_block(y, b.col), coef * c);
    }
  }
  return out;
}

inline FockVector apply_e(const CartanData& cd, int i, const FockVector& v, Convention conv) {
  FockVector out;
  for (const auto& [y, c] : v.terms()) {
    for (const auto& b : sites(y, i).removable) {
      const auto lr = L_R(cd, y, b, i, conv);
      LaurentPoly coef = LaurentPoly::q(static_cast<int>(-cd.d(i) * lr.R));
      if (delta_pm(y.type(), b.row).plus) coef *= delta_factor(l_count(y, b));
      out.add(remove_block(y, b.col), coef * c);
    }
  }
  return out;
}

struct Gen {
  enum Kind { E, F } kind;
  int index;
  friend bool operator==(const Gen&, const Gen&) = default;
};

inline std::string to_string(const Gen& g) { return (g.kind == Gen::E ? "e" : "f") + std::to_string(g.index); }

inline FockVector apply_gen(const CartanData& cd, const Gen& g, const FockVector& v, Convention conv) {
  if (g.index < 0 || g.index >= cd.rank())
    throw InvalidInput("generator index " + std::to_string(g.index) + " outside 0.." + std::to_string(cd.ell()));
  return g.kind == Gen::E ? apply_e(cd, g.index, v, conv) : apply_f(cd, g.index, v, conv);
}

// The word is an operator product: its rightmost generator acts first.
inline FockVector apply_word(const CartanData& cd, const std::vector<Gen>& word, FockVector v, Convention conv) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) v = apply_gen(cd, *it, v, conv);
  return v;
}

inline LaurentPoly vacuum_coeff(const FockVector& v, const AffineType& t) { return v.coeff(Wall(t)); }

// ---------------------------------------------------------------------------
// Module axioms

struct AxiomCell {
  std::string relation;  // "commutator", "serre-e" or "serre-f"
  int i = 0;
  int j = 0;
  long checked = 0;
  long failed = 0;
  std::optional<std::string> first_counterexample;

  bool ok() const { return failed == 0; }
};

struct AxiomReport {
  AffineType type;
  int max_blocks = 0;
  Convention convention = Convention::printed;
  std::vector<AxiomCell> cells;

  bool ok() const {
    for (const auto& c : cells)
      if (!c.ok()) return false;
    return true;
  }
  long failures() const {
    long n = 0;
    for (const auto& c : cells) n += c.failed;
    return n;
  }
  std::optional<std::string> first_counterexample() const {
    for (const auto& c : cells)
      if (c.first_counterexample) return c.first_counterexample;
    return std::nullopt;
  }
};

namespace detail {

inline FockVector power_apply(const CartanData& cd, Gen g, int k, FockVector v, Convention conv) {
  for (int a = 0; a < k; ++a) v = apply_gen(cd, g, v, conv);
  return v;
}

// sum_k (-1)^k [m choose k]_i  x_i^{m-k} x_j x_i^k applied to v, m = 1 - a_ij.
inline FockVector serre_sum(const CartanData& cd, Gen::Kind kind, int i, int j, const FockVector& v,
                            Convention conv) {
  const int m = 1 - cd.a(i, j);
  FockVector total;
  for (int k = 0; k <= m; ++k) {
    FockVector w = power_apply(cd, {kind, i}, k, v, conv);
    w = apply_gen(cd, {kind, j}, w, conv);
    w = power_apply(cd, {kind, i}, m - k, w, conv);
    LaurentPoly coef = qbinom(m, k, cd.d(i));
    if (k % 2) coef = -coef;
    total += coef * w;
  }
  return total;
}

}  // namespace detail

// Checks [e_i, f_j] Y = delta_ij [<h_i, wt Y>]_i Y and both quantum Serre
// relations on every wall with at most max_blocks blocks.
inline AxiomReport check_module_axioms(const AffineType& t, int max_blocks, Convention conv, unsigned threads = 1,
                                       int cap = kDefaultEnumerationCap) {
  const CartanData cd(t);
  const int r = cd.rank();
  std::vector<Wall> walls;
  for (int n = 0; n <= max_blocks; ++n)
    for (auto& y : enumerate_walls(t, n, cap)) walls.push_back(std::move(y));

  AxiomReport rep{t, max_blocks, conv, {}};
  std::vector<std::string> relations{"commutator", "serre-e", "serre-f"};
  for (const auto& rel : relations)
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        if (rel == "commutator" || i != j) rep.cells.push_back({rel, i, j, 0, 0, std::nullopt});

  // One result row per wall: failure witness (or empty) per cell.
  using Row = std::vector<std::optional<std::string>>;
  auto rows = parallel_map<Row>(walls.size(), threads, [&](std::size_t w) {
    const Wall& y = walls[w];
    const FockVector v(y);
    const RootVec beta = wall_beta(y);
    Row row;
    row.reserve(rep.cells.size());
    for (const auto& cell : rep.cells) {
      FockVector lhs, rhs;
      if (cell.relation == "commutator") {
        lhs = apply_e(cd, cell.i, apply_f(cd, cell.j, v, conv), conv) -
              apply_f(cd, cell.j, apply_e(cd, cell.i, v, conv), conv);
        if (cell.i == cell.j)
          rhs = FockVector(y, qint(static_cast<int>(cd.weight_at(cell.i, beta)), cd.d(cell.i)));
      } else {
        lhs = detail::serre_sum(cd, cell.relation == "serre-e" ? Gen::E : Gen::F, cell.i, cell.j, v, conv);
      }
      if (lhs == rhs)
        row.emplace_back();
      else
        row.emplace_back(cell.relation + " (" + std::to_string(cell.i) + "," + std::to_string(cell.j) + ") on " +
                         y.to_string() + ": got " + lhs.to_string() + ", expected " + rhs.to_string());
    }
    return row;
  });

  for (const auto& row : rows)
    for (std::size_t c = 0; c < rep.cells.size(); ++c) {
      auto& cell = rep.cells[c];
      ++cell.checked;
      if (row[c]) {
        ++cell.failed;
        if (!cell.first_counterexample) cell.first_counterexample = row[c];
      }
    }
  return rep;
}

}  // namespace wallkit
