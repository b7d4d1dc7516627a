#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wallkit/cartan.hpp"
#include "wallkit/convention.hpp"
#include "wallkit/errors.hpp"

namespace wallkit {

inline constexpr int kDefaultEnumerationCap = 20;

// Column 0 is the rightmost column y_0; row 1 is the first block above the
// ground-state wall.
struct BlockPos {
  int col = 0;
  int row = 1;
  friend bool operator==(const BlockPos&, const BlockPos&) = default;
  friend auto operator<=>(const BlockPos&, const BlockPos&) = default;
};

inline std::string to_string(const BlockPos& b) {
  return "(" + std::to_string(b.col) + "," + std::to_string(b.row) + ")";
}

// ---------------------------------------------------------------------------
// Residue pattern

namespace detail {
inline int pattern_offset(const AffineType& t, int row) { return (row - 1) % t.period(); }
}  // namespace detail

inline int residue(const AffineType& t, int row) {
  if (row < 1) throw InvalidInput("residue of row " + std::to_string(row));
  const int l = t.ell;
  const int p = detail::pattern_offset(t, row);
  if (t.family == Family::A2even) {
    if (p == 0 || p == 2 * l) return 0;
    if (p <= l) return p;
    return 2 * l - p;
  }
  if (p == 0 || p == 2 * l + 1) return 0;
  if (p <= l - 1) return p;
  if (p == l || p == l + 1) return l;
  return 2 * l + 1 - p;
}

inline bool block_is_half(const AffineType& t, int row) {
  const int l = t.ell;
  const int p = detail::pattern_offset(t, row);
  if (t.family == Family::A2even) return p == 0 || p == 2 * l;
  return p == 0 || p == l || p == l + 1 || p == 2 * l + 1;
}

// A half-integer stored as twice its value.
struct HalfInteger {
  int twice = 0;
  bool is_integral() const { return twice % 2 == 0; }
  double value() const { return twice / 2.0; }
  friend bool operator==(const HalfInteger&, const HalfInteger&) = default;
  friend auto operator<=>(const HalfInteger&, const HalfInteger&) = default;
};

// Height of a column with c blocks, counting the half-unit ground row.
inline HalfInteger column_height(const AffineType& t, int c) {
  int twice = 1;
  for (int r = 1; r <= c; ++r) twice += block_is_half(t, r) ? 1 : 2;
  return {twice};
}

inline bool is_full_column(const AffineType& t, int c) { return c > 0 && c % t.h() != 0; }

// Weakly decreasing, positive and h-strict.
inline bool is_proper(const AffineType& t, std::span<const int> parts) {
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (parts[k] <= 0) return false;
    if (k + 1 < parts.size()) {
      if (parts[k + 1] > parts[k]) return false;
      if (parts[k + 1] == parts[k] && parts[k] % t.h() != 0) return false;
    }
  }
  return true;
}

// Same predicate phrased through column heights: no two full columns share a height.
inline bool is_proper_by_height(const AffineType& t, std::span<const int> parts) {
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (parts[k] <= 0) return false;
    if (k + 1 < parts.size() && parts[k + 1] > parts[k]) return false;
  }
  for (std::size_t a = 0; a < parts.size(); ++a)
    for (std::size_t b = a + 1; b < parts.size(); ++b) {
      const auto ha = column_height(t, parts[a]);
      if (ha.is_integral() && ha == column_height(t, parts[b])) return false;
    }
  return true;
}

struct ResNeighbors {
  int minus;
  int plus;
  friend bool operator==(const ResNeighbors&, const ResNeighbors&) = default;
};

// Residues directly below and above a position; row 1 sits on the ground 0-block.
inline ResNeighbors res_neighbors(const AffineType& t, int row) {
  return {row == 1 ? 0 : residue(t, row - 1), residue(t, row + 1)};
}

struct DeltaPair {
  int minus;
  int plus;
  friend bool operator==(const DeltaPair&, const DeltaPair&) = default;
};

inline DeltaPair delta_pm(const AffineType& t, int row) {
  if (row <= 1) return {0, 0};
  const int r = residue(t, row);
  const auto nb = res_neighbors(t, row);
  return {r == nb.minus ? 1 : 0, r == nb.plus ? 1 : 0};
}

// t_{kj}: residue content of a column holding c blocks.
inline RootVec column_content(const AffineType& t, int c) {
  RootVec v(t.rank());
  const int per = t.period();
  const int full = c / per;
  for (int r = 1; r <= per; ++r) v[residue(t, r)] += full;
  for (int r = full * per + 1; r <= c; ++r) v[residue(t, r)] += 1;
  return v;
}

// ---------------------------------------------------------------------------
// Wall

class Wall {
 public:
  Wall() = default;
  explicit Wall(AffineType t) : type_(t) {}
  Wall(AffineType t, std::vector<int> parts) : type_(t), parts_(std::move(parts)) {
    if (!is_proper(type_, parts_))
      throw InvalidInput("parts " + parts_string(parts_) + " do not form a proper Young wall of type " +
                         type_.name());
  }

  const AffineType& type() const { return type_; }
  const std::vector<int>& parts() const { return parts_; }

  // |Y|
  int size() const {
    int s = 0;
    for (int p : parts_) s += p;
    return s;
  }
  // l(Y), the number of nonempty columns.
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }

  int count(int col) const {
    return (col >= 0 && col < length()) ? parts_[static_cast<std::size_t>(col)] : 0;
  }
  bool contains(const BlockPos& b) const { return b.row >= 1 && b.row <= count(b.col); }
  bool is_top(const BlockPos& b) const { return b.row >= 1 && b.row == count(b.col); }

  bool is_strict() const {
    for (std::size_t k = 0; k + 1 < parts_.size(); ++k)
      if (parts_[k] == parts_[k + 1]) return false;
    return true;
  }

  std::string to_string() const { return parts_.empty() ? "()" : parts_string(parts_); }

  friend bool operator==(const Wall&, const Wall&) = default;
  friend auto operator<=>(const Wall&, const Wall&) = default;

  static std::string parts_string(const std::vector<int>& p) {
    std::string s = "(";
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k) s += ",";
      s += std::to_string(p[k]);
    }
    return s + ")";
  }

 private:
  AffineType type_;
  std::vector<int> parts_;
};

namespace detail {

// Writes the parts with column `col` changed by `delta` into `out` (trailing
// zeros dropped); returns false if they do not form a proper wall.
inline bool try_adjust(const AffineType& t, const std::vector<int>& parts, int col, int delta,
                       std::vector<int>& out) {
  out = parts;
  if (col == static_cast<int>(out.size())) out.push_back(0);
  out[static_cast<std::size_t>(col)] += delta;
  for (std::size_t k = 0; k + 1 < out.size(); ++k)
    if (out[k + 1] > out[k]) return false;
  while (!out.empty() && out.back() == 0) out.pop_back();
  return is_proper(t, out);
}

}  // namespace detail

inline Wall add_block(const Wall& y, int col) {
  std::vector<int> p;
  if (col < 0 || col > y.length() || !detail::try_adjust(y.type(), y.parts(), col, 1, p))
    throw InvalidInput("cannot add a block to column " + std::to_string(col) + " of " + y.to_string());
  return Wall(y.type(), std::move(p));
}

inline Wall remove_block(const Wall& y, int col) {
  std::vector<int> p;
  if (col < 0 || col >= y.length() || !detail::try_adjust(y.type(), y.parts(), col, -1, p))
    throw InvalidInput("cannot remove a block from column " + std::to_string(col) + " of " +
                       y.to_string());
  return Wall(y.type(), std::move(p));
}

// True iff no single column can shed one whole pattern period from its top
// and leave a proper wall.
inline bool is_reduced(const Wall& y) {
  const int per = y.type().period();
  std::vector<int> scratch;
  for (int k = 0; k < y.length(); ++k)
    if (y.count(k) >= per && detail::try_adjust(y.type(), y.parts(), k, -per, scratch)) return false;
  return true;
}

inline RootVec wall_beta(const Wall& y) {
  RootVec b(y.type().rank());
  for (int c : y.parts()) b += column_content(y.type(), c);
  return b;
}

// d_i(Y,k) = -<h_i, wt(y_k)>; zero for empty columns.
inline std::int64_t column_d(const CartanData& cd, const Wall& y, int i, int k) {
  const int c = y.count(k);
  if (c == 0) return 0;
  return -cd.coroot(i, column_content(cd.type(), c));
}

struct Sites {
  std::vector<BlockPos> addable;
  std::vector<BlockPos> removable;
};

inline Sites sites(const Wall& y, int i) {
  Sites s;
  std::vector<int> scratch;
  const auto& t = y.type();
  for (int k = 0; k <= y.length(); ++k) {
    const int c = y.count(k);
    if (residue(t, c + 1) == i && detail::try_adjust(t, y.parts(), k, 1, scratch))
      s.addable.push_back({k, c + 1});
    if (c > 0 && residue(t, c) == i && detail::try_adjust(t, y.parts(), k, -1, scratch))
      s.removable.push_back({k, c});
  }
  return s;
}

// l(b;Y) = #{ k : |y_k| = |y_p| } with p = b.col, counted over nonempty columns.
inline int l_count(const Wall& y, const BlockPos& b) {
  const int c = y.count(b.col);
  if (c == 0) return 0;
  return static_cast<int>(std::count(y.parts().begin(), y.parts().end(), c));
}

struct LR {
  std::int64_t L;
  std::int64_t R;
  friend bool operator==(const LR&, const LR&) = default;
};

inline LR L_R(const CartanData& cd, const Wall& y, const BlockPos& b, int i, Convention conv) {
  LR out{0, 0};
  for (int k = b.col + 1; k < y.length(); ++k) out.L += column_d(cd, y, i, k);
  for (int k = 0; k < std::min(b.col, y.length()); ++k) out.R += column_d(cd, y, i, k);
  const int offset = i == 0 ? 1 : 0;
  switch (conv) {
    case Convention::printed: out.L += offset; break;
    case Convention::offset_none: break;
    case Convention::offset_in_r: out.R -= offset; break;
    case Convention::offset_occupied:
      if (b.row > 1) out.L += offset;
      break;
  }
  return out;
}

struct WallStats {
  std::vector<int> varpi;  // varpi[j-1] = #{ columns with h*j blocks }
  int abs_varpi = 0;
  std::vector<BlockPos> C_minus;
  std::vector<BlockPos> C_plus;
  int c_minus = 0;
  int c_plus = 0;
  std::int64_t o = 0;      // (Lambda_0 | Lambda_0 - wt(Y))
  std::int64_t dstat = 0;  // sum_{k<l} (wt(y_l) | wt(y_k))
  int halves = 0;          // number of half-unit blocks, = -<d_X, wt(Y)>
  std::map<BlockPos, int> l_R;  // for blocks of C_plus
};

inline WallStats wall_stats(const CartanData& cd, const Wall& y) {
  WallStats s;
  const auto& t = y.type();
  const int h = t.h();
  for (int c : y.parts()) {
    if (c % h == 0) {
      const auto j = static_cast<std::size_t>(c / h);
      if (s.varpi.size() < j) s.varpi.resize(j, 0);
      ++s.varpi[j - 1];
      ++s.abs_varpi;
    }
  }
  for (int k = 0; k < y.length(); ++k) {
    for (int r = 1; r <= y.count(k); ++r) {
      const auto dl = delta_pm(t, r);
      if (dl.minus) s.C_minus.push_back({k, r});
      if (dl.plus) s.C_plus.push_back({k, r});
      if (block_is_half(t, r)) ++s.halves;
    }
  }
  s.c_minus = static_cast<int>(s.C_minus.size());
  s.c_plus = static_cast<int>(s.C_plus.size());
  const RootVec beta = wall_beta(y);
  s.o = cd.lambda0_pairing(beta);
  std::vector<RootVec> wts;
  for (int c : y.parts()) wts.push_back(column_content(t, c));
  for (std::size_t k = 0; k < wts.size(); ++k)
    for (std::size_t l = k + 1; l < wts.size(); ++l) s.dstat += cd.pairing(wts[l], wts[k]);
  for (const auto& b : s.C_plus) {
    int v = 1;
    if (y.is_top(b)) {
      v = 0;
      for (int k = 0; k <= b.col; ++k)
        if (y.count(k) == y.count(b.col)) ++v;
    }
    s.l_R[b] = v;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Enumeration

// All proper walls with n blocks, in decreasing lexicographic order of parts.
inline std::vector<Wall> enumerate_walls(const AffineType& t, int n, int cap = kDefaultEnumerationCap) {
  if (n < 0) throw InvalidInput("negative block count");
  if (n > cap)
    throw ResourceError("enumeration of " + std::to_string(n) + " blocks exceeds cap " + std::to_string(cap));
  std::vector<Wall> out;
  std::vector<int> cur;
  const int h = t.h();
  std::function<void(int, int)> rec = [&](int rem, int mx) {
    if (rem == 0) {
      out.emplace_back(t, cur);
      return;
    }
    for (int p = std::min(rem, mx); p >= 1; --p) {
      if (!cur.empty() && p == cur.back() && p % h != 0) continue;
      cur.push_back(p);
      rec(rem - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

inline std::vector<Wall> enumerate_walls(const CartanData& cd, const RootVec& beta,
                                         int cap = kDefaultEnumerationCap) {
  if (static_cast<int>(beta.size()) != cd.rank()) throw InvalidInput("beta has the wrong number of entries");
  if (!beta.is_nonneg()) throw InvalidInput("beta must lie in the positive root cone");
  std::vector<Wall> out;
  for (auto& y : enumerate_walls(cd.type(), static_cast<int>(beta.height()), cap))
    if (wall_beta(y) == beta) out.push_back(std::move(y));
  return out;
}

}  // namespace wallkit
