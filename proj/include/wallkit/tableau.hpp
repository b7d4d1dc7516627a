#pragma once

#include <algorithm>
#include <climits>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wallkit/errors.hpp"
#include "wallkit/wall.hpp"

namespace wallkit {

inline constexpr int kInfinity = INT_MAX;

// A permutation of {1..n} in one-line notation.
struct Word {
  std::vector<int> letters;

  std::size_t size() const { return letters.size(); }
  int operator[](std::size_t k) const { return letters[k]; }

  static Word identity(int n) {
    Word w;
    for (int k = 1; k <= n; ++k) w.letters.push_back(k);
    return w;
  }
  // Simple transposition s_k = (k, k+1) in S_n.
  static Word simple(int n, int k) {
    Word w = identity(n);
    std::swap(w.letters[static_cast<std::size_t>(k - 1)], w.letters[static_cast<std::size_t>(k)]);
    return w;
  }

  bool is_permutation() const {
    std::vector<char> seen(letters.size() + 1, 0);
    for (int x : letters) {
      if (x < 1 || x > static_cast<int>(letters.size()) || seen[static_cast<std::size_t>(x)]) return false;
      seen[static_cast<std::size_t>(x)] = 1;
    }
    return true;
  }

  // l(w), the inversion count.
  int length() const {
    int inv = 0;
    for (std::size_t a = 0; a < letters.size(); ++a)
      for (std::size_t b = a + 1; b < letters.size(); ++b)
        if (letters[a] > letters[b]) ++inv;
    return inv;
  }

  // (this * v)(x) = this(v(x)).
  Word compose(const Word& v) const {
    Word r;
    r.letters.reserve(v.size());
    for (int x : v.letters) r.letters.push_back(letters[static_cast<std::size_t>(x - 1)]);
    return r;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t k = 0; k < letters.size(); ++k) {
      if (k && letters.size() > 9) s += ' ';
      s += std::to_string(letters[k]);
    }
    return "(" + s + ")";
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;
};

// Labeling of the blocks of a proper wall by 1..n.
class Tableau {
 public:
  Tableau() = default;
  // entries[col][row-1]; must be a bijection onto {1..|wall|}.
  Tableau(Wall wall, std::vector<std::vector<int>> entries) : wall_(std::move(wall)), entries_(std::move(entries)) {
    if (static_cast<int>(entries_.size()) != wall_.length())
      throw InvalidInput("tableau column count does not match the wall");
    const int n = wall_.size();
    pos_.assign(static_cast<std::size_t>(n) + 1, BlockPos{-1, 0});
    for (int c = 0; c < wall_.length(); ++c) {
      const auto& col = entries_[static_cast<std::size_t>(c)];
      if (static_cast<int>(col.size()) != wall_.count(c))
        throw InvalidInput("tableau column " + std::to_string(c) + " has the wrong height");
      for (int r = 1; r <= wall_.count(c); ++r) {
        const int e = col[static_cast<std::size_t>(r - 1)];
        if (e < 1 || e > n || pos_[static_cast<std::size_t>(e)].col != -1)
          throw InvalidInput("tableau entries are not a bijection onto 1..n");
        pos_[static_cast<std::size_t>(e)] = {c, r};
      }
    }
  }

  const Wall& wall() const { return wall_; }
  const AffineType& type() const { return wall_.type(); }
  int size() const { return wall_.size(); }
  const std::vector<std::vector<int>>& entries() const { return entries_; }

  // T(i,j); kInfinity off the wall.
  int at(int col, int row) const {
    if (col < 0 || row < 1 || !wall_.contains({col, row})) return kInfinity;
    return entries_[static_cast<std::size_t>(col)][static_cast<std::size_t>(row - 1)];
  }
  int at(const BlockPos& b) const { return at(b.col, b.row); }

  // Position of the block labeled k.
  const BlockPos& position(int k) const { return pos_.at(static_cast<std::size_t>(k)); }

  // Parts of sh(T_{<=k}); a proper wall when T is standard.
  std::vector<int> prefix_parts(int k) const {
    std::vector<int> p;
    for (const auto& col : entries_) {
      int c = 0;
      for (int e : col)
        if (e <= k) ++c;
      if (c == 0) break;
      p.push_back(c);
    }
    return p;
  }
  Wall prefix_shape(int k) const { return Wall(type(), prefix_parts(k)); }

  std::string to_string() const {
    std::string s = wall_.to_string() + "[";
    for (std::size_t c = 0; c < entries_.size(); ++c) {
      if (c) s += "|";
      for (std::size_t r = 0; r < entries_[c].size(); ++r) {
        if (r) s += ",";
        s += std::to_string(entries_[c][r]);
      }
    }
    return s + "]";
  }

  friend bool operator==(const Tableau& a, const Tableau& b) {
    return a.wall_ == b.wall_ && a.entries_ == b.entries_;
  }

 private:
  Wall wall_;
  std::vector<std::vector<int>> entries_;
  std::vector<BlockPos> pos_;
};

// Numbers 1..n bottom to top, right to left.
inline Tableau canonical(const Wall& y) {
  std::vector<std::vector<int>> e;
  int next = 1;
  for (int c : y.parts()) {
    std::vector<int> col;
    for (int r = 0; r < c; ++r) col.push_back(next++);
    e.push_back(std::move(col));
  }
  return Tableau(y, std::move(e));
}

// delta(i,j) of the local characterization: 0 if res(b) = res_-(b), else 1.
inline int standard_shift(const AffineType& t, int row) {
  return residue(t, row) == res_neighbors(t, row).minus ? 0 : 1;
}

// T(i,j) < T(i,j+1) and T(i,j) < T(i+1, j - delta(i,j)) for every block.
inline bool is_standard(const Tableau& T) {
  const auto& y = T.wall();
  for (int c = 0; c < y.length(); ++c)
    for (int r = 1; r <= y.count(c); ++r) {
      const int e = T.at(c, r);
      if (!(e < T.at(c, r + 1))) return false;
      const int r2 = r - standard_shift(y.type(), r);
      if (r2 >= 1 && !(e < T.at(c + 1, r2))) return false;
    }
  return true;
}

// Reading entries column by column, bottom to top, right to left.
inline Word reading_word(const Tableau& T) {
  Word w;
  for (const auto& col : T.entries())
    for (int e : col) w.letters.push_back(e);
  return w;
}

// wT: entry k replaced by w(k).
inline Tableau act(const Word& w, const Tableau& T) {
  if (static_cast<int>(w.size()) != T.size() || !w.is_permutation())
    throw InvalidInput("act: " + w.to_string() + " is not a permutation of 1.." + std::to_string(T.size()));
  auto e = T.entries();
  for (auto& col : e)
    for (int& x : col) x = w[static_cast<std::size_t>(x - 1)];
  return Tableau(T.wall(), std::move(e));
}

// s_k T: swap the entries k and k+1.
inline Tableau swap_entries(const Tableau& T, int k) {
  auto e = T.entries();
  for (auto& col : e)
    for (int& x : col) {
      if (x == k)
        x = k + 1;
      else if (x == k + 1)
        x = k;
    }
  return Tableau(T.wall(), std::move(e));
}

inline std::vector<int> residue_seq(const Tableau& T) {
  std::vector<int> nu;
  for (int k = 1; k <= T.size(); ++k) nu.push_back(residue(T.type(), T.position(k).row));
  return nu;
}

// ST(Y) (optionally ST(Y, nu)), generated through chains of proper walls and
// ordered by ascending reading word.
inline std::vector<Tableau> enumerate_st(const Wall& y, const std::optional<std::vector<int>>& nu = std::nullopt,
                                         int cap = kDefaultEnumerationCap) {
  const int n = y.size();
  if (n > cap)
    throw ResourceError("tableau enumeration on " + std::to_string(n) + " blocks exceeds cap " +
                        std::to_string(cap));
  if (nu && static_cast<int>(nu->size()) != n) return {};
  const auto& t = y.type();
  std::vector<int> parts = y.parts();
  std::vector<std::vector<int>> entries;
  for (int c : parts) entries.emplace_back(static_cast<std::size_t>(c), 0);
  std::vector<Tableau> out;
  std::vector<int> scratch;
  // Peel blocks from the top down: the block removed at size k carries label k.
  std::function<void(int)> rec = [&](int k) {
    if (k == 0) {
      out.emplace_back(y, entries);
      return;
    }
    for (int c = 0; c < static_cast<int>(parts.size()); ++c) {
      const int h = parts[static_cast<std::size_t>(c)];
      if (h == 0) continue;
      if (nu && residue(t, h) != (*nu)[static_cast<std::size_t>(k - 1)]) continue;
      std::vector<int> trimmed = parts;
      while (!trimmed.empty() && trimmed.back() == 0) trimmed.pop_back();
      if (!detail::try_adjust(t, trimmed, c, -1, scratch)) continue;
      entries[static_cast<std::size_t>(c)][static_cast<std::size_t>(h - 1)] = k;
      --parts[static_cast<std::size_t>(c)];
      rec(k - 1);
      ++parts[static_cast<std::size_t>(c)];
      entries[static_cast<std::size_t>(c)][static_cast<std::size_t>(h - 1)] = 0;
    }
  };
  rec(n);
  std::sort(out.begin(), out.end(),
            [](const Tableau& a, const Tableau& b) { return reading_word(a) < reading_word(b); });
  return out;
}

// Standard tableaux that also satisfy the shifted inequalities
// T(i,j) < T(i,j+1), T(i,j) < T(i+1,j-1); empty unless lambda_Y is strict.
inline bool is_st_infinity(const Tableau& T) {
  const auto& y = T.wall();
  if (!y.is_strict()) return false;
  for (int c = 0; c < y.length(); ++c)
    for (int r = 1; r <= y.count(c); ++r) {
      const int e = T.at(c, r);
      if (!(e < T.at(c, r + 1))) return false;
      if (r > 1 && !(e < T.at(c + 1, r - 1))) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Weak order

// Positions p < r with w(p) > w(r). T -> s_k T swaps the values k, k+1 and
// adds exactly that pair, so u <= w iff inv(u) is contained in inv(w).
class InversionSet {
 public:
  explicit InversionSet(const Word& w) : n_(static_cast<int>(w.size())) {
    bits_.assign((static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_) + 63) / 64, 0);
    for (int p = 0; p < n_; ++p)
      for (int r = p + 1; r < n_; ++r)
        if (w[static_cast<std::size_t>(p)] > w[static_cast<std::size_t>(r)]) set(p + 1, r + 1);
  }
  bool subset_of(const InversionSet& o) const {
    for (std::size_t k = 0; k < bits_.size(); ++k)
      if (bits_[k] & ~o.bits_[k]) return false;
    return true;
  }

 private:
  void set(int a, int b) {
    const auto idx = static_cast<std::size_t>((a - 1) * n_ + (b - 1));
    bits_[idx / 64] |= std::uint64_t{1} << (idx % 64);
  }
  int n_;
  std::vector<std::uint64_t> bits_;
};

struct Cover {
  int from;
  int to;
  int k;  // to = s_k from
};

struct Poset {
  std::vector<Tableau> nodes;
  std::vector<Word> words;
  std::vector<int> rank;
  std::vector<Cover> covers;
  int min = 0;
  int max = 0;
  std::vector<std::vector<char>> leq;
  std::vector<std::vector<int>> meet;
  std::vector<std::vector<int>> join;

  std::size_t size() const { return nodes.size(); }
};

namespace detail {

inline int extremal_bound(const Poset& P, int a, int b, bool upper) {
  const int n = static_cast<int>(P.size());
  std::vector<int> bounds;
  for (int c = 0; c < n; ++c) {
    const bool ok = upper ? (P.leq[a][c] && P.leq[b][c]) : (P.leq[c][a] && P.leq[c][b]);
    if (ok) bounds.push_back(c);
  }
  for (int c : bounds) {
    bool extremal = true;
    for (int d : bounds)
      if (upper ? !P.leq[c][d] : !P.leq[d][c]) {
        extremal = false;
        break;
      }
    if (extremal) return c;
  }
  return -1;
}

}  // namespace detail

// ST(Y) under the weak order, with every structural claim checked: graded by
// length, unique minimum (canonical) and maximum, cover moves are single
// transpositions s_k, the s_k-move graph generates the inversion-containment
// order, and every pair has a meet and a join.
inline Poset weak_order_poset(const Wall& y, int cap = kDefaultEnumerationCap) {
  Poset P;
  P.nodes = enumerate_st(y, std::nullopt, cap);
  const int N = static_cast<int>(P.nodes.size());
  const int n = y.size();
  std::map<Word, int> index;
  std::vector<InversionSet> inv;
  for (int a = 0; a < N; ++a) {
    P.words.push_back(reading_word(P.nodes[static_cast<std::size_t>(a)]));
    P.rank.push_back(P.words.back().length());
    index[P.words.back()] = a;
    inv.emplace_back(P.words.back());
  }
  auto violation = [&](const std::string& what) {
    throw PropertyViolation("weak order on ST" + y.to_string() + ": " + what);
  };

  std::vector<std::vector<int>> up(static_cast<std::size_t>(N));
  for (int a = 0; a < N; ++a) {
    const auto& w = P.words[static_cast<std::size_t>(a)];
    std::vector<int> pos(static_cast<std::size_t>(n) + 1);
    for (int p = 0; p < n; ++p) pos[static_cast<std::size_t>(w[static_cast<std::size_t>(p)])] = p;
    for (int k = 1; k < n; ++k) {
      if (pos[static_cast<std::size_t>(k)] > pos[static_cast<std::size_t>(k + 1)]) continue;
      Word v = w;
      std::swap(v.letters[static_cast<std::size_t>(pos[static_cast<std::size_t>(k)])],
                v.letters[static_cast<std::size_t>(pos[static_cast<std::size_t>(k + 1)])]);
      auto it = index.find(v);
      if (it == index.end()) continue;
      if (P.rank[static_cast<std::size_t>(it->second)] != P.rank[static_cast<std::size_t>(a)] + 1)
        violation("cover " + w.to_string() + " -> " + v.to_string() + " does not raise the length by one");
      P.covers.push_back({a, it->second, k});
      up[static_cast<std::size_t>(a)].push_back(it->second);
    }
  }

  P.leq.assign(static_cast<std::size_t>(N), std::vector<char>(static_cast<std::size_t>(N), 0));
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      P.leq[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          inv[static_cast<std::size_t>(a)].subset_of(inv[static_cast<std::size_t>(b)]);

  // Saturated chains: s_k-reachability must coincide with the order.
  for (int a = 0; a < N; ++a) {
    std::vector<char> seen(static_cast<std::size_t>(N), 0);
    std::vector<int> stack{a};
    seen[static_cast<std::size_t>(a)] = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v : up[static_cast<std::size_t>(u)])
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          stack.push_back(v);
        }
    }
    for (int b = 0; b < N; ++b)
      if (static_cast<bool>(seen[static_cast<std::size_t>(b)]) !=
          static_cast<bool>(P.leq[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]))
        violation("no saturated chain of standard tableaux between " +
                  P.words[static_cast<std::size_t>(a)].to_string() + " and " +
                  P.words[static_cast<std::size_t>(b)].to_string());
  }

  std::vector<int> minima, maxima;
  for (int a = 0; a < N; ++a) {
    bool is_min = true, is_max = true;
    for (int b = 0; b < N; ++b) {
      if (a == b) continue;
      if (P.leq[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)]) is_min = false;
      if (P.leq[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) is_max = false;
    }
    if (is_min) minima.push_back(a);
    if (is_max) maxima.push_back(a);
  }
  if (minima.size() != 1) violation(std::to_string(minima.size()) + " minimal elements");
  if (maxima.size() != 1) violation(std::to_string(maxima.size()) + " maximal elements");
  P.min = minima[0];
  P.max = maxima[0];
  if (!(P.nodes[static_cast<std::size_t>(P.min)] == canonical(y))) violation("minimum is not the canonical tableau");
  if (P.rank[static_cast<std::size_t>(P.min)] != 0) violation("minimum has nonzero rank");

  P.meet.assign(static_cast<std::size_t>(N), std::vector<int>(static_cast<std::size_t>(N), -1));
  P.join = P.meet;
  for (int a = 0; a < N; ++a)
    for (int b = a; b < N; ++b) {
      const int m = detail::extremal_bound(P, a, b, false);
      const int j = detail::extremal_bound(P, a, b, true);
      if (m < 0 || j < 0)
        violation("pair " + P.words[static_cast<std::size_t>(a)].to_string() + ", " +
                  P.words[static_cast<std::size_t>(b)].to_string() + " lacks a " + (m < 0 ? "meet" : "join"));
      P.meet[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = P.meet[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = m;
      P.join[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = P.join[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = j;
    }
  return P;
}

// Generating set V = J u { v_ij } whose generalized quotient is w(ST(Y)).
inline std::vector<Word> quotient_generators(const Wall& y) {
  const int n = y.size();
  const Tableau TY = canonical(y);
  std::vector<char> is_top(static_cast<std::size_t>(n) + 1, 0);
  for (int c = 0; c < y.length(); ++c) is_top[static_cast<std::size_t>(TY.at(c, y.count(c)))] = 1;
  std::vector<Word> V;
  for (int k = 1; k < n; ++k)
    if (!is_top[static_cast<std::size_t>(k)]) V.push_back(Word::simple(n, k));
  for (int c = 0; c < y.length(); ++c)
    for (int r = 1; r <= y.count(c); ++r) {
      const int l = TY.at(c + 1, r - standard_shift(y.type(), r));
      if (l == kInfinity) continue;
      const int o = TY.at(c, r);
      const int t = TY.at(c, y.count(c));
      Word v = Word::identity(n);
      for (int a = o; a < t; ++a) v = v.compose(Word::simple(n, a));
      for (int a = l - 1; a >= t; --a) v = v.compose(Word::simple(n, a));
      V.push_back(std::move(v));
    }
  return V;
}

}  // namespace wallkit
