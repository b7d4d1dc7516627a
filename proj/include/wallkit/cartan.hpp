#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wallkit/errors.hpp"

namespace wallkit {

enum class Family { A2even, D2 };

inline std::string_view family_name(Family f) { return f == Family::A2even ? "a2even" : "d2"; }

inline Family parse_family(std::string_view s) {
  if (s == "a2even" || s == "A") return Family::A2even;
  if (s == "d2" || s == "D") return Family::D2;
  throw InvalidInput("unknown family '" + std::string(s) + "' (expected a2even or d2)");
}

// X = A^(2)_{2l} or D^(2)_{l+1} with index set I = {0, ..., l}.
struct AffineType {
  Family family = Family::A2even;
  int ell = 2;

  AffineType() = default;
  AffineType(Family f, int l) : family(f), ell(l) {
    if (l < 2) throw InvalidInput("rank ell must be >= 2, got " + std::to_string(l));
  }

  int rank() const { return ell + 1; }
  // Strictness modulus of the associated h-strict partitions.
  int h() const { return family == Family::A2even ? 2 * ell + 1 : ell + 1; }
  // Number of rows in one repetition of the residue pattern.
  int period() const { return family == Family::A2even ? 2 * ell + 1 : 2 * ell + 2; }

  std::string name() const { return std::string(family_name(family)) + "/" + std::to_string(ell); }

  friend bool operator==(const AffineType&, const AffineType&) = default;
  friend auto operator<=>(const AffineType&, const AffineType&) = default;
};

// Element of the root lattice Q = sum Z alpha_i, stored by coefficient.
struct RootVec {
  std::vector<std::int64_t> coeffs;

  RootVec() = default;
  explicit RootVec(std::size_t n) : coeffs(n, 0) {}
  explicit RootVec(std::vector<std::int64_t> c) : coeffs(std::move(c)) {}

  static RootVec simple(std::size_t n, std::size_t i) {
    RootVec r(n);
    r.coeffs.at(i) = 1;
    return r;
  }

  std::size_t size() const { return coeffs.size(); }
  std::int64_t operator[](std::size_t i) const { return coeffs[i]; }
  std::int64_t& operator[](std::size_t i) { return coeffs[i]; }

  std::int64_t height() const {
    std::int64_t s = 0;
    for (auto c : coeffs) s += c;
    return s;
  }
  bool is_nonneg() const {
    for (auto c : coeffs)
      if (c < 0) return false;
    return true;
  }

  RootVec& operator+=(const RootVec& o) {
    if (o.size() != size()) throw InvalidInput("root vector dimension mismatch");
    for (std::size_t i = 0; i < size(); ++i) coeffs[i] += o.coeffs[i];
    return *this;
  }
  RootVec& operator-=(const RootVec& o) {
    if (o.size() != size()) throw InvalidInput("root vector dimension mismatch");
    for (std::size_t i = 0; i < size(); ++i) coeffs[i] -= o.coeffs[i];
    return *this;
  }
  friend RootVec operator+(RootVec a, const RootVec& b) { return a += b; }
  friend RootVec operator-(RootVec a, const RootVec& b) { return a -= b; }
  friend RootVec operator*(std::int64_t k, RootVec a) {
    for (auto& c : a.coeffs) c *= k;
    return a;
  }
  friend bool operator==(const RootVec&, const RootVec&) = default;
  friend auto operator<=>(const RootVec&, const RootVec&) = default;
};

// Affine Cartan datum of type X together with the symmetrizing integers d_i,
// the block multiplicities a_i of a delta-column and the strictness modulus h.
class CartanData {
 public:
  explicit CartanData(AffineType t) : type_(t) {
    const int n = t.rank();
    const int l = t.ell;
    a_.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) a_[i][i] = 2;
    for (int i = 1; i < l; ++i) {
      a_[i][i - 1] = -1;
      a_[i][i + 1] = -1;
    }
    a_[0][1] = -2;
    if (t.family == Family::A2even) {
      a_[l][l - 1] = -1;
      a_[l - 1][l] = -2;
    } else {
      a_[l][l - 1] = -2;
      a_[l - 1][l] = -1;
    }

    d_.assign(n, 2);
    d_[0] = 1;
    d_[l] = t.family == Family::A2even ? 4 : 1;

    mult_.assign(n, 2);
    if (t.family == Family::A2even) mult_[l] = 1;
  }

  const AffineType& type() const { return type_; }
  int rank() const { return type_.rank(); }
  int ell() const { return type_.ell; }
  int h() const { return type_.h(); }

  int a(int i, int j) const { return a_[i][j]; }
  int d(int i) const { return d_[i]; }
  int mult(int i) const { return mult_[i]; }
  const std::vector<std::vector<int>>& matrix() const { return a_; }
  const std::vector<int>& symmetrizer() const { return d_; }
  const std::vector<int>& multiplicities() const { return mult_; }

  RootVec zero() const { return RootVec(rank()); }
  RootVec alpha(int i) const { return RootVec::simple(rank(), i); }

  // delta = sum a_i alpha_i (A) or half of it (D).
  RootVec null_root() const {
    RootVec r(rank());
    for (int i = 0; i < rank(); ++i)
      r[i] = type_.family == Family::A2even ? mult_[i] : mult_[i] / 2;
    return r;
  }

  // (x|y) = sum x_i y_j d_i a_ij.
  std::int64_t pairing(const RootVec& x, const RootVec& y) const {
    check_dim(x);
    check_dim(y);
    std::int64_t s = 0;
    for (int i = 0; i < rank(); ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < rank(); ++j) s += x[i] * y[j] * d_[i] * a_[i][j];
    }
    return s;
  }

  // <h_i, x> for x in the root lattice.
  std::int64_t coroot(int i, const RootVec& x) const {
    check_dim(x);
    std::int64_t s = 0;
    for (int j = 0; j < rank(); ++j) s += a_[i][j] * x[j];
    return s;
  }

  // (x | Lambda_0) = x_0 d_0.
  std::int64_t lambda0_pairing(const RootVec& x) const {
    check_dim(x);
    return x[0] * d_[0];
  }

  // <h_i, Lambda_0 - beta>.
  std::int64_t weight_at(int i, const RootVec& beta) const {
    return (i == 0 ? 1 : 0) - coroot(i, beta);
  }

  // df(Lambda_0, beta) = (beta|Lambda_0) - (beta|beta)/2.
  std::int64_t defect(const RootVec& beta) const {
    const std::int64_t bb = pairing(beta, beta);
    if (bb % 2 != 0)
      throw ConsistencyError("(beta|beta) is odd; defect would be half-integral");
    return lambda0_pairing(beta) - bb / 2;
  }

 private:
  void check_dim(const RootVec& x) const {
    if (static_cast<int>(x.size()) != rank())
      throw InvalidInput("root vector has " + std::to_string(x.size()) + " entries, expected " +
                         std::to_string(rank()));
  }

  AffineType type_;
  std::vector<std::vector<int>> a_;
  std::vector<int> d_;
  std::vector<int> mult_;
};

}  // namespace wallkit
