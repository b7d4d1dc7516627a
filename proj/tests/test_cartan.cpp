#include <gtest/gtest.h>

#include "wallkit/wallkit.hpp"

using namespace wallkit;

namespace {

std::vector<AffineType> types_up_to(int max_ell) {
  std::vector<AffineType> out;
  for (auto f : {Family::A2even, Family::D2})
    for (int l = 2; l <= max_ell; ++l) out.emplace_back(f, l);
  return out;
}

}  // namespace

TEST(Cartan, PairingExamples) {
  const CartanData cd(AffineType(Family::A2even, 2));
  EXPECT_EQ(cd.pairing(cd.alpha(0), cd.alpha(0)), 2);
  EXPECT_EQ(cd.pairing(cd.zero(), cd.zero()), 0);
  EXPECT_EQ(cd.null_root(), RootVec(std::vector<std::int64_t>{2, 2, 1}));
  EXPECT_EQ(cd.pairing(cd.null_root(), cd.alpha(1)), 0);
}

TEST(Cartan, Lambda0PairingExamples) {
  const CartanData cd(AffineType(Family::A2even, 2));
  EXPECT_EQ(cd.lambda0_pairing(cd.alpha(0)), 1);
  EXPECT_EQ(cd.lambda0_pairing(cd.null_root()), 2);
  for (const auto& t : types_up_to(4)) {
    const CartanData c(t);
    EXPECT_EQ(c.lambda0_pairing(c.alpha(1)), 0);
  }
}

TEST(Cartan, DefectExamples) {
  const CartanData cd(AffineType(Family::A2even, 2));
  EXPECT_EQ(cd.defect(cd.zero()), 0);
  EXPECT_EQ(cd.defect(cd.alpha(0)), 0);
  EXPECT_EQ(cd.defect(cd.null_root()), 2);
}

TEST(Cartan, MatrixShape) {
  const CartanData a(AffineType(Family::A2even, 3));
  EXPECT_EQ(a.a(0, 1), -2);
  EXPECT_EQ(a.a(2, 3), -2);
  EXPECT_EQ(a.a(3, 2), -1);
  EXPECT_EQ(a.symmetrizer(), (std::vector<int>{1, 2, 2, 4}));
  const CartanData d(AffineType(Family::D2, 3));
  EXPECT_EQ(d.a(0, 1), -2);
  EXPECT_EQ(d.a(2, 3), -1);
  EXPECT_EQ(d.a(3, 2), -2);
  EXPECT_EQ(d.symmetrizer(), (std::vector<int>{1, 2, 2, 1}));
}

TEST(Cartan, SymmetrizedPairingIsSymmetric) {
  for (const auto& t : types_up_to(5)) {
    const CartanData cd(t);
    for (int i = 0; i < cd.rank(); ++i)
      for (int j = 0; j < cd.rank(); ++j)
        EXPECT_EQ(cd.pairing(cd.alpha(i), cd.alpha(j)), cd.pairing(cd.alpha(j), cd.alpha(i))) << t.name();
  }
}

TEST(Cartan, NullRootIsOrthogonal) {
  for (const auto& t : types_up_to(5)) {
    const CartanData cd(t);
    for (int i = 0; i < cd.rank(); ++i) EXPECT_EQ(cd.pairing(cd.null_root(), cd.alpha(i)), 0) << t.name();
    for (int i = 0; i < cd.rank(); ++i) EXPECT_EQ(cd.coroot(i, cd.null_root()), 0) << t.name();
  }
}

// df(beta - alpha_i) = df(beta) - d_i <h_i, Lambda_0 - beta> - d_i along every
// chain of walls with at most 8 blocks.
TEST(Cartan, DefectRecursionAlongWalls) {
  for (const auto& t : types_up_to(3)) {
    const CartanData cd(t);
    for (int n = 1; n <= 8; ++n)
      for (const auto& y : enumerate_walls(t, n)) {
        const RootVec beta = wall_beta(y);
        for (int i = 0; i < cd.rank(); ++i) {
          if (beta[static_cast<std::size_t>(i)] == 0) continue;
          RootVec smaller = beta;
          smaller -= cd.alpha(i);
          EXPECT_EQ(cd.defect(smaller), cd.defect(beta) - cd.d(i) * cd.weight_at(i, beta) - cd.d(i))
              << t.name() << " " << y.to_string() << " i=" << i;
        }
      }
  }
}

TEST(Cartan, RejectsBadInput) {
  EXPECT_THROW(AffineType(Family::A2even, 1), InvalidInput);
  EXPECT_THROW(parse_family("E"), InvalidInput);
  const CartanData cd(AffineType(Family::D2, 2));
  EXPECT_THROW(cd.pairing(RootVec(2), RootVec(3)), InvalidInput);
}
