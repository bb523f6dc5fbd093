#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "twistkit/linalg.hpp"

using namespace twistkit;

namespace {

AlphabetPtr A() { return ParamAlphabet::for_degree(3); }
ParamPoly C(const std::string& n) { return ParamPoly::variable(A(), n); }

// cofactor expansion, fine for n <= 5
ParamPoly laplace(const PolyMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return ParamPoly(1);
  ParamPoly out;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    PolyMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      minor.emplace_back();
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) minor.back().push_back(m[r][k]);
    }
    ParamPoly t = m[0][c] * laplace(minor);
    out += c % 2 ? -t : t;
  }
  return out;
}

TEST(RankDet, Identity) {
  PolyMatrix I(3, std::vector<ParamPoly>(3));
  for (int k = 0; k < 3; ++k) I[k][k] = ParamPoly(1);
  auto r = ff_rank_det(I);
  EXPECT_EQ(r.rank, 3u);
  ASSERT_TRUE(r.det);
  EXPECT_EQ(*r.det, ParamPoly(1));
  EXPECT_EQ(r.pivots, (std::vector<ParamPoly>{ParamPoly(1), ParamPoly(1), ParamPoly(1)}));
}

TEST(RankDet, Diagonal) {
  PolyMatrix m{{C("C_1a"), ParamPoly()}, {ParamPoly(), C("C_zb")}};
  auto r = ff_rank_det(m);
  EXPECT_EQ(r.rank, 2u);
  EXPECT_EQ(*r.det, C("C_1a") * C("C_zb"));
  EXPECT_EQ(r.pivots, (std::vector<ParamPoly>{C("C_1a"), C("C_1a") * C("C_zb")}));
}

TEST(RankDet, SingularAndRectangular) {
  PolyMatrix s{{C("C_2"), C("C_1a")}, {C("C_2") * 2, C("C_1a") * 2}};
  auto r = ff_rank_det(s);
  EXPECT_EQ(r.rank, 1u);
  EXPECT_FALSE(r.det);
  PolyMatrix rect{{C("C_2"), ParamPoly(1), C("C_za")}, {C("C_2"), ParamPoly(1), C("C_za")}};
  EXPECT_EQ(ff_rank_det(rect).rank, 1u);
  PolyMatrix rect2{{C("C_2"), ParamPoly(1), C("C_za")}, {C("C_1b"), ParamPoly(), C("C_za")}};
  EXPECT_EQ(ff_rank_det(rect2).rank, 2u);
  EXPECT_EQ(ff_rank_det(PolyMatrix{}).rank, 0u);
  EXPECT_THROW(ff_rank_det(PolyMatrix{{ParamPoly(1)}, {ParamPoly(1), ParamPoly(2)}}), StructuralError);
}

TEST(RankDet, MatchesCofactorExpansion) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> zero(0, 2);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + t % 4;
    PolyMatrix m(n, std::vector<ParamPoly>(n));
    for (auto& row : m)
      for (auto& e : row)
        if (zero(rng)) e = tk_test::random_param(A(), rng);
    auto r = ff_rank_det(m);
    ParamPoly want = laplace(m);
    if (want.is_zero()) {
      EXPECT_FALSE(r.det);
    } else {
      ASSERT_TRUE(r.det) << t;
      EXPECT_EQ(*r.det, want) << t;
      ParamPoly prod(1);
      for (const auto& s : r.singletons) prod *= s;
      EXPECT_EQ(prod * *r.core_det, want);
    }
  }
}

TEST(RankDet, ModularAgreement) {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    PolyMatrix m(4, std::vector<ParamPoly>(4));
    for (auto& row : m)
      for (auto& e : row) e = tk_test::random_param(A(), rng);
    m[3] = m[0];
    for (auto& e : m[3]) e *= ParamPoly(3);
    auto r = ff_rank_det(m);
    auto chk = specialization_check(m, r, A()->size(), 5, seed);
    EXPECT_TRUE(chk.ok()) << seed;
    m[3][0] += ParamPoly(1);
    auto r2 = ff_rank_det(m);
    EXPECT_TRUE(specialization_check(m, r2, A()->size(), 5, seed).ok()) << seed;
  }
}

}  // namespace
