#include <gtest/gtest.h>

#include <random>

#include "twistkit/family.hpp"

using namespace twistkit;

namespace {

TEST(IndexSets, SmallCases) {
  IndexSet i3(3);
  EXPECT_EQ(i3.I(), (std::vector<Index>{{0, 2}, {1, 2}, {2, 0}, {2, 1}, {2, 2}}));
  EXPECT_EQ(i3.J(), (std::vector<Index>{{2, 1}, {2, 2}}));
  IndexSet i5(5);
  EXPECT_EQ(i5.I().size(), 21u);
  EXPECT_EQ(i5.J().size(), 16u);
  for (int d = 3; d <= 10; ++d) {
    IndexSet ix(d);
    EXPECT_EQ(ix.I().size(), static_cast<std::size_t>(d * d - 4));
    EXPECT_EQ(ix.J().size(), static_cast<std::size_t>(d * d - d - 4));
  }
  EXPECT_THROW(IndexSet(2), PreconditionError);
}

TEST(Gamma, Rows) {
  Family f(5);
  const auto& L = f.layout();
  EXPECT_EQ(f.gamma().at(4, 1), f.x_mono(0, 1, 0, 2, f.C("C_1a")) + f.x_mono(0, 0, 1, 2, f.C("C_1b")));
  EXPECT_TRUE(f.gamma().at(4, 0).is_zero());
  for (int i = 0; i <= 3; ++i) EXPECT_TRUE(f.gamma().at(i, 4).is_zero());
  EXPECT_EQ(f.gamma().at(2, 3), f.x_mono(2, 0, 1, 0, f.C(2, 3)));
  (void)L;
  // d = 3: no (i,j) in I_3 has i,j <= 1, so only the C_j and (d-1,1) rows are nonzero
  Family f3(3);
  for (const auto& [ix, p] : f3.gamma().gamma)
    if (ix.i <= 1 && ix.j <= 1) ADD_FAILURE() << "unexpected index";
  EXPECT_EQ(f3.gamma().at(2, 2), f3.x_mono(0, 1, 0, 0, f3.C("C_2")));
}

TEST(G, ShapeAtDegreeThree) {
  Family f(3);
  const auto& L = *f.layout();
  EXPECT_EQ(f.G().homogeneous_degree(), 3);
  // Y_(2,0) multiplies X1^2
  EXPECT_EQ(f.G().derivative(L.y(2, 0)).terms().count(x_monomial(0, 2, 0, 0)), 1u);
  // Z^2 coefficient is gamma_z
  Poly z2 = f.G().derivative(L.z()).derivative(L.z());
  EXPECT_EQ(z2, f.gamma().z() * ParamPoly(2));
}

TEST(Pullback, Basics) {
  Family f(4);
  auto dp = QuotientContext::d_prime(4);
  BiSection x1 = f_pullback(f.var(1), dp);
  EXPECT_EQ(x1.terms().size(), 1u);
  EXPECT_EQ(x1.terms().begin()->first, (BiMono{1, 0, 0, 1}));
  EXPECT_TRUE(f_pullback(f.x_mono(1, 0, 0, 1) - f.x_mono(0, 1, 1, 0), dp).is_zero());
}

TEST(Pullback, GammaThirdColumn) {
  // Figure 2, third column, recomputed from the second.
  for (int d = 3; d <= 7; ++d) {
    Family f(d);
    auto dp = QuotientContext::d_prime(d);
    auto cst = [&](const ParamPoly& c) { return ArtinElement(dp.tag(), c); };
    for (int j = 2; j <= d - 1; ++j) {
      BiSection want(d - 2, d - 2);
      want.add({j - 1, d - 1 - j, 0, d - 2}, cst(f.C("C_" + std::to_string(j))));
      EXPECT_EQ(f_pullback(f.gamma().at(d - 1, j), dp, d - 2), want) << d << " " << j;
    }
    for (const auto& [i, j] : f.index_set().I()) {
      if (i > d - 2 || j > d - 2) continue;
      BiSection want(d - 2, d - 2);
      want.add({i, d - 2 - i, j, d - 2 - j}, cst(f.C(i, j)));
      EXPECT_EQ(f_pullback(f.gamma().at(i, j), dp, d - 2), want);
    }
    BiSection g1(d - 2, d - 2), gz(d - 2, d - 2);
    g1.add({1, d - 3, 0, d - 2}, cst(f.C("C_1a")));
    g1.add({0, d - 2, 1, d - 3}, cst(f.C("C_1b")));
    gz.add({1, d - 3, 1, d - 3}, cst(f.C("C_za")));
    gz.add({1, d - 3, 0, d - 2}, cst(f.C("C_zb")));
    EXPECT_EQ(f_pullback(f.gamma().at(d - 1, 1), dp, d - 2), g1);
    EXPECT_EQ(f_pullback(f.gamma().z(), dp, d - 2), gz);
  }
}

TEST(Pullback, Multiplicative) {
  Family f(4);
  auto dp = QuotientContext::d_prime(4);
  const auto& L = *f.layout();
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> var(0, L.count() - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  auto random_hom = [&](int deg) {
    Poly p = f.zero();
    for (int t = 0; t < 4; ++t) {
      Poly m = Poly::monomial(f.layout(), Monomial{}, ParamPoly(coef(rng)));
      for (int k = 0; k < deg; ++k) m = m * f.var(var(rng));
      p += m;
    }
    return p;
  };
  for (int trial = 0; trial < 30; ++trial) {
    int a = 1 + trial % 2, b = 1 + (trial / 2) % 3;
    Poly p = random_hom(a), q = random_hom(b);
    EXPECT_EQ(f_pullback(p * q, dp, a + b), f_pullback(p, dp, a) * f_pullback(q, dp, b));
  }
  // X-only monomials pull back with constant coefficients
  BiSection s = f_pullback(f.x_mono(1, 2, 0, 1), dp);
  for (const auto& [m, c] : s.terms()) EXPECT_FALSE(c.has_nilpotent());
}

class GVanishes : public ::testing::TestWithParam<int> {};

TEST_P(GVanishes, OverD) {
  auto r = check_G_vanishes(GetParam());
  EXPECT_TRUE(r.result.pass) << r.result.details;
}

INSTANTIATE_TEST_SUITE_P(Degrees, GVanishes, ::testing::Values(3, 4, 5, 6));

TEST(GVanishesFails, OverDPrimeResiduesAreRelations) {
  const int d = 3;
  Family f(d);
  auto dp = QuotientContext::d_prime(d);
  auto r = check_G_vanishes_in(f, dp);
  EXPECT_FALSE(r.result.pass);
  IndexSet ix(d);
  // each residue is the relation generator at that (i,j), as in the hand expansion
  std::size_t nonzero = 0;
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j <= d; ++j) {
      LinearForm rel = d_relation(ix, i, j);
      ArtinElement c = r.pullback.coefficient({i, d - i, j, d - j});
      EXPECT_EQ(c, to_element(rel, dp.tag()));
      nonzero += !rel.empty();
    }
  EXPECT_EQ(r.pullback.terms().size(), nonzero);
  EXPECT_EQ(nonzero, static_cast<std::size_t>((d + 1) * (d + 1) - 4));
}

TEST(GVanishesFails, DroppingAnyRelationBreaksIt) {
  for (int d = 3; d <= 4; ++d) {
    Family f(d);
    IndexSet ix(d);
    auto rels = d_relations(ix);
    for (std::size_t k = 0; k < rels.size(); ++k) {
      if (rels[k].empty()) continue;
      auto mutant = rels;
      mutant.erase(mutant.begin() + static_cast<long>(k));
      auto ctx = QuotientContext::from_relations(ContextTag{d, ContextKind::Custom, 0, 0, "mutant"}, mutant);
      EXPECT_FALSE(check_G_vanishes_in(f, ctx).result.pass) << "relation " << k;
    }
  }
}

TEST(DsMaximal, Points) {
  auto r = check_Ds_maximal(3, 1, 0);
  EXPECT_TRUE(r.result.pass) << r.result.details;
  IndexSet ix(3);
  std::vector<LinearForm> want;
  for (const auto& [i, j] : ix.I()) want.push_back({{NilSymbol::u(i, j, 0), 1}});
  want.push_back({{NilSymbol::v(0), 1}});
  for (const auto& [i, j] : ix.I()) want.push_back({{NilSymbol::u(i, j, 1), 1}});
  want.push_back({{NilSymbol::v(1), 1}});
  EXPECT_EQ(r.coefficients, want);

  auto r01 = check_Ds_maximal(3, 0, 1);
  EXPECT_TRUE(r01.result.pass);
  EXPECT_EQ(r01.coefficients.front(), (LinearForm{{NilSymbol::u(0, 2, 2), 1}}));
  auto r11 = check_Ds_maximal(4, 1, 1);
  EXPECT_TRUE(r11.result.pass);
  EXPECT_EQ(r11.coefficients.back(), (LinearForm{{NilSymbol::v(1), 1}, {NilSymbol::v(3), 1}}));
}

}  // namespace
