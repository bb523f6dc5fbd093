#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "twistkit/artin.hpp"
#include "twistkit/param_poly.hpp"
#include "twistkit/rational.hpp"

using namespace twistkit;
using tk_test::random_artin;

namespace {

ParamPoly C(int d, const std::string& n) { return ParamPoly::variable(ParamAlphabet::for_degree(d), n); }

TEST(Rational, ParsesAndCanonicalizes) {
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational(" -2 "), Rational(-2));
  EXPECT_EQ(parse_rational("+0/5"), Rational(0));
  EXPECT_THROW(parse_rational("1/0"), PreconditionError);
  EXPECT_THROW(parse_rational("abc"), PreconditionError);
  Rational r = parse_rational("10/-4");
  EXPECT_GT(r.get_den(), 0);
  EXPECT_EQ(r, Rational(-5, 2));
}

TEST(ParamAlphabet, OrderAndSize) {
  auto a3 = ParamAlphabet::for_degree(3);
  EXPECT_EQ(a3->names(), (std::vector<std::string>{"C_2", "C_1a", "C_1b", "C_za", "C_zb"}));
  auto a5 = ParamAlphabet::for_degree(5);
  // pairs in I_5 with i,j <= 3: 16 - 4 = 12, then C_2..C_4, then four more
  EXPECT_EQ(a5->size(), 12u + 3u + 4u);
  EXPECT_EQ(a5->name(0), "C_(0,2)");
  EXPECT_THROW(a5->index("C_(4,4)"), UnknownParameter);
  EXPECT_THROW(a5->index("C_5"), UnknownParameter);
}

TEST(ParamPoly, SpecializeExamples) {
  const int d = 3;
  EXPECT_EQ((C(d, "C_1a") * C(d, "C_1b")).evaluate({{"C_1a", 2}, {"C_1b", 3}}), Rational(6));
  EXPECT_EQ((C(d, "C_za") * C(d, "C_za")).evaluate({{"C_za", -1}}), Rational(1));
  EXPECT_EQ(ParamPoly().evaluate({}), Rational(0));
}

TEST(ParamPoly, MissingParameterIsNamed) {
  ParamPoly p = C(3, "C_1a") + C(3, "C_zb");
  try {
    (void)p.evaluate({{"C_1a", 1}});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("C_zb"), std::string::npos);
  }
}

TEST(ParamPoly, UnknownParameterRejected) {
  EXPECT_THROW(ParamPoly::variable(ParamAlphabet::for_degree(3), "C_(2,2)"), UnknownParameter);
}

TEST(ParamPoly, ExactDivision) {
  const int d = 4;
  ParamPoly a = C(d, "C_1a") + C(d, "C_2") * 2;
  ParamPoly b = C(d, "C_zb") - C(d, "C_(0,2)");
  auto q = (a * b).divide_exact(b);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q, a);
  EXPECT_FALSE((a * b + ParamPoly(1)).divide_exact(b).has_value());
}

TEST(ParamPoly, ToString) {
  const int d = 3;
  ParamPoly p = C(d, "C_1a") * C(d, "C_za") * C(d, "C_za") * 2 - C(d, "C_1b");
  EXPECT_EQ(p.to_string(), "2*C_1a*C_za^2 - C_1b");
}

class ArtinTest : public ::testing::TestWithParam<int> {};

TEST_P(ArtinTest, NilpotentProductsVanish) {
  const int d = GetParam();
  auto ctx = QuotientContext::d_prime(d).tag();
  std::mt19937_64 rng(1000 + d);
  for (int k = 0; k < 120; ++k) {
    ArtinElement a = random_artin(ctx, true, rng), b = random_artin(ctx, true, rng);
    EXPECT_TRUE(artin_mul(a, b).is_zero());
  }
}

TEST_P(ArtinTest, RingAxiomsOnSamples) {
  const int d = GetParam();
  auto ctx = QuotientContext::d_prime(d).tag();
  std::mt19937_64 rng(2000 + d);
  for (int k = 0; k < 100; ++k) {
    ArtinElement a = random_artin(ctx, false, rng), b = random_artin(ctx, false, rng),
                 c = random_artin(ctx, false, rng);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + b, b + a);
  }
}

TEST_P(ArtinTest, ReductionIsRingHomomorphism) {
  const int d = GetParam();
  auto dp = QuotientContext::d_prime(d);
  std::vector<QuotientContext> targets{QuotientContext::artin_D(d), QuotientContext::fiber(d, 1, 0),
                                       QuotientContext::fiber(d, 1, 1), QuotientContext::fiber(d, 2, -3)};
  std::mt19937_64 rng(3000 + d);
  for (const auto& q : targets) {
    for (int k = 0; k < 40; ++k) {
      ArtinElement a = random_artin(dp.tag(), false, rng), b = random_artin(dp.tag(), false, rng);
      EXPECT_EQ(q.reduce(a * b), q.reduce(a) * q.reduce(b)) << q.label();
      EXPECT_EQ(q.reduce(a + b), q.reduce(a) + q.reduce(b)) << q.label();
      EXPECT_EQ(q.reduce(q.reduce(a)), q.reduce(a));
    }
  }
}

TEST_P(ArtinTest, DRelationsVanishEverywhere) {
  const int d = GetParam();
  IndexSet ix(d);
  std::vector<QuotientContext> ctxs{QuotientContext::artin_D(d), QuotientContext::fiber(d, 1, 0),
                                    QuotientContext::fiber(d, 0, 1), QuotientContext::fiber(d, 1, 1),
                                    QuotientContext::fiber(d, 3, 5)};
  for (const auto& q : ctxs) {
    for (int i = 0; i <= d; ++i)
      for (int j = 0; j <= d; ++j) EXPECT_TRUE(q.reduce(d_relation(ix, i, j)).empty()) << q.label() << " " << i << "," << j;
    EXPECT_TRUE(q.relations_vanish()) << q.label();
  }
}

TEST_P(ArtinTest, RelationRankAndBasisSize) {
  const int d = GetParam();
  auto D = QuotientContext::artin_D(d);
  // (d+1)^2 relations, four identically zero, the rest with disjoint supports
  EXPECT_EQ(D.relation_rank(), static_cast<std::size_t>((d + 1) * (d + 1) - 4));
  EXPECT_EQ(D.basis().size(), static_cast<std::size_t>(4 * (d * d - 4) + 4 - ((d + 1) * (d + 1) - 4)));
  auto named = QuotientContext::fiber(d, 1, 0);
  auto generic = QuotientContext::fiber(d, 1, 1);
  EXPECT_EQ(named.basis().size(), static_cast<std::size_t>(d * d - d - 2));
  EXPECT_EQ(generic.basis().size(), named.basis().size());
}

INSTANTIATE_TEST_SUITE_P(Degrees, ArtinTest, ::testing::Values(3, 4, 5, 6));

TEST(Artin, SpecExamples) {
  auto ctx = QuotientContext::d_prime(3).tag();
  auto u = ArtinElement::symbol(ctx, NilSymbol::u(2, 0, 3));
  auto v = ArtinElement::symbol(ctx, NilSymbol::v(2));
  EXPECT_TRUE((u * v).is_zero());
  EXPECT_EQ((ArtinElement(1) + u) * (ArtinElement(1) - u), ArtinElement(ctx, 1));
  ArtinElement x = ArtinElement(ctx, C(3, "C_1a")) + ArtinElement::symbol(ctx, NilSymbol::v(3));
  ArtinElement y = ArtinElement(ctx, C(3, "C_1a") * 2) + ArtinElement::symbol(ctx, NilSymbol::v(3), 2);
  EXPECT_EQ(x * ArtinElement(2), y);
}

TEST(Artin, MismatchedContextsRejected) {
  auto a = ArtinElement::symbol(QuotientContext::d_prime(3).tag(), NilSymbol::v(2));
  auto b = ArtinElement::symbol(QuotientContext::d_prime(4).tag(), NilSymbol::v(2));
  EXPECT_THROW((void)(a * b), StructuralError);
  auto s = QuotientContext::fiber(3, 1, 0);
  auto c = ArtinElement::symbol(s.tag(), NilSymbol::v(2));
  auto dd = ArtinElement::symbol(QuotientContext::artin_D(3).tag(), NilSymbol::v(2));
  EXPECT_THROW((void)(c + dd), StructuralError);
}

TEST(Artin, FiberTableAtOneZero) {
  for (int d = 3; d <= 7; ++d) {
    auto q = QuotientContext::fiber(d, 1, 0);
    IndexSet ix(d);
    for (const auto& [i, j] : ix.I()) {
      EXPECT_TRUE(q.image(NilSymbol::u(i, j, 0)).empty());
      EXPECT_TRUE(q.image(NilSymbol::u(i, j, 1)).empty());
      if (j <= d - 2)
        EXPECT_EQ(q.image(NilSymbol::u(i, j, 2)), (LinearForm{{NilSymbol::w(i, j + 1), -1}}));
      else
        EXPECT_TRUE(q.image(NilSymbol::u(i, j, 2)).empty());
    }
    EXPECT_TRUE(q.image(NilSymbol::u(0, 2, 3)).empty());
    EXPECT_TRUE(q.image(NilSymbol::u(1, 2, 3)).empty());
    EXPECT_EQ(q.basis().size(), static_cast<std::size_t>(d * d - d - 2));
  }
  auto q3 = QuotientContext::fiber(3, 1, 0);
  EXPECT_EQ(q3.basis(), (std::vector<NilSymbol>{NilSymbol::w(2, 1), NilSymbol::w(2, 2), NilSymbol::v(2), NilSymbol::v(3)}));
}

TEST(Artin, FiberAtOneZeroMatchesGenericConstruction) {
  // Same ideal: the generic RREF context and the named table kill the same
  // linear forms.
  for (int d = 3; d <= 5; ++d) {
    IndexSet ix(d);
    auto named = QuotientContext::fiber(d, 1, 0);
    auto rels = d_relations(ix);
    auto extra = ds_relations(ix, 1, 0);
    rels.insert(rels.end(), extra.begin(), extra.end());
    auto generic = QuotientContext::from_relations(ContextTag{d, ContextKind::Custom, 0, 0, "check"}, rels);
    EXPECT_EQ(generic.basis().size(), named.basis().size());
    auto syms = full_symbols(ix);
    for (std::size_t a = 0; a < syms.size(); ++a)
      for (std::size_t b = a; b < std::min(syms.size(), a + 6); ++b) {
        LinearForm f{{syms[a], 1}};
        add_to(f, syms[b], 2);
        EXPECT_EQ(named.reduce(f).empty(), generic.reduce(f).empty());
      }
  }
}

}  // namespace
