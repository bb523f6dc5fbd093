#include <gtest/gtest.h>

#include <random>
#include <set>

#include "twistkit/divisor.hpp"

using namespace twistkit;

namespace {

TEST(DivClass, BasisChange) {
  EXPECT_EQ(chern_tev_pn(2), (DivClass{2, -1}));
  EXPECT_EQ(chern_tev_pn(9).to_string(), "9x - 8h");
  for (long long a = -5; a <= 5; ++a)
    for (long long b = -5; b <= 5; ++b) {
      DivClass c{a, b};
      auto [p, h] = c.psi_view();
      EXPECT_EQ(DivClass::from_psi(p, h), c);
    }
  EXPECT_THROW(chern_tev_pn(1), PreconditionError);
}

TEST(DivClass, XClass) {
  DivClass c = chern_tev_X(9, 3);
  EXPECT_EQ(c, (DivClass{3, -5}));
  EXPECT_EQ(c.psi_view(), (std::pair<long long, long long>{3, 1}));
  EXPECT_EQ(chern_tev_X(4, 2), (DivClass{1, -1}));
  for (long long d = 2; d <= 6; ++d) EXPECT_EQ(chern_tev_X(d * d, d).psi_view().second, 1);
}

TEST(DivClass, IdentitiesOnGrid) {
  for (long long d = 2; d <= 20; ++d) {
    EXPECT_TRUE(pushforward_identity(d).agree());
    for (long long n = std::max(d, 2LL); n <= 500; ++n) {
      ASSERT_TRUE(x_identity(n, d).agree()) << n << "," << d;
      ASSERT_TRUE(pn_identity(n).agree()) << n;
    }
  }
}

TEST(DivClass, PrintedPnPsiFormDisagrees) {
  // (n+1)x + n psi = (2n+1)x - 2n h, off from nx-(n-1)h by (n+1)(x-h)
  for (long long n = 2; n <= 50; ++n) {
    auto id = pn_identity_printed(n);
    EXPECT_FALSE(id.agree());
    EXPECT_EQ(id.forms[1].value - id.forms[0].value, (DivClass{n + 1, -(n + 1)}));
  }
}

TEST(Necessity, SpotCases) {
  auto a = necessity_search(8, 3);
  EXPECT_FALSE(a.feasible);
  EXPECT_EQ(a.reason, "n+1-d^2 = 0");
  auto b = necessity_check(9, 3, Degrees{2, 1, 0});
  EXPECT_TRUE(b.feasible);
  EXPECT_EQ(b.degree, 1);
  auto c = necessity_check(9, 3, Degrees{0, 1, -2});
  EXPECT_FALSE(c.feasible);
  EXPECT_NE(c.reason.find("-(n-d-1)"), std::string::npos);
  EXPECT_THROW(necessity_check(5, 3, Degrees{2, 1, 0}), PreconditionError);
  EXPECT_THROW(necessity_check(9, 3, Degrees{2, 1, 1}), PreconditionError);
  EXPECT_THROW(necessity_check(9, 3, Degrees{3, 1, 0}), PreconditionError);
}

TEST(Necessity, Grid) {
  for (long long d = 2; d <= 20; ++d)
    for (long long n = 2 * d; n <= 500; ++n) EXPECT_EQ(necessity_search(n, d).feasible, n >= d * d) << n << "," << d;
}

// all (m, r') with a = m*a0 + 2r', 0 <= r' < a0, m*b1 - r' > 0
std::set<std::pair<long long, long long>> brute(long long a0, long long b1, long long a) {
  std::set<std::pair<long long, long long>> out;
  for (long long r = 0; r < a0; ++r)
    if ((a - 2 * r) % a0 == 0 && a - 2 * r >= 0) {
      long long m = (a - 2 * r) / a0;
      if (m * b1 - r > 0) out.insert({m, r});
    }
  return out;
}

TEST(Schedule, Examples) {
  auto s = psi_schedule(3, 1, 13);
  EXPECT_EQ(s.a1, 12);
  EXPECT_EQ(s.m, 3);
  EXPECT_EQ(s.r_prime, 2);
  EXPECT_FALSE(s.even_case);
  auto t = psi_schedule(3, 1, 12);
  EXPECT_EQ(t.m, 4);
  EXPECT_EQ(t.r_prime, 0);
  EXPECT_THROW(psi_schedule(2, 5, schedule_a1(2, 5) + 1), PreconditionError);
  EXPECT_THROW(psi_schedule(3, 1, 11), PreconditionError);
}

TEST(Schedule, RandomAgainstBruteForce) {
  std::mt19937_64 rng(97);
  std::uniform_int_distribution<long long> A(1, 40), B(1, 12);
  for (int t = 0; t < 50; ++t) {
    long long a0 = A(rng), b1 = B(rng), a1 = schedule_a1(a0, b1);
    for (long long a = a1; a <= a1 + 200; ++a) {
      if (a0 % 2 == 0 && a % 2) continue;
      auto s = psi_schedule(a0, b1, a);
      EXPECT_TRUE(s.valid());
      EXPECT_TRUE(brute(a0, b1, a).count({s.m, s.r_prime})) << a0 << " " << b1 << " " << a;
    }
  }
}

TEST(Conics, SpotPoints) {
  auto c = conic_invariants(9, 3);
  EXPECT_EQ(c.total_dim, 20);
  EXPECT_EQ(c.sing_dim_bound, 14);
  EXPECT_EQ(c.fiber_dim, 4);
  EXPECT_EQ(c.omega_twist, -1);
  EXPECT_TRUE(c.fano);
  EXPECT_EQ(conic_invariants(4, 2).fiber_dim, 1);
  EXPECT_EQ(conic_invariants(4, 1).fiber_dim, 3);
  EXPECT_THROW(conic_invariants(4, 3), PreconditionError);
  for (long long n = 3; n <= 60; ++n)
    for (long long d = 1; d <= n - 2; ++d) {
      auto k = conic_invariants(n, d);
      EXPECT_EQ(k.fano, k.omega_twist <= -1);
      EXPECT_EQ(k.fiber_dim >= 1, n + 1 - 2 * d >= 1);
    }
}

}  // namespace
