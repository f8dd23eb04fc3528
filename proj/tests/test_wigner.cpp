#include <gtest/gtest.h>

#include "oracle/oracle.hpp"
#include "racah/error.hpp"
#include "racah/wigner.hpp"

using namespace racah;

namespace {

std::vector<HalfInt> upto(int twice_max, bool integer_only = false) {
  std::vector<HalfInt> v;
  for (int t = 0; t <= twice_max; t += integer_only ? 2 : 1) v.push_back(HalfInt::from_twice(t));
  return v;
}

std::vector<HalfInt> projections(HalfInt j) {
  std::vector<HalfInt> v;
  for (int t = j.twice(); t >= -j.twice(); t -= 2) v.push_back(HalfInt::from_twice(t));
  return v;
}

}  // namespace

TEST(Cg, MatchesLadderOracleExactly) {
  for (HalfInt j1 : upto(6))
    for (HalfInt j2 : upto(6))
      for (int tj = std::abs(j1.twice() - j2.twice()); tj <= j1.twice() + j2.twice(); tj += 2) {
        HalfInt j = HalfInt::from_twice(tj);
        for (HalfInt m1 : projections(j1))
          for (HalfInt m2 : projections(j2)) {
            HalfInt m = m1 + m2;
            if (std::abs(m.twice()) > tj) continue;
            ASSERT_EQ(cg(j1, m1, j2, m2, j, m), oracle::cg(j1, m1, j2, m2, j, m))
                << j1.str() << ' ' << m1.str() << ' ' << j2.str() << ' ' << m2.str() << ' ' << j.str();
          }
      }
}

TEST(Cg, OrthogonalityIsExact) {
  for (HalfInt j1 : upto(6))
    for (HalfInt j2 : upto(6))
      for (int tj = std::abs(j1.twice() - j2.twice()); tj <= j1.twice() + j2.twice(); tj += 2)
        for (int tk = tj; tk <= j1.twice() + j2.twice(); tk += 2) {
          HalfInt j = HalfInt::from_twice(tj), k = HalfInt::from_twice(tk);
          for (HalfInt m : projections(j)) {
            if (std::abs(m.twice()) > tk) continue;
            SqrtRationalSum s;
            for (HalfInt m1 : projections(j1)) {
              HalfInt m2 = m - m1;
              if (!valid_projection(j2, m2)) continue;
              s += cg(j1, m1, j2, m2, j, m) * cg(j1, m1, j2, m2, k, m);
            }
            ASSERT_EQ(s, SqrtRationalSum(tj == tk ? 1 : 0));
          }
        }
}

TEST(Cg, CompletenessIsExact) {
  for (HalfInt j1 : upto(6))
    for (HalfInt j2 : upto(6))
      for (HalfInt m1 : projections(j1))
        for (HalfInt m2 : projections(j2))
          for (HalfInt m1p : projections(j1)) {
            HalfInt m2p = m1 + m2 - m1p;
            if (!valid_projection(j2, m2p)) continue;
            SqrtRationalSum s;
            for (int tj = std::abs(j1.twice() - j2.twice()); tj <= j1.twice() + j2.twice(); tj += 2) {
              HalfInt j = HalfInt::from_twice(tj);
              if (std::abs((m1 + m2).twice()) > tj) continue;
              s += cg(j1, m1, j2, m2, j, m1 + m2) * cg(j1, m1p, j2, m2p, j, m1 + m2);
            }
            ASSERT_EQ(s, SqrtRationalSum(m1 == m1p ? 1 : 0));
          }
}

TEST(ThreeJm, OddPermutationSignIsExact) {
  for (HalfInt j1 : upto(5))
    for (HalfInt j2 : upto(5))
      for (HalfInt j3 : upto(5)) {
        if (!triangle(j1, j2, j3)) continue;
        const int ph = phase(j1 + j2 + j3);
        for (HalfInt m1 : projections(j1))
          for (HalfInt m2 : projections(j2)) {
            HalfInt m3 = -(m1 + m2);
            if (!valid_projection(j3, m3)) continue;
            SqrtRationalSum v = three_jm(j1, j2, j3, m1, m2, m3);
            ASSERT_EQ(three_jm(j2, j1, j3, m2, m1, m3), v * Rational(ph));
            ASSERT_EQ(three_jm(j1, j3, j2, m1, m3, m2), v * Rational(ph));
            ASSERT_EQ(three_jm(j2, j3, j1, m2, m3, m1), v);
            ASSERT_EQ(three_jm(j1, j2, j3, -m1, -m2, -m3), v * Rational(ph));
          }
      }
}

TEST(ThreeJm, AccidentalZero) {
  EXPECT_TRUE(three_jm(3, 3, 2, -2, 2, 0).is_zero());
  EXPECT_EQ(three_jm_value(3, 3, 2, -2, 2, 0), 0.0);
  // the neighbouring entries do not vanish
  EXPECT_FALSE(three_jm(3, 3, 2, -1, 1, 0).is_zero());
}

TEST(ThreeJm, ZeroProjectionClosedForm) {
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; b <= 8; ++b)
      for (int c = 0; c <= 8; ++c) ASSERT_EQ(three_jm(a, b, c, 0, 0, 0), oracle::three_j_zero(a, b, c));
}

TEST(SixJ, MatchesRecouplingOracle) {
  auto js = upto(4);
  for (HalfInt a : js)
    for (HalfInt b : js)
      for (HalfInt c : js) {
        if (!triangle(a, b, c)) continue;
        for (HalfInt d : js)
          for (HalfInt e : js)
            for (HalfInt f : js)
              ASSERT_EQ(six_j(a, b, c, d, e, f), oracle::six_j(a, b, c, d, e, f))
                  << a.str() << b.str() << c.str() << d.str() << e.str() << f.str();
      }
}

TEST(NineJ, MatchesRecouplingOracle) {
  auto js = upto(3);
  int checked = 0;
  std::array<std::array<HalfInt, 3>, 3> a;
  for (HalfInt x0 : js)
    for (HalfInt x1 : js)
      for (HalfInt x2 : js) {
        if (!triangle(x0, x1, x2)) continue;
        for (HalfInt x3 : js)
          for (HalfInt x4 : js)
            for (HalfInt x5 : js) {
              if (!triangle(x3, x4, x5)) continue;
              for (HalfInt x6 : js) {
                if (!triangle(x0, x3, x6)) continue;
                for (HalfInt x7 : js) {
                  if (!triangle(x1, x4, x7)) continue;
                  for (HalfInt x8 : js) {
                    if (!triangle(x2, x5, x8) || !triangle(x6, x7, x8)) continue;
                    a = {{{x0, x1, x2}, {x3, x4, x5}, {x6, x7, x8}}};
                    ASSERT_EQ(nine_j(a), oracle::nine_j(a));
                    ++checked;
                  }
                }
              }
            }
      }
  EXPECT_GT(checked, 1000);
}

TEST(NineJ, SpinHalfValue) {
  // reduces to -{1/2 1/2 1; 1/2 1/2 1} / 3
  HalfInt h = HalfInt::from_twice(1);
  std::array<std::array<HalfInt, 3>, 3> a{{{h, h, 1}, {h, h, 1}, {1, 1, 0}}};
  EXPECT_EQ(nine_j(a), oracle::nine_j(a));
  EXPECT_EQ(nine_j(a), SqrtRationalSum(Rational(-1, 18)));
}

TEST(Wigner, BadProjectionThrows) {
  EXPECT_THROW(cg(1, 2, 1, 0, 2, 2), InvalidInput);
  EXPECT_THROW(three_jm(1, 1, 1, HalfInt::from_twice(1), 0, 0), InvalidInput);
  EXPECT_TRUE(cg(1, 1, 1, 0, 3, 1).is_zero());
}

TEST(Wigner, FloatValues) {
  EXPECT_NEAR(cg_value(HalfInt::from_twice(1), HalfInt::from_twice(1), HalfInt::from_twice(1),
                       HalfInt::from_twice(-1), 0, 0),
              std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(six_j_value(1, 1, 1, 1, 1, 1), 1.0 / 6.0, 1e-15);
}
