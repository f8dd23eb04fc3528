#include <gtest/gtest.h>

#include "racah/chain.hpp"
#include "racah/error.hpp"
#include "racah/params.hpp"

using namespace racah;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::vector<std::string> labels(int ell, ParamFamily family) {
  auto chain = SymmetryChain::octahedral();
  std::vector<std::string> out;
  for (const auto& l : enumerate_effective_params(ell, *chain, family))
    out.push_back(l.str(ell, chain->branching(0, HalfInt(l.k))));
  return out;
}

CoulombParams params(int ell, CoulombScheme s, std::vector<Rational> v) { return {ell, s, std::move(v)}; }

}  // namespace

TEST(Enumeration, DShellInO) {
  std::vector<std::string> want{
      "D[(00)0(00)0 0]", "D[(00)0(22)0 0]", "D[(00)0(44)0 0]", "D[(00)0(04)4 4]", "D[(00)0(22)4 4]",
      "D[(00)0(24)4 4]", "D[(00)0(44)4 4]", "D[(00)0(24)6 6]", "D[(00)0(44)6 6]", "D[(00)0(44)8 8]",
      "D[(ss)1(22)1 0]", "D[(ss)1(22)3 4]", "D[(ss)0(22)0 0]", "D[(ss)0(22)4 4]"};
  EXPECT_EQ(labels(2, ParamFamily::all), want);
}

TEST(Enumeration, FShellInO) {
  std::vector<std::string> want{
      "D[(00)0(00)0 0]",   "D[(00)0(22)0 0]",   "D[(00)0(44)0 0]",   "D[(00)0(66)0 0]",   "D[(00)0(04)4 4]",
      "D[(00)0(22)4 4]",   "D[(00)0(24)4 4]",   "D[(00)0(26)4 4]",   "D[(00)0(44)4 4]",   "D[(00)0(46)4 4]",
      "D[(00)0(66)4 4]",   "D[(00)0(06)6 6]",   "D[(00)0(24)6 6]",   "D[(00)0(26)6 6]",   "D[(00)0(44)6 6]",
      "D[(00)0(46)6 6]",   "D[(00)0(66)6 6]",   "D[(00)0(26)8 8]",   "D[(00)0(44)8 8]",   "D[(00)0(46)8 8]",
      "D[(00)0(66)8 8]",   "D[(00)0(46)9 9]",   "D[(00)0(46)10 10]", "D[(00)0(66)10 10]", "D[(00)0(66)12 12a]",
      "D[(00)0(66)12 12b]", "D[(ss)1(33)1 0]",  "D[(ss)1(33)3 4]",   "D[(ss)1(33)5 4]",   "D[(ss)1(33)5 6]",
      "D[(ss)0(33)0 0]",   "D[(ss)0(33)4 4]",   "D[(ss)0(33)6 6]"};
  EXPECT_EQ(labels(3, ParamFamily::all), want);
}

TEST(Enumeration, FamiliesPartitionTheList) {
  for (int ell : {2, 3}) {
    std::size_t n = labels(ell, ParamFamily::coulomb).size() + labels(ell, ParamFamily::spin_orbit).size() +
                    labels(ell, ParamFamily::ligand_field).size();
    EXPECT_EQ(n, labels(ell, ParamFamily::all).size());
  }
  EXPECT_EQ(labels(3, ParamFamily::spin_orbit).size(), 4u);
  EXPECT_EQ(labels(3, ParamFamily::ligand_field).size(), 3u);
}

TEST(Enumeration, FiveParameterModel) {
  std::vector<std::string> want{"D[(00)0(00)0 0]", "D[(00)0(22)0 0]", "D[(00)0(44)0 0]", "D[(ss)1(22)1 0]",
                                "D[(ss)0(22)4 4]"};
  EXPECT_EQ(labels(2, ParamFamily::isotropic), want);
}

TEST(Enumeration, RejectsOtherShells) {
  auto chain = SymmetryChain::octahedral();
  EXPECT_THROW(enumerate_effective_params(1, *chain), Unsupported);
  EXPECT_THROW(parse_param_family("bogus"), InvalidInput);
}

TEST(Conversion, RacahABCFromSubscriptIntegrals) {
  // A = F0 - 49 F4, B = F2 - 5 F4, C = 35 F4
  auto abc = convert_coulomb_params(params(2, CoulombScheme::slater_sub, {q(1000), q(100), q(10)}), CoulombScheme::racah);
  EXPECT_EQ(abc.values, (std::vector<Rational>{q(510), q(50), q(350)}));
  // Capital form: A = F^0 - F^4/9, B = (9 F^2 - 5 F^4)/441, C = 5 F^4 / 63
  auto cap = convert_coulomb_params(params(2, CoulombScheme::slater_capital, {q(7), q(3, 2), q(-11, 5)}),
                                    CoulombScheme::racah);
  EXPECT_EQ(cap.values[0], q(7) - q(-11, 5) / 9);
  EXPECT_EQ(cap.values[1], (9 * q(3, 2) - 5 * q(-11, 5)) / 441);
  EXPECT_EQ(cap.values[2], q(5, 63) * q(-11, 5));
}

TEST(Conversion, RacahERoundTrip) {
  const std::vector<Rational> fsub{q(301, 7), q(-5, 3), q(2), q(1, 11)};
  auto e = convert_coulomb_params(params(3, CoulombScheme::slater_sub, fsub), CoulombScheme::racah);
  const Rational F0 = fsub[0], F2 = fsub[1], F4 = fsub[2], F6 = fsub[3];
  EXPECT_EQ(e.values[0], F0 - 10 * F2 - 33 * F4 - 286 * F6);
  EXPECT_EQ(e.values[1], (70 * F2 + 231 * F4 + 2002 * F6) / 9);
  EXPECT_EQ(e.values[2], (F2 - 3 * F4 + 7 * F6) / 9);
  EXPECT_EQ(e.values[3], (5 * F2 + 6 * F4 - 91 * F6) / 3);
  EXPECT_EQ(convert_coulomb_params(e, CoulombScheme::slater_sub).values, fsub);
}

TEST(Conversion, ExactRoundTripsEveryScheme) {
  const std::vector<CoulombScheme> schemes{CoulombScheme::slater_capital, CoulombScheme::slater_sub,
                                           CoulombScheme::racah, CoulombScheme::e_lambda};
  for (int ell : {1, 2, 3}) {
    std::vector<Rational> v;
    for (int k = 0; k <= ell; ++k) v.push_back(q(13 * k + 5, k + 2));
    for (auto from : schemes) {
      if (from == CoulombScheme::racah && ell == 1) continue;
      for (auto to : schemes) {
        if (to == CoulombScheme::racah && ell == 1) continue;
        auto there = convert_coulomb_params(params(ell, from, v), to);
        auto back = convert_coulomb_params(there, from);
        EXPECT_EQ(back.values, v) << scheme_name(from) << " -> " << scheme_name(to) << " l=" << ell;
      }
    }
  }
}

TEST(Conversion, SlaterNormalizations) {
  EXPECT_EQ(slater_normalization(2), (std::vector<Rational>{q(1), q(49), q(441)}));
  EXPECT_EQ(slater_normalization(3), (std::vector<Rational>{q(1), q(225), q(1089), q(184081, 25)}));
}

TEST(Conversion, LaportePlattGivesZeroB) {
  const Rational f0 = q(37, 3);
  std::vector<Rational> fk{f0, 5 * f0, 9 * f0};
  EXPECT_TRUE(laporte_platt_check(fk).holds);
  auto abc = convert_coulomb_params(params(2, CoulombScheme::slater_capital, fk), CoulombScheme::racah);
  EXPECT_EQ(abc.values[1], 0);
  EXPECT_FALSE(laporte_platt_check({q(1), q(5), q(8)}).holds);
}

TEST(Conversion, CustomMatrix) {
  RationalMatrix m{{q(1), q(1), q(0)}, {q(0), q(2), q(0)}, {q(0), q(0), q(1, 3)}};
  auto out = convert_coulomb_params(params(2, CoulombScheme::slater_capital, {q(1), q(2), q(3)}), CoulombScheme::custom, m);
  EXPECT_EQ(out.values, (std::vector<Rational>{q(3), q(4), q(1)}));
  EXPECT_EQ(to_slater_capital(out, m), (std::vector<Rational>{q(1), q(2), q(3)}));
  RationalMatrix singular{{q(1), q(2), q(0)}, {q(2), q(4), q(0)}, {q(0), q(0), q(1)}};
  EXPECT_THROW(to_slater_capital(params(2, CoulombScheme::custom, {q(1), q(2), q(3)}), singular), InvalidInput);
}

TEST(Conversion, BMatrixIsRational) {
  for (int ell : {1, 2, 3}) {
    RationalMatrix b = b_matrix(ell);
    ASSERT_EQ(static_cast<int>(b.size()), ell + 1);
    // lambda = 0 row: (2l+1) (l k l; 0 0 0)^2 = 1 for k = 0
    EXPECT_EQ(b[0][0], 1);
  }
  EXPECT_EQ(parse_coulomb_scheme("slater"), CoulombScheme::slater_sub);
  EXPECT_EQ(parse_coulomb_scheme("capital"), CoulombScheme::slater_capital);
  EXPECT_THROW(parse_coulomb_scheme("nope"), InvalidInput);
}

TEST(Isotropic, CoulombIdentification) {
  // sqrt(2k+1) (2l+1)^2 (l k l; 0 0 0)^2 F^k; for k = 0 this is (2l+1) F^0
  EXPECT_EQ(isotropic_coulomb_d(2, 0, q(3)), SqrtRationalSum(q(15)));
  EXPECT_NEAR(isotropic_spinorbit_d(2, 1.0), -3 * std::sqrt(15.0), 1e-12);
}
