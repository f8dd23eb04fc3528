#include <gtest/gtest.h>

#include <cmath>

#include "oracle/oracle.hpp"
#include "racah/crystalfield.hpp"
#include "racah/error.hpp"
#include "racah/params.hpp"

using namespace racah;

namespace {

std::vector<Rational> capital_from_sub(int ell, std::vector<long> sub) {
  CoulombParams p{ell, CoulombScheme::slater_sub, {}};
  for (long v : sub) p.values.push_back(Rational(v));
  return to_slater_capital(p);
}

BkqSet cubic_f(double b40, double b60) {
  BkqSet b{{{4, 0}, b40}, {{4, 4}, b40 * std::sqrt(5.0 / 14.0)}, {{4, -4}, b40 * std::sqrt(5.0 / 14.0)}};
  if (b60 != 0) {
    b[{6, 0}] = b60;
    b[{6, 4}] = b[{6, -4}] = -b60 * std::sqrt(7.0 / 2.0);
  }
  return b;
}

// Adapted-basis spectrum against the determinantal one.
void compare_spectra(int ell, int N, const std::vector<Rational>& fk, double zeta, const BkqSet& bkq) {
  auto chain = SymmetryChain::octahedral();
  auto basis = enumerate_basis(ell, N, *chain);
  EnergyMatrix m = coulomb_matrix(ell, N, fk, basis) + spinorbit_matrix(ell, N, zeta, basis);
  if (!bkq.empty()) m += crystalfield_matrix(ell, N, dk_from_bkq(ell, bkq, *chain), basis, *chain);
  std::vector<double> got = m.spectrum();

  oracle::Configuration conf(ell, N);
  std::vector<double> f;
  for (const auto& x : fk) f.push_back(x.get_d());
  Eigen::MatrixXcd h = conf.coulomb(f) + conf.spin_orbit(zeta) + conf.crystal_field(bkq);
  std::vector<double> want = oracle::eigenvalues(h);

  ASSERT_EQ(got.size(), want.size());
  double scale = 1;
  for (double w : want) scale = std::max(scale, std::abs(w));
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-9 * scale) << "eigenvalue " << i;
}

}  // namespace

TEST(Terms, DimensionsAndLists) {
  EXPECT_EQ(config_dimension(2, 1), 10);
  EXPECT_EQ(config_dimension(2, 2), 45);
  EXPECT_EQ(config_dimension(3, 2), 91);
  std::vector<std::string> names;
  for (const auto& t : enumerate_terms(2, 2)) names.push_back(t.str());
  std::sort(names.begin(), names.end());
  EXPECT_EQ(names, (std::vector<std::string>{"1D", "1G", "1S", "3F", "3P"}));
  auto chain = SymmetryChain::octahedral();
  EXPECT_EQ(static_cast<int>(enumerate_basis(2, 2, *chain).size()), 45);
  EXPECT_EQ(static_cast<int>(enumerate_basis(3, 2, *chain).size()), 91);
  EXPECT_THROW(enumerate_basis(2, 3, *chain), Unsupported);
}

TEST(Coulomb, D2TermEnergies) {
  // F_k = (1000, 100, 10) gives A = 510, B = 50, C = 350
  auto fk = capital_from_sub(2, {1000, 100, 10});
  const Rational A = 510, B = 50, C = 350;
  std::map<std::string, Rational> want{{"3F", A - 8 * B}, {"3P", A + 7 * B}, {"1D", A - 3 * B + 2 * C},
                                       {"1G", A + 4 * B + 2 * C}, {"1S", A + 14 * B + 7 * C}};
  for (const auto& t : enumerate_terms(2, 2)) {
    SqrtRationalSum e = term_energy(2, 2, t, fk);
    ASSERT_TRUE(e.is_rational()) << t.str();
    EXPECT_EQ(e.rational_value(), want.at(t.str())) << t.str();
  }
}

TEST(Coulomb, D2MatrixMultiplicities) {
  auto chain = SymmetryChain::octahedral();
  auto basis = enumerate_basis(2, 2, *chain);
  auto rep = diagonalize_levels(coulomb_matrix(2, 2, capital_from_sub(2, {1000, 100, 10}), basis), *chain);
  std::vector<std::pair<double, int>> got;
  for (const auto& l : rep.levels) got.push_back({l.energy, l.degeneracy});
  std::vector<std::pair<double, int>> want{{110, 21}, {860, 9}, {1060, 5}, {1410, 9}, {3660, 1}};
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_NEAR(got[i].first, want[i].first, 1e-9);
    EXPECT_EQ(got[i].second, want[i].second);
  }
}

TEST(CrystalField, CubicD1Levels) {
  auto chain = SymmetryChain::octahedral();
  auto basis = enumerate_basis(2, 1, *chain);
  for (double dq : {500.0, -800.0}) {
    auto m = crystalfield_matrix(2, 1, dk_from_bkq(2, cubic_bkq(dq), *chain), basis, *chain);
    auto rep = diagonalize_levels(m, *chain);
    ASSERT_EQ(rep.levels.size(), 2u);
    const Level& lo = rep.levels[0];
    const Level& hi = rep.levels[1];
    const bool pos = dq > 0;
    EXPECT_NEAR(lo.energy, pos ? -4 * dq : 6 * dq, 1e-9 * std::abs(dq));
    EXPECT_NEAR(hi.energy, pos ? 6 * dq : -4 * dq, 1e-9 * std::abs(dq));
    EXPECT_EQ(lo.degeneracy, pos ? 6 : 4);
    EXPECT_EQ(hi.degeneracy, pos ? 4 : 6);
    EXPECT_NEAR(rep.barycenter, 0, 1e-9 * std::abs(dq));
  }
}

TEST(CrystalField, CubicInvariantCoefficient) {
  auto chain = SymmetryChain::octahedral();
  DkSet d = dk_from_bkq(2, cubic_bkq(1.0), *chain);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_NEAR(std::abs(d.at({4, 0})), 6 * std::sqrt(30.0), 1e-12);
}

TEST(CrystalField, RejectsNonInvariantField) {
  auto chain = SymmetryChain::octahedral();
  EXPECT_THROW(dk_from_bkq(2, {{{2, 0}, 1.0}}, *chain), InvalidInput);
  EXPECT_THROW(dk_from_bkq(2, {{{4, 4}, 1.0}, {{4, -4}, 2.0}}, *chain), InvalidInput);
  EXPECT_THROW(dk_from_bkq(2, {{{3, 0}, 1.0}}, *chain), InvalidInput);
}

TEST(OracleEquivalence, DShell) {
  auto fk = capital_from_sub(2, {1000, 100, 10});
  for (int N : {1, 2})
    for (double dq : {0.0, 500.0, 1500.0}) {
      SCOPED_TRACE("N=" + std::to_string(N) + " Dq=" + std::to_string(dq));
      compare_spectra(2, N, fk, 300, dq == 0 ? BkqSet{} : cubic_bkq(dq));
    }
}

TEST(OracleEquivalence, NegativeZetaAndDq) {
  compare_spectra(2, 2, capital_from_sub(2, {1000, 100, 10}), -250, cubic_bkq(-700));
}

TEST(OracleEquivalence, PShell) {
  compare_spectra(1, 2, capital_from_sub(1, {800, 60}), 120, {});
}

TEST(OracleEquivalence, FShell) {
  auto fk = capital_from_sub(3, {500, 40, 6, 1});
  compare_spectra(3, 1, fk, 600, cubic_f(900, 300));
  compare_spectra(3, 2, fk, 600, cubic_f(900, 300));
}

TEST(EffectiveHamiltonian, IsotropicLabelsReproduceTheWeakFieldMatrix) {
  auto chain = SymmetryChain::octahedral();
  const int ell = 2;
  auto fk = capital_from_sub(2, {1000, 100, 10});
  const double zeta = 300, dq = 500;
  auto basis = enumerate_basis(ell, 2, *chain);
  DkSet dk = dk_from_bkq(ell, cubic_bkq(dq), *chain);
  EnergyMatrix want = coulomb_matrix(ell, 2, fk, basis) + spinorbit_matrix(ell, 2, zeta, basis) +
                      crystalfield_matrix(ell, 2, dk, basis, *chain);

  std::vector<std::pair<EffectiveParameterLabel, cplx>> params;
  for (const auto& l : enumerate_effective_params(ell, *chain, ParamFamily::isotropic)) {
    cplx v = 0;
    if (!l.one_body)
      v = isotropic_coulomb_d(ell, l.k3, fk[l.k3 / 2]).to_double();
    else if (l.kS == 1)
      v = isotropic_spinorbit_d(ell, zeta);
    else
      v = std::sqrt(2.0) * dk.at({l.k, l.a0});
    params.push_back({l, v});
  }
  ASSERT_EQ(params.size(), 5u);
  EnergyMatrix got = heff_matrix(ell, 2, params, basis, *chain);
  ASSERT_EQ(got.blocks.size(), want.blocks.size());
  for (std::size_t b = 0; b < got.blocks.size(); ++b)
    EXPECT_LT((got.blocks[b].matrix - want.blocks[b].matrix).cwiseAbs().maxCoeff(), 1e-9) << "block " << b;
}

TEST(EffectiveHamiltonian, HermitianForEveryLabel) {
  auto chain = SymmetryChain::octahedral();
  for (int ell : {2, 3}) {
    auto basis = enumerate_basis(ell, 2, *chain);
    for (const auto& l : enumerate_effective_params(ell, *chain)) {
      EnergyMatrix m = heff_matrix(ell, 2, {{l, 1.0}}, basis, *chain);
      for (const auto& b : m.blocks)
        ASSERT_LT((b.matrix - b.matrix.adjoint()).cwiseAbs().maxCoeff(), 1e-10) << l.str(ell, 2);
    }
  }
}

TEST(Levels, MergeAcrossIrreps) {
  auto chain = SymmetryChain::octahedral();
  auto basis = enumerate_basis(2, 2, *chain);
  EnergyMatrix m = empty_matrix(basis);
  auto rep = diagonalize_levels(m, *chain);
  ASSERT_EQ(rep.levels.size(), 1u);
  EXPECT_EQ(rep.levels[0].degeneracy, 45);
}
