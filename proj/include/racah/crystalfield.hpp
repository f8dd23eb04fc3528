#pragma once

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "racah/chain.hpp"
#include "racah/exactnum.hpp"
#include "racah/halfint.hpp"

namespace racah {

// Weak-field model for l^N, N <= 2, in a point group.  Terms of l^2 are
// unique (alpha = 0); the coupling order is |(S L) J M) = sum <S MS L ML|J M>.

struct TermLabel {
  int alpha = 0;
  HalfInt S;
  HalfInt L;
  auto operator<=>(const TermLabel&) const = default;
  std::string str() const;  // "3F", "2D"
};

struct LevelLabel {
  TermLabel term;
  HalfInt J;
  ChainLabel chain;
  auto operator<=>(const LevelLabel&) const = default;
};

int config_dimension(int ell, int N);
std::vector<TermLabel> enumerate_terms(int ell, int N);
std::vector<LevelLabel> enumerate_basis(int ell, int N, const SymmetryChain& chain);

// One (Gamma, gamma) block of an energy matrix.
struct EnergyBlock {
  int irrep = 0;
  int gamma = 0;
  std::vector<LevelLabel> basis;
  Eigen::MatrixXcd matrix;
};

struct EnergyMatrix {
  std::vector<EnergyBlock> blocks;

  EnergyMatrix& operator+=(const EnergyMatrix& o);
  friend EnergyMatrix operator+(EnergyMatrix a, const EnergyMatrix& b) { return a += b; }
  EnergyMatrix& operator*=(double s);
  int dimension() const;
  // All eigenvalues of all blocks, ascending.
  std::vector<double> spectrum() const;
};

// Blocks with zero matrices for the given basis.
EnergyMatrix empty_matrix(const std::vector<LevelLabel>& basis);

// Free-ion term energy of l^N (N <= 2) for capital Slater integrals F^0, F^2, ...
SqrtRationalSum term_energy(int ell, int N, const TermLabel& term, const std::vector<Rational>& fk);

EnergyMatrix coulomb_matrix(int ell, int N, const std::vector<Rational>& fk, const std::vector<LevelLabel>& basis);
EnergyMatrix spinorbit_matrix(int ell, int N, double zeta, const std::vector<LevelLabel>& basis);

// Wybourne B^k_q keyed by (k, q).
using BkqSet = std::map<std::pair<int, int>, cplx>;
// D[k a0] keyed by (k, a0).
using DkSet = std::map<std::pair<int, int>, cplx>;

// B^4_0 = 21 Dq, B^4_{+-4} = 21 Dq sqrt(5/14).
BkqSet cubic_bkq(double dq);
DkSet dk_from_bkq(int ell, const BkqSet& bkq, const SymmetryChain& chain);

// (l^N alpha S L || U^(k) || l^N alpha' S L'), orbital reduced element of the
// unit tensor sum_i u^(k)(i).
SqrtRationalSum reduced_unit_tensor(int ell, int N, const TermLabel& t1, const TermLabel& t2, int k);

EnergyMatrix crystalfield_matrix(int ell, int N, const DkSet& dk, const std::vector<LevelLabel>& basis,
                                 const SymmetryChain& chain);

// D[(k1 k2)kS (k3 k4)kL k a0].  One-body labels are printed (ss)kS (ll)kL and
// stand for sum_i {w^(kS)(i) x u^(kL)(i)}^(k); two-body labels stand for
// sum_{i != j} {{w^(k1)(i) x w^(k2)(j)}^(kS) x {u^(k3)(i) x u^(k4)(j)}^(kL)}^(k).
// w and u are spin and orbital unit tensors.
struct EffectiveParameterLabel {
  bool one_body = false;
  int k1 = 0, k2 = 0, kS = 0;
  int k3 = 0, k4 = 0, kL = 0;
  int k = 0;
  int a0 = 0;
  auto operator<=>(const EffectiveParameterLabel&) const = default;
  // e.g. "D[(00)0(66)12 12b]", "D[(ss)1(22)3 4]"; a0 gets a letter when
  // sigma(A1|k) > 1.
  std::string str(int ell, int multiplicity) const;
};

// Reduced element (l^N S L J || O || l^N S' L' J') of the effective operator.
SqrtRationalSum reduced_effective(int ell, int N, const TermLabel& t1, HalfInt J1, const TermLabel& t2, HalfInt J2,
                                  const EffectiveParameterLabel& op);

EnergyMatrix heff_matrix(int ell, int N, const std::vector<std::pair<EffectiveParameterLabel, cplx>>& params,
                         const std::vector<LevelLabel>& basis, const SymmetryChain& chain);

struct Level {
  double energy = 0;
  std::vector<std::pair<std::string, int>> irreps;  // irrep name, states
  int degeneracy = 0;
};

struct LevelReport {
  std::vector<Level> levels;  // ascending energy
  double barycenter = 0;
};

// Eigenvalues of every block; eigenvalues closer than tol * max(1, |E|) merge.
LevelReport diagonalize_levels(const EnergyMatrix& m, const SymmetryChain& chain, double tol = 1e-9);

nlohmann::json to_json(const EnergyMatrix& m, const SymmetryChain& chain);

}  // namespace racah
