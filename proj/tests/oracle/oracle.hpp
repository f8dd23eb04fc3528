#pragma once

// Brute-force reference implementations.  Nothing here calls the
// production coupling code: CGCs come from the ladder construction and
// everything else is built on top of them.

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "racah/exactnum.hpp"
#include "racah/halfint.hpp"

namespace oracle {

using racah::HalfInt;
using racah::Rational;
using racah::SqrtRationalSum;
using cplx = std::complex<double>;

// <j1 m1 j2 m2 | j m> from lowering |j1+j2, j1+j2> and Gram-Schmidt for the
// top state of every lower j, with <j1 j1 j2 j-j1 | j j> > 0.
SqrtRationalSum cg(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt j, HalfInt m);
// Full table (j1, j2) as a unitary matrix: rows (m1, m2) with m1 major and
// both descending; columns (j, m) with j descending, then m descending.
std::vector<std::vector<SqrtRationalSum>> cg_table(HalfInt j1, HalfInt j2);

SqrtRationalSum three_jm(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m1, HalfInt m2, HalfInt m3);
// (a b c; 0 0 0) from the factorial closed form.
SqrtRationalSum three_j_zero(int a, int b, int c);

// From the overlap <(j1 j2)j12, j3; J | j1, (j2 j3)j23; J>.
SqrtRationalSum six_j(HalfInt j1, HalfInt j2, HalfInt j12, HalfInt j3, HalfInt J, HalfInt j23);
// From <(j1 j2)j12, (j3 j4)j34; J | (j1 j3)j13, (j2 j4)j24; J>; the argument is
// {j1 j2 j12; j3 j4 j34; j13 j24 J}.
SqrtRationalSum nine_j(const std::array<std::array<HalfInt, 3>, 3>& a);

// l^N in the determinantal basis: spin-orbital p = 2 (ml + l) + (ms < 0).
class Configuration {
 public:
  Configuration(int ell, int N);
  int ell() const { return ell_; }
  int size() const { return static_cast<int>(states_.size()); }
  const std::vector<std::uint32_t>& states() const { return states_; }

  // c^k(m, m') = <l m | C^k_{m-m'} | l m'>
  double gaunt(int k, int m, int mp) const;

  // sum_k F^k over pairs; fk indexed by k/2.
  Eigen::MatrixXcd coulomb(const std::vector<double>& fk) const;
  Eigen::MatrixXcd spin_orbit(double zeta) const;
  // sum_kq B^k_q C^k_q
  Eigen::MatrixXcd crystal_field(const std::map<std::pair<int, int>, cplx>& bkq) const;

 private:
  Eigen::MatrixXcd one_body(const Eigen::MatrixXcd& h) const;
  int ell_;
  int nso_;
  std::vector<std::uint32_t> states_;
  std::map<std::uint32_t, int> index_;
};

std::vector<double> eigenvalues(const Eigen::MatrixXcd& h);

}  // namespace oracle
