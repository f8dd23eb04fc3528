#pragma once

#include <string>
#include <vector>

#include "racah/crystalfield.hpp"
#include "racah/exactnum.hpp"

namespace racah {

using RationalMatrix = std::vector<std::vector<Rational>>;

enum class CoulombScheme {
  slater_capital,  // F^0, F^2, ..., F^{2l}
  slater_sub,      // F_k = F^k / D_k(l)
  racah,           // A, B, C for d; E^0..E^3 for f
  e_lambda,        // E^lambda = sum_k b(l)_{lambda k} F^k
  custom,          // values = M F^k for a user matrix M
};

// "slater" means the subscript integrals F_k; "capital" the F^k.
CoulombScheme parse_coulomb_scheme(const std::string& name);
std::string scheme_name(CoulombScheme s);
// Output names, e.g. {"A", "B", "C"}.
std::vector<std::string> scheme_value_names(int ell, CoulombScheme s);

struct CoulombParams {
  int ell = 2;
  CoulombScheme scheme = CoulombScheme::slater_capital;
  std::vector<Rational> values;
};

// D_k(l) with F^k = D_k F_k; l = 1, 2, 3.
std::vector<Rational> slater_normalization(int ell);
// b(l)_{lambda k} = (-1)^lambda (2l+1) (l k l; 0 0 0)(l k l; -lambda 0 lambda).
RationalMatrix b_matrix(int ell);
// M with values = M * (F^0, F^2, ...).
RationalMatrix scheme_matrix(int ell, CoulombScheme s, const RationalMatrix& custom = {});

std::vector<Rational> to_slater_capital(const CoulombParams& p, const RationalMatrix& custom = {});
CoulombParams convert_coulomb_params(const CoulombParams& in, CoulombScheme target,
                                     const RationalMatrix& custom = {});

struct LaportePlattResult {
  bool holds = false;
  std::vector<Rational> residuals;  // F^k - (2k+1) F^0, k = 0, 2, ...
};
LaportePlattResult laporte_platt_check(const std::vector<Rational>& fk_capital);

enum class ParamFamily { all, coulomb, spin_orbit, ligand_field, isotropic };
ParamFamily parse_param_family(const std::string& name);

// Parameters of the effective Hamiltonian retained for l^N in O (l = 2, 3).
std::vector<EffectiveParameterLabel> enumerate_effective_params(int ell, const SymmetryChain& chain,
                                                                ParamFamily family = ParamFamily::all);

// Isotropic identifications:
//   D[(00)0(kk)0 0] = sqrt(2k+1) (2l+1)^2 (l k l; 0 0 0)^2 F^k
//   D[(ss)1(ll)1 0] = -3 sqrt(l(l+1)(2l+1)/2) zeta
//   D[(ss)0(ll)k k a0] = sqrt(2) D[k a0]
SqrtRationalSum isotropic_coulomb_d(int ell, int k, const Rational& fk);
double isotropic_spinorbit_d(int ell, double zeta);

}  // namespace racah
