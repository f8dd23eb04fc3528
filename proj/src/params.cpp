#include "racah/params.hpp"

#include "racah/error.hpp"
#include "racah/wigner.hpp"

namespace racah {

namespace {

void check_ell(int ell) {
  if (ell < 0 || ell > 6) throw InvalidInput("orbital quantum number out of range");
}

RationalMatrix identity(int n) {
  RationalMatrix m(n, std::vector<Rational>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  RationalMatrix c(n, std::vector<Rational>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

std::vector<Rational> mat_apply(const RationalMatrix& a, const std::vector<Rational>& v) {
  std::vector<Rational> out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
  return out;
}

// Exact Gauss-Jordan inverse.
RationalMatrix inverse(RationalMatrix a) {
  const int n = static_cast<int>(a.size());
  RationalMatrix inv = identity(n);
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw InvalidInput("parameter transformation matrix is singular");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    Rational d = a[c][c];
    for (int j = 0; j < n; ++j) {
      a[c][j] /= d;
      inv[c][j] /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (int j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace

CoulombScheme parse_coulomb_scheme(const std::string& name) {
  if (name == "slater" || name == "slater_sub" || name == "sub") return CoulombScheme::slater_sub;
  if (name == "capital" || name == "slater_capital") return CoulombScheme::slater_capital;
  if (name == "racah" || name == "abc") return CoulombScheme::racah;
  if (name == "e_lambda" || name == "elambda") return CoulombScheme::e_lambda;
  if (name == "custom") return CoulombScheme::custom;
  throw InvalidInput("unknown Coulomb parameter scheme '" + name + "'");
}

std::string scheme_name(CoulombScheme s) {
  switch (s) {
    case CoulombScheme::slater_capital: return "capital";
    case CoulombScheme::slater_sub: return "slater";
    case CoulombScheme::racah: return "racah";
    case CoulombScheme::e_lambda: return "e_lambda";
    case CoulombScheme::custom: return "custom";
  }
  return "";
}

std::vector<std::string> scheme_value_names(int ell, CoulombScheme s) {
  std::vector<std::string> out;
  for (int i = 0; i <= ell; ++i) {
    switch (s) {
      case CoulombScheme::slater_capital: out.push_back("F^" + std::to_string(2 * i)); break;
      case CoulombScheme::slater_sub: out.push_back("F_" + std::to_string(2 * i)); break;
      case CoulombScheme::racah:
        if (ell == 2)
          out.push_back(std::string(1, static_cast<char>('A' + i)));
        else
          out.push_back("E" + std::to_string(i));
        break;
      case CoulombScheme::e_lambda: out.push_back("E^" + std::to_string(i)); break;
      case CoulombScheme::custom: out.push_back("P" + std::to_string(i)); break;
    }
  }
  return out;
}

std::vector<Rational> slater_normalization(int ell) {
  switch (ell) {
    case 0: return {1};
    case 1: return {1, 25};
    case 2: return {1, 49, 441};
    case 3: return {1, 225, 1089, q(184081, 25)};
    default: throw Unsupported("no subscript Slater normalization for l = " + std::to_string(ell));
  }
}

RationalMatrix b_matrix(int ell) {
  check_ell(ell);
  RationalMatrix b(ell + 1, std::vector<Rational>(ell + 1, 0));
  for (int lam = 0; lam <= ell; ++lam)
    for (int i = 0; i <= ell; ++i) {
      const int k = 2 * i;
      SqrtRationalSum v = three_jm(ell, k, ell, 0, 0, 0) * three_jm(ell, k, ell, -lam, 0, lam) * Rational(2 * ell + 1);
      if (lam % 2 != 0) v = -v;
      if (!v.is_rational()) throw InternalError("b(l) entry is not rational");
      b[lam][i] = v.rational_value();
    }
  return b;
}

RationalMatrix scheme_matrix(int ell, CoulombScheme s, const RationalMatrix& custom) {
  check_ell(ell);
  const int n = ell + 1;
  switch (s) {
    case CoulombScheme::slater_capital:
      return identity(n);
    case CoulombScheme::slater_sub: {
      auto d = slater_normalization(ell);
      RationalMatrix m = identity(n);
      for (int i = 0; i < n; ++i) m[i][i] = 1 / d[i];
      return m;
    }
    case CoulombScheme::racah:
      if (ell == 2) return {{1, 0, q(-1, 9)}, {0, q(9, 441), q(-5, 441)}, {0, 0, q(5, 63)}};
      if (ell == 3) {
        RationalMatrix e{{1, -10, -33, -286},
                         {0, q(70, 9), q(231, 9), q(2002, 9)},
                         {0, q(1, 9), q(-3, 9), q(7, 9)},
                         {0, q(5, 3), q(6, 3), q(-91, 3)}};
        return multiply(e, scheme_matrix(3, CoulombScheme::slater_sub));
      }
      throw Unsupported("Racah parameters are defined for d and f shells only");
    case CoulombScheme::e_lambda:
      return b_matrix(ell);
    case CoulombScheme::custom:
      if (static_cast<int>(custom.size()) != n) throw InvalidInput("custom matrix must be (l+1) x (l+1)");
      for (const auto& row : custom)
        if (static_cast<int>(row.size()) != n) throw InvalidInput("custom matrix must be (l+1) x (l+1)");
      return custom;
  }
  return identity(n);
}

std::vector<Rational> to_slater_capital(const CoulombParams& p, const RationalMatrix& custom) {
  if (static_cast<int>(p.values.size()) != p.ell + 1)
    throw InvalidInput("expected " + std::to_string(p.ell + 1) + " Coulomb parameters");
  return mat_apply(inverse(scheme_matrix(p.ell, p.scheme, custom)), p.values);
}

CoulombParams convert_coulomb_params(const CoulombParams& in, CoulombScheme target, const RationalMatrix& custom) {
  CoulombParams out;
  out.ell = in.ell;
  out.scheme = target;
  out.values = mat_apply(scheme_matrix(in.ell, target, custom), to_slater_capital(in, custom));
  return out;
}

LaportePlattResult laporte_platt_check(const std::vector<Rational>& fk) {
  LaportePlattResult r;
  r.holds = true;
  for (std::size_t i = 0; i < fk.size(); ++i) {
    const long k = 2 * static_cast<long>(i);
    r.residuals.push_back(fk[i] - (2 * k + 1) * (fk.empty() ? Rational(0) : fk[0]));
    if (r.residuals.back() != 0) r.holds = false;
  }
  return r;
}

ParamFamily parse_param_family(const std::string& name) {
  if (name == "all") return ParamFamily::all;
  if (name == "coulomb") return ParamFamily::coulomb;
  if (name == "spin-orbit" || name == "spinorbit") return ParamFamily::spin_orbit;
  if (name == "ligand-field" || name == "ligandfield") return ParamFamily::ligand_field;
  if (name == "isotropic") return ParamFamily::isotropic;
  throw InvalidInput("unknown parameter family '" + name + "'");
}

// Retention rules:
//  * Coulomb: spin ranks (00)0; orbital ranks k3 <= k4, both even and <= 2l;
//    k = kL; kL even when k3 = k4 (the i <-> j symmetric part of a coupling
//    of equal ranks vanishes for odd kL).
//  * spin-orbit: one-body (ss)1 (ll)kL with kL odd, k in 1 x kL.
//  * ligand field: one-body (ss)0 (ll)kL with kL even, k = kL.
//  * every rank k must contain the identity irrep; a0 runs over its copies.
std::vector<EffectiveParameterLabel> enumerate_effective_params(int ell, const SymmetryChain& chain,
                                                                ParamFamily family) {
  if (ell != 2 && ell != 3) throw Unsupported("effective-parameter lists are defined for d and f shells");
  if (chain.kind() != SymmetryChain::Kind::octahedral)
    throw Unsupported("effective-parameter lists are defined for the octahedral group");
  const int A1 = chain.identity_irrep();
  auto sigma = [&](int k) { return chain.branching(A1, k); };
  const bool iso = family == ParamFamily::isotropic;
  std::vector<EffectiveParameterLabel> out;
  if (family == ParamFamily::all || family == ParamFamily::coulomb || iso) {
    for (int kL = 0; kL <= 4 * ell; ++kL) {
      if (iso && kL != 0) break;
      for (int k3 = 0; k3 <= 2 * ell; k3 += 2)
        for (int k4 = k3; k4 <= 2 * ell; k4 += 2) {
          if (!triangle(k3, k4, kL)) continue;
          if (k3 == k4 && kL % 2 != 0) continue;
          if (iso && k3 != k4) continue;
          for (int a0 = 0; a0 < sigma(kL); ++a0) out.push_back({false, 0, 0, 0, k3, k4, kL, kL, a0});
        }
    }
  }
  if (family == ParamFamily::all || family == ParamFamily::spin_orbit || iso) {
    for (int kL = 1; kL <= 2 * ell; kL += 2) {
      if (iso && kL != 1) break;
      for (int k = kL - 1; k <= kL + 1; ++k) {
        if (iso && k != 0) continue;
        for (int a0 = 0; a0 < sigma(k); ++a0) out.push_back({true, 0, 0, 1, ell, ell, kL, k, a0});
      }
    }
  }
  if (family == ParamFamily::all || family == ParamFamily::ligand_field || iso) {
    for (int kL = 0; kL <= 2 * ell; kL += 2) {
      if (iso && kL == 0) continue;  // a constant shift, absorbed by the Coulomb part
      for (int a0 = 0; a0 < sigma(kL); ++a0) out.push_back({true, 0, 0, 0, ell, ell, kL, kL, a0});
    }
  }
  return out;
}

SqrtRationalSum isotropic_coulomb_d(int ell, int k, const Rational& fk) {
  SqrtRationalSum c = three_jm(ell, k, ell, 0, 0, 0);
  return SqrtRationalSum::sqrt(Rational(2 * k + 1)) * c * c * Rational((2 * ell + 1) * (2 * ell + 1)) * fk;
}

double isotropic_spinorbit_d(int ell, double zeta) {
  return -3.0 * std::sqrt(ell * (ell + 1) * (2 * ell + 1) / 2.0) * zeta;
}

}  // namespace racah
