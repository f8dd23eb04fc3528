#include "racah/crystalfield.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <set>

#include "racah/error.hpp"
#include "racah/wigner.hpp"

namespace racah {

namespace {

constexpr HalfInt half = HalfInt::from_twice(1);

void check_config(int ell, int N) {
  if (ell < 0 || ell > 6) throw InvalidInput("orbital quantum number out of range");
  if (N < 0 || N > 4 * ell + 2) throw InvalidInput("electron count out of range for l^N");
  if (N > 2) throw Unsupported("configurations with more than two electrons need fractional parentage");
}

SqrtRationalSum root(long n) { return SqrtRationalSum::sqrt(Rational(n)); }

SqrtRationalSum nine(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e, HalfInt f, HalfInt g, HalfInt h,
                     HalfInt i) {
  return nine_j({{{a, b, c}, {d, e, f}, {g, h, i}}});
}

// <(j j) X || t^(k1)(1) t^(k2)(2) coupled to k || (j j) X'> for unit tensors t.
SqrtRationalSum pair_reduced(HalfInt j, HalfInt X, HalfInt Xp, int k1, int k2, int k) {
  SqrtRationalSum nj = nine(j, j, k1, j, j, k2, X, Xp, k);
  if (nj.is_zero()) return {};
  return root(static_cast<long>(X.dim()) * Xp.dim() * (2 * k + 1)) * nj;
}

// <(j j) X || t^(k)(1) || (j j) X'>: electron 2 carries the identity, whose
// reduced element is sqrt(2j+1).
SqrtRationalSum first_reduced(HalfInt j, HalfInt X, HalfInt Xp, int k) {
  return pair_reduced(j, X, Xp, k, 0, k) * root(j.dim());
}

// Couples spin and orbital reduced elements to J.
SqrtRationalSum couple_sl(const TermLabel& t1, HalfInt J1, const TermLabel& t2, HalfInt J2, int kS, int kL, int k,
                          const SqrtRationalSum& rs, const SqrtRationalSum& rl) {
  if (rs.is_zero() || rl.is_zero()) return {};
  SqrtRationalSum nj = nine(t1.S, t2.S, kS, t1.L, t2.L, kL, J1, J2, k);
  if (nj.is_zero()) return {};
  return root(static_cast<long>(J1.dim()) * J2.dim() * (2 * k + 1)) * nj * rs * rl;
}

std::map<std::pair<int, int>, std::vector<int>> block_index(const std::vector<LevelLabel>& basis) {
  std::map<std::pair<int, int>, std::vector<int>> out;
  for (std::size_t i = 0; i < basis.size(); ++i)
    out[{basis[i].chain.irrep, basis[i].chain.gamma}].push_back(static_cast<int>(i));
  return out;
}

template <class F>
EnergyMatrix assemble(const std::vector<LevelLabel>& basis, F&& element) {
  EnergyMatrix m = empty_matrix(basis);
  for (auto& b : m.blocks) {
    const int n = static_cast<int>(b.basis.size());
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) b.matrix(r, c) = element(b.basis[r], b.basis[c]);
  }
  return m;
}

}  // namespace

std::string TermLabel::str() const {
  static const char* letters = "SPDFGHIKLMNOQRTUV";
  std::string s = std::to_string(S.twice() + 1);
  if (L.is_integer() && L.as_int() >= 0 && L.as_int() < 17)
    s += letters[L.as_int()];
  else
    s += "(" + L.str() + ")";
  if (alpha != 0) s += std::to_string(alpha);
  return s;
}

int config_dimension(int ell, int N) {
  if (ell < 0) throw InvalidInput("negative orbital quantum number");
  const int n = 4 * ell + 2;
  if (N < 0 || N > n) throw InvalidInput("electron count out of range for l^N");
  long long c = 1;
  for (int i = 1; i <= N; ++i) c = c * (n - N + i) / i;
  return static_cast<int>(c);
}

std::vector<TermLabel> enumerate_terms(int ell, int N) {
  check_config(ell, N);
  if (N == 0) return {{0, 0, 0}};
  if (N == 1) return {{0, half, ell}};
  std::vector<TermLabel> out;
  for (int S = 0; S <= 1; ++S)
    for (int L = 0; L <= 2 * ell; ++L)
      if ((S + L) % 2 == 0) out.push_back({0, S, L});
  return out;
}

std::vector<LevelLabel> enumerate_basis(int ell, int N, const SymmetryChain& chain) {
  std::vector<LevelLabel> out;
  for (const auto& t : enumerate_terms(ell, N)) {
    for (HalfInt J = abs(t.S - t.L); J <= t.S + t.L; J += 1) {
      for (const auto& c : chain.table(J).columns) out.push_back({t, J, c});
    }
  }
  if (static_cast<int>(out.size()) != config_dimension(ell, N))
    throw InternalError("symmetry-adapted basis does not span the configuration");
  return out;
}

EnergyMatrix& EnergyMatrix::operator+=(const EnergyMatrix& o) {
  if (o.blocks.size() != blocks.size()) throw InvalidInput("energy matrices have different block structure");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].basis != o.blocks[i].basis) throw InvalidInput("energy matrices have different bases");
    blocks[i].matrix += o.blocks[i].matrix;
  }
  return *this;
}

EnergyMatrix& EnergyMatrix::operator*=(double s) {
  for (auto& b : blocks) b.matrix *= s;
  return *this;
}

int EnergyMatrix::dimension() const {
  int n = 0;
  for (const auto& b : blocks) n += static_cast<int>(b.basis.size());
  return n;
}

std::vector<double> EnergyMatrix::spectrum() const {
  std::vector<double> out;
  for (const auto& b : blocks) {
    if (b.basis.empty()) continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(b.matrix);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i));
  }
  std::sort(out.begin(), out.end());
  return out;
}

EnergyMatrix empty_matrix(const std::vector<LevelLabel>& basis) {
  EnergyMatrix m;
  for (const auto& [key, idx] : block_index(basis)) {
    EnergyBlock b;
    b.irrep = key.first;
    b.gamma = key.second;
    for (int i : idx) b.basis.push_back(basis[i]);
    b.matrix = Eigen::MatrixXcd::Zero(idx.size(), idx.size());
    m.blocks.push_back(std::move(b));
  }
  return m;
}

SqrtRationalSum term_energy(int ell, int N, const TermLabel& term, const std::vector<Rational>& fk) {
  check_config(ell, N);
  if (static_cast<int>(fk.size()) != ell + 1) throw InvalidInput("expected l+1 Slater integrals");
  if (N < 2) return {};
  // sum_k F^k (l||C^k||l)^2 (-1)^L {l l L; l l k}
  SqrtRationalSum e;
  for (int i = 0; i <= ell; ++i) {
    const int k = 2 * i;
    SqrtRationalSum c = three_jm(ell, k, ell, 0, 0, 0);
    SqrtRationalSum w = c * c * Rational((2 * ell + 1) * (2 * ell + 1)) * six_j(ell, ell, term.L, ell, ell, k);
    if (phase(term.L) < 0) w = -w;
    e += w * fk[i];
  }
  return e;
}

EnergyMatrix coulomb_matrix(int ell, int N, const std::vector<Rational>& fk, const std::vector<LevelLabel>& basis) {
  std::map<TermLabel, double> cache;
  for (const auto& t : enumerate_terms(ell, N)) cache[t] = term_energy(ell, N, t, fk).to_double();
  return assemble(basis, [&](const LevelLabel& a, const LevelLabel& b) -> cplx {
    if (a.term != b.term || a.J != b.J || a.chain != b.chain) return 0.0;
    return cache.at(a.term);
  });
}

EnergyMatrix spinorbit_matrix(int ell, int N, double zeta, const std::vector<LevelLabel>& basis) {
  check_config(ell, N);
  EffectiveParameterLabel so{true, 0, 0, 1, ell, ell, 1, 0, 0};
  const double scale = -3.0 * std::sqrt(ell * (ell + 1) * (2 * ell + 1) / 2.0) * zeta;
  return assemble(basis, [&](const LevelLabel& a, const LevelLabel& b) -> cplx {
    if (a.J != b.J || a.chain != b.chain || zeta == 0) return 0.0;
    return scale * reduced_effective(ell, N, a.term, a.J, b.term, b.J, so).to_double() / std::sqrt(a.J.dim());
  });
}

BkqSet cubic_bkq(double dq) {
  const double b44 = 21 * dq * std::sqrt(5.0 / 14.0);
  return {{{4, 0}, 21 * dq}, {{4, 4}, b44}, {{4, -4}, b44}};
}

DkSet dk_from_bkq(int ell, const BkqSet& bkq, const SymmetryChain& chain) {
  for (const auto& [kq, v] : bkq) {
    const auto [k, q] = kq;
    if (k < 0 || k > 2 * ell || k % 2 != 0) throw InvalidInput("crystal-field rank k must be even and <= 2l");
    if (q < -k || q > k) throw InvalidInput("crystal-field projection q out of range");
    auto it = bkq.find({k, -q});
    cplx partner = it == bkq.end() ? cplx(0) : it->second;
    cplx expect = (q % 2 == 0 ? 1.0 : -1.0) * std::conj(v);
    if (std::abs(partner - expect) > 1e-9 * std::max(1.0, std::abs(v)))
      throw InvalidInput("B^k_q set is not Hermitian: B^k_{-q} != (-1)^q (B^k_q)*");
  }
  std::set<int> ranks;
  for (const auto& [kq, v] : bkq) ranks.insert(kq.first);
  DkSet out;
  const int A1 = chain.identity_irrep();
  for (int k : ranks) {
    const auto& t = chain.table(k);
    const double pre = (ell % 2 == 0 ? 1.0 : -1.0) * (2 * ell + 1) * three_jm_value(ell, k, ell, 0, 0, 0);
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(t.dim());
    for (const auto& [kq, v] : bkq)
      if (kq.first == k) b(ReductionTable::row_of(k, kq.second)) = v;
    Eigen::VectorXcd rest = b;
    for (int a0 = 0; a0 < chain.branching(A1, k); ++a0) {
      const int col = t.column_index({a0, A1, 0});
      cplx s = t.numeric.col(col).dot(b);
      rest -= s * t.numeric.col(col);
      out[{k, a0}] = pre * s;
    }
    if (rest.norm() > 1e-9 * std::max(1.0, b.norm()))
      throw InvalidInput("B^" + std::to_string(k) + "_q set is not invariant under " + chain.name());
  }
  return out;
}

SqrtRationalSum reduced_unit_tensor(int ell, int N, const TermLabel& t1, const TermLabel& t2, int k) {
  check_config(ell, N);
  if (k < 0) throw InvalidInput("negative tensor rank");
  if (t1.S != t2.S || N == 0) return {};
  if (!triangle(t1.L, k, t2.L)) return {};
  if (N == 1) return triangle(ell, k, ell) ? SqrtRationalSum(1) : SqrtRationalSum();
  return first_reduced(ell, t1.L, t2.L, k) * Rational(2);
}

EnergyMatrix crystalfield_matrix(int ell, int N, const DkSet& dk, const std::vector<LevelLabel>& basis,
                                 const SymmetryChain& chain) {
  check_config(ell, N);
  const int A1 = chain.identity_irrep();
  return assemble(basis, [&](const LevelLabel& a, const LevelLabel& b) -> cplx {
    if (a.term.S != b.term.S) return 0.0;
    cplx sum = 0;
    for (const auto& [key, d] : dk) {
      if (d == cplx(0)) continue;
      const int k = key.first;
      SqrtRationalSum red = reduced_unit_tensor(ell, N, a.term, b.term, k);
      if (red.is_zero()) continue;
      double sj = six_j_value(a.term.L, k, b.term.L, b.J, a.term.S, a.J);
      if (sj == 0) continue;
      cplx f = f_symbol(a.J, b.J, k, a.chain, b.chain, {key.second, A1, 0}, chain);
      sum += d * red.to_double() * sj * f;
    }
    const double ph = phase(a.term.S + b.term.L + a.J);
    return ph * std::sqrt(double(a.J.dim()) * b.J.dim()) * sum;
  });
}

std::string EffectiveParameterLabel::str(int ell, int multiplicity) const {
  std::string s = "D[";
  if (one_body)
    s += "(ss)" + std::to_string(kS) + "(" + std::to_string(ell) + std::to_string(ell) + ")";
  else
    s += "(" + std::to_string(k1) + std::to_string(k2) + ")" + std::to_string(kS) + "(" + std::to_string(k3) +
         std::to_string(k4) + ")";
  s += std::to_string(kL) + " " + std::to_string(k);
  if (multiplicity > 1) s += static_cast<char>('a' + a0);
  return s + "]";
}

SqrtRationalSum reduced_effective(int ell, int N, const TermLabel& t1, HalfInt J1, const TermLabel& t2, HalfInt J2,
                                  const EffectiveParameterLabel& op) {
  check_config(ell, N);
  if (N == 0) return {};
  if (op.one_body) {
    if (op.kS > 1 || !triangle(ell, op.kL, ell)) return {};
    if (N == 1)
      return couple_sl(t1, J1, t2, J2, op.kS, op.kL, op.k, SqrtRationalSum(1), SqrtRationalSum(1));
    SqrtRationalSum rs = first_reduced(half, t1.S, t2.S, op.kS);
    SqrtRationalSum rl = first_reduced(ell, t1.L, t2.L, op.kL);
    return couple_sl(t1, J1, t2, J2, op.kS, op.kL, op.k, rs, rl) * Rational(2);
  }
  if (N == 1) return {};
  if (op.k1 > 1 || op.k2 > 1) return {};
  SqrtRationalSum rs = pair_reduced(half, t1.S, t2.S, op.k1, op.k2, op.kS);
  SqrtRationalSum rl = pair_reduced(ell, t1.L, t2.L, op.k3, op.k4, op.kL);
  return couple_sl(t1, J1, t2, J2, op.kS, op.kL, op.k, rs, rl) * Rational(2);
}

EnergyMatrix heff_matrix(int ell, int N, const std::vector<std::pair<EffectiveParameterLabel, cplx>>& params,
                         const std::vector<LevelLabel>& basis, const SymmetryChain& chain) {
  check_config(ell, N);
  if (N != 2) throw Unsupported("the effective Hamiltonian is assembled for two-electron configurations");
  const int A1 = chain.identity_irrep();
  for (const auto& [op, d] : params)
    if (op.a0 < 0 || op.a0 >= chain.branching(A1, op.k))
      throw InvalidInput("branching index a0 out of range for rank " + std::to_string(op.k));
  return assemble(basis, [&](const LevelLabel& a, const LevelLabel& b) -> cplx {
    cplx sum = 0;
    for (const auto& [op, d] : params) {
      if (d == cplx(0)) continue;
      SqrtRationalSum red = reduced_effective(ell, N, a.term, a.J, b.term, b.J, op);
      if (red.is_zero()) continue;
      sum += d * red.to_double() * f_symbol(a.J, b.J, op.k, a.chain, b.chain, {op.a0, A1, 0}, chain);
    }
    return sum;
  });
}

LevelReport diagonalize_levels(const EnergyMatrix& m, const SymmetryChain& chain, double tol) {
  std::vector<std::pair<double, int>> eig;
  for (const auto& b : m.blocks) {
    if (b.basis.empty()) continue;
    const double scale = std::max(1.0, b.matrix.cwiseAbs().maxCoeff());
    if ((b.matrix - b.matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * scale)
      throw InternalError("energy block is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(b.matrix);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) eig.push_back({es.eigenvalues()(i), b.irrep});
  }
  std::sort(eig.begin(), eig.end());
  LevelReport rep;
  double total = 0;
  for (std::size_t i = 0; i < eig.size();) {
    std::size_t j = i;
    double sum = 0;
    std::map<int, int> counts;
    while (j < eig.size() && std::abs(eig[j].first - eig[i].first) <= tol * std::max(1.0, std::abs(eig[i].first))) {
      sum += eig[j].first;
      ++counts[eig[j].second];
      ++j;
    }
    Level lv;
    lv.degeneracy = static_cast<int>(j - i);
    lv.energy = sum / lv.degeneracy;
    for (const auto& [irrep, n] : counts) lv.irreps.push_back({chain.irrep_name(irrep), n});
    rep.levels.push_back(lv);
    total += sum;
    i = j;
  }
  rep.barycenter = eig.empty() ? 0.0 : total / eig.size();
  return rep;
}

nlohmann::json to_json(const EnergyMatrix& m, const SymmetryChain& chain) {
  nlohmann::json out;
  out["blocks"] = nlohmann::json::array();
  for (const auto& b : m.blocks) {
    nlohmann::json jb;
    jb["irrep"] = chain.irrep_name(b.irrep);
    jb["gamma"] = chain.component_name(b.irrep, b.gamma);
    jb["basis"] = nlohmann::json::array();
    for (const auto& l : b.basis)
      jb["basis"].push_back({{"term", l.term.str()},
                             {"S", l.term.S.str()},
                             {"L", l.term.L.str()},
                             {"J", l.J.str()},
                             {"label", chain.label_str(l.chain)}});
    std::vector<double> re, im;
    for (Eigen::Index r = 0; r < b.matrix.rows(); ++r)
      for (Eigen::Index c = 0; c < b.matrix.cols(); ++c) {
        re.push_back(b.matrix(r, c).real());
        im.push_back(b.matrix(r, c).imag());
      }
    jb["re"] = re;
    jb["im"] = im;
    out["blocks"].push_back(jb);
  }
  return out;
}

}  // namespace racah
