#include "oracle.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <stdexcept>

namespace oracle {

namespace {

using Vec = std::map<int, SqrtRationalSum>;  // twice m1 -> coefficient

// sqrt((j+m)(j-m+1)), the lowering factor of |j m>
SqrtRationalSum lower_factor(HalfInt j, HalfInt m) {
  long a = (j.twice() + m.twice()) / 2;
  long b = (j.twice() - m.twice()) / 2 + 1;
  return SqrtRationalSum::sqrt(Rational(a * b));
}

struct Coupled {
  // (twice J, twice M) -> vector over twice m1 (m2 = M - m1)
  std::map<std::pair<int, int>, Vec> states;
};

Vec lower(const Vec& v, HalfInt j1, HalfInt j2, HalfInt M) {
  Vec out;
  for (const auto& [t1, c] : v) {
    HalfInt m1 = HalfInt::from_twice(t1), m2 = M - m1;
    if (m1.twice() > -j1.twice()) out[t1 - 2] += c * lower_factor(j1, m1);
    if (m2.twice() > -j2.twice()) out[t1] += c * lower_factor(j2, m2);
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

SqrtRationalSum dot(const Vec& a, const Vec& b) {
  SqrtRationalSum s;
  for (const auto& [k, c] : a)
    if (auto it = b.find(k); it != b.end()) s += c * it->second;
  return s;
}

void normalize(Vec& v) {
  SqrtRationalSum n2 = dot(v, v);
  if (!n2.is_rational() || n2.is_zero()) throw std::logic_error("ladder norm is not a positive rational");
  SqrtRationalSum inv = SqrtRationalSum::sqrt(1 / n2.rational_value());
  for (auto& [k, c] : v) c = c * inv;
}

Coupled build(HalfInt j1, HalfInt j2) {
  Coupled out;
  for (int tj = j1.twice() + j2.twice(); tj >= std::abs(j1.twice() - j2.twice()); tj -= 2) {
    HalfInt J = HalfInt::from_twice(tj);
    Vec top;
    top[j1.twice()] = SqrtRationalSum(1);
    for (int tu = tj + 2; tu <= j1.twice() + j2.twice(); tu += 2) {
      const Vec& upper = out.states.at({tu, tj});
      SqrtRationalSum p = dot(upper, top);
      for (const auto& [k, c] : upper) top[k] -= p * c;
    }
    for (auto it = top.begin(); it != top.end();) it = it->second.is_zero() ? top.erase(it) : std::next(it);
    normalize(top);
    if (top.at(j1.twice()).sign() < 0)
      for (auto& [k, c] : top) c = -c;
    out.states[{tj, tj}] = top;
    Vec cur = top;
    for (int tm = tj; tm > -tj; tm -= 2) {
      HalfInt M = HalfInt::from_twice(tm);
      Vec next = lower(cur, j1, j2, M);
      SqrtRationalSum f = lower_factor(J, M).inverse();
      for (auto& [k, c] : next) c = c * f;
      out.states[{tj, tm - 2}] = next;
      cur = next;
    }
  }
  return out;
}

const Coupled& coupled(HalfInt j1, HalfInt j2) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, Coupled> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(j1.twice(), j2.twice());
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build(j1, j2)).first;
  return it->second;
}

bool proj_ok(HalfInt j, HalfInt m) { return racah::valid_projection(j, m); }

SqrtRationalSum hat(HalfInt j) { return SqrtRationalSum::sqrt(Rational(j.twice() + 1)); }

int sign_of(HalfInt x) { return (x.twice() / 2) % 2 == 0 ? 1 : -1; }  // x integer

Rational fact(int n) {
  Rational r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace

SqrtRationalSum cg(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt j, HalfInt m) {
  if (!proj_ok(j1, m1) || !proj_ok(j2, m2) || !proj_ok(j, m)) return {};
  if (m1 + m2 != m || !racah::triangle(j1, j2, j)) return {};
  const auto& c = coupled(j1, j2);
  const Vec& v = c.states.at({j.twice(), m.twice()});
  auto it = v.find(m1.twice());
  return it == v.end() ? SqrtRationalSum() : it->second;
}

std::vector<std::vector<SqrtRationalSum>> cg_table(HalfInt j1, HalfInt j2) {
  std::vector<std::pair<HalfInt, HalfInt>> rows, cols;
  for (int a = j1.twice(); a >= -j1.twice(); a -= 2)
    for (int b = j2.twice(); b >= -j2.twice(); b -= 2) rows.push_back({HalfInt::from_twice(a), HalfInt::from_twice(b)});
  for (int tj = j1.twice() + j2.twice(); tj >= std::abs(j1.twice() - j2.twice()); tj -= 2)
    for (int tm = tj; tm >= -tj; tm -= 2) cols.push_back({HalfInt::from_twice(tj), HalfInt::from_twice(tm)});
  std::vector<std::vector<SqrtRationalSum>> t(rows.size(), std::vector<SqrtRationalSum>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c)
      t[r][c] = cg(j1, rows[r].first, j2, rows[r].second, cols[c].first, cols[c].second);
  return t;
}

SqrtRationalSum three_jm(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m1, HalfInt m2, HalfInt m3) {
  if ((m1 + m2 + m3).twice() != 0) return {};
  // (j1 j2 j3; m1 m2 m3) = (-1)^{j1-j2-m3} <j1 m1 j2 m2 | j3 -m3> / sqrt(2 j3 + 1)
  SqrtRationalSum c = cg(j1, m1, j2, m2, j3, -m3);
  if (c.is_zero()) return c;
  return c * hat(j3).inverse() * Rational(sign_of(j1 - j2 - m3));
}

SqrtRationalSum three_j_zero(int a, int b, int c) {
  const int s = a + b + c;
  if (s % 2 != 0 || !racah::triangle(a, b, c)) return {};
  const int g = s / 2;
  Rational r = fact(2 * g - 2 * a) * fact(2 * g - 2 * b) * fact(2 * g - 2 * c) / fact(2 * g + 1);
  Rational f = fact(g) / (fact(g - a) * fact(g - b) * fact(g - c));
  return SqrtRationalSum::sqrt(r) * f * Rational(g % 2 == 0 ? 1 : -1);
}

SqrtRationalSum six_j(HalfInt j1, HalfInt j2, HalfInt j12, HalfInt j3, HalfInt J, HalfInt j23) {
  using racah::triangle;
  if (!triangle(j1, j2, j12) || !triangle(j12, j3, J) || !triangle(j2, j3, j23) || !triangle(j1, j23, J)) return {};
  const HalfInt M = J;
  SqrtRationalSum s;
  for (int t1 = -j1.twice(); t1 <= j1.twice(); t1 += 2)
    for (int t2 = -j2.twice(); t2 <= j2.twice(); t2 += 2) {
      HalfInt m1 = HalfInt::from_twice(t1), m2 = HalfInt::from_twice(t2), m3 = M - m1 - m2;
      if (!proj_ok(j3, m3)) continue;
      SqrtRationalSum left = cg(j1, m1, j2, m2, j12, m1 + m2) * cg(j12, m1 + m2, j3, m3, J, M);
      if (left.is_zero()) continue;
      s += left * cg(j2, m2, j3, m3, j23, m2 + m3) * cg(j1, m1, j23, m2 + m3, J, M);
    }
  SqrtRationalSum norm = (hat(j12) * hat(j23)).inverse();
  return s * norm * Rational(sign_of(j1 + j2 + j3 + J));
}

SqrtRationalSum nine_j(const std::array<std::array<HalfInt, 3>, 3>& a) {
  using racah::triangle;
  const HalfInt j1 = a[0][0], j2 = a[0][1], j12 = a[0][2];
  const HalfInt j3 = a[1][0], j4 = a[1][1], j34 = a[1][2];
  const HalfInt j13 = a[2][0], j24 = a[2][1], J = a[2][2];
  for (int i = 0; i < 3; ++i)
    if (!triangle(a[i][0], a[i][1], a[i][2]) || !triangle(a[0][i], a[1][i], a[2][i])) return {};
  const HalfInt M = J;
  SqrtRationalSum s;
  for (int t1 = -j1.twice(); t1 <= j1.twice(); t1 += 2)
    for (int t2 = -j2.twice(); t2 <= j2.twice(); t2 += 2)
      for (int t3 = -j3.twice(); t3 <= j3.twice(); t3 += 2) {
        HalfInt m1 = HalfInt::from_twice(t1), m2 = HalfInt::from_twice(t2), m3 = HalfInt::from_twice(t3);
        HalfInt m4 = M - m1 - m2 - m3;
        if (!proj_ok(j4, m4)) continue;
        SqrtRationalSum left =
            cg(j1, m1, j2, m2, j12, m1 + m2) * cg(j3, m3, j4, m4, j34, m3 + m4) * cg(j12, m1 + m2, j34, m3 + m4, J, M);
        if (left.is_zero()) continue;
        s += left * cg(j1, m1, j3, m3, j13, m1 + m3) * cg(j2, m2, j4, m4, j24, m2 + m4) *
             cg(j13, m1 + m3, j24, m2 + m4, J, M);
      }
  return s * (hat(j12) * hat(j34) * hat(j13) * hat(j24)).inverse();
}

// ---------------------------------------------------------------------------

Configuration::Configuration(int ell, int N) : ell_(ell), nso_(2 * (2 * ell + 1)) {
  if (N < 0 || N > nso_ || nso_ > 31) throw std::invalid_argument("bad configuration");
  for (std::uint32_t s = 0; s < (1u << nso_); ++s)
    if (std::popcount(s) == N) {
      index_[s] = static_cast<int>(states_.size());
      states_.push_back(s);
    }
}

double Configuration::gaunt(int k, int m, int mp) const {
  HalfInt l(ell_);
  SqrtRationalSum v = three_jm(l, k, l, -m, m - mp, mp) * three_j_zero(ell_, k, ell_) * Rational(2 * ell_ + 1);
  return (m % 2 == 0 ? 1.0 : -1.0) * v.to_double();
}

namespace {

// a_p |s>: sign and new state, or none.
bool annihilate(std::uint32_t& s, int p, int& sign) {
  if (!(s >> p & 1u)) return false;
  if (std::popcount(s & ((1u << p) - 1)) % 2) sign = -sign;
  s &= ~(1u << p);
  return true;
}

bool create(std::uint32_t& s, int p, int& sign) {
  if (s >> p & 1u) return false;
  if (std::popcount(s & ((1u << p) - 1)) % 2) sign = -sign;
  s |= 1u << p;
  return true;
}

}  // namespace

Eigen::MatrixXcd Configuration::one_body(const Eigen::MatrixXcd& h) const {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(size(), size());
  for (int c = 0; c < size(); ++c)
    for (int q = 0; q < nso_; ++q)
      for (int p = 0; p < nso_; ++p) {
        if (h(p, q) == cplx(0)) continue;
        std::uint32_t s = states_[c];
        int sign = 1;
        if (!annihilate(s, q, sign) || !create(s, p, sign)) continue;
        out(index_.at(s), c) += double(sign) * h(p, q);
      }
  return out;
}

Eigen::MatrixXcd Configuration::coulomb(const std::vector<double>& fk) const {
  auto ml = [this](int p) { return p / 2 - ell_; };
  auto spin = [](int p) { return p % 2; };
  // <pq|V|rs> with p, r on electron 1
  auto v = [&](int p, int q, int r, int s) {
    if (spin(p) != spin(r) || spin(q) != spin(s)) return 0.0;
    if (ml(p) + ml(q) != ml(r) + ml(s)) return 0.0;
    double sum = 0;
    for (std::size_t i = 0; i < fk.size(); ++i) {
      const int k = 2 * static_cast<int>(i);
      if (fk[i] == 0 || k > 2 * ell_) continue;
      sum += fk[i] * gaunt(k, ml(p), ml(r)) * gaunt(k, ml(s), ml(q));
    }
    return sum;
  };
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(size(), size());
  // 1/2 sum <pq|V|rs> a+_p a+_q a_s a_r
  for (int c = 0; c < size(); ++c)
    for (int r = 0; r < nso_; ++r)
      for (int s = 0; s < nso_; ++s) {
        if (r == s) continue;
        std::uint32_t removed = states_[c];
        int sign0 = 1;
        if (!annihilate(removed, r, sign0) || !annihilate(removed, s, sign0)) continue;
        for (int p = 0; p < nso_; ++p)
          for (int q = 0; q < nso_; ++q) {
            if (p == q) continue;
            std::uint32_t st = removed;
            int sign = sign0;
            if (!create(st, q, sign) || !create(st, p, sign)) continue;
            double val = v(p, q, r, s);
            if (val == 0) continue;
            out(index_.at(st), c) += 0.5 * sign * val;
          }
      }
  return out;
}

Eigen::MatrixXcd Configuration::spin_orbit(double zeta) const {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(nso_, nso_);
  auto idx = [this](int m, int up) { return 2 * (m + ell_) + (up ? 0 : 1); };
  for (int m = -ell_; m <= ell_; ++m) {
    // l_z s_z
    h(idx(m, 1), idx(m, 1)) += 0.5 * m * zeta;
    h(idx(m, 0), idx(m, 0)) -= 0.5 * m * zeta;
    // (l+ s- + l- s+) / 2
    if (m < ell_) {
      double lp = std::sqrt(double((ell_ - m) * (ell_ + m + 1)));
      h(idx(m + 1, 0), idx(m, 1)) += 0.5 * lp * zeta;
      h(idx(m, 1), idx(m + 1, 0)) += 0.5 * lp * zeta;
    }
  }
  return one_body(h);
}

Eigen::MatrixXcd Configuration::crystal_field(const std::map<std::pair<int, int>, cplx>& bkq) const {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(nso_, nso_);
  for (const auto& [kq, b] : bkq) {
    const auto [k, q] = kq;
    for (int mp = -ell_; mp <= ell_; ++mp) {
      const int m = mp + q;
      if (m < -ell_ || m > ell_) continue;
      double g = gaunt(k, m, mp);
      for (int s = 0; s < 2; ++s) h(2 * (m + ell_) + s, 2 * (mp + ell_) + s) += b * g;
    }
  }
  return one_body(h);
}

std::vector<double> eigenvalues(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
