#include "racah/wigner.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <shared_mutex>

#include "racah/error.hpp"

namespace racah {

namespace {

constexpr int kFactorialMax = 400;

void check_j(HalfInt j) {
  if (j.twice() < 0) throw InvalidInput("negative angular momentum " + j.str());
  if (j.twice() > max_twice_j) throw Unsupported("angular momentum above the bound j <= 40: " + j.str());
}

void check_projection(HalfInt j, HalfInt m) {
  check_j(j);
  if (!valid_projection(j, m)) throw InvalidInput("invalid projection m=" + m.str() + " for j=" + j.str());
}

// integer value of a sum of half-integers known to be integral
int ival(HalfInt h) { return h.as_int(); }

struct Entry {
  SqrtRationalSum exact;
  double value;
};

template <std::size_t N>
class Memo {
 public:
  using Key = std::array<int, N>;
  template <class F>
  const Entry& get(const Key& key, F&& compute) {
    {
      std::shared_lock lock(mutex_);
      auto it = map_.find(key);
      if (it != map_.end()) return it->second;
    }
    SqrtRationalSum v = compute();
    double d = v.to_double();
    std::unique_lock lock(mutex_);
    auto [it, inserted] = map_.try_emplace(key, Entry{std::move(v), d});
    return it->second;
  }

 private:
  std::shared_mutex mutex_;
  std::map<Key, Entry> map_;  // node-based, so references stay valid
};

Memo<6>& cg_memo() { static Memo<6> m; return m; }
Memo<6>& tjm_memo() { static Memo<6> m; return m; }
Memo<6>& sixj_memo() { static Memo<6> m; return m; }
Memo<9>& ninej_memo() { static Memo<9> m; return m; }

// 3-jm key invariant under column permutations and m -> -m; returns the
// sign relating the requested symbol to the canonical one.
std::pair<std::array<int, 6>, int> tjm_key(const std::array<int, 6>& t) {
  static constexpr int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  int J = (t[0] + t[1] + t[2]) / 2;
  int odd_sign = (J % 2 == 0) ? 1 : -1;
  std::array<int, 6> best{};
  int best_sign = 0;
  for (int p = 0; p < 6; ++p) {
    for (int flip = 0; flip < 2; ++flip) {
      std::array<int, 6> k{};
      for (int c = 0; c < 3; ++c) {
        k[c] = t[perms[p][c]];
        k[3 + c] = flip ? -t[3 + perms[p][c]] : t[3 + perms[p][c]];
      }
      int s = 1;
      if (p >= 3) s *= odd_sign;
      if (flip) s *= odd_sign;
      if (best_sign == 0 || k < best) {
        best = k;
        best_sign = s;
      }
    }
  }
  return {best, best_sign};
}

// 6-j key invariant under the 24 tetrahedral symmetries.
std::array<int, 6> sixj_key(const std::array<int, 6>& t) {
  static constexpr int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  std::array<int, 6> best{};
  bool first = true;
  for (const auto& p : perms) {
    for (int flips = 0; flips < 4; ++flips) {
      // flip upper/lower in two columns: none, (0,1), (0,2), (1,2)
      static constexpr bool fl[4][3] = {{false, false, false}, {true, true, false}, {true, false, true}, {false, true, true}};
      std::array<int, 6> k{};
      for (int c = 0; c < 3; ++c) {
        int up = t[p[c]], lo = t[3 + p[c]];
        if (fl[flips][c]) std::swap(up, lo);
        k[c] = up;
        k[3 + c] = lo;
      }
      if (first || k < best) {
        best = k;
        first = false;
      }
    }
  }
  return best;
}

// Delta^2(a b c) = (a+b-c)!(a-b+c)!(-a+b+c)!/(a+b+c+1)!
Rational delta_sq(HalfInt a, HalfInt b, HalfInt c) {
  using detail::factorial;
  Rational r(factorial(ival(a + b - c)) * factorial(ival(a - b + c)) * factorial(ival(-a + b + c)),
             factorial(ival(a + b + c) + 1));
  r.canonicalize();
  return r;
}

}  // namespace

namespace detail {

const Integer& factorial(int n) {
  static const std::vector<Integer> table = [] {
    std::vector<Integer> t(kFactorialMax + 1);
    t[0] = 1;
    for (int i = 1; i <= kFactorialMax; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  if (n < 0 || n > kFactorialMax) throw InternalError("factorial argument out of range");
  return table[n];
}

SqrtRationalSum cg_direct(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt j, HalfInt m) {
  check_projection(j1, m1);
  check_projection(j2, m2);
  check_projection(j, m);
  if (m1 + m2 != m || !triangle(j1, j2, j)) return {};
  int a = ival(j1 + j2 - j), b = ival(j1 - j2 + j), c = ival(-j1 + j2 + j), d = ival(j1 + j2 + j) + 1;
  Integer num = Integer(j.twice() + 1) * factorial(a) * factorial(b) * factorial(c) * factorial(ival(j1 + m1)) *
                factorial(ival(j1 - m1)) * factorial(ival(j2 + m2)) * factorial(ival(j2 - m2)) *
                factorial(ival(j + m)) * factorial(ival(j - m));
  Rational radicand(num, factorial(d));
  radicand.canonicalize();
  int kmin = std::max({0, ival(j2 - j - m1), ival(j1 - j + m2)});
  int kmax = std::min({a, ival(j1 - m1), ival(j2 + m2)});
  Rational sum = 0;
  for (int k = kmin; k <= kmax; ++k) {
    Integer den = factorial(k) * factorial(a - k) * factorial(ival(j1 - m1) - k) * factorial(ival(j2 + m2) - k) *
                  factorial(ival(j - j2 + m1) + k) * factorial(ival(j - j1 - m2) + k);
    Rational t(k % 2 == 0 ? 1 : -1, 1);
    t /= Rational(den);
    sum += t;
  }
  return SqrtRationalSum::sqrt(radicand) * sum;
}

SqrtRationalSum three_jm_direct(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m1, HalfInt m2, HalfInt m3) {
  check_projection(j1, m1);
  check_projection(j2, m2);
  check_projection(j3, m3);
  if (m1 + m2 + m3 != HalfInt(0) || !triangle(j1, j2, j3)) return {};
  // (2j3+1)^{-1/2} (-1)^{j3-m3-2j2} <j2 m2 j1 m1 | j3 -m3>
  int s = phase(j3 - m3 - j2 - j2);
  SqrtRationalSum v = cg_direct(j2, m2, j1, m1, j3, -m3);
  return v * SqrtRationalSum::sqrt(Rational(1, j3.twice() + 1)) * Rational(s);
}

SqrtRationalSum six_j_direct(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e, HalfInt f) {
  for (HalfInt x : {a, b, c, d, e, f}) check_j(x);
  if (!triangle(a, b, c) || !triangle(a, e, f) || !triangle(d, b, f) || !triangle(d, e, c)) return {};
  Rational rad = delta_sq(a, b, c) * delta_sq(a, e, f) * delta_sq(d, b, f) * delta_sq(d, e, c);
  int tmin = std::max({ival(a + b + c), ival(a + e + f), ival(d + b + f), ival(d + e + c)});
  int tmax = std::min({ival(a + b + d + e), ival(b + c + e + f), ival(a + c + d + f)});
  Rational sum = 0;
  for (int t = tmin; t <= tmax; ++t) {
    Integer den = factorial(t - ival(a + b + c)) * factorial(t - ival(a + e + f)) * factorial(t - ival(d + b + f)) *
                  factorial(t - ival(d + e + c)) * factorial(ival(a + b + d + e) - t) *
                  factorial(ival(b + c + e + f) - t) * factorial(ival(a + c + d + f) - t);
    Rational term(factorial(t + 1), den);
    term.canonicalize();
    if (t % 2 != 0) term = -term;
    sum += term;
  }
  return SqrtRationalSum::sqrt(rad) * sum;
}

}  // namespace detail

SqrtRationalSum cg(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt j, HalfInt m) {
  check_projection(j1, m1);
  check_projection(j2, m2);
  check_projection(j, m);
  if (m1 + m2 != m || !triangle(j1, j2, j)) return {};
  std::array<int, 6> key{j1.twice(), m1.twice(), j2.twice(), m2.twice(), j.twice(), m.twice()};
  return cg_memo().get(key, [&] { return detail::cg_direct(j1, m1, j2, m2, j, m); }).exact;
}

double cg_value(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt j, HalfInt m) {
  check_projection(j1, m1);
  check_projection(j2, m2);
  check_projection(j, m);
  if (m1 + m2 != m || !triangle(j1, j2, j)) return 0.0;
  std::array<int, 6> key{j1.twice(), m1.twice(), j2.twice(), m2.twice(), j.twice(), m.twice()};
  return cg_memo().get(key, [&] { return detail::cg_direct(j1, m1, j2, m2, j, m); }).value;
}

int one_jm(HalfInt j, HalfInt m, HalfInt mp) {
  check_projection(j, m);
  check_projection(j, mp);
  if (mp != -m) return 0;
  return phase(j + m);
}

namespace {

const Entry* three_jm_entry(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m1, HalfInt m2, HalfInt m3, int& sign) {
  check_projection(j1, m1);
  check_projection(j2, m2);
  check_projection(j3, m3);
  if (m1 + m2 + m3 != HalfInt(0) || !triangle(j1, j2, j3)) return nullptr;
  auto [key, s] = tjm_key({j1.twice(), j2.twice(), j3.twice(), m1.twice(), m2.twice(), m3.twice()});
  sign = s;
  return &tjm_memo().get(key, [&] {
    return detail::three_jm_direct(HalfInt::from_twice(key[0]), HalfInt::from_twice(key[1]),
                                   HalfInt::from_twice(key[2]), HalfInt::from_twice(key[3]),
                                   HalfInt::from_twice(key[4]), HalfInt::from_twice(key[5]));
  });
}

const Entry* six_j_entry(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e, HalfInt f) {
  for (HalfInt x : {a, b, c, d, e, f}) check_j(x);
  if (!triangle(a, b, c) || !triangle(a, e, f) || !triangle(d, b, f) || !triangle(d, e, c)) return nullptr;
  auto key = sixj_key({a.twice(), b.twice(), c.twice(), d.twice(), e.twice(), f.twice()});
  return &sixj_memo().get(key, [&] {
    auto h = [&](int i) { return HalfInt::from_twice(key[i]); };
    return detail::six_j_direct(h(0), h(1), h(2), h(3), h(4), h(5));
  });
}

SqrtRationalSum nine_j_compute(const std::array<std::array<HalfInt, 3>, 3>& a) {
  // sum_x (-1)^{2x} (2x+1) {a11 a21 a31; a32 a33 x}{a12 a22 a32; a21 x a23}{a13 a23 a33; x a11 a12}
  auto lo = [](HalfInt p, HalfInt q) { return abs(p - q); };
  HalfInt xmin = std::max({lo(a[0][0], a[2][2]), lo(a[2][1], a[1][0]), lo(a[0][1], a[1][2])});
  HalfInt xmax = std::min({a[0][0] + a[2][2], a[2][1] + a[1][0], a[0][1] + a[1][2]});
  SqrtRationalSum sum;
  for (HalfInt x = xmin; x <= xmax; x += HalfInt(1)) {
    const Entry* e1 = six_j_entry(a[0][0], a[1][0], a[2][0], a[2][1], a[2][2], x);
    if (!e1) continue;
    const Entry* e2 = six_j_entry(a[0][1], a[1][1], a[2][1], a[1][0], x, a[1][2]);
    if (!e2) continue;
    const Entry* e3 = six_j_entry(a[0][2], a[1][2], a[2][2], x, a[0][0], a[0][1]);
    if (!e3) continue;
    int s = (x.twice() % 2 == 0) ? 1 : -1;
    sum += e1->exact * e2->exact * e3->exact * Rational(s * (x.twice() + 1));
  }
  return sum;
}

bool nine_j_triangles(const std::array<std::array<HalfInt, 3>, 3>& a) {
  for (int i = 0; i < 3; ++i) {
    if (!triangle(a[i][0], a[i][1], a[i][2])) return false;
    if (!triangle(a[0][i], a[1][i], a[2][i])) return false;
  }
  return true;
}

const Entry* nine_j_entry(const std::array<std::array<HalfInt, 3>, 3>& a) {
  for (const auto& row : a)
    for (HalfInt x : row) check_j(x);
  if (!nine_j_triangles(a)) return nullptr;
  std::array<int, 9> key{};
  for (int i = 0; i < 9; ++i) key[i] = a[i / 3][i % 3].twice();
  return &ninej_memo().get(key, [&] { return nine_j_compute(a); });
}

}  // namespace

SqrtRationalSum three_jm(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m1, HalfInt m2, HalfInt m3) {
  int s = 1;
  const Entry* e = three_jm_entry(j1, j2, j3, m1, m2, m3, s);
  if (!e) return {};
  return s > 0 ? e->exact : -e->exact;
}

double three_jm_value(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m1, HalfInt m2, HalfInt m3) {
  int s = 1;
  const Entry* e = three_jm_entry(j1, j2, j3, m1, m2, m3, s);
  return e ? s * e->value : 0.0;
}

SqrtRationalSum six_j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4, HalfInt j5, HalfInt j6) {
  const Entry* e = six_j_entry(j1, j2, j3, j4, j5, j6);
  return e ? e->exact : SqrtRationalSum();
}

double six_j_value(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4, HalfInt j5, HalfInt j6) {
  const Entry* e = six_j_entry(j1, j2, j3, j4, j5, j6);
  return e ? e->value : 0.0;
}

SqrtRationalSum nine_j(const std::array<std::array<HalfInt, 3>, 3>& a) {
  const Entry* e = nine_j_entry(a);
  return e ? e->exact : SqrtRationalSum();
}

double nine_j_value(const std::array<std::array<HalfInt, 3>, 3>& a) {
  const Entry* e = nine_j_entry(a);
  return e ? e->value : 0.0;
}

}  // namespace racah
