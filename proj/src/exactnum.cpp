#include "racah/exactnum.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "racah/error.hpp"

namespace racah {

HalfInt HalfInt::parse(std::string_view text) {
  std::string s(text);
  auto fail = [&] { throw InvalidInput("not an integer or half-integer: '" + s + "'"); };
  if (s.empty()) fail();
  try {
    std::size_t pos = 0;
    if (auto slash = s.find('/'); slash != std::string::npos) {
      int num = std::stoi(s.substr(0, slash), &pos);
      if (pos != slash) fail();
      std::string den_text = s.substr(slash + 1);
      int den = std::stoi(den_text, &pos);
      if (pos != den_text.size()) fail();
      if (den == 1) return HalfInt(num);
      if (den != 2 || num % 2 == 0) fail();
      return from_twice(num);
    }
    double v = std::stod(s, &pos);
    if (pos != s.size()) fail();
    double t = 2 * v;
    if (std::abs(t - std::round(t)) > 1e-12 || std::abs(t) > 1e8) fail();
    return from_twice(static_cast<int>(std::lround(t)));
  } catch (const std::logic_error&) {
    fail();
  }
  return {};
}

std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

int phase(HalfInt x) {
  if (!x.is_integer()) throw InvalidInput("phase exponent is not an integer: " + x.str());
  return (x.as_int() % 2 == 0) ? 1 : -1;
}

Rational rational(HalfInt h) {
  Rational r(h.twice(), 2);
  r.canonicalize();
  return r;
}

namespace {

const std::vector<unsigned long>& small_primes() {
  static const std::vector<unsigned long> primes = [] {
    constexpr unsigned long limit = 1000000;
    std::vector<bool> composite(limit + 1, false);
    std::vector<unsigned long> out;
    for (unsigned long p = 2; p <= limit; ++p) {
      if (composite[p]) continue;
      out.push_back(p);
      for (unsigned long q = p * p; q <= limit; q += p) composite[q] = true;
    }
    return out;
  }();
  return primes;
}

}  // namespace

Integer square_free_part(const Integer& n_in) {
  if (n_in <= 0) throw InvalidInput("square_free_part needs a positive integer");
  Integer n = n_in;
  Integer result = 1;
  for (unsigned long p : small_primes()) {
    if (n == 1) break;
    if (Integer(p) * p > n) break;
    int e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++e;
    }
    if (e % 2 == 1) result *= p;
  }
  if (n == 1) return result;
  // The cofactor has no prime factor below 10^6.
  if (mpz_perfect_square_p(n.get_mpz_t())) return result;
  static const Integer bound2 = Integer("1000000000000000000");  // (10^6)^3
  if (n < bound2 || mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    // prime, or a product of two distinct primes above 10^6
    return result * n;
  }
  throw Unsupported("radicand cofactor beyond the factorization bound: " + n.get_str());
}

SquareFreeSplit canonicalize(const Integer& num, const Integer& den) {
  if (den == 0) throw InvalidInput("canonicalize: zero denominator");
  Rational x(num, den);
  x.canonicalize();
  return canonicalize(x);
}

SquareFreeSplit canonicalize(const Rational& x_in) {
  if (x_in == 0) return {Rational(1), Rational(0)};
  int sign = sgn(x_in);
  Rational x = abs(x_in);
  Integer p = x.get_num(), q = x.get_den();
  Integer sp = square_free_part(p), sq = square_free_part(q);
  Integer cp, cq;
  mpz_divexact(cp.get_mpz_t(), p.get_mpz_t(), sp.get_mpz_t());
  mpz_divexact(cq.get_mpz_t(), q.get_mpz_t(), sq.get_mpz_t());
  mpz_sqrt(cp.get_mpz_t(), cp.get_mpz_t());
  mpz_sqrt(cq.get_mpz_t(), cq.get_mpz_t());
  Rational radicand(sp, sq);
  radicand.canonicalize();
  Rational factor(cp * sign, cq);
  factor.canonicalize();
  return {radicand, factor};
}

SqrtRationalSum::SqrtRationalSum(const Rational& r) {
  if (r != 0) terms_.emplace(Integer(1), r);
}

void SqrtRationalSum::add_term(const Integer& radicand, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(radicand, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

SqrtRationalSum SqrtRationalSum::term(const Rational& coeff, const Rational& radicand) {
  if (radicand < 0) throw InvalidInput("negative radicand");
  SqrtRationalSum out;
  if (coeff == 0 || radicand == 0) return out;
  // sqrt(a/b) = sqrt(ab)/b
  Rational r = radicand;
  r.canonicalize();
  Integer ab = r.get_num() * r.get_den();
  Integer s = square_free_part(ab);
  Integer c2;
  mpz_divexact(c2.get_mpz_t(), ab.get_mpz_t(), s.get_mpz_t());
  Integer c;
  mpz_sqrt(c.get_mpz_t(), c2.get_mpz_t());
  Rational factor(c, r.get_den());
  factor.canonicalize();
  out.add_term(s, coeff * factor);
  return out;
}

SqrtRationalSum SqrtRationalSum::sqrt(const Rational& x) {
  if (x < 0) throw InvalidInput("sqrt of a negative rational");
  return term(Rational(1), x);
}

SqrtRationalSum SqrtRationalSum::signed_sqrt(const Rational& x) {
  if (x < 0) return -term(Rational(1), -x);
  return term(Rational(1), x);
}

bool SqrtRationalSum::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
}

Rational SqrtRationalSum::rational_value() const {
  if (!is_rational()) throw InvalidInput("value is not rational: " + str());
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

std::vector<SqrtRationalSum::Term> SqrtRationalSum::terms() const {
  std::vector<Term> out;
  for (const auto& [r, c] : terms_) out.push_back({c, Rational(r)});
  return out;
}

double SqrtRationalSum::to_double() const {
  double sum = 0;
  for (const auto& [r, c] : terms_) {
    double root = (r == 1) ? 1.0 : std::sqrt(r.get_d());
    sum += c.get_d() * root;
  }
  return sum;
}

int SqrtRationalSum::sign() const {
  if (terms_.empty()) return 0;
  if (terms_.size() == 1) return sgn(terms_.begin()->second);
  // Exact sign of a sum of square roots by repeated squaring: split into
  // positive and negative parts P and N and compare P^2 with N^2.
  SqrtRationalSum pos, neg;
  for (const auto& [r, c] : terms_) {
    if (c > 0) pos.add_term(r, c);
    else neg.add_term(r, -c);
  }
  if (neg.is_zero()) return 1;
  if (pos.is_zero()) return -1;
  // P - N has the sign of P^2 - N^2 since P, N > 0.
  SqrtRationalSum diff = pos * pos - neg * neg;
  if (diff.size() >= terms_.size() && diff.size() > 1) {
    // Squaring did not shrink the problem; fall back to a long-double check
    // that is exact enough for the magnitudes produced by this library.
    long double v = 0;
    for (const auto& [r, c] : terms_) v += static_cast<long double>(c.get_d()) * std::sqrt(static_cast<long double>(r.get_d()));
    if (v == 0) throw InternalError("sign of a nonzero sum could not be resolved");
    return v > 0 ? 1 : -1;
  }
  return diff.sign();
}

SqrtRationalSum SqrtRationalSum::operator-() const {
  SqrtRationalSum out = *this;
  for (auto& [r, c] : out.terms_) c = -c;
  return out;
}

SqrtRationalSum& SqrtRationalSum::operator+=(const SqrtRationalSum& o) {
  for (const auto& [r, c] : o.terms_) add_term(r, c);
  return *this;
}

SqrtRationalSum& SqrtRationalSum::operator-=(const SqrtRationalSum& o) {
  for (const auto& [r, c] : o.terms_) add_term(r, -c);
  return *this;
}

SqrtRationalSum& SqrtRationalSum::operator*=(const Rational& k) {
  if (k == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [r, c] : terms_) c *= k;
  return *this;
}

SqrtRationalSum& SqrtRationalSum::operator*=(const SqrtRationalSum& o) {
  SqrtRationalSum out;
  for (const auto& [r1, c1] : terms_) {
    for (const auto& [r2, c2] : o.terms_) {
      // sqrt(r1 r2) = g sqrt((r1/g)(r2/g)), the latter square-free
      Integer g = gcd(r1, r2);
      Integer a, b;
      mpz_divexact(a.get_mpz_t(), r1.get_mpz_t(), g.get_mpz_t());
      mpz_divexact(b.get_mpz_t(), r2.get_mpz_t(), g.get_mpz_t());
      out.add_term(a * b, c1 * c2 * Rational(g));
    }
  }
  *this = std::move(out);
  return *this;
}

SqrtRationalSum SqrtRationalSum::inverse() const {
  if (terms_.empty()) throw InvalidInput("inverse of zero");
  if (terms_.size() != 1) throw Unsupported("inverse of a multi-term radical sum");
  const auto& [r, c] = *terms_.begin();
  // 1/(c sqrt r) = sqrt(r) / (c r)
  SqrtRationalSum out;
  out.add_term(r, Rational(1) / (c * Rational(r)));
  return out;
}

std::string SqrtRationalSum::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [r, c] : terms_) {
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    first = false;
    Rational a = abs(c);
    if (r == 1) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << "*";
      os << "sqrt(" << r.get_str() << ")";
    }
  }
  return os.str();
}

double to_float(const SqrtRationalSum& x) { return x.to_double(); }

ExactComplex& ExactComplex::operator*=(const ExactComplex& o) {
  if (o.im.is_zero()) {
    re *= o.re;
    im *= o.re;
    return *this;
  }
  if (im.is_zero()) {
    SqrtRationalSum r = re;
    re = r * o.re;
    im = r * o.im;
    return *this;
  }
  SqrtRationalSum nr = re * o.re - im * o.im;
  SqrtRationalSum ni = re * o.im + im * o.re;
  re = std::move(nr);
  im = std::move(ni);
  return *this;
}

std::string ExactComplex::str() const {
  if (im.is_zero()) return re.str();
  if (re.is_zero()) return "i*(" + im.str() + ")";
  return "(" + re.str() + ") + i*(" + im.str() + ")";
}

namespace {

// Continued-fraction best approximation with bounded denominator.
bool best_rational(double x, long max_den, double tol, Rational& out) {
  if (!std::isfinite(x) || x < 0) return false;
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double v = x;
  for (int iter = 0; iter < 64; ++iter) {
    double a_d = std::floor(v);
    if (a_d > 1e15) break;
    long a = static_cast<long>(a_d);
    long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    if (std::abs(x - static_cast<double>(p1) / q1) <= tol) {
      out = Rational(p1, q1);
      out.canonicalize();
      return true;
    }
    double frac = v - a_d;
    if (frac < 1e-18) break;
    v = 1.0 / frac;
  }
  if (q1 != 0 && std::abs(x - static_cast<double>(p1) / q1) <= tol) {
    out = Rational(p1, q1);
    out.canonicalize();
    return true;
  }
  return false;
}

}  // namespace

bool snap_signed_sqrt(double x, SqrtRationalSum& out, long max_den, double tol) {
  if (std::abs(x) < 1e-13) {
    out = SqrtRationalSum();
    return true;
  }
  Rational sq;
  if (!best_rational(x * x, max_den, tol, sq)) return false;
  SqrtRationalSum cand = SqrtRationalSum::sqrt(sq);
  if (x < 0) cand = -cand;
  if (std::abs(cand.to_double() - x) > 1e-10) return false;
  out = std::move(cand);
  return true;
}

namespace {

nlohmann::json int_json(const Integer& z) {
  if (z.fits_slong_p()) return nlohmann::json(z.get_si());
  return nlohmann::json(z.get_str());
}

Integer int_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) return Integer(j.get<std::string>());
  throw InvalidInput("expected an integer in exact-number JSON");
}

}  // namespace

nlohmann::json to_json(const SqrtRationalSum& x) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : x.terms()) {
    arr.push_back({{"coeff_num", int_json(t.coeff.get_num())},
                   {"coeff_den", int_json(t.coeff.get_den())},
                   {"rad_num", int_json(t.radicand.get_num())},
                   {"rad_den", int_json(t.radicand.get_den())}});
  }
  return arr;
}

SqrtRationalSum sqrt_sum_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw InvalidInput("exact number must be a JSON array");
  SqrtRationalSum out;
  for (const auto& t : j) {
    Integer cn = int_from_json(t.at("coeff_num")), cd = int_from_json(t.at("coeff_den"));
    Integer rn = int_from_json(t.at("rad_num")), rd = int_from_json(t.at("rad_den"));
    if (cd == 0 || rd == 0) throw InvalidInput("zero denominator in exact-number JSON");
    Rational c(cn, cd), r(rn, rd);
    c.canonicalize();
    r.canonicalize();
    out += SqrtRationalSum::term(c, r);
  }
  return out;
}

nlohmann::json to_json(const ExactComplex& z) { return {{"re", to_json(z.re)}, {"im", to_json(z.im)}}; }

ExactComplex exact_complex_from_json(const nlohmann::json& j) {
  return {sqrt_sum_from_json(j.at("re")), sqrt_sum_from_json(j.at("im"))};
}

}  // namespace racah
