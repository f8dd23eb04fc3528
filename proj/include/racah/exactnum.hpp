#pragma once

#include <gmpxx.h>

#include <complex>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "racah/halfint.hpp"

namespace racah {

using Integer = mpz_class;
using Rational = mpq_class;

Rational rational(HalfInt h);

// x = sign(x) * factor^2 * radicand with radicand > 0 having square-free,
// coprime numerator and denominator.  The sign of x travels in factor.
struct SquareFreeSplit {
  Rational radicand;
  Rational factor;
};

SquareFreeSplit canonicalize(const Integer& num, const Integer& den);
SquareFreeSplit canonicalize(const Rational& x);

// Square-free part of a positive integer (trial division with primes
// below 10^6 plus a bounded treatment of the remaining cofactor).
Integer square_free_part(const Integer& n);

// Finite sum  sum_i c_i sqrt(r_i)  with rational c_i and distinct square-free
// integer radicands r_i.  Square roots of distinct square-free integers are
// linearly independent over Q, so the representation is unique and equality
// is exact.  Rational radicands a/b are folded into the integer ab.
class SqrtRationalSum {
 public:
  struct Term {
    Rational coeff;
    Rational radicand;
  };

  SqrtRationalSum() = default;
  SqrtRationalSum(long v) : SqrtRationalSum(Rational(v)) {}  // NOLINT
  SqrtRationalSum(int v) : SqrtRationalSum(Rational(v)) {}   // NOLINT
  SqrtRationalSum(const Rational& r);                        // NOLINT

  // Signed root: sign(x) * sqrt(|x|).
  static SqrtRationalSum signed_sqrt(const Rational& x);
  static SqrtRationalSum sqrt(const Rational& x);  // x >= 0
  static SqrtRationalSum term(const Rational& coeff, const Rational& radicand);

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  bool is_single_term() const { return terms_.size() <= 1; }
  Rational rational_value() const;  // requires is_rational()
  std::size_t size() const { return terms_.size(); }
  std::vector<Term> terms() const;

  double to_double() const;
  int sign() const;  // exact sign

  SqrtRationalSum operator-() const;
  SqrtRationalSum& operator+=(const SqrtRationalSum& o);
  SqrtRationalSum& operator-=(const SqrtRationalSum& o);
  SqrtRationalSum& operator*=(const SqrtRationalSum& o);
  SqrtRationalSum& operator*=(const Rational& r);
  friend SqrtRationalSum operator+(SqrtRationalSum a, const SqrtRationalSum& b) { return a += b; }
  friend SqrtRationalSum operator-(SqrtRationalSum a, const SqrtRationalSum& b) { return a -= b; }
  friend SqrtRationalSum operator*(SqrtRationalSum a, const SqrtRationalSum& b) { return a *= b; }
  friend SqrtRationalSum operator*(SqrtRationalSum a, const Rational& r) { return a *= r; }
  friend bool operator==(const SqrtRationalSum& a, const SqrtRationalSum& b) {
    return a.terms_ == b.terms_;
  }

  // Inverse of a nonzero single-term value.
  SqrtRationalSum inverse() const;
  // Division by a nonzero single-term value.
  SqrtRationalSum operator/(const SqrtRationalSum& o) const { return *this * o.inverse(); }

  std::string str() const;

 private:
  std::map<Integer, Rational> terms_;  // radicand -> nonzero coefficient
  void add_term(const Integer& radicand, const Rational& coeff);
};

double to_float(const SqrtRationalSum& x);

struct ExactComplex {
  SqrtRationalSum re, im;

  ExactComplex() = default;
  ExactComplex(SqrtRationalSum r) : re(std::move(r)) {}  // NOLINT
  ExactComplex(SqrtRationalSum r, SqrtRationalSum i) : re(std::move(r)), im(std::move(i)) {}

  static ExactComplex i_unit() { return {0, 1}; }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }
  ExactComplex conj() const { return {re, -im}; }
  SqrtRationalSum norm() const { return re * re + im * im; }  // |z|^2
  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }

  ExactComplex operator-() const { return {-re, -im}; }
  ExactComplex& operator+=(const ExactComplex& o) { re += o.re; im += o.im; return *this; }
  ExactComplex& operator-=(const ExactComplex& o) { re -= o.re; im -= o.im; return *this; }
  ExactComplex& operator*=(const ExactComplex& o);
  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
  std::string str() const;
};

inline ExactComplex conj(const ExactComplex& z) { return z.conj(); }

// Best approximation sign(x) sqrt(p/q) with q <= max_den and
// |x^2 - p/q| <= tol, if one exists.
bool snap_signed_sqrt(double x, SqrtRationalSum& out, long max_den = 10000, double tol = 1e-9);

nlohmann::json to_json(const SqrtRationalSum& x);
SqrtRationalSum sqrt_sum_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExactComplex& z);
ExactComplex exact_complex_from_json(const nlohmann::json& j);

}  // namespace racah
