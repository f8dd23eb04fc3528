#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace racah {

// Integer or half-odd-integer, stored as twice its value.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr HalfInt(int v) : twice_(2 * v) {}  // NOLINT: implicit from int is intended

  static constexpr HalfInt from_twice(int t) {
    HalfInt h;
    h.twice_ = t;
    return h;
  }
  // Accepts "3", "-3/2", "1.5".
  static HalfInt parse(std::string_view text);

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr double value() const { return twice_ / 2.0; }
  // Only valid when is_integer().
  constexpr int as_int() const { return twice_ / 2; }
  constexpr int dim() const { return twice_ + 1; }  // 2j+1

  std::string str() const;

  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  constexpr HalfInt operator+(HalfInt o) const { return from_twice(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return from_twice(twice_ - o.twice_); }
  constexpr HalfInt& operator+=(HalfInt o) { twice_ += o.twice_; return *this; }
  constexpr HalfInt& operator-=(HalfInt o) { twice_ -= o.twice_; return *this; }
  constexpr auto operator<=>(const HalfInt&) const = default;

 private:
  int twice_ = 0;
};

constexpr HalfInt abs(HalfInt h) { return h.twice() < 0 ? -h : h; }

// (-1)^x for integer x; throws InvalidInput when x is half-odd.
int phase(HalfInt x);

// |a-b| <= c <= a+b and a+b+c integer.
constexpr bool triangle(HalfInt a, HalfInt b, HalfInt c) {
  int s = a.twice() + b.twice() + c.twice();
  if (s % 2 != 0) return false;
  int d = a.twice() - b.twice();
  if (d < 0) d = -d;
  return a.twice() >= 0 && b.twice() >= 0 && c.twice() >= d && c.twice() <= a.twice() + b.twice();
}

// j >= 0, |m| <= j, j - m integer.
constexpr bool valid_projection(HalfInt j, HalfInt m) {
  return j.twice() >= 0 && m.twice() <= j.twice() && -m.twice() <= j.twice() &&
         (j.twice() - m.twice()) % 2 == 0;
}

}  // namespace racah
