#pragma once

#include <array>

#include "racah/exactnum.hpp"
#include "racah/halfint.hpp"

namespace racah {

struct Triad {
  HalfInt j1, j2, j3;
  bool valid() const { return triangle(j1, j2, j3); }
};

// Largest angular momentum accepted by the symbol functions.
inline constexpr int max_twice_j = 80;

// Clebsch-Gordan coefficient <j1 m1 j2 m2 | j m>, Condon-Shortley phases.
SqrtRationalSum cg(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt j, HalfInt m);

// Herring-Wigner metric (-1)^{j+m} delta(mp, -m).
int one_jm(HalfInt j, HalfInt m, HalfInt mp);

SqrtRationalSum three_jm(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m1, HalfInt m2, HalfInt m3);
SqrtRationalSum six_j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4, HalfInt j5, HalfInt j6);
SqrtRationalSum nine_j(const std::array<std::array<HalfInt, 3>, 3>& a);

// Floating-point views of the same memoized values.
double cg_value(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt j, HalfInt m);
double three_jm_value(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m1, HalfInt m2, HalfInt m3);
double six_j_value(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4, HalfInt j5, HalfInt j6);
double nine_j_value(const std::array<std::array<HalfInt, 3>, 3>& a);

namespace detail {
// Uncached evaluations straight from the closed formulas; used by tests to
// check symmetries without going through the symmetry-keyed cache.
SqrtRationalSum cg_direct(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt j, HalfInt m);
SqrtRationalSum three_jm_direct(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m1, HalfInt m2, HalfInt m3);
SqrtRationalSum six_j_direct(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4, HalfInt j5, HalfInt j6);
const Integer& factorial(int n);
}  // namespace detail

}  // namespace racah
