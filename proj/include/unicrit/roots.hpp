#pragma once

#include <span>
#include <vector>

#include "unicrit/poly.hpp"
#include "unicrit/real.hpp"

namespace unicrit {

struct IsolatedRoot {
  CBall ball;    // contains exactly one root; balls are pairwise disjoint
  bool real = false;  // certified real (centre then lies on the real axis)
};

// Isolates all complex roots of a squarefree integer polynomial.
//
// Approximations come from Aberth iteration in MPFR; each approximation z is
// then certified with the inclusion radius n|p(z)/p'(z)| evaluated in exact
// Gaussian-rational arithmetic. n pairwise disjoint discs, each containing
// at least one root, contain exactly one root each. Precision doubles until
// every radius is below 2^-target_bits * max(1, |z|) and every disc is either
// certified real or disjoint from the real axis.
std::vector<IsolatedRoot> isolate_roots(std::span<const Integer> coeffs,
                                        long target_bits = 64);

// Upper bound on the modulus of every root (Fujiwara), as an exact rational.
Rational root_modulus_bound(std::span<const Integer> coeffs);

}  // namespace unicrit
