#pragma once

#include <string>
#include <vector>

#include "unicrit/map.hpp"
#include "unicrit/number_field.hpp"
#include "unicrit/real.hpp"

namespace unicrit {

// Rigorous enclosure of a logarithmic height; `exact_zero` marks a proven 0.
struct HeightValue {
  Interval value;
  bool exact_zero = false;
};

// Mahler measure of a primitive integer polynomial as an enclosure, with
// the unit-circle roots resolved exactly.
Interval mahler_measure(const std::vector<Integer>& poly, long bits = 64);

HeightValue weil_height(const FieldElement& a, long bits = 64);

// Sign of h(a) - B, decided exactly.
int compare_height(const FieldElement& a, const HeightBound& B);
bool height_at_most(const FieldElement& a, const HeightBound& B);

Interval house(const FieldElement& a, long bits = 64);
Interval s_house(const FieldElement& a, const PlaceSet& S, long bits = 64);

// Lower bound r1 + r2 + |primes| on the number of places in S.
int place_count_lower(const NumberField& K, const PlaceSet& S);

// Checks (1/t) log H_S(a) <= h(a) <= |S| log H_S(a) for a nonzero S-integer.
// An inequality fails only when the enclosures prove a strict violation.
bool check_house_height_inequality(const FieldElement& a, const PlaceSet& S);

// max_v |a|_v > 1 + 2^-(t+4); requires a nonzero and not a root of unity.
bool sz_check(const FieldElement& a);

Interval rho_d(unsigned long d, long bits = 64);
Interval rho_d_pow_d(unsigned long d, long bits = 64);  // equals 2 rho_d + 1
Interval voutier_bound(int t, long bits = 64);
Rational sz_value(int t);      // 1 + 2^-(t+4)
Rational kappa1_value(int t);  // 1 + 2^-(t+5)
Interval kappa2(int t, long bits = 64);
unsigned long prime_pi(unsigned long q);
unsigned long s_size_bound(int t, unsigned long q);

struct BoundsReport {
  int t = 1;
  unsigned long q = 0;
  unsigned long d = 2;
  Interval rho_d;
  Interval rho_d_pow_d;
  Interval V_t;
  Rational sz;
  Interval kappa2;
  unsigned long s_size_bound = 0;
};

BoundsReport bounds_report(int t, unsigned long q, unsigned long d);

// Upper enclosure of h(c)/d + log rho_d.
HeightValue preper_height_bound(const UnicriticalMap& f);

struct CanonicalHeightEstimate {
  Interval estimate;           // h(f^n(a)) / d^n
  Interval band;               // encloses the canonical height
  std::vector<Interval> bands;  // one per step 0..n, nested
  bool exact_zero = false;     // cycle detected
  unsigned long steps = 0;
};

CanonicalHeightEstimate canonical_height_estimate(const UnicriticalMap& f, const FieldElement& a,
                                                  unsigned long n, const Budget& budget = {});

struct OrbitZeroRow {
  unsigned long n = 0;
  std::string lower_bound;   // "pass", "fail" or "undecided"
  std::string height_bound;  // "pass", "fail" or "undecided"
  Interval log_abs_iterate;
  Interval log_lower_side;
  Interval height_iterate;
  Interval height_upper_side;
};

struct OrbitZeroReport {
  std::size_t embedding = 0;      // archimedean place used
  bool place_is_global_max = true;  // no finite place has larger |c|_v
  std::vector<OrbitZeroRow> rows;
};

OrbitZeroReport orbitzero_inequality_check(const UnicriticalMap& f, unsigned long n_max,
                                           const Budget& budget = {});

}  // namespace unicrit
