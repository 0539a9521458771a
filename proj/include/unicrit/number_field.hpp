#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "unicrit/error.hpp"
#include "unicrit/poly.hpp"
#include "unicrit/real.hpp"
#include "unicrit/roots.hpp"

namespace unicrit {

namespace detail {
struct FieldData;
}

class FieldElement;

// K = Q[x]/(m(x)) for a monic irreducible integer polynomial m. Immutable
// after construction and cheap to copy (shared state).
class NumberField {
 public:
  // Verifies that m is monic with integer coefficients and irreducible.
  static NumberField create(std::vector<Integer> min_poly);
  static NumberField parse(const std::string& text);
  static NumberField rationals();

  int degree() const;
  const std::vector<Integer>& min_poly() const;
  const Integer& discriminant() const;
  std::string min_poly_string() const;

  // Isolating balls for the t complex roots of m: real roots in increasing
  // order first, then one representative per conjugate pair (positive
  // imaginary part) followed by its conjugate. Cached at a base precision;
  // requests beyond it are recomputed without touching shared state.
  std::vector<IsolatedRoot> embeddings(long bits = 96) const;
  int real_embedding_count() const;

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement gen() const;
  FieldElement from_rational(const Rational& q) const;
  FieldElement element(std::vector<Rational> coords) const;

  // Coordinates of theta^k for 0 <= k <= 2t-2.
  const std::vector<std::vector<Rational>>& power_table() const;

  bool same_as(const NumberField& other) const;
  friend bool operator==(const NumberField& a, const NumberField& b) { return a.same_as(b); }

 private:
  explicit NumberField(std::shared_ptr<const detail::FieldData> data) : d_(std::move(data)) {}
  std::shared_ptr<const detail::FieldData> d_;
  friend class FieldElement;
  friend std::vector<FieldElement> roots_of_unity(const NumberField& K, unsigned long d);
};

class FieldElement {
 public:
  FieldElement(NumberField field, std::vector<Rational> coords);

  const NumberField& field() const { return field_; }
  const std::vector<Rational>& coords() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  Rational rational_value() const;  // requires is_rational()

  FieldElement operator-() const;
  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

  FieldElement inverse() const;
  FieldElement pow(unsigned long e) const;

  // Characteristic polynomial of multiplication by this element (monic,
  // degree t) and the primitive integer minimal polynomial.
  QPoly charpoly() const;
  std::vector<Integer> minimal_polynomial() const;
  int algebraic_degree() const;
  Rational norm() const;

  // Enclosure of the image under embedding j at roughly `bits` bits.
  CBall embed(std::size_t j, long bits = 96) const;

  // Largest coordinate size in bits (numerator or denominator).
  std::size_t max_coord_bits() const;

  std::size_t hash() const;
  std::string to_string(const std::string& gen = "a") const;
  std::vector<std::string> coord_strings() const;

 private:
  NumberField field_;
  std::vector<Rational> c_;
};

struct FieldElementHash {
  std::size_t operator()(const FieldElement& x) const { return x.hash(); }
};

// Total order used for deterministic output: coordinates compared from the
// constant term up, each rational by absolute value, positive before
// negative.
bool canonical_less(const FieldElement& a, const FieldElement& b);
void sort_canonical(std::vector<FieldElement>& xs);

// Parses "a0/b0,a1/b1,..." in power-basis order; missing trailing
// coordinates are zero.
FieldElement parse_element(const NumberField& K, const std::string& text);

// Polynomial with coefficients in K; index i multiplies x^i.
using KPoly = std::vector<FieldElement>;

FieldElement eval_kpoly(const KPoly& p, const FieldElement& x);

// Finite set of rational primes; the archimedean places are always included.
struct PlaceSet {
  std::vector<Integer> primes;  // sorted, distinct, each prime

  static PlaceSet archimedean() { return {}; }
  static PlaceSet from_primes(std::vector<Integer> ps);
  Integer q() const { return primes.empty() ? Integer(0) : primes.back(); }
  bool contains(const Integer& p) const;
};

// Roots of unity of order dividing d (all of mu_K when d == 0), sorted by
// order and then canonically.
std::vector<FieldElement> roots_of_unity(const NumberField& K, unsigned long d);

// Multiplicative order of a root of unity, or 0 when x is not one.
unsigned long root_of_unity_order(const FieldElement& x);

bool is_s_integer(const FieldElement& a, const PlaceSet& S);

// All roots in K of a nonzero polynomial over K, sorted canonically.
std::vector<FieldElement> roots_in_K(const KPoly& p, const Budget& budget = {});

// Roots in K of x^n - a.
std::vector<FieldElement> nth_roots_in_K(const FieldElement& a, unsigned long n,
                                         const Budget& budget = {});

// Height bound B, either as log(Q) for rational Q >= 1 or as a rational
// value.
struct HeightBound {
  enum class Kind { LogOf, Value } kind = Kind::LogOf;
  Rational value = 1;

  static HeightBound log_of(const Rational& q) { return {Kind::LogOf, q}; }
  static HeightBound of_value(const Rational& b) { return {Kind::Value, b}; }
  // Smallest convenient rational Q with B <= log Q.
  Rational exp_upper() const;
};

// Every element whose minimal polynomial passes the Mahler-measure
// coefficient bounds for B. A superset of the elements of height <= B.
std::vector<FieldElement> bounded_height_candidates(const NumberField& K, const HeightBound& B,
                                                    const Budget& budget = {});

// Exactly the elements with h(alpha) <= B, sorted canonically.
std::vector<FieldElement> bounded_height_elements(const NumberField& K, const HeightBound& B,
                                                  const Budget& budget = {});

// Cyclotomic polynomial Phi_n with integer coefficients.
std::vector<Integer> cyclotomic(unsigned long n);
unsigned long euler_phi(unsigned long n);

bool is_prime(unsigned long n);
std::vector<unsigned long> prime_divisors(unsigned long n);

}  // namespace unicrit
