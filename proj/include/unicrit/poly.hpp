#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace unicrit {

using Integer = mpz_class;
using Rational = mpq_class;

// Dense univariate polynomial over Q; coefficient i multiplies x^i.
// Trailing zero coefficients are never stored, so the zero polynomial is
// the empty vector and has degree -1.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rational> coeffs);
  static QPoly constant(const Rational& c);
  static QPoly monomial(const Rational& c, int degree);
  static QPoly from_integers(std::span<const Integer> coeffs);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Rational& lead() const { return c_.back(); }
  Rational coeff(int i) const;
  const std::vector<Rational>& coeffs() const { return c_; }

  Rational eval(const Rational& x) const;
  QPoly derivative() const;
  QPoly monic() const;

  // Primitive integer multiple with positive leading coefficient.
  std::vector<Integer> primitive_integer() const;

  QPoly operator-() const;
  friend QPoly operator+(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const Rational& s, const QPoly& a);
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

  // Euclidean division: a = q*b + r with deg r < deg b.
  static std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);

  std::string to_string(char var = 'x') const;

 private:
  void trim();
  std::vector<Rational> c_;
};

QPoly poly_gcd(QPoly a, QPoly b);  // monic, or zero when both are zero

// Returns (g, s) with g = gcd(a, m) monic and s*a = g (mod m).
std::pair<QPoly, QPoly> poly_xgcd_inverse(const QPoly& a, const QPoly& m);

QPoly squarefree_part(const QPoly& p);  // monic

// Interpolating polynomial through (x_i, y_i); the x_i must be distinct.
QPoly interpolate(std::span<const Rational> xs, std::span<const Rational> ys);

// Evaluates an integer polynomial exactly at a rational point.
Rational eval_integer_poly(std::span<const Integer> coeffs, const Rational& x);

// Parses an integer polynomial in x such as "x^3 - 2*x + 1" or "x".
std::vector<Integer> parse_integer_poly(const std::string& text);

std::string integer_poly_to_string(std::span<const Integer> coeffs,
                                   char var = 'x');

// Discriminant of an integer polynomial of degree >= 1.
Integer integer_poly_discriminant(std::span<const Integer> coeffs);

}  // namespace unicrit
