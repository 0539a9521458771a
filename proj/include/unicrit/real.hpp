#pragma once

#include <mpfr.h>

#include <string>

#include "unicrit/poly.hpp"

namespace unicrit {

// Owning wrapper over mpfr_t. Arithmetic rounds to nearest at the precision
// of the left operand; directed-rounding conversions are explicit.
class Float {
 public:
  explicit Float(mpfr_prec_t prec = 64);
  Float(const Rational& q, mpfr_prec_t prec);
  Float(const Float& other);
  Float(Float&& other) noexcept;
  Float& operator=(const Float& other);
  Float& operator=(Float&& other) noexcept;
  ~Float();

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  Rational to_rational() const;  // exact
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  long exponent() const;  // binary exponent, very negative for zero

  friend Float operator+(const Float& a, const Float& b);
  friend Float operator-(const Float& a, const Float& b);
  friend Float operator*(const Float& a, const Float& b);
  friend Float operator/(const Float& a, const Float& b);
  Float operator-() const;

 private:
  mpfr_t v_;
};

struct Complex {
  Float re;
  Float im;

  explicit Complex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
  Complex(Float r, Float i) : re(std::move(r)), im(std::move(i)) {}

  friend Complex operator+(const Complex& a, const Complex& b);
  friend Complex operator-(const Complex& a, const Complex& b);
  friend Complex operator*(const Complex& a, const Complex& b);
  friend Complex operator/(const Complex& a, const Complex& b);
  Float abs() const;
};

// Directed-rounding helpers returning exact rational bounds.
Rational log_lower(const Rational& x, mpfr_prec_t prec);
Rational log_upper(const Rational& x, mpfr_prec_t prec);
Rational exp_lower(const Rational& x, mpfr_prec_t prec);
Rational exp_upper(const Rational& x, mpfr_prec_t prec);
Rational sqrt_lower(const Rational& x, mpfr_prec_t prec);
Rational sqrt_upper(const Rational& x, mpfr_prec_t prec);
double to_double_down(const Rational& x);
double to_double_up(const Rational& x);

// Rounds x to a dyadic rational with about `bits` significant bits.
Rational round_to_bits(const Rational& x, long bits);

// Closed real interval with exact rational endpoints.
struct Interval {
  Rational lo;
  Rational hi;

  Interval() = default;
  Interval(Rational l, Rational h);
  static Interval point(const Rational& x) { return {x, x}; }

  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / 2; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool is_point() const { return lo == hi; }

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator*(const Rational& s, const Interval& a);
  Interval operator-() const { return {-hi, -lo}; }

  // Hull-preserving rounding of endpoints outward to `bits` significant bits.
  Interval widened(long bits) const;
  std::string to_string() const;
};

Interval interval_log(const Interval& x, mpfr_prec_t prec);  // requires x.lo > 0
Interval interval_max(const Interval& a, const Interval& b);
Interval interval_hull(const Interval& a, const Interval& b);
Interval interval_intersect(const Interval& a, const Interval& b);  // must overlap

// Three-way comparison of enclosures; nullopt-like `Overlap` when undecided.
enum class Order { Less, Greater, Overlap };
Order compare(const Interval& a, const Interval& b);

// Complex ball: exact Gaussian-rational centre and rational radius.
struct CBall {
  Rational re;
  Rational im;
  Rational rad;

  CBall() = default;
  CBall(Rational r, Rational i, Rational radius)
      : re(std::move(r)), im(std::move(i)), rad(std::move(radius)) {}
  static CBall point(const Rational& r) { return CBall(r, 0, 0); }

  friend CBall operator+(const CBall& a, const CBall& b);
  friend CBall operator-(const CBall& a, const CBall& b);
  friend CBall operator*(const CBall& a, const CBall& b);
  CBall inverse(mpfr_prec_t prec) const;  // requires 0 outside the ball
  CBall conj() const { return {re, -im, rad}; }

  // Rounds the centre to `bits` fractional-plus-integer bits, absorbing the
  // rounding error into the radius.
  CBall trimmed(long bits) const;

  Rational abs_upper(mpfr_prec_t prec) const;
  Rational abs_lower(mpfr_prec_t prec) const;  // may be zero
  bool contains_zero() const;
  Interval real_part() const { return {re - rad, re + rad}; }
};

}  // namespace unicrit
