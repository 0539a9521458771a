#include "unicrit/real.hpp"

#include <algorithm>
#include <sstream>

#include "unicrit/error.hpp"

namespace unicrit {

Float::Float(mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

Float::Float(const Rational& q, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

Float::Float(const Float& other) {
  mpfr_init2(v_, other.prec());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Float::Float(Float&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

Float& Float::operator=(const Float& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.prec());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

Float& Float::operator=(Float&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

Float::~Float() { mpfr_clear(v_); }

Rational Float::to_rational() const {
  Rational q;
  if (!mpfr_number_p(v_)) fail(ErrorCode::Internal, "non-finite floating value");
  mpfr_get_q(q.get_mpq_t(), v_);
  return q;
}

long Float::exponent() const {
  if (mpfr_zero_p(v_)) return -(1L << 40);
  return mpfr_get_exp(v_);
}

Float operator+(const Float& a, const Float& b) {
  Float r(std::max(a.prec(), b.prec()));
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Float operator-(const Float& a, const Float& b) {
  Float r(std::max(a.prec(), b.prec()));
  mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Float operator*(const Float& a, const Float& b) {
  Float r(std::max(a.prec(), b.prec()));
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Float operator/(const Float& a, const Float& b) {
  Float r(std::max(a.prec(), b.prec()));
  mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Float Float::operator-() const {
  Float r(prec());
  mpfr_neg(r.get(), v_, MPFR_RNDN);
  return r;
}

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }

Complex operator*(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Complex operator/(const Complex& a, const Complex& b) {
  Float den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

Float Complex::abs() const {
  Float r(re.prec());
  mpfr_hypot(r.get(), re.get(), im.get(), MPFR_RNDN);
  return r;
}

namespace {

using MpfrUnary = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

Rational directed(const Rational& x, mpfr_prec_t prec, MpfrUnary fn, mpfr_rnd_t rnd) {
  // Rounding the input in the same direction keeps the bound valid for the
  // monotone increasing functions used here (log, exp, sqrt).
  mpfr_t in, out;
  mpfr_init2(in, prec + 32);
  mpfr_init2(out, prec);
  mpfr_set_q(in, x.get_mpq_t(), rnd);
  fn(out, in, rnd);
  Rational q;
  if (!mpfr_number_p(out)) {
    mpfr_clear(in);
    mpfr_clear(out);
    fail(ErrorCode::Internal, "non-finite result in directed rounding");
  }
  mpfr_get_q(q.get_mpq_t(), out);
  mpfr_clear(in);
  mpfr_clear(out);
  return q;
}

}  // namespace

Rational log_lower(const Rational& x, mpfr_prec_t prec) {
  if (x <= 0) fail(ErrorCode::Internal, "log of non-positive value");
  return directed(x, prec, mpfr_log, MPFR_RNDD);
}
Rational log_upper(const Rational& x, mpfr_prec_t prec) {
  if (x <= 0) fail(ErrorCode::Internal, "log of non-positive value");
  return directed(x, prec, mpfr_log, MPFR_RNDU);
}
Rational exp_lower(const Rational& x, mpfr_prec_t prec) { return directed(x, prec, mpfr_exp, MPFR_RNDD); }
Rational exp_upper(const Rational& x, mpfr_prec_t prec) { return directed(x, prec, mpfr_exp, MPFR_RNDU); }
Rational sqrt_lower(const Rational& x, mpfr_prec_t prec) {
  if (x <= 0) return 0;
  return directed(x, prec, mpfr_sqrt, MPFR_RNDD);
}
Rational sqrt_upper(const Rational& x, mpfr_prec_t prec) {
  if (x <= 0) return 0;
  return directed(x, prec, mpfr_sqrt, MPFR_RNDU);
}

double to_double_down(const Rational& x) {
  mpfr_t t;
  mpfr_init2(t, 53);
  mpfr_set_q(t, x.get_mpq_t(), MPFR_RNDD);
  double d = mpfr_get_d(t, MPFR_RNDD);
  mpfr_clear(t);
  return d;
}

double to_double_up(const Rational& x) {
  mpfr_t t;
  mpfr_init2(t, 53);
  mpfr_set_q(t, x.get_mpq_t(), MPFR_RNDU);
  double d = mpfr_get_d(t, MPFR_RNDU);
  mpfr_clear(t);
  return d;
}

Rational round_to_bits(const Rational& x, long bits) {
  if (x == 0) return 0;
  Float f(x, static_cast<mpfr_prec_t>(std::max(bits, 8L)));
  return f.to_rational();
}

Interval::Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
  if (lo > hi) fail(ErrorCode::Internal, "interval with lo > hi");
}

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }

Interval operator*(const Interval& a, const Interval& b) {
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Interval operator*(const Rational& s, const Interval& a) {
  if (s >= 0) return {s * a.lo, s * a.hi};
  return {s * a.hi, s * a.lo};
}

Interval Interval::widened(long bits) const {
  auto down = [bits](const Rational& x) {
    if (x == 0) return Rational(0);
    mpfr_t t;
    mpfr_init2(t, std::max(bits, 8L));
    mpfr_set_q(t, x.get_mpq_t(), MPFR_RNDD);
    Rational q;
    mpfr_get_q(q.get_mpq_t(), t);
    mpfr_clear(t);
    return q;
  };
  auto up = [bits](const Rational& x) {
    if (x == 0) return Rational(0);
    mpfr_t t;
    mpfr_init2(t, std::max(bits, 8L));
    mpfr_set_q(t, x.get_mpq_t(), MPFR_RNDU);
    Rational q;
    mpfr_get_q(q.get_mpq_t(), t);
    mpfr_clear(t);
    return q;
  };
  return {down(lo), up(hi)};
}

std::string Interval::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << "[" << to_double_down(lo) << ", " << to_double_up(hi) << "]";
  return os.str();
}

Interval interval_log(const Interval& x, mpfr_prec_t prec) {
  if (x.lo <= 0) fail(ErrorCode::Internal, "interval_log of non-positive interval");
  if (x.lo == 1 && x.hi == 1) return Interval::point(0);
  return {log_lower(x.lo, prec), log_upper(x.hi, prec)};
}

Interval interval_max(const Interval& a, const Interval& b) {
  return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Interval interval_hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Interval interval_intersect(const Interval& a, const Interval& b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

Order compare(const Interval& a, const Interval& b) {
  if (a.hi < b.lo) return Order::Less;
  if (a.lo > b.hi) return Order::Greater;
  return Order::Overlap;
}

namespace {

// |x| + |y| bounds sqrt(x^2 + y^2) from above without rounding.
Rational l1(const Rational& x, const Rational& y) { return abs(x) + abs(y); }

}  // namespace

CBall operator+(const CBall& a, const CBall& b) { return {a.re + b.re, a.im + b.im, a.rad + b.rad}; }
CBall operator-(const CBall& a, const CBall& b) { return {a.re - b.re, a.im - b.im, a.rad + b.rad}; }

CBall operator*(const CBall& a, const CBall& b) {
  Rational re = a.re * b.re - a.im * b.im;
  Rational im = a.re * b.im + a.im * b.re;
  Rational rad = l1(a.re, a.im) * b.rad + l1(b.re, b.im) * a.rad + a.rad * b.rad;
  return {re, im, rad};
}

CBall CBall::inverse(mpfr_prec_t prec) const {
  Rational n2 = re * re + im * im;
  Rational lo = sqrt_lower(n2, prec);
  if (lo <= rad) fail(ErrorCode::Internal, "ball inverse: zero not excluded");
  // |1/z - 1/c| <= r / (|c| (|c| - r)) for |z - c| <= r < |c|.
  Rational radius = rad / (lo * (lo - rad));
  return {re / n2, -im / n2, radius};
}

CBall CBall::trimmed(long bits) const {
  auto rnd = [bits](const Rational& x) {
    if (x == 0) return Rational(0);
    return round_to_bits(x, bits);
  };
  Rational r2 = rnd(re), i2 = rnd(im);
  Rational extra = abs(r2 - re) + abs(i2 - im);
  Rational radius = rad + extra;
  if (radius != 0) {
    mpfr_t t;
    mpfr_init2(t, 32);
    mpfr_set_q(t, radius.get_mpq_t(), MPFR_RNDU);
    mpfr_get_q(radius.get_mpq_t(), t);
    mpfr_clear(t);
  }
  return {r2, i2, radius};
}

Rational CBall::abs_upper(mpfr_prec_t prec) const {
  return sqrt_upper(re * re + im * im, prec) + rad;
}

Rational CBall::abs_lower(mpfr_prec_t prec) const {
  Rational c = sqrt_lower(re * re + im * im, prec) - rad;
  return c > 0 ? c : Rational(0);
}

bool CBall::contains_zero() const {
  return re * re + im * im <= rad * rad;
}

}  // namespace unicrit
