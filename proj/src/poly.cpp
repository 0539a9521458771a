#include "unicrit/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "unicrit/error.hpp"

namespace unicrit {

QPoly::QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  for (auto& x : c_) x.canonicalize();
  trim();
}

QPoly QPoly::constant(const Rational& c) { return QPoly({c}); }

QPoly QPoly::monomial(const Rational& c, int degree) {
  std::vector<Rational> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return QPoly(std::move(v));
}

QPoly QPoly::from_integers(std::span<const Integer> coeffs) {
  std::vector<Rational> v;
  v.reserve(coeffs.size());
  for (const auto& z : coeffs) v.emplace_back(z);
  return QPoly(std::move(v));
}

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational QPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return c_[static_cast<std::size_t>(i)];
}

Rational QPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

QPoly QPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<long>(i);
  return QPoly(std::move(v));
}

QPoly QPoly::monic() const {
  if (is_zero()) return {};
  Rational inv = 1 / lead();
  return inv * *this;
}

std::vector<Integer> QPoly::primitive_integer() const {
  if (is_zero()) return {};
  Integer den = 1;
  for (const auto& x : c_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> out;
  out.reserve(c_.size());
  Integer g = 0;
  for (const auto& x : c_) {
    Integer v = x.get_num() * (den / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    out.push_back(std::move(v));
  }
  if (out.back() < 0) g = -g;
  for (auto& v : out) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  return out;
}

QPoly QPoly::operator-() const {
  QPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return QPoly(std::move(v));
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return QPoly(std::move(v));
}

QPoly operator*(const Rational& s, const QPoly& a) {
  if (s == 0) return {};
  QPoly r = a;
  for (auto& x : r.c_) x *= s;
  return r;
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
  if (a.degree() < b.degree()) return {QPoly{}, a};
  std::vector<Rational> rem = a.c_;
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
  const Rational inv = 1 / b.lead();
  const int db = b.degree();
  for (int k = a.degree() - db; k >= 0; --k) {
    Rational q = rem[static_cast<std::size_t>(k + db)] * inv;
    quo[static_cast<std::size_t>(k)] = q;
    if (q == 0) continue;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(k + j)] -= q * b.c_[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {QPoly(std::move(quo)), QPoly(std::move(rem))};
}

std::string QPoly::to_string(char var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    Rational c = coeff(i);
    if (c == 0) continue;
    bool neg = c < 0;
    Rational a = abs(c);
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    first = false;
    if (i == 0 || a != 1) {
      os << a.get_str();
      if (i > 0) os << "*";
    }
    if (i >= 1) os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

QPoly poly_gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    auto r = QPoly::divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::pair<QPoly, QPoly> poly_xgcd_inverse(const QPoly& a, const QPoly& m) {
  QPoly r0 = m, r1 = QPoly::divmod(a, m).second;
  QPoly s0, s1 = QPoly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = QPoly::divmod(r0, r1);
    QPoly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.is_zero()) return {QPoly{}, QPoly{}};
  Rational inv = 1 / r0.lead();
  return {inv * r0, QPoly::divmod(inv * s0, m).second};
}

QPoly squarefree_part(const QPoly& p) {
  if (p.degree() <= 0) return p.monic();
  QPoly g = poly_gcd(p, p.derivative());
  return QPoly::divmod(p, g).first.monic();
}

QPoly interpolate(std::span<const Rational> xs, std::span<const Rational> ys) {
  const std::size_t n = xs.size();
  std::vector<Rational> dd(ys.begin(), ys.end());
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
  QPoly result;
  QPoly basis = QPoly::constant(1);
  for (std::size_t i = 0; i < n; ++i) {
    result = result + dd[i] * basis;
    basis = basis * QPoly({-xs[i], Rational(1)});
  }
  return result;
}

Rational eval_integer_poly(std::span<const Integer> coeffs, const Rational& x) {
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

namespace {

void skip_ws(const std::string& s, std::size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

}  // namespace

std::vector<Integer> parse_integer_poly(const std::string& text) {
  std::vector<Integer> out;
  std::size_t i = 0;
  bool any = false;
  auto bad = [&](const std::string& why) {
    fail(ErrorCode::Parse, "cannot parse polynomial '" + text + "': " + why);
  };
  skip_ws(text, i);
  while (i < text.size()) {
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      if (text[i] == '-') sign = -1;
      ++i;
      skip_ws(text, i);
    } else if (any) {
      bad("expected '+' or '-'");
    }
    Integer coeff = 1;
    bool has_coeff = false;
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) {
      coeff = Integer(text.substr(start, i - start));
      has_coeff = true;
    }
    skip_ws(text, i);
    long exponent = 0;
    if (i < text.size() && text[i] == '*') {
      if (!has_coeff) bad("dangling '*'");
      ++i;
      skip_ws(text, i);
    }
    if (i < text.size() && text[i] == 'x') {
      ++i;
      exponent = 1;
      skip_ws(text, i);
      if (i < text.size() && text[i] == '^') {
        ++i;
        skip_ws(text, i);
        std::size_t es = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == es) bad("missing exponent");
        exponent = std::stol(text.substr(es, i - es));
        if (exponent > 4096) bad("exponent too large");
      }
    } else if (!has_coeff) {
      bad("expected a term");
    }
    if (out.size() <= static_cast<std::size_t>(exponent)) out.resize(static_cast<std::size_t>(exponent) + 1);
    out[static_cast<std::size_t>(exponent)] += sign * coeff;
    any = true;
    skip_ws(text, i);
  }
  if (!any) bad("empty input");
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::string integer_poly_to_string(std::span<const Integer> coeffs, char var) {
  return QPoly::from_integers(coeffs).to_string(var);
}

Integer integer_poly_discriminant(std::span<const Integer> coeffs) {
  const std::size_t n = coeffs.size() - 1;
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "discriminant of a constant");
  if (n == 1) return 1;
  // Sylvester matrix of p and p', determinant by fraction-free elimination.
  const std::size_t m = 2 * n - 1;
  std::vector<std::vector<Integer>> a(m, std::vector<Integer>(m, 0));
  for (std::size_t r = 0; r + 1 < n; ++r)
    for (std::size_t j = 0; j <= n; ++j) a[r][r + j] = coeffs[n - j];
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j < n; ++j) a[n - 1 + r][r + j] = coeffs[n - j] * static_cast<unsigned long>(n - j);
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    if (a[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < m && a[piv][k] == 0) ++piv;
      if (piv == m) return 0;
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < m; ++i) {
      for (std::size_t j = k + 1; j < m; ++j) {
        Integer v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  Integer res = sign * a[m - 1][m - 1];
  Integer disc;
  mpz_divexact(disc.get_mpz_t(), res.get_mpz_t(), coeffs[n].get_mpz_t());
  if ((n * (n - 1) / 2) % 2 == 1) disc = -disc;
  return disc;
}

}  // namespace unicrit
