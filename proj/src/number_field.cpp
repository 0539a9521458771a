#include "unicrit/number_field.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "unicrit/heights.hpp"

namespace unicrit {

namespace detail {

struct FieldData {
  std::vector<Integer> m;
  int t = 1;
  Integer disc;
  std::vector<std::vector<Rational>> powers;  // theta^k, 0 <= k <= 2t-2
  long base_bits = 128;
  std::vector<IsolatedRoot> emb;
  int real_count = 0;

  mutable std::once_flag mu_once;
  mutable std::vector<std::pair<unsigned long, std::vector<Rational>>> mu;  // (order, coords)
};

}  // namespace detail

namespace {

long bitlen(const Integer& z) {
  return z == 0 ? 0 : static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 2));
}

Rational sq_dist(const CBall& a, const CBall& b) {
  Rational dr = a.re - b.re, di = a.im - b.im;
  return dr * dr + di * di;
}

// Real roots ascending, then each upper-half-plane root followed by its
// conjugate.
std::vector<IsolatedRoot> order_embeddings(std::vector<IsolatedRoot> roots) {
  std::vector<IsolatedRoot> reals, uppers, lowers;
  for (auto& r : roots) {
    if (r.real) reals.push_back(r);
    else if (r.ball.im > 0) uppers.push_back(r);
    else lowers.push_back(r);
  }
  std::sort(reals.begin(), reals.end(), [](const auto& a, const auto& b) { return a.ball.re < b.ball.re; });
  std::sort(uppers.begin(), uppers.end(), [](const auto& a, const auto& b) {
    return a.ball.re != b.ball.re ? a.ball.re < b.ball.re : a.ball.im < b.ball.im;
  });
  std::vector<IsolatedRoot> out = reals;
  for (const auto& u : uppers) {
    out.push_back(u);
    CBall c = u.ball.conj();
    auto best = std::min_element(lowers.begin(), lowers.end(), [&](const auto& a, const auto& b) {
      return sq_dist(a.ball, c) < sq_dist(b.ball, c);
    });
    out.push_back(*best);
  }
  return out;
}

// Matches a fresh isolation to the order of a reference isolation.
std::vector<IsolatedRoot> match_order(const std::vector<IsolatedRoot>& ref, std::vector<IsolatedRoot> fresh) {
  std::vector<IsolatedRoot> out;
  out.reserve(ref.size());
  for (const auto& r : ref) {
    auto best = std::min_element(fresh.begin(), fresh.end(), [&](const auto& a, const auto& b) {
      return sq_dist(a.ball, r.ball) < sq_dist(b.ball, r.ball);
    });
    out.push_back(*best);
  }
  return out;
}

// Ball Horner evaluation with centre trimming.
CBall ball_horner(const std::vector<CBall>& coeffs, const CBall& x, long bits) {
  CBall acc(0, 0, 0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = (acc * x + *it).trimmed(bits);
  return acc;
}

bool is_irreducible_integer(const std::vector<Integer>& m) {
  const int t = static_cast<int>(m.size()) - 1;
  if (t <= 1) return true;
  QPoly p = QPoly::from_integers(m);
  if (poly_gcd(p, p.derivative()).degree() > 0) return false;
  if (m[0] == 0) return false;
  // A proper monic factor has integer coefficients and is a product of at
  // most t/2 of the roots; test every such subset.
  for (long bits = 64; bits <= 4096; bits *= 2) {
    auto roots = isolate_roots(m, bits);
    bool undecided = false;
    std::vector<int> idx;
    std::function<bool(int, int)> rec = [&](int start, int need) -> bool {
      if (need == 0) {
        std::vector<CBall> f{CBall(1, 0, 0)};
        for (int i : idx) {
          std::vector<CBall> g(f.size() + 1, CBall(0, 0, 0));
          const CBall neg(-roots[static_cast<std::size_t>(i)].ball.re, -roots[static_cast<std::size_t>(i)].ball.im,
                          roots[static_cast<std::size_t>(i)].ball.rad);
          for (std::size_t k = 0; k < f.size(); ++k) {
            g[k + 1] = (g[k + 1] + f[k]).trimmed(bits + 32);
            g[k] = (g[k] + f[k] * neg).trimmed(bits + 32);
          }
          f = std::move(g);
        }
        std::vector<Integer> cand;
        for (const auto& b : f) {
          if (b.rad >= Rational(1, 4)) {
            undecided = true;
            return false;
          }
          if (abs(b.im) > b.rad) return false;
          Integer lo, hi;
          Rational l = b.re - b.rad, h = b.re + b.rad;
          mpz_cdiv_q(lo.get_mpz_t(), l.get_num_mpz_t(), l.get_den_mpz_t());
          mpz_fdiv_q(hi.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
          if (lo > hi) return false;
          cand.push_back(lo);
        }
        auto [q, r] = QPoly::divmod(p, QPoly::from_integers(cand));
        return r.is_zero();
      }
      for (int i = start; i <= t - need; ++i) {
        idx.push_back(i);
        bool found = rec(i + 1, need - 1);
        idx.pop_back();
        if (found) return true;
      }
      return false;
    };
    bool factor = false;
    for (int size = 1; size <= t / 2 && !factor; ++size) factor = rec(0, size);
    if (factor) return false;
    if (!undecided) return true;
  }
  fail(ErrorCode::Internal, "irreducibility test did not converge");
}

// Faddeev-LeVerrier on a t x t rational matrix.
std::vector<Rational> faddeev_leverrier(const std::vector<std::vector<Rational>>& A) {
  const std::size_t t = A.size();
  std::vector<Rational> c(t + 1);
  c[t] = 1;
  std::vector<std::vector<Rational>> M(t, std::vector<Rational>(t));
  for (std::size_t k = 1; k <= t; ++k) {
    // M <- A*M + c_{t-k+1} I
    std::vector<std::vector<Rational>> AM(t, std::vector<Rational>(t));
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t l = 0; l < t; ++l) {
        if (A[i][l] == 0) continue;
        for (std::size_t j = 0; j < t; ++j) AM[i][j] += A[i][l] * M[l][j];
      }
    for (std::size_t i = 0; i < t; ++i) AM[i][i] += c[t - k + 1];
    M = std::move(AM);
    Rational tr = 0;
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t l = 0; l < t; ++l) tr += A[i][l] * M[l][i];
    c[t - k] = -tr / Rational(static_cast<long>(k));
  }
  return c;
}

}  // namespace

// ---------------------------------------------------------------------------
// NumberField

NumberField NumberField::create(std::vector<Integer> m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
  if (m.size() < 2) fail(ErrorCode::InvalidArgument, "field polynomial must have degree >= 1");
  if (m.back() != 1) fail(ErrorCode::InvalidArgument, "field polynomial must be monic");
  if (m.size() > 25) fail(ErrorCode::InvalidArgument, "field degree above 24 is not supported");
  if (!is_irreducible_integer(m))
    fail(ErrorCode::InvalidArgument, "field polynomial " + integer_poly_to_string(m) + " is reducible");

  auto d = std::make_shared<detail::FieldData>();
  d->m = m;
  d->t = static_cast<int>(m.size()) - 1;
  const auto t = static_cast<std::size_t>(d->t);

  d->powers.assign(2 * t - 1, std::vector<Rational>(t));
  for (std::size_t k = 0; k < t; ++k) d->powers[k][k] = 1;
  for (std::size_t k = t; k < 2 * t - 1; ++k) {
    // theta^k = theta * theta^(k-1); reduce theta^t = -sum m_i theta^i.
    const auto& prev = d->powers[k - 1];
    std::vector<Rational> cur(t);
    for (std::size_t i = 0; i + 1 < t; ++i) cur[i + 1] = prev[i];
    const Rational top = prev[t - 1];
    if (top != 0)
      for (std::size_t i = 0; i < t; ++i) cur[i] -= top * Rational(m[i]);
    d->powers[k] = std::move(cur);
  }

  d->emb = order_embeddings(isolate_roots(m, d->base_bits));
  d->real_count = static_cast<int>(std::count_if(d->emb.begin(), d->emb.end(), [](const auto& r) { return r.real; }));

  NumberField K(d);
  // disc(m) = (-1)^{t(t-1)/2} N(m'(theta))
  QPoly dm = QPoly::from_integers(m).derivative();
  std::vector<Rational> dc(t);
  for (std::size_t i = 0; i < t && i < dm.coeffs().size(); ++i) dc[i] = dm.coeffs()[i];
  Rational n = FieldElement(K, dc).norm();
  if ((t * (t - 1) / 2) % 2 == 1) n = -n;
  d->disc = n.get_num();
  return K;
}

NumberField NumberField::parse(const std::string& text) { return create(parse_integer_poly(text)); }

NumberField NumberField::rationals() { return create({Integer(0), Integer(1)}); }

int NumberField::degree() const { return d_->t; }
const std::vector<Integer>& NumberField::min_poly() const { return d_->m; }
const Integer& NumberField::discriminant() const { return d_->disc; }
std::string NumberField::min_poly_string() const { return integer_poly_to_string(d_->m); }
int NumberField::real_embedding_count() const { return d_->real_count; }
const std::vector<std::vector<Rational>>& NumberField::power_table() const { return d_->powers; }

std::vector<IsolatedRoot> NumberField::embeddings(long bits) const {
  if (bits <= d_->base_bits) return d_->emb;
  return match_order(d_->emb, isolate_roots(d_->m, bits));
}

bool NumberField::same_as(const NumberField& other) const {
  return d_ == other.d_ || d_->m == other.d_->m;
}

FieldElement NumberField::zero() const { return from_rational(0); }
FieldElement NumberField::one() const { return from_rational(1); }

FieldElement NumberField::gen() const {
  std::vector<Rational> c(static_cast<std::size_t>(d_->t));
  if (d_->t == 1) c[0] = -Rational(d_->m[0]);
  else c[1] = 1;
  return FieldElement(*this, std::move(c));
}

FieldElement NumberField::from_rational(const Rational& q) const {
  std::vector<Rational> c(static_cast<std::size_t>(d_->t));
  c[0] = q;
  return FieldElement(*this, std::move(c));
}

FieldElement NumberField::element(std::vector<Rational> coords) const {
  return FieldElement(*this, std::move(coords));
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(NumberField field, std::vector<Rational> coords)
    : field_(std::move(field)), c_(std::move(coords)) {
  const auto t = static_cast<std::size_t>(field_.degree());
  if (c_.size() > t) fail(ErrorCode::InvalidArgument, "too many coordinates for field degree");
  c_.resize(t);
  for (auto& x : c_) x.canonicalize();
}

bool FieldElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return x == 0; });
}

bool FieldElement::is_one() const {
  if (c_[0] != 1) return false;
  return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& x) { return x == 0; });
}

bool FieldElement::is_rational() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& x) { return x == 0; });
}

Rational FieldElement::rational_value() const {
  if (!is_rational()) fail(ErrorCode::InvalidArgument, "element is not rational");
  return c_[0];
}

namespace {
void require_same(const FieldElement& a, const FieldElement& b) {
  if (!(a.field() == b.field())) fail(ErrorCode::FieldMismatch, "elements belong to different fields");
}
}  // namespace

FieldElement FieldElement::operator-() const {
  std::vector<Rational> v = c_;
  for (auto& x : v) x = -x;
  return {field_, std::move(v)};
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  std::vector<Rational> v = a.c_;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += b.c_[i];
  return {a.field_, std::move(v)};
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  std::vector<Rational> v = a.c_;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= b.c_[i];
  return {a.field_, std::move(v)};
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  const std::size_t t = a.c_.size();
  if (t == 1) return {a.field_, {a.c_[0] * b.c_[0]}};
  std::vector<Rational> prod(2 * t - 1);
  for (std::size_t i = 0; i < t; ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < t; ++j)
      if (b.c_[j] != 0) prod[i + j] += a.c_[i] * b.c_[j];
  }
  std::vector<Rational> v(prod.begin(), prod.begin() + static_cast<long>(t));
  const auto& pw = a.field_.power_table();
  for (std::size_t k = t; k < 2 * t - 1; ++k) {
    if (prod[k] == 0) continue;
    for (std::size_t i = 0; i < t; ++i)
      if (pw[k][i] != 0) v[i] += prod[k] * pw[k][i];
  }
  return {a.field_, std::move(v)};
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
  const std::size_t t = c_.size();
  if (t == 1) return {field_, {1 / c_[0]}};
  QPoly m = QPoly::from_integers(field_.min_poly());
  auto [g, s] = poly_xgcd_inverse(QPoly(c_), m);
  if (g.degree() != 0) fail(ErrorCode::Internal, "non-invertible element in a field");
  std::vector<Rational> v(t);
  for (std::size_t i = 0; i < s.coeffs().size() && i < t; ++i) v[i] = s.coeffs()[i];
  return {field_, std::move(v)};
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  if (b.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero");
  return a * b.inverse();
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.field_ == b.field_ && a.c_ == b.c_;
}

FieldElement FieldElement::pow(unsigned long e) const {
  FieldElement result = field_.one();
  FieldElement base = *this;
  while (e > 0) {
    if (e & 1UL) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

QPoly FieldElement::charpoly() const {
  const std::size_t t = c_.size();
  // Column i holds the coordinates of alpha * theta^i.
  std::vector<std::vector<Rational>> A(t, std::vector<Rational>(t));
  for (std::size_t i = 0; i < t; ++i) {
    std::vector<Rational> ti(t);
    ti[i] = 1;
    FieldElement col = *this * FieldElement(field_, std::move(ti));
    for (std::size_t r = 0; r < t; ++r) A[r][i] = col.c_[r];
  }
  return QPoly(faddeev_leverrier(A));
}

std::vector<Integer> FieldElement::minimal_polynomial() const {
  if (is_rational()) return QPoly({-c_[0], Rational(1)}).primitive_integer();
  return squarefree_part(charpoly()).primitive_integer();
}

int FieldElement::algebraic_degree() const {
  if (is_rational()) return 1;
  return static_cast<int>(minimal_polynomial().size()) - 1;
}

Rational FieldElement::norm() const {
  if (c_.size() == 1) return c_[0];
  QPoly cp = charpoly();
  Rational n = cp.coeff(0);
  return (c_.size() % 2 == 1) ? -n : n;
}

CBall FieldElement::embed(std::size_t j, long bits) const {
  const auto emb = field_.embeddings(bits);
  if (j >= emb.size()) fail(ErrorCode::InvalidArgument, "embedding index out of range");
  std::vector<CBall> coeffs;
  coeffs.reserve(c_.size());
  for (const auto& x : c_) coeffs.emplace_back(x, 0, 0);
  return ball_horner(coeffs, emb[j].ball, bits + 16);
}

std::size_t FieldElement::max_coord_bits() const {
  std::size_t best = 0;
  for (const auto& x : c_) {
    best = std::max(best, mpz_sizeinbase(x.get_num_mpz_t(), 2));
    best = std::max(best, mpz_sizeinbase(x.get_den_mpz_t(), 2));
  }
  return best;
}

std::size_t FieldElement::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (const auto& x : c_) {
    std::size_t v = mpz_get_ui(x.get_num_mpz_t()) * 31 + mpz_get_ui(x.get_den_mpz_t());
    v ^= static_cast<std::size_t>(mpz_sgn(x.get_num_mpz_t()) + 1) << 7;
    v ^= mpz_sizeinbase(x.get_num_mpz_t(), 2) << 13;
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::string FieldElement::to_string(const std::string& gen) const {
  if (c_.size() == 1) return c_[0].get_str();
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const Rational& c = c_[i];
    if (c == 0) continue;
    const bool neg = c < 0;
    Rational a = abs(c);
    if (!first) os << (neg ? " - " : " + ");
    else if (neg) os << "-";
    first = false;
    if (i == 0 || a != 1) {
      os << a.get_str();
      if (i > 0) os << "*";
    }
    if (i >= 1) os << gen;
    if (i > 1) os << "^" << i;
  }
  if (first) return "0";
  return os.str();
}

std::vector<std::string> FieldElement::coord_strings() const {
  std::vector<std::string> out;
  out.reserve(c_.size());
  for (const auto& x : c_) out.push_back(x.get_str());
  return out;
}

// ---------------------------------------------------------------------------
// Ordering, parsing, polynomials over K

bool canonical_less(const FieldElement& a, const FieldElement& b) {
  const auto& x = a.coords();
  const auto& y = b.coords();
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (x[i] == y[i]) continue;
    Rational ax = abs(x[i]), ay = abs(y[i]);
    if (ax != ay) return ax < ay;
    return x[i] > y[i];
  }
  return x.size() < y.size();
}

void sort_canonical(std::vector<FieldElement>& xs) { std::sort(xs.begin(), xs.end(), canonical_less); }

FieldElement parse_element(const NumberField& K, const std::string& text) {
  std::vector<Rational> coords;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char ch) { return std::isspace(ch); }),
               item.end());
    if (item.empty()) fail(ErrorCode::Parse, "empty coordinate in element '" + text + "'");
    if (item[0] == '+') item.erase(0, 1);
    Rational q;
    if (item.find_first_not_of("-0123456789/") != std::string::npos || q.set_str(item, 10) != 0)
      fail(ErrorCode::Parse, "bad rational '" + item + "' in element '" + text + "'");
    if (q.get_den() == 0) fail(ErrorCode::Parse, "zero denominator in element '" + text + "'");
    q.canonicalize();
    coords.push_back(q);
  }
  if (coords.empty()) fail(ErrorCode::Parse, "empty element");
  if (coords.size() > static_cast<std::size_t>(K.degree()))
    fail(ErrorCode::Parse, "element '" + text + "' has more coordinates than the field degree");
  return K.element(std::move(coords));
}

FieldElement eval_kpoly(const KPoly& p, const FieldElement& x) {
  FieldElement acc = x.field().zero();
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

PlaceSet PlaceSet::from_primes(std::vector<Integer> ps) {
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  for (const auto& p : ps)
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
      fail(ErrorCode::InvalidArgument, p.get_str() + " is not a prime");
  return {std::move(ps)};
}

bool PlaceSet::contains(const Integer& p) const { return std::binary_search(primes.begin(), primes.end(), p); }

// ---------------------------------------------------------------------------
// Small number theory

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

std::vector<unsigned long> prime_divisors(unsigned long n) {
  std::vector<unsigned long> out;
  for (unsigned long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

unsigned long euler_phi(unsigned long n) {
  unsigned long r = n;
  for (unsigned long p : prime_divisors(n)) r = r / p * (p - 1);
  return r;
}

std::vector<Integer> cyclotomic(unsigned long n) {
  // x^n - 1 divided by Phi_e for every proper divisor e of n.
  QPoly p = QPoly::monomial(1, static_cast<int>(n)) - QPoly::constant(1);
  for (unsigned long e = 1; e < n; ++e) {
    if (n % e != 0) continue;
    p = QPoly::divmod(p, QPoly::from_integers(cyclotomic(e))).first;
  }
  return p.primitive_integer();
}

// ---------------------------------------------------------------------------
// Roots in K

namespace {

std::optional<Integer> exact_root(const Integer& a, unsigned long n) {
  if (a < 0) return std::nullopt;
  Integer r;
  if (mpz_root(r.get_mpz_t(), a.get_mpz_t(), n) == 0) return std::nullopt;
  return r;
}

// Rational roots of x^n - b.
std::vector<Rational> rational_binomial_roots(const Rational& b, unsigned long n) {
  if (b == 0) return {Rational(0)};
  const bool neg = b < 0;
  if (neg && n % 2 == 0) return {};
  Integer num = abs(b.get_num());
  auto rn = exact_root(num, n);
  auto rd = exact_root(b.get_den(), n);
  if (!rn || !rd) return {};
  Rational r(*rn, *rd);
  r.canonicalize();
  if (neg) return {-r};
  if (n % 2 == 0) return {r, -r};
  return {r};
}

}  // namespace

std::vector<FieldElement> roots_in_K(const KPoly& p_in, const Budget& budget) {
  KPoly p = p_in;
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  if (p.empty()) fail(ErrorCode::InvalidArgument, "roots of the zero polynomial");
  const NumberField K = p[0].field();
  for (const auto& c : p) require_same(c, p[0]);
  const int n = static_cast<int>(p.size()) - 1;
  if (n == 0) return {};
  if (n == 1) return {-(p[0] / p[1])};
  const int t = K.degree();

  bool binomial = true;
  for (int i = 1; i < n; ++i) binomial = binomial && p[static_cast<std::size_t>(i)].is_zero();
  std::vector<FieldElement> out;

  if (binomial && p[0].is_zero()) return {K.zero()};
  if (t == 1 && binomial) {
    Rational b = -(p[0].rational_value() / p.back().rational_value());
    for (const auto& r : rational_binomial_roots(b, static_cast<unsigned long>(n))) out.push_back(K.from_rational(r));
    sort_canonical(out);
    return out;
  }

  // N(x) = Norm(P(x)), interpolated at t*n + 1 integer points.
  QPoly N;
  if (t == 1) {
    std::vector<Rational> v;
    for (const auto& c : p) v.push_back(c.rational_value());
    N = QPoly(std::move(v));
  } else {
    std::vector<Rational> xs, ys;
    for (int k = 0; k <= t * n; ++k) {
      xs.emplace_back(k);
      ys.push_back(eval_kpoly(p, K.from_rational(k)).norm());
    }
    N = interpolate(xs, ys);
  }
  std::vector<Integer> Nsq = squarefree_part(N).primitive_integer();
  if (Nsq.size() <= 1) return {};
  const Integer a = Nsq.back();
  const Integer L = a * abs(K.discriminant());

  const auto t_sz = static_cast<std::size_t>(t);
  long max_bits = 0;
  for (const auto& z : Nsq) max_bits = std::max(max_bits, bitlen(z));
  long bits = 64 + bitlen(L) + max_bits / std::max(1, static_cast<int>(Nsq.size()) - 1) + 8 * t;

  std::unordered_set<FieldElement, FieldElementHash> found;
  for (int attempt = 0; attempt < 10; ++attempt, bits *= 2) {
    auto rootsN = isolate_roots(Nsq, bits);
    auto theta = K.embeddings(bits);
    const long wb = bits + 32;

    // Lagrange coefficients l_{j,i} of m(y) / ((y - theta_j) m'(theta_j)).
    const auto& m = K.min_poly();
    std::vector<std::vector<CBall>> ell(t_sz, std::vector<CBall>(t_sz));
    for (std::size_t j = 0; j < t_sz; ++j) {
      std::vector<CBall> q(t_sz);
      q[t_sz - 1] = CBall(1, 0, 0);
      for (std::size_t i = t_sz - 1; i >= 1; --i)
        q[i - 1] = (CBall(Rational(m[i]), 0, 0) + theta[j].ball * q[i]).trimmed(wb);
      std::vector<CBall> dm;
      for (std::size_t i = 1; i <= t_sz; ++i) dm.emplace_back(Rational(m[i] * static_cast<long>(i)), 0, 0);
      CBall inv = ball_horner(dm, theta[j].ball, wb).inverse(wb).trimmed(wb);
      for (std::size_t i = 0; i < t_sz; ++i) ell[j][i] = (q[i] * inv * CBall(Rational(L), 0, 0)).trimmed(wb);
    }

    // Candidate roots of N per embedding.
    std::vector<std::vector<std::size_t>> cand(t_sz);
    for (std::size_t j = 0; j < t_sz; ++j) {
      std::vector<CBall> pj;
      for (const auto& c : p) {
        std::vector<CBall> cc;
        for (const auto& x : c.coords()) cc.emplace_back(x, 0, 0);
        pj.push_back(ball_horner(cc, theta[j].ball, wb));
      }
      for (std::size_t r = 0; r < rootsN.size(); ++r) {
        if (theta[j].real && !rootsN[r].real) continue;
        if (ball_horner(pj, rootsN[r].ball, wb).contains_zero()) cand[j].push_back(r);
      }
    }
    // Index of the disc holding the conjugate of each root of N.
    std::vector<std::size_t> conj_of(rootsN.size());
    for (std::size_t r = 0; r < rootsN.size(); ++r) {
      CBall c = rootsN[r].ball.conj();
      std::size_t best = 0;
      for (std::size_t s = 1; s < rootsN.size(); ++s)
        if (sq_dist(rootsN[s].ball, c) < sq_dist(rootsN[best].ball, c)) best = s;
      conj_of[r] = best;
    }

    const std::size_t rc = static_cast<std::size_t>(K.real_embedding_count());
    std::vector<std::size_t> free_emb;
    for (std::size_t j = 0; j < rc; ++j) free_emb.push_back(j);
    for (std::size_t j = rc; j < t_sz; j += 2) free_emb.push_back(j);
    double total = 1;
    for (auto j : free_emb) total *= static_cast<double>(cand[j].size());
    if (total > static_cast<double>(budget.candidate_cap))
      fail(ErrorCode::BudgetExceeded, "too many conjugate tuples in root search");

    bool need_more = false;
    std::vector<std::size_t> choice(t_sz);
    std::function<void(std::size_t)> rec = [&](std::size_t level) {
      if (need_more) return;
      if (level == free_emb.size()) {
        std::vector<Rational> coords(t_sz);
        for (std::size_t i = 0; i < t_sz; ++i) {
          CBall acc(0, 0, 0);
          for (std::size_t j = 0; j < t_sz; ++j) acc = (acc + ell[j][i] * rootsN[choice[j]].ball).trimmed(wb);
          if (abs(acc.im) > acc.rad) return;
          if (acc.rad >= Rational(1, 4)) {
            need_more = true;
            return;
          }
          Rational lo = acc.re - acc.rad, hi = acc.re + acc.rad;
          Integer zl, zh;
          mpz_cdiv_q(zl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
          mpz_fdiv_q(zh.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
          if (zl > zh) return;
          coords[i] = Rational(zl, L);
        }
        FieldElement x = K.element(std::move(coords));
        if (eval_kpoly(p, x).is_zero()) found.insert(x);
        return;
      }
      const std::size_t j = free_emb[level];
      for (std::size_t r : cand[j]) {
        choice[j] = r;
        if (j >= rc) {
          const std::size_t rb = conj_of[r];
          if (std::find(cand[j + 1].begin(), cand[j + 1].end(), rb) == cand[j + 1].end()) continue;
          choice[j + 1] = rb;
        }
        rec(level + 1);
      }
    };
    rec(0);
    if (!need_more) {
      out.assign(found.begin(), found.end());
      sort_canonical(out);
      return out;
    }
  }
  fail(ErrorCode::Internal, "root search in K did not reach sufficient precision");
}

std::vector<FieldElement> nth_roots_in_K(const FieldElement& a, unsigned long n, const Budget& budget) {
  const NumberField& K = a.field();
  if (n == 0) fail(ErrorCode::InvalidArgument, "0th root");
  if (K.degree() == 1) {
    std::vector<FieldElement> out;
    for (const auto& r : rational_binomial_roots(a.rational_value(), n)) out.push_back(K.from_rational(r));
    sort_canonical(out);
    return out;
  }
  KPoly p(n + 1, K.zero());
  p[0] = -a;
  p[n] = K.one();
  return roots_in_K(p, budget);
}

// ---------------------------------------------------------------------------
// Roots of unity

std::vector<FieldElement> roots_of_unity(const NumberField& K, unsigned long d) {
  const auto& data = *K.d_;
  std::call_once(data.mu_once, [&] {
    const unsigned long t = static_cast<unsigned long>(K.degree());
    for (unsigned long w = 1; w <= 2 * t * t + 2; ++w) {
      if (t % euler_phi(w) != 0) continue;
      auto phi = cyclotomic(w);
      KPoly p;
      for (const auto& c : phi) p.push_back(K.from_rational(Rational(c)));
      for (const auto& z : roots_in_K(p)) data.mu.emplace_back(w, z.coords());
    }
  });
  std::vector<FieldElement> out;
  for (const auto& [w, coords] : data.mu)
    if (d == 0 || d % w == 0) out.push_back(K.element(coords));
  // Stored grouped by order and canonically within each order.
  return out;
}

unsigned long root_of_unity_order(const FieldElement& x) {
  if (x.is_zero()) return 0;
  auto mp = x.minimal_polynomial();
  if (mp.back() != 1 || abs(mp.front()) != 1) return 0;
  const unsigned long k = mp.size() - 1;
  for (unsigned long w = 1; w <= 2 * k * k + 2; ++w) {
    if (euler_phi(w) != k) continue;
    if (cyclotomic(w) == mp) return w;
  }
  return 0;
}

bool is_s_integer(const FieldElement& a, const PlaceSet& S) {
  auto mp = a.minimal_polynomial();
  const Integer& lead = mp.back();
  for (std::size_t j = 0; j + 1 < mp.size(); ++j) {
    Rational c(mp[j], lead);
    c.canonicalize();
    Integer den = c.get_den();
    for (const auto& p : S.primes)
      while (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t())) den /= p;
    if (den != 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Bounded height enumeration

Rational HeightBound::exp_upper() const {
  if (kind == Kind::LogOf) return value;
  if (value < 0) return 0;
  return unicrit::exp_upper(value, 64);
}

namespace {

Integer floor_q(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Primes p (not dividing disc(m)) modulo which m has a root, so that some
// prime of K above p has residue field F_p.
std::vector<unsigned long> split_primes(const NumberField& K, std::size_t want) {
  std::vector<unsigned long> out;
  const auto& m = K.min_poly();
  for (unsigned long p = 3; out.size() < want && p < 400; p += 2) {
    if (!is_prime(p)) continue;
    if (mpz_divisible_ui_p(K.discriminant().get_mpz_t(), p)) continue;
    bool has_root = false;
    for (unsigned long x = 0; x < p && !has_root; ++x) {
      Integer v = 0;
      for (auto it = m.rbegin(); it != m.rend(); ++it) v = (v * x + *it) % static_cast<long>(p);
      has_root = (v == 0);
    }
    if (has_root) out.push_back(p);
  }
  return out;
}

}  // namespace

std::vector<FieldElement> bounded_height_candidates(const NumberField& K, const HeightBound& B,
                                                    const Budget& budget) {
  std::vector<FieldElement> out;
  if (B.kind == HeightBound::Kind::Value ? B.value < 0 : B.value < 1) return out;
  const Rational Q = B.exp_upper();
  const Integer H = floor_q(Q);
  const unsigned long t = static_cast<unsigned long>(K.degree());

  // Degree one: a/b in lowest terms with max(|a|, b) <= H.
  {
    Integer cnt = H * (2 * H + 1);
    if (cnt > Integer(static_cast<unsigned long>(budget.candidate_cap)))
      fail(ErrorCode::BudgetExceeded, "rational candidate count exceeds the cap");
    out.push_back(K.zero());
    for (Integer b = 1; b <= H; ++b)
      for (Integer a = 1; a <= H; ++a) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        if (g != 1) continue;
        Rational q(a, b);
        out.push_back(K.from_rational(q));
        out.push_back(K.from_rational(-q));
      }
  }

  const auto primes = split_primes(K, 6);
  std::unordered_set<FieldElement, FieldElementHash> seen;
  for (unsigned long k = 2; k <= t; ++k) {
    if (t % k != 0) continue;
    Rational Qk = 1;
    for (unsigned long i = 0; i < k; ++i) Qk *= Q;
    std::vector<Integer> bound(k + 1);
    for (unsigned long j = 0; j <= k; ++j) bound[j] = floor_q(Rational(binomial(k, j)) * Qk);
    bound[0] = floor_q(Qk);
    bound[k] = floor_q(Qk);
    Integer count = bound[k] * (2 * bound[0]);
    for (unsigned long j = 1; j < k; ++j) count *= 2 * bound[j] + 1;
    if (count > Integer(static_cast<unsigned long>(budget.candidate_cap)))
      fail(ErrorCode::BudgetExceeded, "minimal-polynomial candidate count " + count.get_str() + " exceeds the cap");

    std::vector<Integer> mu(k + 1);
    std::function<void(unsigned long)> rec = [&](unsigned long j) {
      if (j == static_cast<unsigned long>(-1) || j > k) {
        // All coefficients chosen.
        Integer g = 0;
        for (const auto& c : mu) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g != 1) return;
        for (unsigned long p : primes) {
          if (mpz_divisible_ui_p(mu[k].get_mpz_t(), p)) continue;
          std::vector<long> r(k + 1);
          for (unsigned long i = 0; i <= k; ++i) r[i] = static_cast<long>(mpz_fdiv_ui(mu[i].get_mpz_t(), p));
          bool root = false;
          for (unsigned long x = 0; x < p && !root; ++x) {
            long v = 0;
            for (unsigned long i = k + 1; i-- > 0;) v = static_cast<long>((v * static_cast<long>(x) + r[i]) % static_cast<long>(p));
            root = (v == 0);
          }
          if (!root) return;
        }
        if (k == t) {
          // Q(alpha) = K forces disc(mu) * disc(m) to be a nonzero square.
          Integer prod = integer_poly_discriminant(mu) * K.discriminant();
          if (prod <= 0 || !mpz_perfect_square_p(prod.get_mpz_t())) return;
        }
        KPoly kp;
        for (const auto& c : mu) kp.push_back(K.from_rational(Rational(c)));
        for (auto& z : roots_in_K(kp, budget))
          if (!z.is_rational()) seen.insert(std::move(z));
        return;
      }
      const Integer& b = bound[j];
      if (j == k) {
        for (Integer v = 1; v <= b; ++v) {
          mu[j] = v;
          rec(k + 1);
        }
        return;
      }
      for (Integer v = -b; v <= b; ++v) {
        if (j == 0 && v == 0) continue;
        mu[j] = v;
        rec(j + 1);
      }
    };
    rec(0);
  }
  out.insert(out.end(), seen.begin(), seen.end());
  sort_canonical(out);
  return out;
}

std::vector<FieldElement> bounded_height_elements(const NumberField& K, const HeightBound& B, const Budget& budget) {
  std::vector<FieldElement> out;
  for (auto& x : bounded_height_candidates(K, B, budget))
    if (height_at_most(x, B)) out.push_back(std::move(x));
  return out;
}

}  // namespace unicrit
