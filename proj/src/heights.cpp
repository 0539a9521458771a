#include "unicrit/heights.hpp"

#include <algorithm>
#include <unordered_set>

namespace unicrit {

UnicriticalMap::UnicriticalMap(unsigned long d, FieldElement c) : d_(d), c_(std::move(c)) {
  if (d_ < 2) fail(ErrorCode::InvalidArgument, "map degree must be at least 2");
}

std::string UnicriticalMap::to_string(const std::string& gen) const {
  std::string s = "x^" + std::to_string(d_);
  if (c_.is_zero()) return s;
  if (c_.is_rational()) {
    Rational q = c_.rational_value();
    return s + (q < 0 ? " - " : " + ") + Rational(abs(q)).get_str();
  }
  return s + " + (" + c_.to_string(gen) + ")";
}

namespace {

constexpr long kMaxBits = 1L << 15;

Integer ipow(const Integer& b, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

Rational qpow(const Rational& b, unsigned long e) {
  Rational r(ipow(b.get_num(), e), ipow(b.get_den(), e));
  r.canonicalize();
  return r;
}

struct Classified {
  bool decided = true;
  std::vector<Interval> outside;  // |beta| enclosures of roots with |beta| > 1
};

bool self_reciprocal(const std::vector<Integer>& p) {
  std::vector<Integer> r(p.rbegin(), p.rend());
  if (r == p) return true;
  for (auto& x : r) x = -x;
  return r == p;
}

// Each root is certified outside, inside or on the unit circle. A root on
// the circle satisfies beta = 1/conj(beta); this is certified when the ball
// for 1/conj(beta) meets no other isolating disc.
Classified classify_roots(const std::vector<Integer>& p, long bits) {
  Classified out;
  auto roots = isolate_roots(p, bits);
  const bool selfrec = self_reciprocal(p);
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(bits + 16);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const CBall& b = roots[i].ball;
    Rational lo = b.abs_lower(prec), hi = b.abs_upper(prec);
    if (lo > 1) {
      out.outside.emplace_back(lo, hi);
      continue;
    }
    if (hi < 1) continue;
    bool on_circle = false;
    if (selfrec && !b.contains_zero()) {
      CBall inv = b.conj().inverse(prec);
      on_circle = true;
      for (std::size_t j = 0; j < roots.size() && on_circle; ++j) {
        if (j == i) continue;
        const CBall& o = roots[j].ball;
        Rational dr = inv.re - o.re, di = inv.im - o.im, s = inv.rad + o.rad;
        if (dr * dr + di * di <= s * s) on_circle = false;
      }
    }
    if (!on_circle) out.decided = false;
  }
  return out;
}

Interval measure_from(const Integer& lead, const Classified& c) {
  Interval m = Interval::point(Rational(abs(lead)));
  for (const auto& iv : c.outside) m = m * iv;
  return m;
}

Interval log_interval(const Interval& x, long bits) { return interval_log(x, static_cast<mpfr_prec_t>(bits + 16)); }

Integer vp_int(Integer n, const Integer& p, long& v) {
  v = 0;
  while (n != 0 && mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
    n /= p;
    ++v;
  }
  return n;
}

long vp(const Rational& q, const Integer& p) {
  long a = 0, b = 0;
  vp_int(q.get_num(), p, a);
  vp_int(q.get_den(), p, b);
  return a - b;
}

// Smallest root valuation at p: min over j < k of v_p(c_j) / (k - j) for the
// monic minimal polynomial.
std::optional<Rational> min_root_valuation(const std::vector<Integer>& mu, const Integer& p) {
  const std::size_t k = mu.size() - 1;
  std::optional<Rational> best;
  for (std::size_t j = 0; j < k; ++j) {
    if (mu[j] == 0) continue;
    Rational c(mu[j], mu[k]);
    c.canonicalize();
    Rational s(vp(c, p), static_cast<long>(k - j));
    s.canonicalize();
    if (!best || s < *best) best = s;
  }
  return best;
}

// Enclosure of p^r for rational r.
Interval pow_rational(const Integer& p, const Rational& r, long bits) {
  if (r.get_den() == 1) {
    const long e = r.get_num().get_si();
    Rational v = qpow(Rational(p), static_cast<unsigned long>(std::labs(e)));
    if (e < 0) v = 1 / v;
    return Interval::point(v);
  }
  const auto prec = static_cast<mpfr_prec_t>(bits + 16);
  Interval lp(log_lower(Rational(p), prec), log_upper(Rational(p), prec));
  Interval e = r * lp;
  return {exp_lower(e.lo, prec), exp_upper(e.hi, prec)};
}

// Prime factors of n found by trial division; `complete` is false when a
// composite cofactor remains.
std::vector<Integer> small_prime_factors(Integer n, bool& complete) {
  std::vector<Integer> out;
  n = abs(n);
  for (unsigned long p = 2; p < 1000000 && n > 1; ++p) {
    if (p > 2 && p % 2 == 0) continue;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      out.emplace_back(p);
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) n /= p;
    }
    if (Integer(p) * p > n) break;
  }
  complete = true;
  if (n > 1) {
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) out.push_back(n);
    else complete = false;
  }
  return out;
}

// Largest |a|_v over nonarchimedean places, for primes of the leading
// coefficient of the minimal polynomial (the only ones where |a|_v > 1).
std::optional<Interval> finite_max(const std::vector<Integer>& mu, long bits, bool& complete) {
  std::optional<Interval> best;
  for (const auto& p : small_prime_factors(mu.back(), complete)) {
    auto mv = min_root_valuation(mu, p);
    if (!mv) continue;
    Interval v = pow_rational(p, -*mv, bits);
    best = best ? interval_max(*best, v) : v;
  }
  return best;
}

}  // namespace

// ---------------------------------------------------------------------------

Interval mahler_measure(const std::vector<Integer>& poly, long bits) {
  if (poly.empty()) fail(ErrorCode::InvalidArgument, "Mahler measure of zero");
  if (poly.size() == 1) return Interval::point(Rational(abs(poly[0])));
  if (poly.size() == 2) return Interval::point(Rational(std::max(abs(poly[0]), abs(poly[1]))));
  for (long b = bits; b <= kMaxBits; b *= 2) {
    auto cls = classify_roots(poly, b);
    if (cls.decided) return measure_from(poly.back(), cls);
  }
  fail(ErrorCode::Undecided, "unit-circle classification did not converge");
}

HeightValue weil_height(const FieldElement& a, long bits) {
  if (a.is_zero()) return {Interval::point(0), true};
  auto mu = a.minimal_polynomial();
  const long k = static_cast<long>(mu.size()) - 1;
  Interval M = mahler_measure(mu, bits);
  if (M.is_point() && M.lo == 1) return {Interval::point(0), true};
  Interval h = Rational(1, k) * log_interval(M, bits);
  return {h, false};
}

int compare_height(const FieldElement& a, const HeightBound& B) {
  if (B.kind == HeightBound::Kind::Value) {
    HeightValue h0 = weil_height(a, 64);
    if (h0.exact_zero) return B.value > 0 ? -1 : (B.value == 0 ? 0 : 1);
    if (B.value <= 0) return 1;
    for (long bits = 64; bits <= kMaxBits; bits *= 2) {
      HeightValue h = weil_height(a, bits);
      if (h.value.hi < B.value) return -1;
      if (h.value.lo > B.value) return 1;
    }
    fail(ErrorCode::Undecided, "height comparison did not separate");
  }

  const Rational& Q = B.value;
  if (Q <= 0) fail(ErrorCode::InvalidArgument, "log bound of a non-positive number");
  if (a.is_zero()) return Q > 1 ? -1 : (Q == 1 ? 0 : 1);
  auto mu = a.minimal_polynomial();
  const unsigned long k = mu.size() - 1;
  const Rational Qk = qpow(Q, k);
  if (k == 1) {
    Rational M(std::max(abs(mu[0]), abs(mu[1])));
    return M < Qk ? -1 : (M > Qk ? 1 : 0);
  }
  const Integer u = Q.get_num(), v = Q.get_den();
  const Rational Qk2 = Qk * Qk;
  for (long bits = 64; bits <= kMaxBits; bits *= 2) {
    auto cls = classify_roots(mu, bits);
    if (!cls.decided) continue;
    if (cls.outside.empty()) {
      Rational M(abs(mu.back()));
      return M < Qk ? -1 : (M > Qk ? 1 : 0);
    }
    Interval M = measure_from(mu.back(), cls);
    if (M.hi < Qk) return -1;
    if (M.lo > Qk) return 1;
    // delta = v^{2k} (lead * prod_outside beta)^2 - u^{2k} is an algebraic
    // integer with at most binom(k, |O|) conjugates, each of modulus at most
    // v^{2k} M^2 + u^{2k}. If |delta| is below the Liouville bound it is 0.
    Integer D;
    mpz_bin_uiui(D.get_mpz_t(), k, cls.outside.size());
    const Rational v2k(ipow(v, 2 * k)), u2k(ipow(u, 2 * k));
    Rational C = v2k * M.hi * M.hi + u2k;
    Rational E = std::max(abs(M.lo * M.lo - Qk2), abs(M.hi * M.hi - Qk2)) * v2k;
    if (E * qpow(C, D.get_ui() - 1) < 1) return 0;
  }
  fail(ErrorCode::Undecided, "height comparison with log bound did not separate");
}

bool height_at_most(const FieldElement& a, const HeightBound& B) { return compare_height(a, B) <= 0; }

Interval house(const FieldElement& a, long bits) {
  if (a.is_rational()) return Interval::point(abs(a.rational_value()));
  auto roots = isolate_roots(a.minimal_polynomial(), bits);
  const auto prec = static_cast<mpfr_prec_t>(bits + 16);
  Interval best = Interval::point(0);
  for (const auto& r : roots) best = interval_max(best, {r.ball.abs_lower(prec), r.ball.abs_upper(prec)});
  return best;
}

Interval s_house(const FieldElement& a, const PlaceSet& S, long bits) {
  Interval best = house(a, bits);
  if (a.is_zero()) return best;
  auto mu = a.minimal_polynomial();
  for (const auto& p : S.primes) {
    auto mv = min_root_valuation(mu, p);
    if (!mv) continue;
    best = interval_max(best, pow_rational(p, -*mv, bits));
  }
  return best;
}

int place_count_lower(const NumberField& K, const PlaceSet& S) {
  const int r1 = K.real_embedding_count();
  const int r2 = (K.degree() - r1) / 2;
  return r1 + r2 + static_cast<int>(S.primes.size());
}

bool check_house_height_inequality(const FieldElement& a, const PlaceSet& S) {
  if (a.is_zero()) fail(ErrorCode::PreconditionFailed, "house/height inequality needs a nonzero element");
  if (!is_s_integer(a, S)) fail(ErrorCode::PreconditionFailed, "element is not an S-integer");
  const int t = a.field().degree();
  const Rational nS(place_count_lower(a.field(), S));
  bool lower_ok = false, upper_ok = false;
  for (long bits = 64; bits <= 512; bits *= 2) {
    Interval hs = s_house(a, S, bits);
    Interval lh = log_interval(hs, bits);
    HeightValue h = weil_height(a, bits);
    Interval left = Rational(1, t) * lh;
    Interval right = nS * lh;
    if (left.lo > h.value.hi || h.value.lo > right.hi) return false;
    lower_ok = left.hi <= h.value.lo;
    upper_ok = h.value.hi <= right.lo;
    if (lower_ok && upper_ok) return true;
  }
  // Remaining overlap is an equality case within 2^-512.
  return true;
}

bool sz_check(const FieldElement& a) {
  if (a.is_zero()) fail(ErrorCode::PreconditionFailed, "zero has no Schinzel-Zassenhaus gap");
  if (weil_height(a).exact_zero) fail(ErrorCode::PreconditionFailed, "roots of unity have height 0");
  const Rational sz = sz_value(a.field().degree());
  auto mu = a.minimal_polynomial();
  for (long bits = 64; bits <= kMaxBits; bits *= 2) {
    Interval best = house(a, bits);
    if (mu.back() != 1) {
      bool complete = true;
      auto fm = finite_max(mu, bits, complete);
      if (fm) best = interval_max(best, *fm);
    }
    if (best.lo > sz) return true;
    if (best.hi < sz) return false;
  }
  fail(ErrorCode::Undecided, "Schinzel-Zassenhaus comparison did not separate");
}

// ---------------------------------------------------------------------------
// Constants

Interval rho_d(unsigned long d, long bits) {
  if (d < 2) fail(ErrorCode::InvalidArgument, "rho_d needs d >= 2");
  auto f = [d](const Rational& x) -> Rational { return qpow(x, d) - 2 * x - 1; };
  Rational lo = 1, hi = 3;  // f(1) = -2 < 0 < f(3)
  Integer two_pow = 1;
  mpz_mul_2exp(two_pow.get_mpz_t(), two_pow.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
  const Rational width(1, two_pow);
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    Rational v = f(mid);
    if (v == 0) return Interval::point(mid);
    if (v < 0) lo = mid;
    else hi = mid;
  }
  return {lo, hi};
}

Interval rho_d_pow_d(unsigned long d, long bits) {
  Interval r = rho_d(d, bits + 2);
  return Rational(2) * r + Interval::point(1);
}

Interval voutier_bound(int t, long bits) {
  if (t < 1) fail(ErrorCode::InvalidArgument, "degree must be positive");
  const auto prec = static_cast<mpfr_prec_t>(bits + 16);
  if (t == 1) return {log_lower(2, prec), log_upper(2, prec)};
  Rational x(3 * t);
  Rational lo = log_lower(x, prec), hi = log_upper(x, prec);
  return {Rational(2) / (Rational(t) * hi * hi * hi), Rational(2) / (Rational(t) * lo * lo * lo)};
}

Rational sz_value(int t) {
  Integer den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(t + 4));
  return 1 + Rational(1, den);
}

Rational kappa1_value(int t) {
  Integer den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(t + 5));
  return 1 + Rational(1, den);
}

Interval kappa2(int t, long bits) {
  const auto prec = static_cast<mpfr_prec_t>(bits + 16);
  Interval V = voutier_bound(t, bits);
  return {3 + log_lower(4, prec) / V.hi, 3 + log_upper(4, prec) / V.lo};
}

unsigned long prime_pi(unsigned long q) {
  if (q > 100'000'000UL) fail(ErrorCode::InvalidArgument, "q too large for prime counting");
  if (q < 2) return 0;
  std::vector<bool> comp(q + 1, false);
  unsigned long count = 0;
  for (unsigned long i = 2; i <= q; ++i) {
    if (comp[i]) continue;
    ++count;
    for (unsigned long j = i * i; j <= q; j += i) comp[j] = true;
  }
  return count;
}

unsigned long s_size_bound(int t, unsigned long q) { return static_cast<unsigned long>(t) * (prime_pi(q) + 1); }

BoundsReport bounds_report(int t, unsigned long q, unsigned long d) {
  if (t < 1) fail(ErrorCode::InvalidArgument, "t must be at least 1");
  if (d < 2) fail(ErrorCode::InvalidArgument, "d must be at least 2");
  if (q != 0 && !is_prime(q)) fail(ErrorCode::InvalidArgument, "q must be prime (or 0 for no finite places)");
  BoundsReport r;
  r.t = t;
  r.q = q;
  r.d = d;
  r.rho_d = rho_d(d);
  r.rho_d_pow_d = rho_d_pow_d(d);
  r.V_t = voutier_bound(t);
  r.sz = sz_value(t);
  r.kappa2 = kappa2(t);
  r.s_size_bound = s_size_bound(t, q);
  return r;
}

HeightValue preper_height_bound(const UnicriticalMap& f) {
  HeightValue hc = weil_height(f.c());
  Interval lr = log_interval(rho_d(f.d()), 64);
  Interval v = Rational(1, static_cast<long>(f.d())) * hc.value + lr;
  return {v, false};
}

// ---------------------------------------------------------------------------
// Canonical height and the orbit-of-zero inequalities

CanonicalHeightEstimate canonical_height_estimate(const UnicriticalMap& f, const FieldElement& a, unsigned long n,
                                                  const Budget& budget) {
  const auto prec = static_cast<mpfr_prec_t>(80);
  HeightValue hc = weil_height(f.c());
  const Rational err0 = (hc.value.hi + log_upper(2, prec)) / Rational(static_cast<long>(f.d() - 1));

  CanonicalHeightEstimate out;
  std::unordered_set<FieldElement, FieldElementHash> seen;
  FieldElement x = a;
  Rational scale = 1;
  std::optional<Interval> band;
  for (unsigned long m = 0; m <= n; ++m) {
    if (!seen.insert(x).second) {
      out.exact_zero = true;
      out.band = Interval::point(0);
      out.steps = m;
      while (out.bands.size() <= n) out.bands.push_back(Interval::point(0));
      return out;
    }
    HeightValue hx = weil_height(x);
    Interval est = (1 / scale) * hx.value;
    Rational e = err0 / scale;
    Interval b(std::max(Rational(0), Rational(est.lo - e)), est.hi + e);
    if (band) {
      if (compare(b, *band) != Order::Overlap) fail(ErrorCode::Internal, "canonical height bands are disjoint");
      b = interval_intersect(b, *band);
    }
    band = b;
    out.bands.push_back(b);
    out.estimate = est;
    out.steps = m;
    if (m == n) break;
    x = f(x);
    if (x.max_coord_bits() > budget.coord_bits_cap)
      fail(ErrorCode::OverflowBudget, "iterate coordinates exceed the bit cap");
    scale *= static_cast<long>(f.d());
  }
  out.band = *band;
  return out;
}

OrbitZeroReport orbitzero_inequality_check(const UnicriticalMap& f, unsigned long n_max, const Budget& budget) {
  const FieldElement& c = f.c();
  if (weil_height(c).exact_zero) fail(ErrorCode::PreconditionFailed, "orbit-of-zero estimate needs h(c) > 0");
  const NumberField& K = f.field();
  const int t = K.degree();
  const unsigned long d = f.d();
  OrbitZeroReport rep;

  // Archimedean place with the largest |c|_v.
  Rational best_lo = -1;
  Interval abs_c;
  const auto emb_count = static_cast<std::size_t>(t);
  for (std::size_t j = 0; j < emb_count; ++j) {
    CBall b = c.embed(j, 128);
    Interval v(b.abs_lower(144), b.abs_upper(144));
    if (v.lo > best_lo) {
      best_lo = v.lo;
      rep.embedding = j;
      abs_c = v;
    }
  }
  auto mu = c.minimal_polynomial();
  if (mu.back() != 1) {
    bool complete = true;
    auto fm = finite_max(mu, 128, complete);
    rep.place_is_global_max = complete && (!fm || fm->hi < abs_c.lo);
  }

  const Interval k2 = kappa2(t);
  FieldElement x = c;
  Integer dpow = 1;  // d^(n-1)
  for (unsigned long n = 1; n <= n_max; ++n) {
    x = f(x);
    if (x.max_coord_bits() > budget.coord_bits_cap)
      fail(ErrorCode::OverflowBudget, "iterate coordinates exceed the bit cap");
    OrbitZeroRow row;
    row.n = n;
    const Rational expo(dpow * static_cast<long>(d - 1));
    row.lower_bound = "undecided";
    if (x.is_zero()) {
      row.lower_bound = "fail";
    } else {
      for (long bits = 96; bits <= 2048; bits *= 2) {
        CBall cb = c.embed(rep.embedding, bits);
        CBall xb = x.embed(rep.embedding, bits);
        const auto prec = static_cast<mpfr_prec_t>(bits + 16);
        if (xb.contains_zero()) continue;
        Interval lc = log_interval({cb.abs_lower(prec), cb.abs_upper(prec)}, bits);
        Interval lk = log_interval(Interval::point(kappa1_value(t)), bits);
        Interval lhs = lk + expo * lc;
        Interval rhs = log_interval({xb.abs_lower(prec), xb.abs_upper(prec)}, bits);
        row.log_lower_side = lhs;
        row.log_abs_iterate = rhs;
        if (lhs.hi <= rhs.lo) {
          row.lower_bound = "pass";
          break;
        }
        if (lhs.lo > rhs.hi) {
          row.lower_bound = "fail";
          break;
        }
      }
    }
    row.height_bound = "undecided";
    Integer dn = dpow * static_cast<long>(d);
    for (long bits = 64; bits <= 1024; bits *= 2) {
      Interval hx = weil_height(x, bits).value;
      Interval hcb = weil_height(c, bits).value;
      Interval rhs = Rational(dn) * (k2 * hcb);
      row.height_iterate = hx;
      row.height_upper_side = rhs;
      if (hx.hi <= rhs.lo) {
        row.height_bound = "pass";
        break;
      }
      if (hx.lo > rhs.hi) {
        row.height_bound = "fail";
        break;
      }
    }
    rep.rows.push_back(row);
    dpow *= static_cast<long>(d);
  }
  return rep;
}

}  // namespace unicrit
