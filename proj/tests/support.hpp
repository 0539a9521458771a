#pragma once

// Helpers and independent oracles shared by the test binaries. The oracles
// use plain GMP and long double arithmetic only, never the library's own
// enumeration or root machinery.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "unicrit/dynamics.hpp"
#include "unicrit/heights.hpp"
#include "unicrit/irreducibility.hpp"
#include "unicrit/portrait.hpp"
#include "unicrit/semigroup.hpp"

namespace testing_support {

using unicrit::FieldElement;
using unicrit::Integer;
using unicrit::NumberField;
using unicrit::Rational;
using unicrit::UnicriticalMap;

inline NumberField Q() { return NumberField::rationals(); }

inline FieldElement elt(const NumberField& K, const std::string& s) { return unicrit::parse_element(K, s); }

inline UnicriticalMap qmap(unsigned long d, long c) { return UnicriticalMap(d, Q().from_rational(Rational(c))); }

inline std::set<std::string> strings(const std::vector<FieldElement>& xs) {
  std::set<std::string> out;
  for (const auto& x : xs) out.insert(x.to_string());
  return out;
}

inline Rational qpow(const Rational& x, unsigned long e) {
  Rational r = 1;
  for (unsigned long i = 0; i < e; ++i) r *= x;
  return r;
}

// Positive root of x^d - 2x - 1 by Newton's method in long double.
inline long double rho_numeric(unsigned long d) {
  long double x = 2.0L;
  for (int i = 0; i < 200; ++i) {
    long double f = std::pow(x, static_cast<long double>(d)) - 2 * x - 1;
    long double fp = d * std::pow(x, static_cast<long double>(d - 1)) - 2;
    x -= f / fp;
  }
  return x;
}

// PrePer(x^d + c, Q) by brute force: every rational of naive height at most
// e^B with B slightly above log|c|/d + log rho_d, followed by exact orbit
// iteration until a repeat or a height above the bound.
inline std::set<std::string> rational_preper_oracle(unsigned long d, const Rational& c) {
  const long double hc = std::log(std::max<long double>(std::abs(c.get_num().get_d()), c.get_den().get_d()));
  const long double B = hc / d + std::log(rho_numeric(d)) + 1e-9L;
  const long N = static_cast<long>(std::floor(std::exp(B)));
  auto height_ok = [&](const Rational& x) {
    Integer m = std::max(Integer(abs(x.get_num())), Integer(x.get_den()));
    return m <= N;
  };
  std::set<std::string> out;
  for (long b = 1; b <= N; ++b) {
    for (long a = -N; a <= N; ++a) {
      if (std::gcd(a, b) != 1) continue;
      Rational x(a, b);
      x.canonicalize();
      std::set<Rational> seen;
      bool preper = false;
      Rational y = x;
      while (height_ok(y)) {
        if (!seen.insert(y).second) {
          preper = true;
          break;
        }
        y = qpow(y, d) + c;
      }
      if (preper) out.insert(x.get_str());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Integer polynomials (index i multiplies x^i)

using ZPoly = std::vector<Integer>;

inline ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  ZPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// g(x^d + c) for integer c.
inline ZPoly compose_unicritical(const ZPoly& g, unsigned long d, const Integer& c) {
  ZPoly inner(d + 1, 0);
  inner[0] = c;
  inner[d] = 1;
  ZPoly acc{g.back()};
  for (std::size_t i = g.size() - 1; i-- > 0;) {
    acc = zmul(acc, inner);
    acc[0] += g[i];
  }
  return acc;
}

// phi_1 o ... o phi_k over Z, listed outermost first.
inline ZPoly compose_word(const std::vector<std::pair<unsigned long, long>>& word) {
  ZPoly g{Integer(word.front().second), Integer(0)};
  g.resize(word.front().first + 1, 0);
  g[word.front().first] = 1;
  for (std::size_t i = 1; i < word.size(); ++i) g = compose_unicritical(g, word[i].first, Integer(word[i].second));
  return g;
}

// Exact division test over Z for a monic divisor.
inline bool zdivides(const ZPoly& divisor, ZPoly p) {
  const std::size_t m = divisor.size() - 1;
  if (p.size() - 1 < m) return false;
  for (std::size_t i = p.size(); i-- > m;) {
    const Integer q = p[i];
    if (q != 0)
      for (std::size_t j = 0; j <= m; ++j) p[i - m + j] -= q * divisor[j];
  }
  for (std::size_t i = 0; i < m; ++i)
    if (p[i] != 0) return false;
  return true;
}

// Polynomials over F_p with small p.
using FPoly = std::vector<long>;

inline void ftrim(FPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline long fmodp(long a, long p) { return ((a % p) + p) % p; }

inline long finv(long a, long p) {
  long r = 1, e = p - 2;
  a = fmodp(a, p);
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

inline FPoly fmod_poly(FPoly a, const FPoly& m, long p) {
  ftrim(a);
  const long inv = finv(m.back(), p);
  while (a.size() >= m.size()) {
    long q = a.back() * inv % p;
    std::size_t shift = a.size() - m.size();
    for (std::size_t j = 0; j < m.size(); ++j) a[shift + j] = fmodp(a[shift + j] - q * m[j], p);
    ftrim(a);
  }
  return a;
}

inline FPoly fmulmod(const FPoly& a, const FPoly& b, const FPoly& m, long p) {
  if (a.empty() || b.empty()) return {};
  FPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return fmod_poly(r, m, p);
}

inline FPoly fgcd(FPoly a, FPoly b, long p) {
  ftrim(a);
  ftrim(b);
  while (!b.empty()) {
    FPoly r = fmod_poly(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    long inv = finv(a.back(), p);
    for (auto& x : a) x = x * inv % p;
  }
  return a;
}

// Degrees of the irreducible factors of a squarefree f mod p (distinct
// degree factorization); empty when f is not squarefree mod p.
inline std::vector<int> factor_degrees_mod_p(const ZPoly& f, long p) {
  FPoly a;
  for (const auto& c : f) a.push_back(fmodp(Integer(c % p).get_si(), p));
  ftrim(a);
  if (a.size() != f.size()) return {};
  FPoly da;
  for (std::size_t i = 1; i < a.size(); ++i) da.push_back(fmodp(a[i] * static_cast<long>(i), p));
  ftrim(da);
  if (da.empty() || fgcd(a, da, p).size() != 1) return {};
  std::vector<int> degs;
  FPoly rest = a;
  FPoly xp{0, 1};
  FPoly h = xp;
  for (int i = 1; static_cast<int>(rest.size()) - 1 >= 2 * i; ++i) {
    // h = x^(p^i) mod rest
    FPoly base = h;
    FPoly acc{1};
    long e = p;
    while (e) {
      if (e & 1) acc = fmulmod(acc, base, rest, p);
      base = fmulmod(base, base, rest, p);
      e >>= 1;
    }
    h = acc;
    FPoly diff = h;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = fmodp(diff[1] - 1, p);
    ftrim(diff);
    FPoly g = fgcd(rest, diff, p);
    int gd = static_cast<int>(g.size()) - 1;
    for (int k = 0; k < gd / i; ++k) degs.push_back(i);
    if (gd > 0) {
      // rest /= g
      FPoly q(rest.size() - g.size() + 1, 0);
      FPoly r = rest;
      for (std::size_t k = q.size(); k-- > 0;) {
        q[k] = r[k + g.size() - 1];
        for (std::size_t j = 0; j < g.size(); ++j) r[k + j] = fmodp(r[k + j] - q[k] * g[j], p);
      }
      rest = q;
      ftrim(rest);
      h = fmod_poly(h, rest, p);
    }
  }
  if (rest.size() > 1) degs.push_back(static_cast<int>(rest.size()) - 1);
  return degs;
}

// Roots of a monic integer polynomial by Durand-Kerner in long double.
inline std::vector<std::complex<long double>> numeric_roots(const ZPoly& f) {
  const std::size_t n = f.size() - 1;
  std::vector<std::complex<long double>> z(n);
  const std::complex<long double> seed(0.4L, 0.9L);
  long double scale = 1;
  for (const auto& c : f) scale = std::max(scale, std::pow(std::abs(c.get_d()), 1.0L / n));
  for (std::size_t i = 0; i < n; ++i) z[i] = scale * std::pow(seed, static_cast<long double>(i));
  auto eval = [&](std::complex<long double> x) {
    std::complex<long double> acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + static_cast<long double>(f[i].get_d());
    return acc;
  };
  for (int it = 0; it < 2000; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      std::complex<long double> den = 1;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) den *= z[i] - z[j];
      z[i] -= eval(z[i]) / den;
    }
  }
  return z;
}

// Irreducibility over Q of a monic integer polynomial of small degree. Mod-p
// factor degree patterns rule out factor degrees; any degree left over is
// settled by rounding products of numeric root subsets and dividing exactly.
inline bool oracle_irreducible(const ZPoly& f) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n <= 1) return true;
  std::vector<bool> possible(n + 1, true);
  for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L, 43L, 47L, 53L, 59L, 61L, 67L, 71L, 73L}) {
    auto degs = factor_degrees_mod_p(f, p);
    if (degs.empty()) continue;
    std::vector<bool> sums(n + 1, false);
    sums[0] = true;
    for (int dg : degs)
      for (int s = n; s >= dg; --s)
        if (sums[s - dg]) sums[s] = true;
    for (int k = 1; k < n; ++k) possible[k] = possible[k] && sums[k];
  }
  bool any = false;
  for (int k = 1; k <= n / 2; ++k) any = any || possible[k];
  if (!any) return true;

  auto roots = numeric_roots(f);
  for (int k = 1; k <= n / 2; ++k) {
    if (!possible[k]) continue;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      std::vector<std::complex<long double>> g{1};
      for (int i : idx) {
        std::vector<std::complex<long double>> ng(g.size() + 1, 0);
        for (std::size_t j = 0; j < g.size(); ++j) {
          ng[j + 1] += g[j];
          ng[j] -= g[j] * roots[i];
        }
        g = ng;
      }
      ZPoly gz;
      bool integral = true;
      for (const auto& c : g) {
        long double r = std::round(c.real());
        if (std::abs(c.imag()) > 1e-3L || std::abs(c.real() - r) > 1e-3L) integral = false;
        gz.push_back(Integer(std::to_string(static_cast<long long>(r))));
      }
      if (integral && zdivides(gz, f)) return false;
      int i = k - 1;
      while (i >= 0 && idx[i] == n - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return true;
}

}  // namespace testing_support
