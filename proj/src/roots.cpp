#include "unicrit/roots.hpp"

#include <algorithm>
#include <cmath>

#include "unicrit/error.hpp"

namespace unicrit {

namespace {

struct GaussQ {
  Rational re;
  Rational im;
};

// Exact p(z) and p'(z) at a Gaussian rational point.
std::pair<GaussQ, GaussQ> eval_with_derivative(std::span<const Integer> c, const GaussQ& z) {
  GaussQ p{0, 0}, dp{0, 0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    // dp = dp*z + p ; p = p*z + a
    Rational dre = dp.re * z.re - dp.im * z.im + p.re;
    Rational dim = dp.re * z.im + dp.im * z.re + p.im;
    dp = {dre, dim};
    Rational pre = p.re * z.re - p.im * z.im + *it;
    Rational pim = p.re * z.im + p.im * z.re;
    p = {pre, pim};
  }
  return {p, dp};
}

Complex horner(std::span<const Float> c, const Complex& z, Complex& deriv) {
  const mpfr_prec_t prec = z.re.prec();
  Complex p(prec), dp(prec);
  for (std::size_t k = c.size(); k-- > 0;) {
    dp = dp * z + p;
    p = p * z;
    p.re = p.re + c[k];
  }
  deriv = dp;
  return p;
}

Complex with_prec(const Complex& z, mpfr_prec_t prec) {
  Complex r(prec);
  mpfr_set(r.re.get(), z.re.get(), MPFR_RNDN);
  mpfr_set(r.im.get(), z.im.get(), MPFR_RNDN);
  return r;
}

long bit_length(const Integer& z) {
  return z == 0 ? 0 : static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 2));
}

// Aberth-Ehrlich sweeps until corrections fall below the working precision.
void aberth(std::span<const Integer> coeffs, std::vector<Complex>& z, mpfr_prec_t prec) {
  const std::size_t n = z.size();
  std::vector<Float> c;
  c.reserve(coeffs.size());
  for (const auto& a : coeffs) c.emplace_back(Rational(a), prec);
  for (auto& zk : z) zk = with_prec(zk, prec);

  const int max_sweeps = 200 + 40 * static_cast<int>(n) + static_cast<int>(prec);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool converged = true;
    for (std::size_t k = 0; k < n; ++k) {
      Complex dp(prec);
      Complex p = horner(c, z[k], dp);
      if (p.re.is_zero() && p.im.is_zero()) continue;
      if (dp.re.is_zero() && dp.im.is_zero()) {
        // Nudge off a critical point.
        Float eps(Rational(1, 1024), prec);
        z[k].re = z[k].re + eps;
        converged = false;
        continue;
      }
      Complex w = p / dp;
      Complex sum(prec);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == k) continue;
        Complex diff = z[k] - z[j];
        if (diff.re.is_zero() && diff.im.is_zero()) continue;
        Complex one(prec);
        mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
        sum = sum + one / diff;
      }
      Complex one(prec);
      mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
      Complex denom = one - w * sum;
      Complex corr = (denom.re.is_zero() && denom.im.is_zero()) ? w : w / denom;
      z[k] = z[k] - corr;
      Float cz = corr.abs();
      Float zz = z[k].abs();
      long ce = cz.exponent();
      long ze = std::max(zz.exponent(), 1L);
      if (!cz.is_zero() && ce > ze - static_cast<long>(prec) + 6) converged = false;
    }
    if (converged) return;
  }
}

bool certify(std::span<const Integer> coeffs, const std::vector<Complex>& z, long target_bits,
             std::vector<IsolatedRoot>& out) {
  const std::size_t n = z.size();
  std::vector<GaussQ> centres(n);
  std::vector<Rational> radii(n);
  for (std::size_t k = 0; k < n; ++k) {
    centres[k] = {z[k].re.to_rational(), z[k].im.to_rational()};
    auto [p, dp] = eval_with_derivative(coeffs, centres[k]);
    Rational p2 = p.re * p.re + p.im * p.im;
    if (p2 == 0) {
      radii[k] = 0;
      continue;
    }
    Rational dp2 = dp.re * dp.re + dp.im * dp.im;
    if (dp2 == 0) return false;
    Rational r2 = Rational(static_cast<long>(n * n)) * p2 / dp2;
    radii[k] = sqrt_upper(r2, 64);
  }
  // Precision target relative to max(1, |z|).
  for (std::size_t k = 0; k < n; ++k) {
    Rational scale = abs(centres[k].re) + abs(centres[k].im);
    if (scale < 1) scale = 1;
    Rational limit = scale;
    mpz_class two_pow = 1;
    mpz_mul_2exp(two_pow.get_mpz_t(), two_pow.get_mpz_t(), static_cast<mp_bitcnt_t>(target_bits));
    limit /= Rational(two_pow);
    if (radii[k] > limit) return false;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational dr = centres[i].re - centres[j].re, di = centres[i].im - centres[j].im;
      Rational s = radii[i] + radii[j];
      if (dr * dr + di * di <= s * s) return false;
    }
  out.clear();
  for (std::size_t k = 0; k < n; ++k)
    out.push_back({CBall(centres[k].re, centres[k].im, radii[k]), false});
  // A disc meeting the real axis whose mirror image meets no other disc
  // holds a real root.
  for (std::size_t k = 0; k < n; ++k) {
    const auto& b = out[k].ball;
    if (abs(b.im) > b.rad) continue;
    bool alone = true;
    for (std::size_t j = 0; j < n && alone; ++j) {
      if (j == k) continue;
      const auto& o = out[j].ball;
      Rational dr = b.re - o.re, di = -b.im - o.im;
      Rational s = b.rad + o.rad;
      if (dr * dr + di * di <= s * s) alone = false;
    }
    if (!alone) return false;  // neither certified real nor off the axis yet
    out[k].real = true;
    out[k].ball.im = 0;
  }
  return true;
}

}  // namespace

Rational root_modulus_bound(std::span<const Integer> coeffs) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n < 1) return 0;
  // Fujiwara: 2 * max_k |a_{n-k}/a_n|^{1/k}, using bit lengths for a cheap
  // but valid power-of-two bound.
  const long lead_bits = bit_length(coeffs.back()) - 1;  // |a_n| >= 2^lead_bits
  long best = -(1L << 30);
  for (int k = 1; k <= n; ++k) {
    const auto& a = coeffs[static_cast<std::size_t>(n - k)];
    if (a == 0) continue;
    long num_bits = bit_length(a);  // |a| < 2^num_bits
    long e = num_bits - lead_bits;  // ratio < 2^e
    long root_e = (e >= 0) ? (e + k - 1) / k : -((-e) / k);
    best = std::max(best, root_e);
  }
  if (best == -(1L << 30)) return 0;
  Rational r = 2;
  if (best >= 0) {
    Integer p = 1;
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(best));
    r *= p;
  } else {
    Integer p = 1;
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(-best));
    r /= p;
  }
  return r;
}

std::vector<IsolatedRoot> isolate_roots(std::span<const Integer> coeffs, long target_bits) {
  std::vector<Integer> c(coeffs.begin(), coeffs.end());
  while (!c.empty() && c.back() == 0) c.pop_back();
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1) return {};
  if (n == 1) {
    Rational root(-c[0], c[1]);
    root.canonicalize();
    return {{CBall(root, 0, 0), true}};
  }

  long max_bits = 0;
  for (const auto& a : c) max_bits = std::max(max_bits, bit_length(a));
  mpfr_prec_t prec = static_cast<mpfr_prec_t>(std::max(64L, target_bits + 32) + 2 * max_bits);

  // Initial guesses on a circle inside the root bound, with an irrational-ish
  // angular offset to avoid symmetric stagnation.
  Rational bound = root_modulus_bound(c);
  double r0 = std::max(0.5, to_double_up(bound) * 0.5);
  if (!std::isfinite(r0)) r0 = 1e300;
  std::vector<Complex> z;
  z.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    double ang = 2.0 * M_PI * k / n + 0.4;
    Complex zk(prec);
    mpfr_set_d(zk.re.get(), r0 * std::cos(ang), MPFR_RNDN);
    mpfr_set_d(zk.im.get(), r0 * std::sin(ang), MPFR_RNDN);
    z.push_back(std::move(zk));
  }
  if (to_double_up(bound) > 1e300) {
    // Huge coefficients: start on a circle of radius equal to the bound.
    Float fb(bound, prec);
    for (int k = 0; k < n; ++k) {
      double ang = 2.0 * M_PI * k / n + 0.4;
      Float cs(prec), sn(prec);
      mpfr_set_d(cs.get(), std::cos(ang) * 0.5, MPFR_RNDN);
      mpfr_set_d(sn.get(), std::sin(ang) * 0.5, MPFR_RNDN);
      z[static_cast<std::size_t>(k)] = Complex(fb * cs, fb * sn);
    }
  }

  std::vector<IsolatedRoot> out;
  for (int attempt = 0; attempt < 12; ++attempt) {
    aberth(c, z, prec);
    if (certify(c, z, target_bits, out)) return out;
    prec *= 2;
  }
  fail(ErrorCode::Internal, "root isolation did not converge for " + integer_poly_to_string(c));
}

}  // namespace unicrit
