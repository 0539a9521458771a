#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace unicrit;
using namespace testing_support;

namespace {

long double mid(const Interval& x) { return (to_double_down(x.lo) + to_double_up(x.hi)) / 2; }

bool contains(const Interval& x, long double v, long double slack = 0) {
  return to_double_down(x.lo) - slack <= v && v <= to_double_up(x.hi) + slack;
}

// Random S-integer: integral power-basis coordinates over a product of
// primes from S.
FieldElement random_s_integer(const NumberField& K, const std::vector<long>& S, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> ex(0, 2);
  Integer den = 1;
  for (long p : S)
    for (int e = ex(rng); e > 0; --e) den *= p;
  std::vector<Rational> c;
  for (int i = 0; i < K.degree(); ++i) {
    Rational q(num(rng), den);
    q.canonicalize();
    c.push_back(q);
  }
  return K.element(c);
}

}  // namespace

TEST(Height, TwoThirdsIsExactlyLogThree) {
  auto a = Q().from_rational(Rational(2, 3));
  EXPECT_EQ(compare_height(a, HeightBound::log_of(3)), 0);
  EXPECT_TRUE(height_at_most(a, HeightBound::log_of(3)));
  EXPECT_GT(compare_height(a, HeightBound::log_of(Rational(299, 100))), 0);
  EXPECT_TRUE(contains(weil_height(a).value, std::log(3.0L)));
}

TEST(Height, OnePlusRootTwo) {
  auto K = NumberField::parse("x^2 - 2");
  auto h = weil_height(elt(K, "1,1"), 64);
  const long double want = 0.5L * std::log(1 + std::sqrt(2.0L));
  EXPECT_LT(std::abs(mid(h.value) - want), 1e-6L);
  EXPECT_LT(to_double_up(h.value.hi) - to_double_down(h.value.lo), 1e-9);
}

TEST(Height, KroneckerZeroIsExact) {
  auto K = NumberField::parse("x^4 + x^3 + x^2 + x + 1");
  for (const auto& z : roots_of_unity(K, 0)) {
    auto h = weil_height(z);
    EXPECT_TRUE(h.exact_zero) << z.to_string();
    EXPECT_EQ(compare_height(z, HeightBound::of_value(0)), 0);
  }
  EXPECT_TRUE(weil_height(K.zero()).exact_zero);
  // (3 + 4i)/5 lies on the unit circle without being a root of unity.
  auto G = NumberField::parse("x^2 + 1");
  auto u = elt(G, "3/5,4/5");
  auto h = weil_height(u);
  EXPECT_FALSE(h.exact_zero);
  EXPECT_TRUE(contains(h.value, 0.5L * std::log(5.0L), 1e-15L));
  EXPECT_GT(compare_height(u, HeightBound::of_value(0)), 0);
}

TEST(Height, ExactTieInQuadraticField) {
  // 3i has minimal polynomial x^2 + 9, so h = log 3 exactly.
  auto G = NumberField::parse("x^2 + 1");
  EXPECT_EQ(compare_height(elt(G, "0,3"), HeightBound::log_of(3)), 0);
  EXPECT_LT(compare_height(elt(G, "0,3"), HeightBound::log_of(Rational(301, 100))), 0);
  // 1 + i has h = (1/2) log 2 < log 2.
  EXPECT_LT(compare_height(elt(G, "1,1"), HeightBound::log_of(2)), 0);
}

TEST(Height, MahlerMeasures) {
  auto lehmer = mahler_measure({1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1});
  EXPECT_TRUE(contains(lehmer, 1.17628081825991750654L, 1e-12L));
  auto golden = mahler_measure({-1, -1, 1});
  EXPECT_TRUE(contains(golden, (1 + std::sqrt(5.0L)) / 2, 1e-15L));
  auto cyclo = mahler_measure(cyclotomic(15));
  EXPECT_EQ(cyclo.lo, 1);
  EXPECT_EQ(cyclo.hi, 1);
}

TEST(Height, RationalHeightsMatchNaiveFormula) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> num(-500, 500), den(1, 500);
  for (int i = 0; i < 200; ++i) {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    if (q == 0) continue;
    long double want = std::log(std::max<long double>(std::abs(q.get_num().get_d()), q.get_den().get_d()));
    EXPECT_TRUE(contains(weil_height(Q().from_rational(q)).value, want, 1e-15L)) << q.get_str();
  }
}

TEST(Height, HouseHeightAndGapInequalitiesOnRandomSIntegers) {
  std::mt19937 rng(2024);
  const std::vector<std::pair<const char*, std::vector<long>>> cases = {
      {"x", {2, 3}}, {"x^2 + 1", {2, 5}}, {"x^2 - 2", {3}}};
  int checked = 0;
  while (checked < 1000) {
    for (const auto& [m, primes] : cases) {
      auto K = NumberField::parse(m);
      std::vector<Integer> ps(primes.begin(), primes.end());
      auto S = PlaceSet::from_primes(ps);
      auto a = random_s_integer(K, primes, rng);
      if (a.is_zero() || !is_s_integer(a, S)) continue;
      if (compare_height(a, HeightBound::of_value(2)) > 0) continue;
      if (weil_height(a).exact_zero) continue;
      ++checked;
      EXPECT_TRUE(check_house_height_inequality(a, S)) << m << " " << a.to_string();
      EXPECT_TRUE(sz_check(a)) << m << " " << a.to_string();
      // S-house at least the archimedean house.
      EXPECT_GE(s_house(a, S).hi, house(a).lo);
    }
  }
}

TEST(Height, PlaceCount) {
  EXPECT_EQ(place_count_lower(Q(), PlaceSet::from_primes({Integer(2), Integer(3)})), 3);
  EXPECT_EQ(place_count_lower(NumberField::parse("x^2 + 1"), PlaceSet::archimedean()), 1);
  EXPECT_EQ(place_count_lower(NumberField::parse("x^3 - 2"), PlaceSet::from_primes({Integer(5)})), 3);
}

TEST(Constants, RhoTwoIsOnePlusRootTwo) {
  auto r = rho_d(2, 80);
  const long double want = 1 + std::sqrt(2.0L);
  EXPECT_TRUE(contains(r, want, 1e-15L));
  EXPECT_LT(to_double_up(r.hi) - to_double_down(r.lo), 1e-10);
}

TEST(Constants, RhoMatchesNewton) {
  for (unsigned long d = 2; d <= 30; ++d) EXPECT_TRUE(contains(rho_d(d), rho_numeric(d), 1e-15L)) << d;
}

TEST(Constants, RhoPowerDecreasesAndStaysAboveThree) {
  Interval prev = rho_d_pow_d(2);
  EXPECT_GT(prev.lo, 3);
  for (unsigned long d = 3; d <= 50; ++d) {
    Interval cur = rho_d_pow_d(d);
    EXPECT_GT(cur.lo, 3) << d;
    EXPECT_LT(cur.hi, prev.lo) << d;
    // rho^d = 2 rho + 1 on the nose.
    Interval r = rho_d(d);
    EXPECT_LE(cur.lo, 2 * r.hi + 1);
    EXPECT_GE(cur.hi, 2 * r.lo + 1);
    prev = cur;
  }
}

TEST(Constants, VoutierSzKappa) {
  EXPECT_TRUE(contains(voutier_bound(1), std::log(2.0L), 1e-15L));
  EXPECT_EQ(sz_value(1), Rational(33, 32));
  EXPECT_EQ(kappa1_value(1), Rational(65, 64));
  EXPECT_EQ(sz_value(3), Rational(129, 128));
  EXPECT_EQ(prime_pi(2), 1u);
  EXPECT_EQ(prime_pi(100), 25u);
  auto b = bounds_report(1, 2, 5);
  EXPECT_EQ(b.sz, Rational(33, 32));
  EXPECT_TRUE(contains(b.V_t, std::log(2.0L), 1e-15L));
  EXPECT_TRUE(contains(b.rho_d, rho_numeric(5), 1e-15L));
  EXPECT_THROW(bounds_report(0, 2, 5), Error);
}

TEST(CanonicalHeight, PreperiodicPointsHaveExactZero) {
  auto f = qmap(2, -1);
  for (long x : {-1L, 0L, 1L}) {
    auto e = canonical_height_estimate(f, Q().from_rational(x), 10);
    EXPECT_TRUE(e.exact_zero);
  }
}

TEST(CanonicalHeight, BandsAreNested) {
  auto f = qmap(2, -2);
  auto e = canonical_height_estimate(f, Q().from_rational(3), 6);
  EXPECT_FALSE(e.exact_zero);
  ASSERT_GE(e.bands.size(), 2u);
  for (std::size_t i = 1; i < e.bands.size(); ++i) {
    EXPECT_GE(e.bands[i].lo, e.bands[i - 1].lo);
    EXPECT_LE(e.bands[i].hi, e.bands[i - 1].hi);
  }
  EXPECT_GT(e.band.lo, 0);
}

TEST(CanonicalHeight, OrbitZeroInequalitiesHold) {
  auto r = orbitzero_inequality_check(qmap(2, 5), 6);
  ASSERT_FALSE(r.rows.empty());
  for (const auto& row : r.rows) {
    EXPECT_NE(row.lower_bound, "fail") << row.n;
    EXPECT_NE(row.height_bound, "fail") << row.n;
  }
}

TEST(NumberFieldInvariants, EmbeddingsRespectProducts) {
  std::mt19937 rng(9);
  auto K = NumberField::parse("x^3 - 2");
  for (int i = 0; i < 30; ++i) {
    auto a = random_s_integer(K, {2}, rng), b = random_s_integer(K, {3}, rng);
    for (std::size_t j = 0; j < 3; ++j) {
      CBall ea = a.embed(j, 80), eb = b.embed(j, 80), ep = (a * b).embed(j, 80);
      CBall prod = ea * eb;
      Rational dx = prod.re - ep.re, dy = prod.im - ep.im, r = prod.rad + ep.rad;
      EXPECT_LE(dx * dx + dy * dy, r * r);
    }
  }
}

TEST(NumberFieldInvariants, BoundedHeightSetsAreMonotone) {
  auto K = NumberField::parse("x^2 + 1");
  std::set<std::string> prev;
  for (Rational q : {Rational(1), Rational(3, 2), Rational(2), Rational(5, 2)}) {
    auto cur = strings(bounded_height_elements(K, HeightBound::log_of(q)));
    for (const auto& s : prev) EXPECT_TRUE(cur.count(s)) << s;
    prev = cur;
  }
}

TEST(NumberFieldInvariants, RootsOfUnityFormAGroupOfHeightZero) {
  for (const char* m : {"x^2 + x + 1", "x^4 + 1", "x^4 - x^2 + 1"}) {
    auto K = NumberField::parse(m);
    auto mu = roots_of_unity(K, 0);
    auto set = strings(mu);
    for (const auto& a : mu) {
      EXPECT_TRUE(weil_height(a).exact_zero);
      EXPECT_TRUE(set.count(a.inverse().to_string()));
      for (const auto& b : mu) EXPECT_TRUE(set.count((a * b).to_string()));
    }
  }
}
