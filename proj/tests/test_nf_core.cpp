#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace unicrit;
using namespace testing_support;

namespace {

FieldElement random_element(const NumberField& K, std::mt19937& rng, int span = 5, int den = 3) {
  std::uniform_int_distribution<int> num(-span, span);
  std::uniform_int_distribution<int> dd(1, den);
  std::vector<Rational> c;
  for (int i = 0; i < K.degree(); ++i) {
    Rational q(num(rng), dd(rng));
    q.canonicalize();
    c.push_back(q);
  }
  return K.element(c);
}

}  // namespace

TEST(Poly, ParsePrintRoundTrip) {
  auto p = parse_integer_poly("x^3 - 2*x + 1");
  EXPECT_EQ(p, (std::vector<Integer>{1, -2, 0, 1}));
  EXPECT_EQ(parse_integer_poly(integer_poly_to_string(p)), p);
  EXPECT_EQ(parse_integer_poly("x"), (std::vector<Integer>{0, 1}));
  EXPECT_THROW(parse_integer_poly("x^2 + y"), Error);
}

TEST(Poly, GcdAndSquarefreePart) {
  QPoly a = QPoly::from_integers(std::vector<Integer>{-1, 0, 1});       // x^2 - 1
  QPoly b = QPoly::from_integers(std::vector<Integer>{1, 2, 1});        // (x+1)^2
  EXPECT_EQ(poly_gcd(a, b), QPoly::from_integers(std::vector<Integer>{1, 1}));
  QPoly sq = b * a;  // (x+1)^3 (x-1)
  EXPECT_EQ(squarefree_part(sq), a);
}

TEST(Poly, InterpolationReproducesPolynomial) {
  QPoly p = QPoly::from_integers(std::vector<Integer>{3, -1, 0, 2});
  std::vector<Rational> xs, ys;
  for (int i = 0; i < 4; ++i) {
    xs.emplace_back(i);
    ys.push_back(p.eval(Rational(i)));
  }
  EXPECT_EQ(interpolate(xs, ys), p);
}

TEST(Poly, DiscriminantMatchesClosedForms) {
  for (long a = 1; a <= 3; ++a)
    for (long b = -4; b <= 4; ++b)
      for (long c = -4; c <= 4; ++c)
        EXPECT_EQ(integer_poly_discriminant(std::vector<Integer>{c, b, a}), b * b - 4 * a * c);
  for (long p = -5; p <= 5; ++p)
    for (long q = -5; q <= 5; ++q)
      EXPECT_EQ(integer_poly_discriminant(std::vector<Integer>{q, p, 0, 1}), -4 * p * p * p - 27 * q * q);
  EXPECT_EQ(integer_poly_discriminant(std::vector<Integer>{1, 0, 0, 0, 1}), 256);
  EXPECT_EQ(integer_poly_discriminant(std::vector<Integer>{1, 1, 1, 1, 1}), 125);
  EXPECT_EQ(integer_poly_discriminant(std::vector<Integer>{-1, 2, -1}), 0);
}

TEST(Roots, BallsEncloseNumericRootsAndCountRealOnes) {
  const std::vector<std::vector<Integer>> polys = {
      {-1, -1, 0, 0, 0, 1},            // x^5 - x - 1
      {1, 0, 0, 0, 1},                 // x^4 + 1
      {-2, 0, 0, 1},                   // x^3 - 2
      {1, -4, 1},                      // x^2 - 4x + 1
  };
  const std::vector<int> real_counts = {1, 0, 1, 2};
  for (std::size_t k = 0; k < 4; ++k) {
    auto roots = isolate_roots(polys[k], 80);
    ASSERT_EQ(roots.size(), polys[k].size() - 1);
    int reals = 0;
    for (const auto& r : roots) reals += r.real;
    EXPECT_EQ(reals, real_counts[k]);
    auto numeric = numeric_roots(polys[k]);
    for (const auto& z : numeric) {
      int hits = 0;
      for (const auto& r : roots) {
        long double dx = z.real() - r.ball.re.get_d(), dy = z.imag() - r.ball.im.get_d();
        if (std::sqrt(dx * dx + dy * dy) <= r.ball.rad.get_d() + 1e-12) ++hits;
      }
      EXPECT_EQ(hits, 1);
    }
  }
}

TEST(Roots, SeparatesClusteredRoots) {
  // x^8 - 2 (1000 x - 1)^2 has two real roots within about 1e-9 of 1/1000.
  std::vector<Integer> p(9, 0);
  p[8] = 1;
  p[2] = -2000000;
  p[1] = 4000;
  p[0] = -2;
  auto roots = isolate_roots(p, 64);
  ASSERT_EQ(roots.size(), 8u);
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      Rational dx = roots[i].ball.re - roots[j].ball.re, dy = roots[i].ball.im - roots[j].ball.im;
      Rational r = roots[i].ball.rad + roots[j].ball.rad;
      EXPECT_GT(dx * dx + dy * dy, r * r);
    }
}

TEST(NumberField, RejectsReducibleAndNonMonic) {
  EXPECT_THROW(NumberField::parse("x^2 - 1"), Error);
  EXPECT_THROW(NumberField::parse("2*x^2 - 1"), Error);
  EXPECT_THROW(NumberField::parse("x^4 + 4"), Error);  // (x^2+2x+2)(x^2-2x+2)
  EXPECT_NO_THROW(NumberField::parse("x^4 - 10*x^2 + 1"));
}

TEST(NumberField, Discriminants) {
  EXPECT_EQ(NumberField::parse("x^2 + 1").discriminant(), -4);
  EXPECT_EQ(NumberField::parse("x^3 - 2").discriminant(), -108);
  EXPECT_EQ(NumberField::parse("x^2 - x - 1").discriminant(), 5);
}

TEST(NumberField, EmbeddingOrder) {
  auto K = NumberField::parse("x^3 - 2");
  EXPECT_EQ(K.real_embedding_count(), 1);
  auto e = K.embeddings();
  ASSERT_EQ(e.size(), 3u);
  EXPECT_TRUE(e[0].real);
  EXPECT_GT(e[1].ball.im, 0);
  EXPECT_EQ(e[2].ball.im, -e[1].ball.im);
}

TEST(NumberField, FieldAxiomsOnRandomElements) {
  std::mt19937 rng(7);
  for (const char* m : {"x", "x^2 + 1", "x^3 - 2", "x^4 + x^3 + x^2 + x + 1"}) {
    auto K = NumberField::parse(m);
    for (int i = 0; i < 40; ++i) {
      auto a = random_element(K, rng), b = random_element(K, rng), c = random_element(K, rng);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a - a, K.zero());
      if (!a.is_zero()) {
        EXPECT_EQ(a * a.inverse(), K.one());
        EXPECT_EQ((b / a) * a, b);
      }
      EXPECT_EQ(a.pow(3), a * a * a);
    }
  }
}

TEST(NumberField, NormIsMultiplicativeAndMinpolyAnnihilates) {
  std::mt19937 rng(11);
  auto K = NumberField::parse("x^4 - 10*x^2 + 1");
  for (int i = 0; i < 25; ++i) {
    auto a = random_element(K, rng), b = random_element(K, rng);
    EXPECT_EQ((a * b).norm(), a.norm() * b.norm());
    auto mp = a.minimal_polynomial();
    FieldElement acc = K.zero();
    for (std::size_t j = mp.size(); j-- > 0;) acc = acc * a + K.from_rational(Rational(mp[j]));
    EXPECT_TRUE(acc.is_zero());
    EXPECT_EQ(K.degree() % a.algebraic_degree(), 0);
  }
  // sqrt 2 = (a^3 - 9a)/2 with a = sqrt 2 + sqrt 3.
  auto s = K.element({0, Rational(-9, 2), 0, Rational(1, 2)});
  EXPECT_EQ(s * s, K.from_rational(2));
  EXPECT_EQ(s.minimal_polynomial(), (std::vector<Integer>{-2, 0, 1}));
}

TEST(NumberField, RootsOfUnityCounts) {
  const std::vector<std::pair<const char*, std::size_t>> cases = {
      {"x", 2},           {"x^2 + 1", 4},      {"x^2 + x + 1", 6},
      {"x^2 - 2", 2},     {"x^4 + 1", 8},      {"x^4 + x^3 + x^2 + x + 1", 10},
      {"x^4 - x^2 + 1", 12}, {"x^3 - 2", 2},
  };
  for (const auto& [m, n] : cases) {
    auto K = NumberField::parse(m);
    auto mu = roots_of_unity(K, 0);
    EXPECT_EQ(mu.size(), n) << m;
    for (const auto& z : mu) {
      unsigned long w = root_of_unity_order(z);
      ASSERT_GT(w, 0u);
      EXPECT_TRUE(z.pow(w).is_one());
    }
  }
  auto K = NumberField::parse("x^2 + 1");
  EXPECT_EQ(roots_of_unity(K, 2).size(), 2u);
  EXPECT_EQ(root_of_unity_order(K.gen()), 4u);
  EXPECT_EQ(root_of_unity_order(K.from_rational(2)), 0u);
  EXPECT_EQ(root_of_unity_order(elt(K, "3/5,4/5")), 0u);
}

TEST(NumberField, RootsInKRecoverPlantedRoots) {
  std::mt19937 rng(3);
  for (const char* m : {"x", "x^2 + 1", "x^3 - 2", "x^2 - x - 1"}) {
    auto K = NumberField::parse(m);
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<FieldElement> planted;
      for (int i = 0; i < 3; ++i) planted.push_back(random_element(K, rng, 4, 2));
      KPoly p{K.one()};
      for (const auto& r : planted) {
        KPoly q(p.size() + 1, K.zero());
        for (std::size_t i = 0; i < p.size(); ++i) {
          q[i + 1] = q[i + 1] + p[i];
          q[i] = q[i] - p[i] * r;
        }
        p = q;
      }
      // An irreducible factor without roots in K keeps the search honest.
      KPoly extra{K.from_rational(-7), K.zero(), K.zero(), K.zero(), K.zero(), K.one()};
      KPoly prod(p.size() + extra.size() - 1, K.zero());
      for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < extra.size(); ++j) prod[i + j] = prod[i + j] + p[i] * extra[j];
      auto roots = roots_in_K(prod);
      std::set<std::string> want = strings(planted);
      EXPECT_EQ(strings(roots), want) << m;
    }
  }
}

TEST(NumberField, NthRoots) {
  auto K = NumberField::parse("x^2 - 2");
  auto r = nth_roots_in_K(K.from_rational(2), 2);
  EXPECT_EQ(strings(r), (std::set<std::string>{"a", "-a"}));
  EXPECT_TRUE(nth_roots_in_K(K.from_rational(3), 2).empty());
  auto Qf = Q();
  EXPECT_EQ(strings(nth_roots_in_K(Qf.from_rational(32), 5)), (std::set<std::string>{"2"}));
  EXPECT_EQ(strings(nth_roots_in_K(Qf.from_rational(Rational(16, 81)), 4)),
            (std::set<std::string>{"2/3", "-2/3"}));
}

TEST(NumberField, BoundedHeightOverQMatchesBruteForce) {
  auto K = Q();
  for (long Qb : {1L, 2L, 3L, 5L, 7L}) {
    auto got = strings(bounded_height_elements(K, HeightBound::log_of(Qb)));
    std::set<std::string> want;
    for (long b = 1; b <= Qb; ++b)
      for (long a = -Qb; a <= Qb; ++a)
        if (std::gcd(a, b) == 1) want.insert(Rational(a, b).get_str());
    EXPECT_EQ(got, want) << Qb;
  }
}

TEST(NumberField, BoundedHeightOverGaussianRationalsMatchesNumericOracle) {
  // Elements (u + v i)/w of height at most log 2 have w <= 2 M <= 8 and
  // |u|, |v| <= w M with M <= 4.
  auto K = NumberField::parse("x^2 + 1");
  const long double B = std::log(2.0L);
  std::set<std::string> want, boundary;
  for (long w = 1; w <= 8; ++w)
    for (long u = -32; u <= 32; ++u)
      for (long v = -32; v <= 32; ++v) {
        Rational p(u, w), q(v, w);
        p.canonicalize();
        q.canonicalize();
        FieldElement a = K.element({p, q});
        long double h;
        if (q == 0) {
          h = std::log(std::max<long double>(std::abs(p.get_num().get_d()), p.get_den().get_d()));
        } else {
          // minimal polynomial x^2 - 2p x + p^2 + q^2 cleared of denominators
          Rational b = -2 * p, c = p * p + q * q;
          Integer den = lcm(b.get_den(), c.get_den());
          long double lead = den.get_d();
          long double modulus = std::sqrt(Rational(p * p + q * q).get_d());
          h = 0.5L * std::log(lead * std::max<long double>(1, modulus) * std::max<long double>(1, modulus));
        }
        if (std::abs(h - B) < 1e-12L)
          boundary.insert(a.to_string());
        else if (h < B)
          want.insert(a.to_string());
      }
  auto got = strings(bounded_height_elements(K, HeightBound::log_of(2)));
  for (const auto& s : want) EXPECT_TRUE(got.count(s)) << s;
  for (const auto& s : got) EXPECT_TRUE(want.count(s) || boundary.count(s)) << s;
}

TEST(NumberField, ParseElement) {
  auto K = NumberField::parse("x^2 + 1");
  EXPECT_EQ(elt(K, "1/2,-3").to_string(), "1/2 - 3*a");
  EXPECT_EQ(elt(K, "-30"), K.from_rational(-30));
  EXPECT_THROW(elt(K, "1/0"), Error);
  EXPECT_THROW(elt(K, "abc"), Error);
  EXPECT_THROW(elt(K, "1,2,3"), Error);
}

TEST(NumberField, SIntegrality) {
  auto K = Q();
  EXPECT_TRUE(is_s_integer(K.from_rational(Rational(3, 4)), PlaceSet::from_primes({Integer(2)})));
  EXPECT_FALSE(is_s_integer(K.from_rational(Rational(3, 4)), PlaceSet::archimedean()));
  auto G = NumberField::parse("x^2 + 1");
  // (1 + i)/2 has norm 1/2: integral away from 2 only.
  EXPECT_TRUE(is_s_integer(elt(G, "1/2,1/2"), PlaceSet::from_primes({Integer(2)})));
  EXPECT_FALSE(is_s_integer(elt(G, "1/2,1/2"), PlaceSet::from_primes({Integer(3)})));
  // The golden ratio is integral even though its coordinates are halves
  // in other bases.
  auto F = NumberField::parse("x^2 - 5");
  EXPECT_TRUE(is_s_integer(elt(F, "1/2,1/2"), PlaceSet::archimedean()));
}
