#include <gtest/gtest.h>

#include <chrono>

#include "support.hpp"

using namespace unicrit;
using namespace testing_support;

namespace {

std::set<std::string> preper(unsigned long d, long c) { return strings(preperiodic_points(qmap(d, c))); }

}  // namespace

TEST(PrePer, ReferenceMapsOverQ) {
  auto t0 = std::chrono::steady_clock::now();
  EXPECT_EQ(preper(5, -30), (std::set<std::string>{"2"}));
  EXPECT_EQ(preper(2, -1), (std::set<std::string>{"0", "1", "-1"}));
  EXPECT_EQ(preper(2, 1), std::set<std::string>{});
  EXPECT_EQ(preper(2, -2), (std::set<std::string>{"0", "1", "-1", "2", "-2"}));
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 4.0);
}

TEST(PrePer, MatchesBruteForceOracleOverQ) {
  for (unsigned long d : {2UL, 3UL, 4UL, 5UL})
    for (long c = -12; c <= 12; ++c)
      EXPECT_EQ(preper(d, c), rational_preper_oracle(d, Rational(c))) << "d=" << d << " c=" << c;
  for (Rational c : {Rational(-29, 16), Rational(-3, 4), Rational(1, 4), Rational(-21, 16), Rational(-5, 4)}) {
    UnicriticalMap f(2, Q().from_rational(c));
    EXPECT_EQ(strings(preperiodic_points(f)), rational_preper_oracle(2, c)) << c.get_str();
  }
}

TEST(PrePer, ThreeCycleOfMinusTwentyNineSixteenths) {
  UnicriticalMap f(2, Q().from_rational(Rational(-29, 16)));
  auto cycles = periodic_cycles(f);
  bool found = false;
  for (const auto& c : cycles)
    if (c.size() == 3) {
      found = true;
      EXPECT_EQ(strings(c), (std::set<std::string>{"-1/4", "-7/4", "5/4"}));
    }
  EXPECT_TRUE(found);
}

TEST(PrePer, MembershipAgreesWithOrbitClassification) {
  const std::vector<std::pair<const char*, std::pair<unsigned long, std::string>>> cases = {
      {"x", {2, "-2"}}, {"x^2 + 1", {2, "0,1"}}, {"x^2 - 2", {2, "-2"}}, {"x^2 + x + 1", {3, "0"}}};
  for (const auto& [m, dc] : cases) {
    auto K = NumberField::parse(m);
    UnicriticalMap f(dc.first, elt(K, dc.second));
    auto pts = strings(preperiodic_points(f));
    auto bound = preper_height_bound(f).value.hi;
    for (const auto& a : bounded_height_elements(K, HeightBound::of_value(bound))) {
      bool member = pts.count(a.to_string()) > 0;
      auto r = classify_orbit(f, a);
      EXPECT_EQ(member, r.kind == OrbitResult::Kind::Preperiodic) << m << " " << a.to_string();
    }
    for (const auto& a : preperiodic_points(f))
      EXPECT_LE(compare_height(a, HeightBound::of_value(bound)), 0) << a.to_string();
  }
}

TEST(PrePer, PreimagesMapForward) {
  auto K = NumberField::parse("x^2 + 1");
  UnicriticalMap f(4, elt(K, "-2"));
  for (const char* b : {"-1", "14", "2", "-2,0", "0,-3"}) {
    auto target = elt(K, b);
    for (const auto& x : preimages_in_K(f, target)) EXPECT_EQ(iterate(f, x, 1), target);
  }
  // x^4 - 2 = 14 has the four solutions +-2, +-2i over Q(i).
  EXPECT_EQ(preimages_in_K(f, elt(K, "14")).size(), 4u);
}

TEST(PrePer, TwistedFixedPointsArePreperiodic) {
  const std::vector<std::tuple<const char*, unsigned long, std::string>> cases = {
      {"x^2 + 1", 4, "1,1"}, {"x^2 + x + 1", 3, "2"}, {"x^2 + x + 1", 6, "0,1"}, {"x", 2, "3"}, {"x", 5, "-2"}};
  for (const auto& [m, d, ys] : cases) {
    auto K = NumberField::parse(m);
    auto y = elt(K, ys);
    UnicriticalMap f(d, y - y.pow(d));
    auto pts = strings(preperiodic_points(f));
    for (const auto& z : roots_of_unity(K, d)) EXPECT_TRUE(pts.count((z * y).to_string())) << m << " d=" << d;
    EXPECT_TRUE(strings(fixed_points(f)).count(y.to_string()));
  }
}

TEST(Orbit, TailAndPeriod) {
  auto f = qmap(2, -1);
  auto r = classify_orbit(f, Q().from_rational(1));
  ASSERT_EQ(r.kind, OrbitResult::Kind::Preperiodic);
  EXPECT_EQ(r.tail, 1u);
  EXPECT_EQ(r.period, 2u);
  auto e = classify_orbit(f, Q().from_rational(2));
  EXPECT_EQ(e.kind, OrbitResult::Kind::Escaped);
  auto g = qmap(2, -2);
  auto s = classify_orbit(g, Q().from_rational(0));
  EXPECT_EQ(s.tail, 2u);
  EXPECT_EQ(s.period, 1u);
  EXPECT_EQ(strings(s.cycle), (std::set<std::string>{"2"}));
}

TEST(Orbit, IterateAndFixedPoints) {
  auto f = qmap(3, 1);
  EXPECT_EQ(iterate(f, Q().from_rational(1), 3).rational_value(), 730);
  EXPECT_EQ(strings(fixed_points(qmap(5, -30))), (std::set<std::string>{"2"}));
  EXPECT_TRUE(fixed_points(qmap(2, 1)).empty());
}

TEST(Orbit, CoordinateCapRaisesOverflowOrEscapes) {
  Budget tight;
  tight.coord_bits_cap = 8;
  UnicriticalMap f(2, Q().from_rational(Rational(1, 3)));
  try {
    auto r = classify_orbit(f, Q().from_rational(Rational(1, 5)), tight);
    EXPECT_EQ(r.kind, OrbitResult::Kind::Escaped);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OverflowBudget);
  }
}
