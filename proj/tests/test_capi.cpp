#include <gtest/gtest.h>

#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "unicrit.h"

using nlohmann::json;

namespace {

struct Str {
  char* p = nullptr;
  ~Str() { uc_string_free(p); }
  json parse() const { return json::parse(p); }
};

struct Field {
  uc_field* f = nullptr;
  explicit Field(const char* m) { EXPECT_EQ(uc_field_create(m, &f), UC_OK) << uc_last_error(); }
  ~Field() { uc_field_free(f); }
};

struct Map {
  uc_map* m = nullptr;
  Map(const Field& K, unsigned long d, const char* c) { EXPECT_EQ(uc_map_create(K.f, d, c, &m), UC_OK) << uc_last_error(); }
  ~Map() { uc_map_free(m); }
};

}  // namespace

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STRNE(uc_version(), "");
  EXPECT_STREQ(uc_status_name(UC_OK), "OK");
  EXPECT_STREQ(uc_status_name(UC_ERR_PRECONDITION), "PreconditionFailed");
  uc_options o;
  uc_options_default(&o);
  EXPECT_EQ(o.candidate_cap, 10'000'000u);
}

TEST(CApi, FieldAndMapErrors) {
  uc_field* f = nullptr;
  EXPECT_EQ(uc_field_create("x^2 - 1", &f), UC_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(f, nullptr);
  EXPECT_STRNE(uc_last_error(), "");
  EXPECT_EQ(uc_field_create("x^^2", &f), UC_ERR_PARSE);
  EXPECT_EQ(uc_field_create(nullptr, &f), UC_ERR_INVALID_ARGUMENT);
  Field K("x^2 + 1");
  EXPECT_EQ(uc_field_degree(K.f), 2);
  uc_map* m = nullptr;
  EXPECT_EQ(uc_map_create(K.f, 2, "1/0", &m), UC_ERR_PARSE);
  EXPECT_EQ(uc_map_create(K.f, 1, "1", &m), UC_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(uc_map_create(K.f, 2, "1,2,3", &m), UC_ERR_PARSE);
  EXPECT_EQ(m, nullptr);
}

TEST(CApi, PreperiodicAndClassify) {
  Field Q("x");
  Map f(Q, 5, "-30");
  Str s;
  ASSERT_EQ(uc_preperiodic_json(f.m, nullptr, &s.p), UC_OK);
  EXPECT_EQ(s.parse()["preperiodic"], json::array({"2"}));
  Str c;
  ASSERT_EQ(uc_classify_json(f.m, nullptr, &c.p), UC_OK);
  EXPECT_EQ(c.parse()["label"], "(1)a");
  Map g(Q, 2, "-2");
  Str k;
  ASSERT_EQ(uc_classify_json(g.m, nullptr, &k.p), UC_OK);
  EXPECT_EQ(k.parse()["label"], "NotInTable");
  EXPECT_EQ(k.parse()["small_d_observation"], true);
  Str dot;
  ASSERT_EQ(uc_portrait_dot(f.m, nullptr, &dot.p), UC_OK);
  EXPECT_NE(std::string(dot.p).find("digraph"), std::string::npos);
}

TEST(CApi, BudgetExceeded) {
  Field Q("x");
  Map f(Q, 2, "-2");
  uc_options o;
  uc_options_default(&o);
  o.candidate_cap = 3;
  Str s;
  EXPECT_EQ(uc_preperiodic_json(f.m, &o, &s.p), UC_ERR_BUDGET_EXCEEDED);
  EXPECT_EQ(s.p, nullptr);
}

TEST(CApi, Theorem1Precondition) {
  Field Q("x");
  Map f(Q, 2, "-3/4");
  Str s;
  EXPECT_EQ(uc_theorem1_json(f.m, "", nullptr, &s.p), UC_ERR_PRECONDITION);
  Str t;
  ASSERT_EQ(uc_theorem1_json(f.m, "2", nullptr, &t.p), UC_OK) << uc_last_error();
  EXPECT_EQ(t.parse()["statement1"]["holds"], true);
}

TEST(CApi, ScanIsScheduleIndependent) {
  Field Q("x");
  Str one, four;
  ASSERT_EQ(uc_scan_json(Q.f, 5, -40, 40, 1, nullptr, &one.p), UC_OK);
  ASSERT_EQ(uc_scan_json(Q.f, 5, -40, 40, 4, nullptr, &four.p), UC_OK);
  EXPECT_STREQ(one.p, four.p);
  auto j = one.parse();
  std::size_t total = 0;
  for (auto& [k, v] : j["summary"]["histogram"].items()) total += v.get<std::size_t>();
  EXPECT_EQ(total, 81u);
  EXPECT_EQ(j["summary"]["not_in_table_count"], 0);
}

TEST(CApi, IrreducibleSemigroupBoundsHeight) {
  Field Q("x");
  Str i;
  ASSERT_EQ(uc_irreducible_json(Q.f, 2, "1;3;-12", 1, 2, nullptr, &i.p), UC_OK) << uc_last_error();
  EXPECT_EQ(i.parse()["words_tested"], 12);
  Str s;
  ASSERT_EQ(uc_semigroup_json(Q.f, "2:-2;2:-6", nullptr, &s.p), UC_OK) << uc_last_error();
  EXPECT_EQ(s.parse()["zero_reaches"], true);
  Str bad;
  EXPECT_EQ(uc_semigroup_json(Q.f, "2-2", nullptr, &bad.p), UC_ERR_PARSE);
  Str b;
  ASSERT_EQ(uc_bounds_json(1, 2, 5, &b.p), UC_OK);
  EXPECT_EQ(b.parse()["sz_exact"], "33/32");
  Field G("x^2 + 1");
  Str h;
  ASSERT_EQ(uc_height_json(G.f, "0,1", &h.p), UC_OK);
  EXPECT_EQ(h.parse()["exact_zero"], true);
  EXPECT_EQ(h.parse()["root_of_unity_order"], 4);
}

TEST(CApi, LastErrorIsPerThread) {
  uc_field* f = nullptr;
  ASSERT_NE(uc_field_create("x^2 - 1", &f), UC_OK);
  std::string other;
  std::thread t([&] { other = uc_last_error(); });
  t.join();
  EXPECT_EQ(other, "");
  EXPECT_STRNE(uc_last_error(), "");
}
