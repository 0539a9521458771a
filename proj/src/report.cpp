#include "report.hpp"

#include <atomic>
#include <exception>
#include <map>
#include <thread>

namespace unicrit::report {

namespace {

std::string q_string(const Rational& q) { return q.get_str(); }

ordered_json power_form(const PowerForm& w) {
  return {{"r", w.r.to_string()}, {"y", w.y.to_string()}, {"p", w.p}};
}

ordered_json powered(const PoweredFixedPoint& w) {
  return {{"P", w.P.to_string()}, {"r", w.r.to_string()}, {"y", w.y.to_string()}, {"p", w.p}};
}

ordered_json maps(const std::vector<UnicriticalMap>& gens, const std::vector<std::size_t>& idx) {
  ordered_json out = ordered_json::array();
  for (std::size_t i : idx) out.push_back(gens[i].to_string());
  return out;
}

struct Analysis {
  Portrait portrait;
  Skeleton skeleton;
  Classification label;
};

Analysis analyse(const UnicriticalMap& f, const Budget& budget) {
  Analysis a;
  a.portrait = build_portrait(f, budget);
  a.skeleton = skeletonize(a.portrait, f, budget);
  a.label = classify_skeleton(a.skeleton, f.field(), f.c().is_zero());
  return a;
}

ordered_json label_json(const Classification& c) {
  ordered_json j = {{"label", label_name(c.label)}};
  if (!c.reason.empty()) j["reason"] = c.reason;
  j["small_d_observation"] = c.small_d_observation;
  return j;
}

ordered_json portrait_json(const Portrait& p) {
  ordered_json v = ordered_json::array();
  ordered_json e = ordered_json::array();
  for (std::size_t i = 0; i < p.vertices.size(); ++i) {
    v.push_back({{"id", i}, {"kind", "concrete"}, {"value", p.vertices[i].to_string()}});
    e.push_back({i, p.image[i]});
  }
  return {{"vertices", v}, {"edges", e}};
}

ordered_json skeleton_json(const Skeleton& s) {
  ordered_json v = ordered_json::array();
  ordered_json e = ordered_json::array();
  for (std::size_t i = 0; i < s.vertices.size(); ++i) {
    const auto& x = s.vertices[i];
    if (x.kind == SkeletonVertex::Kind::Concrete) {
      v.push_back({{"id", i}, {"kind", "concrete"}, {"value", x.value->to_string()}});
    } else {
      v.push_back({{"id", i}, {"kind", "preimage_class"}, {"parent", x.parent}, {"members", elements(x.members)}});
    }
    e.push_back({i, s.image[i]});
  }
  return {{"vertices", v}, {"edges", e}};
}

const char* sign_word(int s) { return s > 0 ? "greater" : s < 0 ? "less" : "equal"; }

}  // namespace

ordered_json interval(const Interval& x) { return {to_double_down(x.lo), to_double_up(x.hi)}; }

ordered_json elements(const std::vector<FieldElement>& xs) {
  ordered_json out = ordered_json::array();
  for (const auto& x : xs) out.push_back(x.to_string());
  return out;
}

ordered_json preperiodic(const UnicriticalMap& f, const Budget& budget) {
  auto pts = preperiodic_points(f, budget);
  ordered_json cycles = ordered_json::array();
  for (const auto& c : cycles_of(f, pts)) cycles.push_back(elements(c));
  return {{"map", f.to_string()},
          {"height_bound", interval(preper_height_bound(f).value)},
          {"preperiodic", elements(pts)},
          {"cycles", cycles}};
}

ordered_json portrait(const UnicriticalMap& f, const Budget& budget) {
  Analysis a = analyse(f, budget);
  ordered_json j = portrait_json(a.portrait);
  j["label"] = label_name(a.label.label);
  return j;
}

ordered_json skeleton(const UnicriticalMap& f, const Budget& budget) {
  Analysis a = analyse(f, budget);
  ordered_json j = skeleton_json(a.skeleton);
  j["label"] = label_name(a.label.label);
  return j;
}

ordered_json classify(const UnicriticalMap& f, const Budget& budget) {
  Analysis a = analyse(f, budget);
  ordered_json j = label_json(a.label);
  j["preper_count"] = a.portrait.vertices.size();
  j["skeleton"] = skeleton_json(a.skeleton);
  return j;
}

ordered_json theorem1(const UnicriticalMap& f, const PlaceSet& S, const Budget& budget) {
  auto r = check_theorem1(f, S, budget);
  ordered_json s2 = {{"applicable", r.power_form.applicable}, {"holds", r.power_form.holds}};
  if (r.y) s2["y"] = r.y->to_string();
  return {{"map", f.to_string()},
          {"preperiodic", elements(r.preperiodic)},
          {"max_cycle_length", r.max_cycle_length},
          {"statement1", {{"holds", r.period_at_most_3}}},
          {"height_vs_log3", sign_word(r.height_vs_log3)},
          {"statement2", s2},
          {"statement3", {{"applicable", r.roots_of_unity_only.applicable}, {"holds", r.roots_of_unity_only.holds}}}};
}

ordered_json scan(const NumberField& K, unsigned long d, long lo, long hi, unsigned jobs, const Budget& budget) {
  if (lo > hi) fail(ErrorCode::InvalidArgument, "empty c range");
  const std::size_t n = static_cast<std::size_t>(hi - lo + 1);
  std::vector<ordered_json> records(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        const long c = lo + static_cast<long>(i);
        UnicriticalMap f(d, K.from_rational(Rational(c)));
        Analysis a = analyse(f, budget);
        ordered_json r = {{"c", c}};
        const ordered_json lj = label_json(a.label);
        for (auto it = lj.begin(); it != lj.end(); ++it) r[it.key()] = it.value();
        r["preper_count"] = a.portrait.vertices.size();
        records[i] = std::move(r);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::map<std::string, std::size_t> hist;
  ordered_json not_in_table = ordered_json::array();
  ordered_json out = ordered_json::array();
  for (auto& r : records) {
    const std::string label = r["label"];
    ++hist[label];
    if (label == "NotInTable" && r["c"] != 0) not_in_table.push_back(r["c"]);
    out.push_back(std::move(r));
  }
  ordered_json h = ordered_json::object();
  for (const auto& [k, v] : hist) h[k] = v;
  return {{"records", out},
          {"summary", {{"total", n}, {"histogram", h}, {"not_in_table", not_in_table},
                       {"not_in_table_count", not_in_table.size()}}}};
}

ordered_json stability(const UnicriticalMap& f, unsigned long horizon, const Budget& budget) {
  auto r = stability_certificate(f, horizon, budget);
  ordered_json j = {{"map", f.to_string()}, {"horizon", r.horizon}, {"stable", r.stable}};
  if (!r.stable) {
    j["step"] = r.step;
    if (r.witness) j["witness"] = power_form(*r.witness);
  }
  return j;
}

ordered_json irreducible(const std::vector<UnicriticalMap>& gens, unsigned long N, unsigned long L,
                         const Budget& budget) {
  auto r = semigroup_irreducibility_report(gens, N, L, budget);
  ordered_json form = {{"detected", r.special_form_b}};
  if (r.P) form["P"] = powered(*r.P);
  ordered_json j = {{"decomposition",
                     {{"G11", maps(gens, r.decomposition.g11)},
                      {"G12", maps(gens, r.decomposition.g12)},
                      {"G13", maps(gens, r.decomposition.g13)}}},
                    {"has_irreducible_above_log3", r.has_irreducible_above_log3},
                    {"special_form_b", form}};
  if (r.f1) j["designated_prefix"] = {{"f1", gens[*r.f1].to_string()}, {"f2", gens[*r.f2].to_string()}, {"N", N}};
  j["word_length"] = L;
  j["words_tested"] = r.words_tested;
  j["words_certified"] = r.words_certified;
  j["proportion"] = q_string(r.proportion);
  j["multiplier_sets_differ"] = r.multiplier_sets_differ;
  j["notes"] = r.notes;
  return j;
}

ordered_json semigroup(const SemigroupSpec& G, const Budget& budget) {
  ordered_json gens = ordered_json::array();
  for (const auto& f : G.generators()) gens.push_back(f.to_string());
  auto r = orbit_zero_contains_finite(G, budget);
  ordered_json j = {{"generators", gens}};
  if (r.reason == "non-integral coefficients") {
    j["finite_orbit_points"] = elements(finite_orbit_points(G, budget));
  } else {
    j["finite_orbit_points"] = elements(r.finite_orbit_points);
  }
  j["zero_reaches"] = r.zero_reaches;
  j["witness_path"] = r.witness_path;
  j["reason"] = r.reason;
  if (j["finite_orbit_points"].empty()) {
    j["bound_check"] = nullptr;
  } else {
    auto b = generator_bound_check(G, budget);
    j["bound_check"] = {{"generators", b.generators},
                        {"distinct_degrees", b.distinct_degrees},
                        {"preper_first", b.preper_first},
                        {"holds", b.holds}};
  }
  return j;
}

ordered_json bounds(int t, unsigned long q, unsigned long d) {
  auto b = bounds_report(t, q, d);
  return {{"t", b.t},
          {"q", b.q},
          {"d", b.d},
          {"rho_d", interval(b.rho_d)},
          {"rho_d^d", interval(b.rho_d_pow_d)},
          {"V_t", interval(b.V_t)},
          {"sz", to_double_down(b.sz)},
          {"sz_exact", q_string(b.sz)},
          {"kappa2", interval(b.kappa2)},
          {"s_size_bound", b.s_size_bound}};
}

ordered_json height(const FieldElement& a) {
  auto h = weil_height(a);
  ordered_json mp = ordered_json::array();
  for (const auto& c : a.minimal_polynomial()) mp.push_back(c.get_str());
  return {{"element", a.to_string()},
          {"height", interval(h.value)},
          {"exact_zero", h.exact_zero},
          {"minimal_polynomial", mp},
          {"root_of_unity_order", root_of_unity_order(a)}};
}

}  // namespace unicrit::report
