#include "unicrit/semigroup.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "unicrit/dynamics.hpp"
#include "unicrit/heights.hpp"

namespace unicrit {

SemigroupSpec::SemigroupSpec(std::vector<UnicriticalMap> generators, PlaceSet S) : S_(std::move(S)) {
  if (generators.empty()) fail(ErrorCode::InvalidArgument, "a semigroup needs at least one generator");
  const NumberField K = generators.front().field();
  for (auto& f : generators) {
    if (!(f.field() == K)) fail(ErrorCode::FieldMismatch, "generators must share one field");
    if (std::find(gens_.begin(), gens_.end(), f) == gens_.end()) gens_.push_back(std::move(f));
  }
}

std::vector<FieldElement> common_preper(const SemigroupSpec& G, const Budget& budget) {
  std::vector<FieldElement> acc;
  bool first = true;
  for (const auto& f : G.generators()) {
    auto pts = preperiodic_points(f, budget);
    if (first) {
      acc = std::move(pts);
      first = false;
      continue;
    }
    std::unordered_set<FieldElement, FieldElementHash> keep(pts.begin(), pts.end());
    std::erase_if(acc, [&](const FieldElement& x) { return !keep.count(x); });
    if (acc.empty()) break;
  }
  return acc;
}

std::vector<FieldElement> finite_orbit_points(const SemigroupSpec& G, const Budget& budget) {
  auto F = common_preper(G, budget);
  for (bool changed = true; changed;) {
    changed = false;
    std::unordered_set<FieldElement, FieldElementHash> in(F.begin(), F.end());
    std::vector<FieldElement> next;
    for (const auto& x : F) {
      bool closed = std::all_of(G.generators().begin(), G.generators().end(),
                                [&](const UnicriticalMap& f) { return in.count(f(x)) > 0; });
      if (closed)
        next.push_back(x);
      else
        changed = true;
    }
    F = std::move(next);
  }
  return F;
}

FiniteOrbitReport orbit_zero_contains_finite(const SemigroupSpec& G, const Budget& budget) {
  FiniteOrbitReport rep;
  const auto& gens = G.generators();
  for (const auto& f : gens) {
    if (!is_s_integer(f.c(), PlaceSet::archimedean())) {
      rep.reason = "non-integral coefficients";
      return rep;
    }
  }
  rep.finite_orbit_points = finite_orbit_points(G, budget);
  std::unordered_set<FieldElement, FieldElementHash> F(rep.finite_orbit_points.begin(),
                                                       rep.finite_orbit_points.end());

  // Beyond R in any embedding every generator strictly increases |x| there.
  Rational H = 0;
  for (const auto& f : gens) H = std::max(H, house(f.c()).hi);
  Rational R = std::max(Rational(2), Rational(1 + H));
  rep.escape_radius = R;

  const NumberField& K = G.field();
  const std::size_t t = static_cast<std::size_t>(K.degree());
  auto escaped = [&](const FieldElement& x) {
    for (std::size_t j = 0; j < t; ++j)
      if (x.embed(j, 64).abs_lower(64) > R) return true;
    return false;
  };

  struct Node {
    FieldElement x;
    std::size_t parent;
    std::size_t gen;
  };
  std::vector<Node> nodes{{K.zero(), 0, 0}};
  std::unordered_map<FieldElement, std::size_t, FieldElementHash> seen{{K.zero(), 0}};
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    const FieldElement x = nodes[i].x;
    if (F.count(x)) {
      rep.zero_reaches = true;
      for (std::size_t k = i; k != 0; k = nodes[k].parent) rep.witness_path.push_back(nodes[k].gen);
      std::reverse(rep.witness_path.begin(), rep.witness_path.end());
      rep.reason = "orbit of zero meets a finite orbit point";
      break;
    }
    if (escaped(x)) continue;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      FieldElement y = gens[g](x);
      if (seen.count(y)) continue;
      if (nodes.size() >= budget.candidate_cap) fail(ErrorCode::BudgetExceeded, "semigroup orbit search exceeded the node cap");
      seen.emplace(y, nodes.size());
      nodes.push_back({y, i, g});
      queue.push_back(nodes.size() - 1);
    }
  }
  rep.nodes_visited = nodes.size();
  if (!rep.zero_reaches) rep.reason = "every branch of the orbit of zero escapes";
  return rep;
}

GeneratorBoundReport generator_bound_check(const SemigroupSpec& G, const Budget& budget) {
  if (finite_orbit_points(G, budget).empty())
    fail(ErrorCode::PreconditionFailed, "the semigroup has no finite orbit point");
  GeneratorBoundReport rep;
  rep.generators = G.generators().size();
  std::set<unsigned long> degrees;
  for (const auto& f : G.generators()) degrees.insert(f.d());
  rep.distinct_degrees = degrees.size();
  rep.preper_first = preperiodic_points(G.generators().front(), budget).size();
  rep.holds = rep.generators <= rep.distinct_degrees * rep.preper_first;
  return rep;
}

}  // namespace unicrit
