#include "unicrit/dynamics.hpp"

#include <algorithm>
#include <unordered_map>

namespace unicrit {

namespace {

void check_bits(const FieldElement& x, const Budget& budget) {
  if (x.max_coord_bits() > budget.coord_bits_cap)
    fail(ErrorCode::OverflowBudget, "iterate coordinates exceed the bit cap");
}

}  // namespace

FieldElement iterate(const UnicriticalMap& f, const FieldElement& a, unsigned long n, const Budget& budget) {
  FieldElement x = a;
  for (unsigned long i = 0; i < n; ++i) {
    x = f(x);
    check_bits(x, budget);
  }
  return x;
}

OrbitResult classify_orbit(const UnicriticalMap& f, const FieldElement& a, const Budget& budget) {
  const Rational bound = preper_height_bound(f).value.hi;
  std::unordered_map<FieldElement, unsigned long, FieldElementHash> index;
  std::vector<FieldElement> orbit;
  FieldElement x = a;
  for (unsigned long step = 0;; ++step) {
    auto it = index.find(x);
    if (it != index.end()) {
      OrbitResult r;
      r.kind = OrbitResult::Kind::Preperiodic;
      r.tail = it->second;
      r.period = step - it->second;
      r.cycle.assign(orbit.begin() + static_cast<long>(it->second), orbit.end());
      return r;
    }
    // Nothing above the bound is preperiodic.
    if (compare_height(x, HeightBound::of_value(bound)) > 0) {
      OrbitResult r;
      r.kind = OrbitResult::Kind::Escaped;
      r.step = step;
      r.witness_height = weil_height(x).value;
      return r;
    }
    index.emplace(x, step);
    orbit.push_back(x);
    if (x.max_coord_bits() > budget.coord_bits_cap)
      fail(ErrorCode::OverflowBudget, "orbit coordinates exceed the bit cap before escape was proven");
    x = f(x);
  }
}

std::vector<FieldElement> preperiodic_points(const UnicriticalMap& f, const Budget& budget) {
  const Rational bound = preper_height_bound(f).value.hi;
  auto candidates = bounded_height_candidates(f.field(), HeightBound::of_value(bound), budget);
  std::unordered_map<FieldElement, bool, FieldElementHash> known;
  std::vector<FieldElement> out;
  for (const auto& a : candidates) {
    if (known.count(a)) {
      if (known[a]) out.push_back(a);
      continue;
    }
    // Walk the orbit until a known point, a repeat or a proven escape.
    std::vector<FieldElement> path;
    std::unordered_map<FieldElement, bool, FieldElementHash> on_path;
    FieldElement x = a;
    bool preper = false;
    for (;;) {
      auto k = known.find(x);
      if (k != known.end()) {
        preper = k->second;
        break;
      }
      if (on_path.count(x)) {
        preper = true;
        break;
      }
      if (compare_height(x, HeightBound::of_value(bound)) > 0) {
        preper = false;
        break;
      }
      on_path.emplace(x, true);
      path.push_back(x);
      x = f(x);
      check_bits(x, budget);
    }
    for (const auto& p : path) known[p] = preper;
    if (preper) out.push_back(a);
  }
  sort_canonical(out);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<FieldElement> preimages_in_K(const UnicriticalMap& f, const FieldElement& b, const Budget& budget) {
  return nth_roots_in_K(b - f.c(), f.d(), budget);
}

std::vector<std::vector<FieldElement>> cycles_of(const UnicriticalMap& f, const std::vector<FieldElement>& preper) {
  std::unordered_map<FieldElement, bool, FieldElementHash> in_cycle;
  std::vector<std::vector<FieldElement>> cycles;
  std::vector<FieldElement> sorted = preper;
  sort_canonical(sorted);
  for (const auto& p : sorted) {
    if (in_cycle.count(p)) continue;
    // p is periodic iff it returns to itself within |PrePer| steps.
    FieldElement x = f(p);
    std::vector<FieldElement> cyc{p};
    bool periodic = false;
    for (std::size_t i = 0; i <= sorted.size(); ++i) {
      if (x == p) {
        periodic = true;
        break;
      }
      cyc.push_back(x);
      x = f(x);
    }
    if (!periodic) continue;
    for (const auto& y : cyc) in_cycle[y] = true;
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

std::vector<std::vector<FieldElement>> periodic_cycles(const UnicriticalMap& f, const Budget& budget) {
  return cycles_of(f, preperiodic_points(f, budget));
}

std::vector<FieldElement> fixed_points(const UnicriticalMap& f, const Budget& budget) {
  const NumberField& K = f.field();
  KPoly p(f.d() + 1, K.zero());
  p[0] = f.c();
  p[1] = -K.one();
  p[f.d()] = p[f.d()] + K.one();
  return roots_in_K(p, budget);
}

}  // namespace unicrit
