#pragma once

#include <vector>

#include "unicrit/heights.hpp"
#include "unicrit/map.hpp"

namespace unicrit {

FieldElement iterate(const UnicriticalMap& f, const FieldElement& a, unsigned long n, const Budget& budget = {});

struct OrbitResult {
  enum class Kind { Preperiodic, Escaped } kind = Kind::Preperiodic;
  // Preperiodic: f^(tail + period)(a) = f^tail(a), period minimal.
  unsigned long tail = 0;
  unsigned long period = 0;
  std::vector<FieldElement> cycle;
  // Escaped: the iterate at `step` has height above the preperiodic bound.
  unsigned long step = 0;
  Interval witness_height;
};

OrbitResult classify_orbit(const UnicriticalMap& f, const FieldElement& a, const Budget& budget = {});

// PrePer(f, K), sorted canonically.
std::vector<FieldElement> preperiodic_points(const UnicriticalMap& f, const Budget& budget = {});

// All a in K with f(a) = b, sorted canonically.
std::vector<FieldElement> preimages_in_K(const UnicriticalMap& f, const FieldElement& b, const Budget& budget = {});

// Cycles of f on PrePer(f, K); each starts at its canonically smallest
// point and follows f. Cycles are ordered by that starting point.
std::vector<std::vector<FieldElement>> periodic_cycles(const UnicriticalMap& f, const Budget& budget = {});
std::vector<std::vector<FieldElement>> cycles_of(const UnicriticalMap& f, const std::vector<FieldElement>& preper);

// Fixed points of f in K.
std::vector<FieldElement> fixed_points(const UnicriticalMap& f, const Budget& budget = {});

}  // namespace unicrit
