#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unicrit/map.hpp"

namespace unicrit {

// G = <f_1, ..., f_s> under composition. Repeated generators are dropped
// on construction; degrees may differ.
class SemigroupSpec {
 public:
  SemigroupSpec(std::vector<UnicriticalMap> generators, PlaceSet S = PlaceSet::archimedean());

  const std::vector<UnicriticalMap>& generators() const { return gens_; }
  const NumberField& field() const { return gens_.front().field(); }
  const PlaceSet& places() const { return S_; }

 private:
  std::vector<UnicriticalMap> gens_;
  PlaceSet S_;
};

std::vector<FieldElement> common_preper(const SemigroupSpec& G, const Budget& budget = {});

// Largest subset of common_preper(G) mapped into itself by every generator.
std::vector<FieldElement> finite_orbit_points(const SemigroupSpec& G, const Budget& budget = {});

struct FiniteOrbitReport {
  std::vector<FieldElement> finite_orbit_points;
  bool zero_reaches = false;
  std::vector<std::size_t> witness_path;  // generators applied to 0, first applied first
  std::string reason;
  std::size_t nodes_visited = 0;
  Rational escape_radius = 0;
};

FiniteOrbitReport orbit_zero_contains_finite(const SemigroupSpec& G, const Budget& budget = {});

struct GeneratorBoundReport {
  std::size_t generators = 0;
  std::size_t distinct_degrees = 0;
  std::size_t preper_first = 0;
  bool holds = false;
};

GeneratorBoundReport generator_bound_check(const SemigroupSpec& G, const Budget& budget = {});

}  // namespace unicrit
