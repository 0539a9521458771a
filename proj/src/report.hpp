#pragma once

#include <json.hpp>

#include "unicrit/heights.hpp"
#include "unicrit/irreducibility.hpp"
#include "unicrit/portrait.hpp"
#include "unicrit/semigroup.hpp"

namespace unicrit::report {

using nlohmann::ordered_json;

ordered_json interval(const Interval& x);
ordered_json elements(const std::vector<FieldElement>& xs);

ordered_json preperiodic(const UnicriticalMap& f, const Budget& budget);
ordered_json portrait(const UnicriticalMap& f, const Budget& budget);
ordered_json skeleton(const UnicriticalMap& f, const Budget& budget);
ordered_json classify(const UnicriticalMap& f, const Budget& budget);
ordered_json theorem1(const UnicriticalMap& f, const PlaceSet& S, const Budget& budget);
ordered_json scan(const NumberField& K, unsigned long d, long lo, long hi, unsigned jobs, const Budget& budget);
ordered_json stability(const UnicriticalMap& f, unsigned long horizon, const Budget& budget);
ordered_json irreducible(const std::vector<UnicriticalMap>& gens, unsigned long N, unsigned long L,
                         const Budget& budget);
ordered_json semigroup(const SemigroupSpec& G, const Budget& budget);
ordered_json bounds(int t, unsigned long q, unsigned long d);
ordered_json height(const FieldElement& a);

}  // namespace unicrit::report
