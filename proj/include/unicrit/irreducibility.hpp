#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unicrit/map.hpp"

namespace unicrit {

// z = r * y^p with r in R_K = {4^e * zeta} and p a prime dividing d. The
// base test may also report r = -4, p = 4 for the quartic Capelli case.
struct PowerForm {
  FieldElement r;
  FieldElement y;
  unsigned long p = 0;
};

// R_K in search order: e = 0 before e = 1, roots of unity by order then
// canonically.
std::vector<FieldElement> power_form_multipliers(const NumberField& K);

std::optional<PowerForm> power_form_decompose(const FieldElement& z, unsigned long d, const Budget& budget = {});

bool base_irreducible(const UnicriticalMap& f, const Budget& budget = {});
// Witness of reducibility of x^d + c, if any.
std::optional<PowerForm> base_reducibility_witness(const UnicriticalMap& f, const Budget& budget = {});

struct IrreducibilityCertificate {
  std::vector<std::size_t> word;  // generator indices, outermost first
  bool irreducible = false;
  // Inconclusive: 0 means the outermost map failed the base test; j >= 1
  // means (phi_1 o ... o phi_j)(c_{j+1}) has the power form `witness`.
  std::size_t step = 0;
  std::optional<PowerForm> witness;
};

// Certificate for phi_1 o ... o phi_k, listed outermost first.
IrreducibilityCertificate word_irreducibility(const std::vector<UnicriticalMap>& word, const Budget& budget = {});

struct StabilityResult {
  bool stable = false;  // every f^k with k <= horizon is irreducible
  unsigned long horizon = 0;
  unsigned long step = 0;  // offending k when not stable
  std::optional<PowerForm> witness;
};

StabilityResult stability_certificate(const UnicriticalMap& f, unsigned long horizon, const Budget& budget = {});

struct PoweredFixedPoint {
  FieldElement P;
  FieldElement r;  // one of 1, -1, 4, -4
  FieldElement y;
  unsigned long p = 0;
};

std::optional<PoweredFixedPoint> powered_fixed_point(const UnicriticalMap& f, const Budget& budget = {});

struct GeneratorDecomposition {
  std::vector<std::size_t> g11;  // h(c) <= log 3
  std::vector<std::size_t> g12;  // h(c) > log 3, irreducible
  std::vector<std::size_t> g13;  // h(c) > log 3, reducible
};

GeneratorDecomposition decompose_generators(const std::vector<UnicriticalMap>& gens, const Budget& budget = {});

struct SemigroupIrreducibilityReport {
  GeneratorDecomposition decomposition;
  bool has_irreducible_above_log3 = false;
  bool special_form_b = false;
  std::optional<PoweredFixedPoint> P;
  // Designated prefix f1^N o f2^N, as generator indices.
  std::optional<std::size_t> f1;
  std::optional<std::size_t> f2;
  unsigned long N = 0;
  unsigned long L = 0;
  std::uint64_t words_tested = 0;
  std::uint64_t words_certified = 0;
  Rational proportion = 0;
  // mu_K is larger than {1, -1}, so R_K and {1, -1, 4, -4} differ.
  bool multiplier_sets_differ = false;
  std::vector<std::string> notes;
};

SemigroupIrreducibilityReport semigroup_irreducibility_report(const std::vector<UnicriticalMap>& gens,
                                                              unsigned long N, unsigned long L,
                                                              const Budget& budget = {});

// Fraction of words of length 1..L certified irreducible. With N_prefix > 0
// every word is preceded by the designated prefix of the report above.
Rational irreducible_proportion(const std::vector<UnicriticalMap>& gens, unsigned long L,
                                unsigned long N_prefix = 0, const Budget& budget = {});

}  // namespace unicrit
