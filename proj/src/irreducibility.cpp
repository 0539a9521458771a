#include "unicrit/irreducibility.hpp"

#include <algorithm>
#include <unordered_map>

#include "unicrit/dynamics.hpp"
#include "unicrit/heights.hpp"

namespace unicrit {

namespace {

void require_uniform(const std::vector<UnicriticalMap>& maps) {
  if (maps.empty()) fail(ErrorCode::InvalidArgument, "empty list of maps");
  for (const auto& f : maps) {
    if (f.d() != maps.front().d()) fail(ErrorCode::InvalidArgument, "maps must share one degree");
    if (!(f.field() == maps.front().field())) fail(ErrorCode::FieldMismatch, "maps must share one field");
  }
}

// Memoized power-form test on chain values, shared between words.
class ChainCache {
 public:
  ChainCache(unsigned long d, const Budget& budget) : d_(d), budget_(budget) {}

  const std::optional<PowerForm>& test(const FieldElement& z) {
    auto it = cache_.find(z);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(z, power_form_decompose(z, d_, budget_)).first->second;
  }

 private:
  unsigned long d_;
  Budget budget_;
  std::unordered_map<FieldElement, std::optional<PowerForm>, FieldElementHash> cache_;
};

IrreducibilityCertificate chain(const std::vector<UnicriticalMap>& maps, const std::vector<std::size_t>& word,
                                ChainCache& cache, std::unordered_map<std::size_t, bool>& base_ok,
                                const Budget& budget) {
  IrreducibilityCertificate cert;
  cert.word = word;
  const UnicriticalMap& outer = maps[word.front()];
  auto b = base_ok.find(word.front());
  if (b == base_ok.end()) b = base_ok.emplace(word.front(), base_irreducible(outer, budget)).first;
  if (!b->second) {
    cert.step = 0;
    cert.witness = base_reducibility_witness(outer, budget);
    return cert;
  }
  for (std::size_t j = 1; j < word.size(); ++j) {
    FieldElement z = maps[word[j]].c();
    for (std::size_t i = j; i-- > 0;) {
      z = maps[word[i]](z);
      if (z.max_coord_bits() > budget.coord_bits_cap)
        fail(ErrorCode::OverflowBudget, "chain value exceeds the coordinate bit cap");
    }
    const auto& w = cache.test(z);
    if (w) {
      cert.step = j;
      cert.witness = w;
      return cert;
    }
  }
  cert.irreducible = true;
  return cert;
}

// All words of length 1..L over s letters, shorter first, then
// lexicographically.
template <typename Fn>
void for_each_word(std::size_t s, unsigned long L, const Budget& budget, Fn&& fn) {
  Integer total = 0;
  Integer layer = 1;
  for (unsigned long l = 1; l <= L; ++l) {
    layer *= static_cast<unsigned long>(s);
    total += layer;
  }
  if (total > Integer(std::to_string(budget.candidate_cap)))
    fail(ErrorCode::BudgetExceeded, "too many words to test");
  for (unsigned long l = 1; l <= L; ++l) {
    std::vector<std::size_t> w(l, 0);
    for (;;) {
      fn(w);
      std::size_t k = l;
      while (k > 0 && w[k - 1] + 1 == s) w[--k] = 0;
      if (k == 0) break;
      ++w[k - 1];
    }
  }
}

struct Prefix {
  std::size_t f1;
  std::size_t f2;
};

std::optional<Prefix> designated_prefix(const GeneratorDecomposition& dec) {
  if (dec.g12.empty()) return std::nullopt;
  return Prefix{dec.g12.front(), dec.g13.empty() ? dec.g12.front() : dec.g13.front()};
}

std::pair<std::uint64_t, std::uint64_t> count_certified(const std::vector<UnicriticalMap>& gens, unsigned long L,
                                                        const std::vector<std::size_t>& prefix,
                                                        const Budget& budget) {
  ChainCache cache(gens.front().d(), budget);
  std::unordered_map<std::size_t, bool> base_ok;
  std::uint64_t tested = 0, certified = 0;
  for_each_word(gens.size(), L, budget, [&](const std::vector<std::size_t>& w) {
    std::vector<std::size_t> word = prefix;
    word.insert(word.end(), w.begin(), w.end());
    ++tested;
    if (chain(gens, word, cache, base_ok, budget).irreducible) ++certified;
  });
  return {tested, certified};
}

// Decomposes P as r y^p with r in {1, -1, 4, -4} and p | d prime.
std::optional<PoweredFixedPoint> powered_form(const FieldElement& P, unsigned long d, const Budget& budget) {
  if (P.is_zero()) return std::nullopt;
  const NumberField& K = P.field();
  for (unsigned long p : prime_divisors(d)) {
    for (long r : {1L, -1L, 4L, -4L}) {
      FieldElement rr = K.from_rational(Rational(r));
      auto ys = nth_roots_in_K(P / rr, p, budget);
      if (!ys.empty()) return PoweredFixedPoint{P, rr, ys.front(), p};
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<FieldElement> power_form_multipliers(const NumberField& K) {
  std::vector<FieldElement> out;
  const auto mu = roots_of_unity(K, 0);
  for (const auto& z : mu) out.push_back(z);
  const FieldElement four = K.from_rational(4);
  for (const auto& z : mu) out.push_back(four * z);
  return out;
}

std::optional<PowerForm> power_form_decompose(const FieldElement& z, unsigned long d, const Budget& budget) {
  if (d < 2) fail(ErrorCode::InvalidArgument, "degree must be at least 2");
  const NumberField& K = z.field();
  const auto rs = power_form_multipliers(K);
  for (unsigned long p : prime_divisors(d)) {
    for (const auto& r : rs) {
      auto ys = nth_roots_in_K(z / r, p, budget);
      if (!ys.empty()) return PowerForm{r, ys.front(), p};
    }
  }
  return std::nullopt;
}

std::optional<PowerForm> base_reducibility_witness(const UnicriticalMap& f, const Budget& budget) {
  if (f.c().is_zero()) fail(ErrorCode::PreconditionFailed, "x^d is reducible; c must be nonzero");
  const NumberField& K = f.field();
  const FieldElement a = -f.c();
  for (unsigned long p : prime_divisors(f.d())) {
    auto ys = nth_roots_in_K(a, p, budget);
    if (!ys.empty()) return PowerForm{K.one(), ys.front(), p};
  }
  if (f.d() % 4 == 0) {
    auto ys = nth_roots_in_K(f.c() / K.from_rational(4), 4, budget);
    if (!ys.empty()) return PowerForm{K.from_rational(-4), ys.front(), 4};
  }
  return std::nullopt;
}

bool base_irreducible(const UnicriticalMap& f, const Budget& budget) {
  return !base_reducibility_witness(f, budget).has_value();
}

IrreducibilityCertificate word_irreducibility(const std::vector<UnicriticalMap>& word, const Budget& budget) {
  require_uniform(word);
  // Identical maps share one base test.
  std::vector<UnicriticalMap> letters;
  std::vector<std::size_t> idx;
  for (const auto& f : word) {
    std::size_t k = 0;
    while (k < letters.size() && !(letters[k] == f)) ++k;
    if (k == letters.size()) letters.push_back(f);
    idx.push_back(k);
  }
  ChainCache cache(word.front().d(), budget);
  std::unordered_map<std::size_t, bool> base_ok;
  auto cert = chain(letters, idx, cache, base_ok, budget);
  cert.word.clear();
  for (std::size_t i = 0; i < word.size(); ++i) cert.word.push_back(i);
  return cert;
}

StabilityResult stability_certificate(const UnicriticalMap& f, unsigned long horizon, const Budget& budget) {
  if (!base_irreducible(f, budget)) fail(ErrorCode::PreconditionFailed, "map is not irreducible");
  if (compare_height(f.c(), HeightBound::of_value(0)) <= 0) fail(ErrorCode::PreconditionFailed, "h(c) must be positive");
  StabilityResult r;
  r.horizon = horizon;
  FieldElement z = f.c();
  for (unsigned long k = 2; k <= horizon; ++k) {
    z = f(z);
    if (z.max_coord_bits() > budget.coord_bits_cap)
      fail(ErrorCode::OverflowBudget, "critical orbit exceeds the coordinate bit cap");
    // f^k = f^(k-1) o f, so the chain value is f^(k-1)(f(0)) = f^k(0).
    if (auto w = power_form_decompose(z, f.d(), budget)) {
      r.step = k;
      r.witness = w;
      return r;
    }
  }
  r.stable = true;
  return r;
}

std::optional<PoweredFixedPoint> powered_fixed_point(const UnicriticalMap& f, const Budget& budget) {
  for (const auto& P : fixed_points(f, budget))
    if (auto pf = powered_form(P, f.d(), budget)) return pf;
  return std::nullopt;
}

GeneratorDecomposition decompose_generators(const std::vector<UnicriticalMap>& gens, const Budget& budget) {
  require_uniform(gens);
  GeneratorDecomposition dec;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (compare_height(gens[i].c(), HeightBound::log_of(3)) <= 0)
      dec.g11.push_back(i);
    else if (base_irreducible(gens[i], budget))
      dec.g12.push_back(i);
    else
      dec.g13.push_back(i);
  }
  return dec;
}

SemigroupIrreducibilityReport semigroup_irreducibility_report(const std::vector<UnicriticalMap>& gens,
                                                              unsigned long N, unsigned long L,
                                                              const Budget& budget) {
  require_uniform(gens);
  SemigroupIrreducibilityReport rep;
  rep.N = N;
  rep.L = L;
  rep.decomposition = decompose_generators(gens, budget);
  const auto& dec = rep.decomposition;
  const NumberField& K = gens.front().field();
  const unsigned long d = gens.front().d();
  rep.multiplier_sets_differ = roots_of_unity(K, 0).size() > 2;
  if (rep.multiplier_sets_differ)
    rep.notes.push_back("mu_K exceeds {1,-1}: power forms use R_K, powered fixed points use {1,-1,4,-4}");
  rep.has_irreducible_above_log3 = !dec.g12.empty();

  // Every map above log 3 must be x^d + zP - (zP)^d or x^d + zP with z in
  // mu_{K,d}, for one P; the first such map pins down the candidates.
  std::vector<std::size_t> high = dec.g12;
  high.insert(high.end(), dec.g13.begin(), dec.g13.end());
  std::sort(high.begin(), high.end());
  if (!high.empty()) {
    const auto mu_d = roots_of_unity(K, d);
    std::vector<FieldElement> cands;
    const UnicriticalMap& g = gens[high.front()];
    for (const auto& z : mu_d) {
      for (const auto& fp : fixed_points(g, budget)) cands.push_back(fp / z);
      cands.push_back(g.c() / z);
    }
    sort_canonical(cands);
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    for (const auto& P : cands) {
      auto form = powered_form(P, d, budget);
      if (!form) continue;
      bool all = true;
      for (std::size_t i : high) {
        bool hit = false;
        for (const auto& z : mu_d) {
          FieldElement zp = z * P;
          if (gens[i].c() == zp - zp.pow(d) || gens[i].c() == zp) {
            hit = true;
            break;
          }
        }
        if (!hit) {
          all = false;
          break;
        }
      }
      if (all) {
        rep.special_form_b = true;
        rep.P = form;
        break;
      }
    }
  }

  auto prefix = designated_prefix(dec);
  if (!prefix) {
    rep.notes.push_back("no irreducible generator with h(c) > log 3; no certificate attempted");
    return rep;
  }
  rep.f1 = prefix->f1;
  rep.f2 = prefix->f2;
  std::vector<std::size_t> pre(N, prefix->f1);
  pre.insert(pre.end(), N, prefix->f2);
  auto [tested, certified] = count_certified(gens, L, pre, budget);
  rep.words_tested = tested;
  rep.words_certified = certified;
  if (tested > 0) rep.proportion = Rational(Integer(std::to_string(certified)), Integer(std::to_string(tested)));
  rep.proportion.canonicalize();
  return rep;
}

Rational irreducible_proportion(const std::vector<UnicriticalMap>& gens, unsigned long L, unsigned long N_prefix,
                                const Budget& budget) {
  require_uniform(gens);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (gens[i] == gens[j]) fail(ErrorCode::InvalidArgument, "generators must be pairwise distinct");
  std::vector<std::size_t> pre;
  if (N_prefix > 0) {
    auto prefix = designated_prefix(decompose_generators(gens, budget));
    if (!prefix) return 0;
    pre.assign(N_prefix, prefix->f1);
    pre.insert(pre.end(), N_prefix, prefix->f2);
  }
  auto [tested, certified] = count_certified(gens, L, pre, budget);
  if (tested == 0) return 0;
  Rational q(Integer(std::to_string(certified)), Integer(std::to_string(tested)));
  q.canonicalize();
  return q;
}

}  // namespace unicrit
