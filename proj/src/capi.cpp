#include "unicrit.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "report.hpp"

using namespace unicrit;

struct uc_field {
  NumberField K;
};

struct uc_map {
  UnicriticalMap f;
};

namespace {

thread_local std::string last_error;

uc_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return UC_ERR_INVALID_ARGUMENT;
    case ErrorCode::Parse: return UC_ERR_PARSE;
    case ErrorCode::DivisionByZero: return UC_ERR_DIVISION_BY_ZERO;
    case ErrorCode::FieldMismatch: return UC_ERR_FIELD_MISMATCH;
    case ErrorCode::PreconditionFailed: return UC_ERR_PRECONDITION;
    case ErrorCode::BudgetExceeded: return UC_ERR_BUDGET_EXCEEDED;
    case ErrorCode::OverflowBudget: return UC_ERR_OVERFLOW_BUDGET;
    case ErrorCode::UnsupportedField: return UC_ERR_UNSUPPORTED_FIELD;
    case ErrorCode::Undecided: return UC_ERR_UNDECIDED;
    case ErrorCode::Internal: return UC_ERR_INTERNAL;
  }
  return UC_ERR_INTERNAL;
}

template <typename Fn>
uc_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return UC_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return UC_ERR_BUDGET_EXCEEDED;
  } catch (const std::exception& e) {
    last_error = e.what();
    return UC_ERR_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

Budget budget_of(const uc_options* opts) {
  Budget b;
  if (opts) {
    b.candidate_cap = opts->candidate_cap;
    b.coord_bits_cap = static_cast<std::size_t>(opts->coord_bits_cap);
  }
  return b;
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorCode::InvalidArgument, std::string("null argument: ") + what);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (item.find_first_not_of(" \t") != std::string::npos) out.push_back(item);
  return out;
}

unsigned long parse_ulong(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    unsigned long v = std::stoul(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    fail(ErrorCode::Parse, std::string("bad ") + what + ": " + s);
  }
}

void emit(char** out, const report::ordered_json& j) {
  need(out, "out");
  *out = dup(j.dump(2));
}

}  // namespace

extern "C" {

void uc_options_default(uc_options* opts) {
  if (!opts) return;
  Budget b;
  opts->candidate_cap = b.candidate_cap;
  opts->coord_bits_cap = b.coord_bits_cap;
}

const char* uc_version(void) { return UNICRIT_VERSION; }

const char* uc_status_name(uc_status status) {
  switch (status) {
    case UC_OK: return "OK";
    case UC_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case UC_ERR_PARSE: return "Parse";
    case UC_ERR_DIVISION_BY_ZERO: return "DivisionByZero";
    case UC_ERR_FIELD_MISMATCH: return "FieldMismatch";
    case UC_ERR_PRECONDITION: return "PreconditionFailed";
    case UC_ERR_BUDGET_EXCEEDED: return "BudgetExceeded";
    case UC_ERR_OVERFLOW_BUDGET: return "OverflowBudget";
    case UC_ERR_UNSUPPORTED_FIELD: return "UnsupportedField";
    case UC_ERR_UNDECIDED: return "Undecided";
    case UC_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* uc_last_error(void) { return last_error.c_str(); }

void uc_string_free(char* s) { std::free(s); }

uc_status uc_field_create(const char* min_poly, uc_field** out) {
  return guarded([&] {
    need(min_poly, "min_poly");
    need(out, "out");
    *out = new uc_field{NumberField::parse(min_poly)};
  });
}

void uc_field_free(uc_field* field) { delete field; }

int uc_field_degree(const uc_field* field) { return field ? field->K.degree() : 0; }

uc_status uc_map_create(const uc_field* field, unsigned long d, const char* c, uc_map** out) {
  return guarded([&] {
    need(field, "field");
    need(c, "c");
    need(out, "out");
    *out = new uc_map{UnicriticalMap(d, parse_element(field->K, c))};
  });
}

void uc_map_free(uc_map* map) { delete map; }

uc_status uc_preperiodic_json(const uc_map* map, const uc_options* opts, char** out) {
  return guarded([&] {
    need(map, "map");
    emit(out, report::preperiodic(map->f, budget_of(opts)));
  });
}

uc_status uc_portrait_json(const uc_map* map, const uc_options* opts, char** out) {
  return guarded([&] {
    need(map, "map");
    emit(out, report::portrait(map->f, budget_of(opts)));
  });
}

uc_status uc_portrait_dot(const uc_map* map, const uc_options* opts, char** out) {
  return guarded([&] {
    need(map, "map");
    need(out, "out");
    *out = dup(portrait_dot(build_portrait(map->f, budget_of(opts))));
  });
}

uc_status uc_skeleton_json(const uc_map* map, const uc_options* opts, char** out) {
  return guarded([&] {
    need(map, "map");
    emit(out, report::skeleton(map->f, budget_of(opts)));
  });
}

uc_status uc_skeleton_dot(const uc_map* map, const uc_options* opts, char** out) {
  return guarded([&] {
    need(map, "map");
    need(out, "out");
    const Budget b = budget_of(opts);
    *out = dup(skeleton_dot(skeletonize(build_portrait(map->f, b), map->f, b)));
  });
}

uc_status uc_classify_json(const uc_map* map, const uc_options* opts, char** out) {
  return guarded([&] {
    need(map, "map");
    emit(out, report::classify(map->f, budget_of(opts)));
  });
}

uc_status uc_theorem1_json(const uc_map* map, const char* primes, const uc_options* opts, char** out) {
  return guarded([&] {
    need(map, "map");
    std::vector<Integer> ps;
    if (primes)
      for (const auto& p : split(primes, ',')) ps.emplace_back(std::to_string(parse_ulong(p, "prime")));
    emit(out, report::theorem1(map->f, PlaceSet::from_primes(std::move(ps)), budget_of(opts)));
  });
}

uc_status uc_scan_json(const uc_field* field, unsigned long d, long c_lo, long c_hi, unsigned jobs,
                       const uc_options* opts, char** out) {
  return guarded([&] {
    need(field, "field");
    emit(out, report::scan(field->K, d, c_lo, c_hi, jobs, budget_of(opts)));
  });
}

uc_status uc_stability_json(const uc_map* map, unsigned long horizon, const uc_options* opts, char** out) {
  return guarded([&] {
    need(map, "map");
    emit(out, report::stability(map->f, horizon, budget_of(opts)));
  });
}

uc_status uc_irreducible_json(const uc_field* field, unsigned long d, const char* generators, unsigned long N,
                              unsigned long L, const uc_options* opts, char** out) {
  return guarded([&] {
    need(field, "field");
    need(generators, "generators");
    std::vector<UnicriticalMap> gens;
    for (const auto& c : split(generators, ';')) gens.emplace_back(d, parse_element(field->K, c));
    if (gens.empty()) fail(ErrorCode::InvalidArgument, "no generators given");
    emit(out, report::irreducible(gens, N, L, budget_of(opts)));
  });
}

uc_status uc_semigroup_json(const uc_field* field, const char* generators, const uc_options* opts, char** out) {
  return guarded([&] {
    need(field, "field");
    need(generators, "generators");
    std::vector<UnicriticalMap> gens;
    for (const auto& g : split(generators, ';')) {
      auto colon = g.find(':');
      if (colon == std::string::npos) fail(ErrorCode::Parse, "generator must be written d:c, got " + g);
      gens.emplace_back(parse_ulong(g.substr(0, colon), "degree"), parse_element(field->K, g.substr(colon + 1)));
    }
    emit(out, report::semigroup(SemigroupSpec(std::move(gens)), budget_of(opts)));
  });
}

uc_status uc_bounds_json(int t, unsigned long q, unsigned long d, char** out) {
  return guarded([&] { emit(out, report::bounds(t, q, d)); });
}

uc_status uc_height_json(const uc_field* field, const char* element, char** out) {
  return guarded([&] {
    need(field, "field");
    need(element, "element");
    emit(out, report::height(parse_element(field->K, element)));
  });
}

}  // extern "C"
