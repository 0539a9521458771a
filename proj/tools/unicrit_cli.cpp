#include <unicrit.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

using nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kCompute = 2;

struct Config {
  std::string field = "x";
  unsigned long d = 2;
  std::string c = "0";
  std::string c_range;
  std::string s_primes;
  std::string gens;
  unsigned long N = 2;
  unsigned long L = 2;
  int t = 1;
  unsigned long q = 0;
  std::string format = "json";
  unsigned long long candidate_cap = 0;
  unsigned long long coord_bits_cap = 0;
  unsigned jobs = 1;
};

int exit_code(uc_status s) {
  switch (s) {
    case UC_OK: return kOk;
    case UC_ERR_BUDGET_EXCEEDED:
    case UC_ERR_OVERFLOW_BUDGET:
    case UC_ERR_UNSUPPORTED_FIELD:
    case UC_ERR_UNDECIDED:
    case UC_ERR_INTERNAL: return kCompute;
    default: return kUsage;
  }
}

struct FieldDeleter {
  void operator()(uc_field* f) const { uc_field_free(f); }
};
struct MapDeleter {
  void operator()(uc_map* m) const { uc_map_free(m); }
};
using FieldPtr = std::unique_ptr<uc_field, FieldDeleter>;
using MapPtr = std::unique_ptr<uc_map, MapDeleter>;

class Failure {
 public:
  explicit Failure(uc_status s) : status(s) {}
  uc_status status;
};

void check(uc_status s) {
  if (s != UC_OK) throw Failure(s);
}

FieldPtr make_field(const Config& cfg) {
  uc_field* f = nullptr;
  check(uc_field_create(cfg.field.c_str(), &f));
  return FieldPtr(f);
}

MapPtr make_map(const uc_field* K, const Config& cfg) {
  uc_map* m = nullptr;
  check(uc_map_create(K, cfg.d, cfg.c.c_str(), &m));
  return MapPtr(m);
}

std::string take(char* s) {
  std::string out(s ? s : "");
  uc_string_free(s);
  return out;
}

ordered_json input_echo(const std::string& cmd, const Config& cfg) {
  ordered_json in = {{"command", cmd}};
  if (cmd == "bounds") {
    in["t"] = cfg.t;
    in["q"] = cfg.q;
    in["d"] = cfg.d;
    return in;
  }
  in["field"] = cfg.field;
  if (cmd != "semigroup") in["d"] = cfg.d;
  if (cmd == "scan") {
    in["c_range"] = cfg.c_range;
  } else if (cmd == "irreducible" || cmd == "semigroup") {
    in["generators"] = cfg.gens;
  } else {
    in["c"] = cfg.c;
  }
  if (cmd == "theorem1") in["s_primes"] = cfg.s_primes;
  if (cmd == "irreducible") {
    in["N"] = cfg.N;
    in["L"] = cfg.L;
  }
  if (cmd == "stability") in["N"] = cfg.N;
  if (cfg.candidate_cap) in["candidate_cap"] = cfg.candidate_cap;
  if (cfg.coord_bits_cap) in["coord_bits_cap"] = cfg.coord_bits_cap;
  return in;
}

std::pair<long, long> parse_range(const std::string& r) {
  auto colon = r.find(':', 1);
  if (colon == std::string::npos) throw CLI::ValidationError("--c-range", "expected lo:hi");
  try {
    return {std::stol(r.substr(0, colon)), std::stol(r.substr(colon + 1))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--c-range", "expected integers lo:hi");
  }
}

void print_text(const ordered_json& j, const std::string& prefix = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it->is_object()) {
      print_text(*it, prefix + it.key() + ".");
    } else {
      std::cout << prefix << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
    }
  }
}

const char* kSchema = R"({
  "envelope": {"version": "string", "input": "object echoing every flag", "result": "command result"},
  "portrait": {"vertices": [{"id": "int", "kind": "concrete", "value": "element"}], "edges": [["from", "to"]], "label": "table label"},
  "skeleton": {"vertices": [{"id": "int", "kind": "concrete|preimage_class", "value?": "element", "parent?": "int", "members?": ["element"]}], "edges": [["from", "to"]], "label": "table label"},
  "classify": {"label": "table label", "reason?": "string", "small_d_observation": "bool", "preper_count": "int", "skeleton": "skeleton"},
  "scan": {"records": [{"c": "int", "label": "table label", "reason?": "string", "small_d_observation": "bool", "preper_count": "int"}], "summary": {"total": "int", "histogram": {"label": "count"}, "not_in_table": ["int"], "not_in_table_count": "int"}},
  "theorem1": {"map": "string", "preperiodic": ["element"], "max_cycle_length": "int", "statement1": {"holds": "bool"}, "height_vs_log3": "less|equal|greater", "statement2": {"applicable": "bool", "holds": "bool", "y?": "element"}, "statement3": {"applicable": "bool", "holds": "bool"}},
  "irreducible": {"decomposition": {"G11": ["map"], "G12": ["map"], "G13": ["map"]}, "has_irreducible_above_log3": "bool", "special_form_b": {"detected": "bool", "P?": {"P": "element", "r": "element", "y": "element", "p": "int"}}, "designated_prefix?": {"f1": "map", "f2": "map", "N": "int"}, "word_length": "int", "words_tested": "int", "words_certified": "int", "proportion": "rational string", "multiplier_sets_differ": "bool", "notes": ["string"]},
  "stability": {"map": "string", "horizon": "int", "stable": "bool", "step?": "int", "witness?": {"r": "element", "y": "element", "p": "int"}},
  "semigroup": {"generators": ["map"], "finite_orbit_points": ["element"], "zero_reaches": "bool", "witness_path": ["generator index"], "reason": "string", "bound_check": {"generators": "int", "distinct_degrees": "int", "preper_first": "int", "holds": "bool"}},
  "bounds": {"t": "int", "q": "int", "d": "int", "rho_d": ["lo", "hi"], "rho_d^d": ["lo", "hi"], "V_t": ["lo", "hi"], "sz": "number", "sz_exact": "rational string", "kappa2": ["lo", "hi"], "s_size_bound": "int"},
  "element": "power-basis coordinates a0/b0,a1/b1,... printed as a polynomial in the generator a"
})";

int run(const std::string& cmd, const Config& cfg) {
  uc_options opts;
  uc_options_default(&opts);
  if (cfg.candidate_cap) opts.candidate_cap = cfg.candidate_cap;
  if (cfg.coord_bits_cap) opts.coord_bits_cap = cfg.coord_bits_cap;

  const bool dot = cfg.format == "dot";
  if (dot && cmd != "portrait" && cmd != "skeleton") {
    std::cerr << "error: --format dot is only available for portrait and skeleton\n";
    return kUsage;
  }

  char* out = nullptr;
  if (cmd == "bounds") {
    check(uc_bounds_json(cfg.t, cfg.q, cfg.d, &out));
  } else {
    FieldPtr K = make_field(cfg);
    if (cmd == "scan") {
      auto [lo, hi] = parse_range(cfg.c_range);
      check(uc_scan_json(K.get(), cfg.d, lo, hi, cfg.jobs, &opts, &out));
    } else if (cmd == "irreducible") {
      check(uc_irreducible_json(K.get(), cfg.d, cfg.gens.c_str(), cfg.N, cfg.L, &opts, &out));
    } else if (cmd == "semigroup") {
      check(uc_semigroup_json(K.get(), cfg.gens.c_str(), &opts, &out));
    } else {
      MapPtr f = make_map(K.get(), cfg);
      if (cmd == "portrait")
        check(dot ? uc_portrait_dot(f.get(), &opts, &out) : uc_portrait_json(f.get(), &opts, &out));
      else if (cmd == "skeleton")
        check(dot ? uc_skeleton_dot(f.get(), &opts, &out) : uc_skeleton_json(f.get(), &opts, &out));
      else if (cmd == "classify")
        check(uc_classify_json(f.get(), &opts, &out));
      else if (cmd == "theorem1")
        check(uc_theorem1_json(f.get(), cfg.s_primes.c_str(), &opts, &out));
      else if (cmd == "stability")
        check(uc_stability_json(f.get(), cfg.N, &opts, &out));
    }
  }
  std::string body = take(out);
  if (dot) {
    std::cout << body;
    return kOk;
  }
  ordered_json env = {{"version", uc_version()}, {"input", input_echo(cmd, cfg)},
                      {"result", ordered_json::parse(body)}};
  if (cfg.format == "text") {
    if (cmd == "classify") {
      std::cout << env["result"]["label"].get<std::string>() << "\n";
    } else {
      print_text(env);
    }
  } else {
    std::cout << env.dump(2) << "\n";
  }
  return kOk;
}

// Turns a JSON job object into command-line arguments.
std::vector<std::string> job_args(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--job", "cannot open " + path);
  ordered_json job;
  try {
    job = ordered_json::parse(in);
  } catch (const std::exception& e) {
    throw CLI::ValidationError("--job", e.what());
  }
  if (!job.is_object() || !job.contains("command")) throw CLI::ValidationError("--job", "job needs a \"command\" key");
  std::vector<std::string> args{"unicrit", job["command"].get<std::string>()};
  for (auto it = job.begin(); it != job.end(); ++it) {
    if (it.key() == "command") continue;
    std::string key = it.key();
    for (auto& ch : key)
      if (ch == '_') ch = '-';
    args.push_back((key.size() == 1 ? "-" : "--") + key);
    args.push_back(it->is_string() ? it->get<std::string>() : it->dump());
  }
  return args;
}

int parse_and_run(int argc, char** argv);

int parse_and_run(const std::vector<std::string>& args) {
  std::vector<char*> ptrs;
  for (const auto& a : args) ptrs.push_back(const_cast<char*>(a.c_str()));
  return parse_and_run(static_cast<int>(ptrs.size()), ptrs.data());
}

int parse_and_run(int argc, char** argv) {
  CLI::App app{"Preperiodic portraits, skeletons and irreducibility certificates for x^d + c over number fields"};
  app.require_subcommand(0, 1);
  Config cfg;
  std::string job;
  bool schema = false;
  app.add_option("--job", job, "JSON job file whose keys mirror the flags");
  app.add_flag("--help-schema", schema, "Print the JSON output schemas and exit");
  app.set_version_flag("--version", uc_version());

  auto common = [&](CLI::App* sub, bool with_c) {
    sub->add_option("--field", cfg.field, "Monic irreducible minimal polynomial in x (\"x\" for Q)");
    sub->add_option("-d,--d", cfg.d, "Degree d >= 2")->check(CLI::Range(2ul, 1ul << 20));
    if (with_c) sub->add_option("-c,--c", cfg.c, "Coefficient c as a0/b0,a1/b1,...");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "dot", "text"}));
    sub->add_option("--candidate-cap", cfg.candidate_cap, "Cap on enumerated candidates");
    sub->add_option("--coord-bits-cap", cfg.coord_bits_cap, "Cap on coordinate bit size");
  };

  std::vector<CLI::App*> subs;
  auto add = [&](const char* name, const char* desc, bool with_c) {
    CLI::App* s = app.add_subcommand(name, desc);
    common(s, with_c);
    subs.push_back(s);
    return s;
  };
  add("portrait", "Preperiodic portrait", true);
  add("skeleton", "Skeleton of the portrait", true);
  add("classify", "Table label of the skeleton", true);
  auto scan = add("scan", "Classify every integer c in a range", false);
  scan->add_option("--c-range", cfg.c_range, "Integer range lo:hi")->required();
  scan->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  auto thm = add("theorem1", "Check the three statements on preperiodic points", true);
  thm->add_option("--s-primes", cfg.s_primes, "Comma-separated finite primes of S");
  auto irr = add("irreducible", "Semigroup irreducibility report", false);
  irr->add_option("--gens", cfg.gens, "Coefficients separated by ';'")->required();
  irr->add_option("-N,--N", cfg.N, "Exponent of the designated prefix");
  irr->add_option("-L,--L", cfg.L, "Maximal word length after the prefix");
  auto stab = add("stability", "Stability certificate up to a horizon", true);
  stab->add_option("-N,--N", cfg.N, "Horizon");
  auto semi = add("semigroup", "Finite orbit points and the orbit of zero", false);
  semi->add_option("--gens", cfg.gens, "Generators d:c separated by ';'")->required();
  auto bnd = app.add_subcommand("bounds", "Explicit constants for degree t, prime q and d");
  bnd->add_option("-t,--t", cfg.t, "Field degree")->check(CLI::Range(1, 64));
  bnd->add_option("-q,--q", cfg.q, "Largest prime below S, or 0");
  bnd->add_option("-d,--d", cfg.d, "Degree d >= 2")->check(CLI::Range(2ul, 1ul << 20));
  bnd->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  subs.push_back(bnd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  if (schema) {
    std::cout << ordered_json::parse(kSchema).dump(2) << "\n";
    return kOk;
  }
  if (!job.empty()) {
    try {
      return parse_and_run(job_args(job));
    } catch (const CLI::Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kUsage;
    }
  }
  CLI::App* chosen = nullptr;
  for (auto* s : subs)
    if (s->parsed()) chosen = s;
  if (!chosen) {
    std::cerr << app.help();
    return kUsage;
  }
  try {
    return run(chosen->get_name(), cfg);
  } catch (const Failure& f) {
    std::cerr << "error: " << uc_status_name(f.status) << ": " << uc_last_error() << "\n";
    return exit_code(f.status);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) { return parse_and_run(argc, argv); }
