#include "qpm_cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qpm/classical.hpp"
#include "qpm/encoding.hpp"
#include "qpm/grover.hpp"
#include "qpm/selftest.hpp"
#include "qpm/xoracle.hpp"

namespace qpm::cli {
namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string text;
  std::string text_file;
  std::string pattern;
  std::string alphabet = "dna";
  std::uint64_t seed = kDefaultSeed;
  int json_indent = 2;
};

struct GroverOptions {
  std::size_t prefix_len = 0;  // 0: full pattern
  std::string mode = "known";
  std::size_t shots = 1;
  bool distribution = false;
  std::size_t max_restarts = 100;
  std::size_t runs = 1;
};

struct HammingOptions {
  std::size_t shots = 0;
  std::string csv;
};

struct ProbeOptions {
  std::size_t trials = 1000;
  std::size_t max_probes = 0;  // 0: 64 x padded size
};

struct SelftestOptions {
  bool corrupt_encoding = false;
};

struct Inputs {
  Alphabet alphabet = Alphabet::dna();
  std::string text;
  std::string pattern;
  json source;
};

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

void add_common(CLI::App* cmd, CommonOptions& o) {
  auto* text = cmd->add_option("--text", o.text, "Input text given inline");
  auto* file = cmd->add_option("--text-file", o.text_file, "Read input text from a file (whitespace ignored)");
  text->excludes(file);
  cmd->add_option("--pattern", o.pattern, "Pattern to search for")->required();
  cmd->add_option("--alphabet", o.alphabet, "dna or custom:<symbols>")->capture_default_str();
  cmd->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--json-indent", o.json_indent, "JSON indent width, -1 for compact")->capture_default_str();
}

Inputs load_inputs(const CommonOptions& o) {
  Inputs in;
  try {
    in.alphabet = parse_alphabet(o.alphabet);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::string raw;
  if (!o.text_file.empty()) {
    std::ifstream f(o.text_file, std::ios::binary);
    if (!f) throw InputError("cannot read text file '" + o.text_file + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    raw = ss.str();
    in.source = {{"kind", "file"}, {"path", o.text_file}};
  } else if (!o.text.empty()) {
    raw = o.text;
    in.source = {{"kind", "inline"}};
  } else {
    throw UsageError("one of --text or --text-file is required");
  }
  in.text = normalize_text(raw, in.alphabet);
  in.pattern = normalize_text(o.pattern, in.alphabet);
  if (in.pattern.empty()) throw UsageError("--pattern must not be empty");
  validate_text(in.text, in.alphabet, "text");
  validate_text(in.pattern, in.alphabet, "pattern");
  if (in.pattern.size() > in.text.size()) {
    throw InputError("pattern length " + std::to_string(in.pattern.size()) + " exceeds text length " +
                     std::to_string(in.text.size()));
  }
  in.source["text_length"] = in.text.size();
  return in;
}

json manifest(const std::string& command, const CommonOptions& o, const Inputs& in, json parameters) {
  json m;
  m["command"] = command;
  m["version"] = kVersion;
  json p;
  p["text_source"] = in.source;
  p["pattern"] = in.pattern;
  p["alphabet"] = in.alphabet.id();
  p["seed"] = o.seed;
  for (auto& [k, v] : parameters.items()) p[k] = v;
  m["parameters"] = std::move(p);
  return m;
}

json timing(double preprocess, double simulate, double measure) {
  return {{"preprocess", preprocess}, {"simulate", simulate}, {"measure", measure}};
}

void emit(std::ostream& out, const json& j, int indent) { out << j.dump(indent < 0 ? -1 : indent) << '\n'; }

int cmd_grover(const CommonOptions& o, const GroverOptions& g, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto in = load_inputs(o);
  const double load_ms = elapsed_ms(t0);

  if (g.runs < 1) throw UsageError("--runs must be at least 1");
  if (g.shots < 1) throw UsageError("--shots must be at least 1");
  MatchQuery query{in.text, in.pattern, std::nullopt};
  if (g.prefix_len != 0) {
    if (g.prefix_len > in.pattern.size()) throw UsageError("--prefix-len must not exceed the pattern length");
    query.prefix_len = g.prefix_len;
  }
  GroverConfig config;
  config.mode = g.mode == "unknown" ? IterationMode::unknown_k : IterationMode::known_k;
  config.max_restarts = g.max_restarts;
  config.shots = g.shots;
  config.record_distribution = g.distribution;

  std::vector<GroverResult> results;
  PhaseTimings total;
  for (std::size_t i = 0; i < g.runs; ++i) {
    config.rng_seed = o.seed + i;
    results.push_back(grover_search(query, config));
    total.preprocess_ms += results.back().timing.preprocess_ms;
    total.simulate_ms += results.back().timing.simulate_ms;
    total.measure_ms += results.back().timing.measure_ms;
  }
  const auto& first = results.front();

  json params = {{"prefix_len", query.effective_prefix()}, {"mode", g.mode},         {"shots", g.shots},
                 {"distribution", g.distribution},       {"runs", g.runs},         {"max_restarts", g.max_restarts}};
  json j;
  j["manifest"] = manifest("grover", o, in, params);
  j["manifest"]["timing_ms"] = timing(load_ms + total.preprocess_ms, total.simulate_ms, total.measure_ms);
  j["measured_position"] = first.measured_position;
  j["is_solution"] = first.is_solution;
  j["oracle_queries"] = first.oracle_queries;
  j["iterations"] = first.iterations_used;
  j["rounds"] = first.rounds;
  j["t"] = first.layout.qubits;
  j["padded_size"] = first.layout.padded_size;
  j["live_positions"] = first.layout.live_positions;
  j["match_set"] = first.match_set;
  if (first.distribution) {
    json d = json::object();
    for (const auto& [x, p] : *first.distribution) d[std::to_string(x)] = p;
    j["distribution"] = std::move(d);
  }
  if (first.shot_counts) {
    json d = json::object();
    for (const auto& [x, n] : *first.shot_counts) d[std::to_string(x)] = n;
    j["shot_counts"] = std::move(d);
  }
  bool any_solution = false;
  if (g.runs > 1) {
    json runs = json::array();
    std::set<std::size_t> observed;
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& r = results[i];
      runs.push_back({{"seed", o.seed + i},
                      {"measured_position", r.measured_position},
                      {"is_solution", r.is_solution},
                      {"oracle_queries", r.oracle_queries}});
      if (r.is_solution) observed.insert(r.measured_position);
    }
    j["runs"] = std::move(runs);
    j["observed_solutions"] = observed;
    any_solution = !observed.empty();
  } else {
    any_solution = first.is_solution;
  }
  emit(out, j, o.json_indent);
  return any_solution ? kSuccess : kNoMatch;
}

json histogram_json(const std::map<std::size_t, std::size_t>& h) {
  json out = json::object();
  for (const auto& [d, n] : h) out[std::to_string(d)] = n;
  return out;
}

json distribution_json(const std::map<std::size_t, double>& h) {
  json out = json::object();
  for (const auto& [d, p] : h) out[std::to_string(d)] = p;
  return out;
}

int cmd_hamming(const CommonOptions& o, const HammingOptions& h, std::ostream& out) {
  auto t0 = std::chrono::steady_clock::now();
  const auto in = load_inputs(o);
  const auto db = preprocess(in.text, in.pattern.size(), in.alphabet);
  const double preprocess_ms = elapsed_ms(t0);

  t0 = std::chrono::steady_clock::now();
  const auto state = build_entangled_state(db, in.pattern);
  const auto report = hamming_report(state);
  const double simulate_ms = elapsed_ms(t0);

  json j;
  j["manifest"] = manifest("hamming", o, in, {{"shots", h.shots}, {"csv", h.csv}});
  json rows = json::array();
  for (const auto& r : report.records) {
    rows.push_back({{"position", r.position}, {"bit_distance", r.bit_distance}, {"symbol_distance", r.symbol_distance}});
  }
  j["live_count"] = db.live_count;
  j["padded_size"] = db.padded_count;
  j["per_position"] = std::move(rows);
  j["match_positions"] = report.match_positions;
  j["histogram"] = histogram_json(report.histogram);

  t0 = std::chrono::steady_clock::now();
  if (h.shots > 0) {
    const auto exact = exact_distance_distribution(state);
    const auto sampled = ensemble_histogram(state, h.shots, o.seed);
    j["exact_distribution"] = distribution_json(exact);
    j["sampled_histogram"] = distribution_json(sampled);
    j["total_variation"] = total_variation(sampled, exact);
  }
  const double measure_ms = elapsed_ms(t0);

  if (!h.csv.empty()) {
    std::ofstream f(h.csv);
    if (!f) throw InputError("cannot write CSV file '" + h.csv + "'");
    f << "position,bit_distance,symbol_distance,is_exact\n";
    for (const auto& r : report.records) {
      f << r.position << ',' << r.bit_distance << ',' << r.symbol_distance << ',' << (r.is_exact ? 1 : 0) << '\n';
    }
  }
  j["manifest"]["timing_ms"] = timing(preprocess_ms, simulate_ms, measure_ms);
  emit(out, j, o.json_indent);
  return kSuccess;
}

int cmd_probe(const CommonOptions& o, const ProbeOptions& p, std::ostream& out) {
  if (p.trials < 1) throw UsageError("--trials must be at least 1");
  auto t0 = std::chrono::steady_clock::now();
  const auto in = load_inputs(o);
  const auto db = preprocess(in.text, in.pattern.size(), in.alphabet);
  const double preprocess_ms = elapsed_ms(t0);
  const std::size_t max_probes = p.max_probes != 0 ? p.max_probes : 64 * db.padded_count;

  t0 = std::chrono::steady_clock::now();
  const auto stats = probe_statistics(db, in.pattern, in.text.size(), p.trials, o.seed, max_probes);
  const double simulate_ms = elapsed_ms(t0);

  json j;
  j["manifest"] = manifest("probe", o, in, {{"trials", p.trials}, {"max_probes", max_probes}});
  j["manifest"]["timing_ms"] = timing(preprocess_ms, simulate_ms, 0.0);
  j["padded_size"] = db.padded_count;
  j["matches"] = stats.matches;
  json trials = json::array();
  for (const auto& t : stats.trials) {
    trials.push_back({{"probes_used", t.probes_used},
                      {"found_index", t.found_index ? json(*t.found_index) : json(nullptr)}});
  }
  j["trials"] = std::move(trials);
  j["empirical_mean"] = stats.empirical_mean ? json(*stats.empirical_mean) : json(nullptr);
  j["geometric_prediction"] = stats.geometric_prediction ? json(*stats.geometric_prediction) : json(nullptr);
  j["sqrtN_reference"] = stats.sqrt_n_reference;
  emit(out, j, o.json_indent);
  return kSuccess;
}

int cmd_selftest(const SelftestOptions& s, std::ostream& out) {
  const auto table = s.corrupt_encoding ? Alphabet::unchecked("dna", "ATGC", {0b000, 0b000, 0b100, 0b110}, 3)
                                        : Alphabet::dna();
  const auto checks = run_selftest(table);
  bool ok = true;
  for (const auto& c : checks) {
    out << (c.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(30) << c.name;
    if (!c.detail.empty()) out << "  " << c.detail;
    out << '\n';
    ok = ok && c.passed;
  }
  out << checks.size() << " checks, " << (ok ? "all passed" : "FAILURES") << '\n';
  return ok ? kSuccess : kInputError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum pattern-matching oracle simulator", "qpm"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CommonOptions common;
  GroverOptions grover;
  HammingOptions hamming;
  ProbeOptions probe;
  SelftestOptions selftest;

  auto* g = app.add_subcommand("grover", "Grover search with the pattern-match phase oracle");
  add_common(g, common);
  g->add_option("--prefix-len", grover.prefix_len, "Match only the first K pattern symbols");
  g->add_option("--mode", grover.mode, "Iteration schedule")
      ->check(CLI::IsMember({"known", "unknown"}))
      ->capture_default_str();
  g->add_option("--shots", grover.shots, "Measurement draws of the final state")->capture_default_str();
  g->add_flag("--distribution", grover.distribution, "Include the exact final-state distribution");
  g->add_option("--max-restarts", grover.max_restarts, "Round limit for --mode unknown")->capture_default_str();
  g->add_option("--runs", grover.runs, "Independent runs with seeds seed, seed+1, ...")->capture_default_str();

  auto* h = app.add_subcommand("hamming", "Hamming-distance map from the XOR oracle");
  add_common(h, common);
  h->add_option("--shots", hamming.shots, "Ensemble size; 0 reports only the exact map")->capture_default_str();
  h->add_option("--csv", hamming.csv, "Write per-position distances as CSV");

  auto* p = app.add_subcommand("probe", "Random-probe experiment over independent oracle units");
  add_common(p, common);
  p->add_option("--trials", probe.trials, "Seeded repetitions")->capture_default_str();
  p->add_option("--max-probes", probe.max_probes, "Probe limit per trial (default 64 x padded size)");

  auto* s = app.add_subcommand("selftest", "Run the built-in invariant checks");
  s->add_flag("--corrupt-encoding", selftest.corrupt_encoding, "Test hook: run against a corrupted table")
      ->group("");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "qpm: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (g->parsed()) return cmd_grover(common, grover, out);
    if (h->parsed()) return cmd_hamming(common, hamming, out);
    if (p->parsed()) return cmd_probe(common, probe, out);
    return cmd_selftest(selftest, out);
  } catch (const UsageError& e) {
    err << "qpm: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "qpm: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace qpm::cli
