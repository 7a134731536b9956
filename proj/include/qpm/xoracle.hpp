#pragma once

// Index-substring database and the XOR oracle
//
//   O |x>|s_x>|P>|0> = |x>|s_x>|P>|P xor s_x>
//
// applied to the uniform superposition over all database entries. Because the
// index register makes every component orthogonal, the composite state is
// stored exactly as one component per index with a shared amplitude.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qpm/classical.hpp"
#include "qpm/encoding.hpp"
#include "qpm/layout.hpp"

namespace qpm {

struct DatabaseEntry {
  std::size_t position = 0;
  std::string_view window;  // view into the database's shared text
};

struct IndexedSubstringDatabase {
  std::shared_ptr<const std::string> storage;  // text followed by M padding symbols
  std::vector<DatabaseEntry> entries;          // padded_count entries, indexed by position
  std::size_t pattern_len = 0;
  std::size_t live_count = 0;
  std::size_t padded_count = 0;
  Alphabet alphabet = Alphabet::dna();
};

/// Slides a length-M window over the text and pads with all-'Z' entries up
/// to the next power of two. Windows share one copy of the text.
inline IndexedSubstringDatabase preprocess(std::string_view text, std::size_t pattern_len, const Alphabet& alphabet) {
  const auto layout = position_register_size(text.size(), pattern_len);
  validate_text(text, alphabet, "text");
  auto storage = std::make_shared<std::string>();
  storage->reserve(text.size() + pattern_len);
  storage->append(text).append(pattern_len, Alphabet::kPaddingSymbol);
  const std::string_view all(*storage);
  const auto padding = all.substr(text.size(), pattern_len);

  IndexedSubstringDatabase db{std::move(storage), {}, pattern_len, layout.live_positions, layout.padded_size, alphabet};
  db.entries.reserve(layout.padded_size);
  for (std::size_t x = 0; x < layout.live_positions; ++x) db.entries.push_back({x, all.substr(x, pattern_len)});
  for (std::size_t x = layout.live_positions; x < layout.padded_size; ++x) db.entries.push_back({x, padding});
  return db;
}

struct CompositeComponent {
  std::size_t index = 0;
  BitString substring_bits;
  BitString output_bits;
};

struct SparseCompositeState {
  EncodedString pattern;
  std::vector<CompositeComponent> components;
  std::size_t live_count = 0;

  std::size_t padded_count() const { return components.size(); }
  double amplitude() const { return 1.0 / std::sqrt(static_cast<double>(components.size())); }
  unsigned bits_per_symbol() const { return pattern.bits_per_symbol; }
};

/// |x>|s_x>|P>|0>: output register cleared, before the oracle.
inline SparseCompositeState prepare_input_state(const IndexedSubstringDatabase& db, std::string_view pattern) {
  if (pattern.size() != db.pattern_len) {
    throw std::invalid_argument("pattern length " + std::to_string(pattern.size()) +
                                " does not match database window length " + std::to_string(db.pattern_len));
  }
  SparseCompositeState state{encode_string(pattern, db.alphabet), {}, db.live_count};
  const BitString zero(state.pattern.bits.width());
  state.components.reserve(db.entries.size());
  for (const auto& e : db.entries) {
    state.components.push_back({e.position, encode_string(e.window, db.alphabet, PaddingPolicy::allow).bits, zero});
  }
  return state;
}

/// One application of the XOR oracle: output ^= P xor s_x on every component.
inline void apply_oracle(SparseCompositeState& state) {
  for (auto& c : state.components) {
    c.output_bits ^= state.pattern.bits;
    c.output_bits ^= c.substring_bits;
  }
}

inline SparseCompositeState build_entangled_state(const IndexedSubstringDatabase& db, std::string_view pattern) {
  auto state = prepare_input_state(db, pattern);
  apply_oracle(state);
  return state;
}

/// Second oracle application on an entangled state (which already carries the
/// first). The output register returns to all zeros.
inline SparseCompositeState apply_oracle_twice(SparseCompositeState state) {
  apply_oracle(state);
  return state;
}

/// Draws the index of the component selected by one joint measurement of the
/// output register. All amplitudes are equal, so each component is equally likely.
template <class Rng>
std::size_t draw_component(const SparseCompositeState& state, Rng& rng) {
  return std::uniform_int_distribution<std::size_t>(0, state.components.size() - 1)(rng);
}

struct OutputMeasurement {
  BitString outcome;
  double outcome_probability = 0.0;
  /// Conditional distribution of the index register, ascending by index.
  std::vector<std::pair<std::size_t, double>> posterior;
};

/// State of the index register after the output register reads `outcome`:
/// uniform over the consistent indices.
inline OutputMeasurement condition_on_output(const SparseCompositeState& state, const BitString& outcome) {
  OutputMeasurement m{outcome, 0.0, {}};
  for (const auto& c : state.components) {
    if (c.output_bits == outcome) m.posterior.emplace_back(c.index, 0.0);
  }
  if (m.posterior.empty()) return m;
  const double p = 1.0 / static_cast<double>(m.posterior.size());
  for (auto& entry : m.posterior) entry.second = p;
  m.outcome_probability = static_cast<double>(m.posterior.size()) / static_cast<double>(state.padded_count());
  return m;
}

inline OutputMeasurement measure_output_register(const SparseCompositeState& state, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto j = draw_component(state, rng);
  return condition_on_output(state, state.components[j].output_bits);
}

/// Exact distribution of the joint output-register observable.
inline std::vector<std::pair<BitString, double>> output_distribution(const SparseCompositeState& state) {
  std::unordered_map<BitString, std::size_t> counts;
  for (const auto& c : state.components) ++counts[c.output_bits];
  std::vector<std::pair<BitString, double>> out;
  out.reserve(counts.size());
  const auto total = static_cast<double>(state.padded_count());
  for (const auto& [bits, n] : counts) out.emplace_back(bits, static_cast<double>(n) / total);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first.to_string() < b.first.to_string(); });
  return out;
}

struct MatchedIndexSample {
  std::optional<std::size_t> index;
  std::size_t attempts = 0;
};

/// Measures freshly prepared states until the output register reads all
/// zeros, then measures the index register.
inline MatchedIndexSample sample_matched_index(const SparseCompositeState& state, std::uint64_t seed,
                                               std::size_t max_attempts) {
  std::mt19937_64 rng(seed);
  MatchedIndexSample s;
  while (s.attempts < max_attempts) {
    ++s.attempts;
    const auto j = draw_component(state, rng);
    if (!state.components[j].output_bits.none()) continue;
    const auto m = condition_on_output(state, state.components[j].output_bits);
    s.index = m.posterior[std::uniform_int_distribution<std::size_t>(0, m.posterior.size() - 1)(rng)].first;
    return s;
  }
  return s;
}

struct HammingRecord {
  std::size_t position = 0;
  std::size_t bit_distance = 0;
  std::size_t symbol_distance = 0;
  bool is_exact = false;
};

struct HammingReport {
  std::vector<HammingRecord> records;           // live entries only
  std::map<std::size_t, std::size_t> histogram;  // bit_distance -> count
  std::vector<std::size_t> match_positions;

  std::vector<WindowDistance> distances() const {
    std::vector<WindowDistance> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back({r.position, r.bit_distance, r.symbol_distance});
    return out;
  }
};

/// Exact report read off the output register of every live component.
inline HammingReport hamming_report(const SparseCompositeState& state) {
  HammingReport report;
  const unsigned b = state.bits_per_symbol();
  for (std::size_t x = 0; x < state.live_count; ++x) {
    const auto& out = state.components[x].output_bits;
    HammingRecord r{state.components[x].index, out.popcount(), out.nonzero_blocks(b), out.none()};
    ++report.histogram[r.bit_distance];
    if (r.is_exact) report.match_positions.push_back(r.position);
    report.records.push_back(r);
  }
  return report;
}

inline HammingReport hamming_distance_map(const IndexedSubstringDatabase& db, std::string_view pattern) {
  return hamming_report(build_entangled_state(db, pattern));
}

/// Bit-distance distribution over all padded components, which is what the
/// output-register ensemble converges to.
inline std::map<std::size_t, double> exact_distance_distribution(const SparseCompositeState& state) {
  std::map<std::size_t, double> dist;
  const double w = 1.0 / static_cast<double>(state.padded_count());
  for (const auto& c : state.components) dist[c.output_bits.popcount()] += w;
  return dist;
}

/// Each shot measures an identically prepared state with seed base_seed + shot.
inline std::map<std::size_t, double> ensemble_histogram(const SparseCompositeState& state, std::size_t shots,
                                                        std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be at least 1");
  std::vector<std::size_t> distance(state.components.size());
  for (std::size_t j = 0; j < distance.size(); ++j) distance[j] = state.components[j].output_bits.popcount();
  std::map<std::size_t, std::size_t> counts;
  for (std::size_t shot = 0; shot < shots; ++shot) {
    std::mt19937_64 rng(seed + shot);
    ++counts[distance[draw_component(state, rng)]];
  }
  std::map<std::size_t, double> freq;
  for (const auto& [d, n] : counts) freq[d] = static_cast<double>(n) / static_cast<double>(shots);
  return freq;
}

inline double total_variation(const std::map<std::size_t, double>& p, const std::map<std::size_t, double>& q) {
  double tv = 0.0;
  for (const auto& [k, v] : p) {
    const auto it = q.find(k);
    tv += std::abs(v - (it == q.end() ? 0.0 : it->second));
  }
  for (const auto& [k, v] : q) {
    if (!p.contains(k)) tv += std::abs(v);
  }
  return tv / 2.0;
}

struct UnitResult {
  std::size_t index = 0;
  BitString output_bits;
  std::size_t symbol_ops = 0;  // work performed by the unit
};

/// The oracle evaluated on the single input |i>|s_i>|P>|0>.
inline UnitResult run_unit(const IndexedSubstringDatabase& db, const EncodedString& pattern, std::size_t index) {
  if (index >= db.entries.size()) {
    throw std::out_of_range("unit index " + std::to_string(index) + " outside database of " +
                            std::to_string(db.entries.size()) + " entries");
  }
  const unsigned b = pattern.bits_per_symbol;
  const auto& window = db.entries[index].window;
  BitString out(pattern.bits.width());
  for (std::size_t j = 0; j < window.size(); ++j) {
    const char c = window[j];
    const auto code = c == Alphabet::kPaddingSymbol ? db.alphabet.padding_code() : db.alphabet.code(c);
    out.set_block(j, b, code ^ pattern.bits.block(j, b));
  }
  return {index, std::move(out), window.size()};
}

/// Independent oracle units, one per requested index. Large batches are split
/// across worker threads; results keep the order of `unit_indices`.
inline std::vector<UnitResult> run_parallel_units(const IndexedSubstringDatabase& db, std::string_view pattern,
                                                  std::span<const std::size_t> unit_indices,
                                                  [[maybe_unused]] std::uint64_t seed = 0) {
  if (pattern.size() != db.pattern_len) throw std::invalid_argument("pattern length does not match database");
  const auto enc = encode_string(pattern, db.alphabet);
  for (auto i : unit_indices) {
    if (i >= db.entries.size()) {
      throw std::out_of_range("unit index " + std::to_string(i) + " outside database of " +
                              std::to_string(db.entries.size()) + " entries");
    }
  }
  std::vector<UnitResult> results(unit_indices.size());
  constexpr std::size_t kMinPerWorker = 4096;
  const std::size_t workers =
      std::clamp<std::size_t>(unit_indices.size() / kMinPerWorker, 1, std::max(1u, std::thread::hardware_concurrency()));
  const auto run_range = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t j = lo; j < hi; ++j) results[j] = run_unit(db, enc, unit_indices[j]);
  };
  if (workers == 1) {
    run_range(0, unit_indices.size());
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (unit_indices.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t lo = w * chunk;
      const std::size_t hi = std::min(unit_indices.size(), lo + chunk);
      if (lo < hi) pool.emplace_back(run_range, lo, hi);
    }
  }
  return results;
}

struct ProbeOutcome {
  std::size_t probes_used = 0;
  std::optional<std::size_t> found_index;
};

/// Probes uniformly random indices (with replacement), one unit per probe,
/// until a unit reports an all-zero output register.
inline ProbeOutcome random_probe_experiment(const IndexedSubstringDatabase& db, std::string_view pattern,
                                            std::uint64_t seed, std::size_t max_probes) {
  if (max_probes < 1) throw std::invalid_argument("max_probes must be at least 1");
  if (pattern.size() != db.pattern_len) throw std::invalid_argument("pattern length does not match database");
  const auto enc = encode_string(pattern, db.alphabet);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, db.entries.size() - 1);
  ProbeOutcome out;
  while (out.probes_used < max_probes) {
    ++out.probes_used;
    const auto i = pick(rng);
    if (run_unit(db, enc, i).output_bits.none()) {
      out.found_index = i;
      break;
    }
  }
  return out;
}

struct ProbeStatistics {
  std::vector<ProbeOutcome> trials;
  std::size_t matches = 0;                    // k
  std::optional<double> empirical_mean;       // over trials that found a match
  std::optional<double> geometric_prediction;  // T / k
  double sqrt_n_reference = 0.0;               // sqrt(N), for comparison only
};

/// Repeats the probe experiment with seeds base_seed + trial.
inline ProbeStatistics probe_statistics(const IndexedSubstringDatabase& db, std::string_view pattern,
                                        std::size_t text_len, std::size_t trials, std::uint64_t base_seed,
                                        std::size_t max_probes) {
  ProbeStatistics stats;
  const auto report = hamming_distance_map(db, pattern);
  stats.matches = report.match_positions.size();
  if (stats.matches > 0) {
    stats.geometric_prediction = static_cast<double>(db.padded_count) / static_cast<double>(stats.matches);
  }
  stats.sqrt_n_reference = std::sqrt(static_cast<double>(text_len));
  double sum = 0.0;
  std::size_t found = 0;
  stats.trials.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto o = random_probe_experiment(db, pattern, base_seed + t, max_probes);
    if (o.found_index) {
      sum += static_cast<double>(o.probes_used);
      ++found;
    }
    stats.trials.push_back(o);
  }
  if (found > 0) stats.empirical_mean = sum / static_cast<double>(found);
  return stats;
}

}  // namespace qpm
