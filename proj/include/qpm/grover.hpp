#pragma once

// Grover search over text positions with the pattern-match phase oracle.
//
// The oracle is realized from the classical match set: position x is marked
// iff the first K pattern symbols occur at x. Each Grover iteration is one
// oracle query followed by one diffusion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qpm/classical.hpp"
#include "qpm/layout.hpp"
#include "qpm/statevec.hpp"

namespace qpm {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

enum class IterationMode { known_k, unknown_k };

struct GroverConfig {
  IterationMode mode = IterationMode::known_k;
  std::uint64_t rng_seed = kDefaultSeed;
  std::size_t max_restarts = 100;  // unknown_k rounds
  std::size_t shots = 1;
  bool record_distribution = false;

  void validate() const {
    if (max_restarts < 1) throw std::invalid_argument("max_restarts must be at least 1");
    if (shots < 1) throw std::invalid_argument("shots must be at least 1");
  }
};

struct PhaseTimings {
  double preprocess_ms = 0.0;
  double simulate_ms = 0.0;
  double measure_ms = 0.0;
};

struct GroverResult {
  std::size_t measured_position = 0;
  bool is_solution = false;
  std::size_t oracle_queries = 0;
  std::size_t iterations_used = 0;
  std::size_t rounds = 1;
  RegisterLayout layout;
  std::vector<std::size_t> match_set;
  /// Exact final-state probabilities (nonzero entries), if requested.
  std::optional<std::map<std::size_t, double>> distribution;
  /// Outcome counts over `shots` draws of the final state, when shots > 1.
  std::optional<std::map<std::size_t, std::size_t>> shot_counts;
  PhaseTimings timing;
};

/// floor(pi/4 * sqrt(T/k)).
inline std::size_t optimal_iterations(std::size_t padded_size, std::size_t solutions) {
  if (solutions == 0) throw std::invalid_argument("optimal_iterations needs at least one solution");
  if (solutions > padded_size) throw std::invalid_argument("more solutions than basis states");
  const double ratio = static_cast<double>(padded_size) / static_cast<double>(solutions);
  return static_cast<std::size_t>(std::floor(std::numbers::pi / 4.0 * std::sqrt(ratio)));
}

/// sin^2((2r+1) theta) with sin theta = sqrt(k/T).
inline double analytic_success_probability(std::size_t padded_size, std::size_t solutions, std::size_t r) {
  if (solutions == 0 || solutions > padded_size) throw std::invalid_argument("need 1 <= k <= T");
  const double theta = std::asin(std::sqrt(static_cast<double>(solutions) / static_cast<double>(padded_size)));
  const double s = std::sin(static_cast<double>(2 * r + 1) * theta);
  return s * s;
}

inline std::vector<std::pair<std::size_t, double>> success_probability_curve(std::size_t padded_size,
                                                                             std::size_t solutions,
                                                                             std::size_t r_max) {
  std::vector<std::pair<std::size_t, double>> curve;
  curve.reserve(r_max + 1);
  for (std::size_t r = 0; r <= r_max; ++r) curve.emplace_back(r, analytic_success_probability(padded_size, solutions, r));
  return curve;
}

/// Uniform superposition followed by `iterations` rounds of oracle + diffusion.
inline StateVector amplify(unsigned qubits, std::span<const std::size_t> solutions, std::size_t iterations) {
  auto state = StateVector::uniform_superposition(qubits);
  for (std::size_t i = 0; i < iterations; ++i) {
    state.apply_phase_oracle(solutions);
    state.apply_diffusion();
  }
  return state;
}

namespace detail {

class Stopwatch {
 public:
  double lap_ms() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

inline bool contains_sorted(const std::vector<std::size_t>& set, std::size_t x) {
  return std::binary_search(set.begin(), set.end(), x);
}

inline void record_outputs(const StateVector& state, const GroverConfig& config, GroverResult& result) {
  if (config.record_distribution) {
    std::map<std::size_t, double> dist;
    const auto probs = state.probabilities();
    for (std::size_t x = 0; x < probs.size(); ++x) {
      if (probs[x] > 0.0) dist.emplace(x, probs[x]);
    }
    result.distribution = std::move(dist);
  }
  const auto draws = state.sample(config.shots, config.rng_seed);
  result.measured_position = draws.front();
  if (config.shots > 1) {
    std::map<std::size_t, std::size_t> counts;
    for (auto d : draws) ++counts[d];
    result.shot_counts = std::move(counts);
  }
}

}  // namespace detail

/// Unknown solution count: exponential schedule with growth 6/5 capped at
/// sqrt(T), one uniformly chosen iteration count per round.
inline GroverResult grover_search_unknown_k(const MatchQuery& query, const GroverConfig& config) {
  config.validate();
  query.validate();
  detail::Stopwatch clock;
  GroverResult result;
  result.layout = position_register_size(query.text.size(), query.pattern.size());
  result.match_set = naive_match_positions(query);
  result.timing.preprocess_ms = clock.lap_ms();

  constexpr double kGrowth = 6.0 / 5.0;
  const double cap = std::sqrt(static_cast<double>(result.layout.padded_size));
  std::mt19937_64 rng(config.rng_seed);
  double bound = 1.0;
  result.rounds = 0;
  for (std::size_t round = 0; round < config.max_restarts; ++round) {
    ++result.rounds;
    const auto choices = static_cast<std::size_t>(std::ceil(bound));
    const std::size_t r = std::uniform_int_distribution<std::size_t>(0, choices - 1)(rng);
    const auto state = amplify(result.layout.qubits, result.match_set, r);
    result.oracle_queries += state.oracle_calls();
    result.timing.simulate_ms += clock.lap_ms();
    result.measured_position = state.measure_all(rng());
    result.is_solution = detail::contains_sorted(result.match_set, result.measured_position);
    result.timing.measure_ms += clock.lap_ms();
    if (result.is_solution) break;
    bound = std::min(std::ceil(kGrowth * bound), cap);
  }
  result.iterations_used = result.oracle_queries;
  return result;
}

inline GroverResult grover_search(const MatchQuery& query, const GroverConfig& config = {}) {
  if (config.mode == IterationMode::unknown_k) return grover_search_unknown_k(query, config);
  config.validate();
  query.validate();
  detail::Stopwatch clock;
  GroverResult result;
  result.layout = position_register_size(query.text.size(), query.pattern.size());
  result.match_set = naive_match_positions(query);
  result.timing.preprocess_ms = clock.lap_ms();

  const std::size_t r =
      result.match_set.empty() ? 0 : optimal_iterations(result.layout.padded_size, result.match_set.size());
  const auto state = amplify(result.layout.qubits, result.match_set, r);
  result.oracle_queries = state.oracle_calls();
  result.iterations_used = r;
  result.timing.simulate_ms = clock.lap_ms();
  detail::record_outputs(state, config, result);
  result.is_solution = detail::contains_sorted(result.match_set, result.measured_position);
  result.timing.measure_ms = clock.lap_ms();
  return result;
}

}  // namespace qpm
