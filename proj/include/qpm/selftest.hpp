#pragma once

// Built-in invariant checks on small fixed cases.

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "qpm/classical.hpp"
#include "qpm/encoding.hpp"
#include "qpm/grover.hpp"
#include "qpm/statevec.hpp"
#include "qpm/xoracle.hpp"

namespace qpm {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace detail {

inline StateVector random_state(unsigned qubits, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Complex> amps(std::size_t{1} << qubits);
  double n = 0.0;
  for (auto& a : amps) {
    a = {g(rng), g(rng)};
    n += std::norm(a);
  }
  for (auto& a : amps) a /= std::sqrt(n);
  return StateVector::from_amplitudes(std::move(amps));
}

inline double max_abs_diff(const StateVector& a, const StateVector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

template <class Fn>
CheckResult run_check(std::string name, Fn&& fn) {
  try {
    std::string detail;
    const bool ok = fn(detail);
    return {std::move(name), ok, std::move(detail)};
  } catch (const std::exception& e) {
    return {std::move(name), false, std::string("exception: ") + e.what()};
  }
}

}  // namespace detail

/// Runs every check; `dna` is the table under test (normally dna_alphabet()).
inline std::vector<CheckResult> run_selftest(const Alphabet& dna = Alphabet::dna()) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(kDefaultSeed);
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"ACGTACGT", "GTA"}, {"AAAAAAA", "AA"}, {"GATTACAGATTACA", "TTAC"}, {"CCCGGGTTTAAA", "GGT"}};

  out.push_back(detail::run_check("encoding-table", [&](std::string& why) {
    const std::pair<char, std::uint32_t> expected[] = {{'A', 0b000}, {'T', 0b010}, {'G', 0b100}, {'C', 0b110}};
    for (auto [c, code] : expected) {
      if (dna.code(c) != code) {
        why = std::string("code for ") + c + " differs";
        return false;
      }
    }
    return dna.padding_code() == 0b111;
  }));

  out.push_back(detail::run_check("encoding-round-trip", [&](std::string& why) {
    for (const auto& [text, pattern] : cases) {
      if (decode_string(encode_string(text, dna), dna) != text) {
        why = "round trip failed on " + text;
        return false;
      }
    }
    return true;
  }));

  out.push_back(detail::run_check("unitarity", [&](std::string& why) {
    for (unsigned t = 1; t <= 6; ++t) {
      auto s = detail::random_state(t, rng);
      const std::vector<std::size_t> marked = {0, (std::size_t{1} << t) - 1};
      s.apply_phase_oracle(marked);
      s.apply_diffusion();
      if (std::abs(s.norm_squared() - 1.0) > kNormTolerance) {
        why = "norm drift at t=" + std::to_string(t);
        return false;
      }
    }
    return true;
  }));

  out.push_back(detail::run_check("oracle-involution", [&](std::string&) {
    const auto s = detail::random_state(4, rng);
    const std::vector<std::size_t> marked = {1, 5, 11};
    auto twice = s;
    twice.apply_phase_oracle(marked);
    twice.apply_phase_oracle(marked);
    return detail::max_abs_diff(s, twice) <= kEqualityTolerance;
  }));

  out.push_back(detail::run_check("diffusion-fixed-point", [&](std::string&) {
    const auto u = StateVector::uniform_superposition(5);
    auto d = u;
    d.apply_diffusion();
    return detail::max_abs_diff(u, d) <= kEqualityTolerance;
  }));

  out.push_back(detail::run_check("grover-analytic-curve", [&](std::string& why) {
    const std::pair<unsigned, std::size_t> shapes[] = {{3, 1}, {4, 3}, {6, 1}};
    for (auto [t, k] : shapes) {
      const std::size_t T = std::size_t{1} << t;
      std::vector<std::size_t> sol(k);
      for (std::size_t i = 0; i < k; ++i) sol[i] = i * (T / k);
      auto s = StateVector::uniform_superposition(t);
      for (std::size_t r = 0; r <= 2 * optimal_iterations(T, k); ++r) {
        if (std::abs(s.probability_mass(sol) - analytic_success_probability(T, k, r)) > 1e-9) {
          why = "T=" + std::to_string(T) + " k=" + std::to_string(k) + " r=" + std::to_string(r);
          return false;
        }
        s.apply_phase_oracle(sol);
        s.apply_diffusion();
      }
    }
    return true;
  }));

  out.push_back(detail::run_check("oracle-classical-equivalence", [&](std::string& why) {
    for (const auto& [text, pattern] : cases) {
      const auto db = preprocess(text, pattern.size(), dna);
      if (hamming_distance_map(db, pattern).distances() != hamming_map_classical(text, pattern, dna)) {
        why = "mismatch on " + text + "/" + pattern;
        return false;
      }
    }
    return true;
  }));

  out.push_back(detail::run_check("no-padding-false-positive", [&](std::string& why) {
    for (const auto& [text, pattern] : cases) {
      const auto state = build_entangled_state(preprocess(text, pattern.size(), dna), pattern);
      for (std::size_t x = state.live_count; x < state.padded_count(); ++x) {
        if (state.components[x].output_bits.nonzero_blocks(dna.bits_per_symbol()) != pattern.size()) {
          why = "padding entry " + std::to_string(x) + " has a zero block";
          return false;
        }
      }
    }
    return true;
  }));

  out.push_back(detail::run_check("oracle-reversibility", [&](std::string&) {
    for (const auto& [text, pattern] : cases) {
      const auto state = apply_oracle_twice(build_entangled_state(preprocess(text, pattern.size(), dna), pattern));
      for (const auto& c : state.components) {
        if (!c.output_bits.none()) return false;
      }
    }
    return true;
  }));

  return out;
}

}  // namespace qpm
