#pragma once

// Dense state vector over the t-qubit position register.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qpm {

using Complex = std::complex<double>;

inline constexpr unsigned kMaxQubits = 26;
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kEqualityTolerance = 1e-12;

class StateVector {
 public:
  /// H^{(x)t}|0...0>: every amplitude 1/sqrt(2^t).
  static StateVector uniform_superposition(unsigned qubits) {
    check_qubits(qubits);
    const std::size_t dim = std::size_t{1} << qubits;
    return StateVector(qubits, std::vector<Complex>(dim, Complex{1.0 / std::sqrt(static_cast<double>(dim)), 0.0}));
  }

  static StateVector basis_state(unsigned qubits, std::size_t index) {
    check_qubits(qubits);
    std::vector<Complex> amps(std::size_t{1} << qubits);
    if (index >= amps.size()) throw std::out_of_range("basis index out of range");
    amps[index] = 1.0;
    return StateVector(qubits, std::move(amps));
  }

  /// Adopts the given amplitudes; they must already be normalized.
  static StateVector from_amplitudes(std::vector<Complex> amps) {
    if (amps.empty() || !std::has_single_bit(amps.size())) {
      throw std::invalid_argument("amplitude count must be a power of two");
    }
    const auto qubits = static_cast<unsigned>(std::countr_zero(amps.size()));
    check_qubits(qubits);
    StateVector s(qubits, std::move(amps));
    if (std::abs(s.norm_squared() - 1.0) > kNormTolerance) throw std::invalid_argument("state is not normalized");
    return s;
  }

  unsigned qubits() const { return qubits_; }
  std::size_t dimension() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  /// Number of phase-oracle applications made on this state.
  std::size_t oracle_calls() const { return oracle_calls_; }

  /// Negates the amplitude of each listed index. One oracle query.
  void apply_phase_oracle(std::span<const std::size_t> solutions) {
    std::vector<std::size_t> marked(solutions.begin(), solutions.end());
    std::sort(marked.begin(), marked.end());
    marked.erase(std::unique(marked.begin(), marked.end()), marked.end());
    if (!marked.empty() && marked.back() >= amps_.size()) {
      throw std::out_of_range("oracle index " + std::to_string(marked.back()) + " outside register of size " +
                              std::to_string(amps_.size()));
    }
    for (auto x : marked) amps_[x] = -amps_[x];
    ++oracle_calls_;
  }

  /// Inversion about the mean: a_x <- 2 mean(a) - a_x.
  void apply_diffusion() {
    Complex sum{0.0, 0.0};
    for (const auto& a : amps_) sum += a;
    const Complex twice_mean = 2.0 * sum / static_cast<double>(amps_.size());
    for (auto& a : amps_) a = twice_mean - a;
  }

  double probability_of(std::size_t index) const {
    if (index >= amps_.size()) throw std::out_of_range("index out of range");
    return std::norm(amps_[index]);
  }

  double probability_mass(std::span<const std::size_t> indices) const {
    double p = 0.0;
    for (auto x : indices) p += probability_of(x);
    return p;
  }

  double norm_squared() const {
    double n = 0.0;
    for (const auto& a : amps_) n += std::norm(a);
    return n;
  }

  std::vector<double> probabilities() const {
    std::vector<double> p(amps_.size());
    std::transform(amps_.begin(), amps_.end(), p.begin(), [](const Complex& a) { return std::norm(a); });
    return p;
  }

  /// Born-rule draws of the full register; one engine seeded once.
  std::vector<std::size_t> sample(std::size_t shots, std::uint64_t seed) const {
    std::vector<double> cumulative(amps_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) cumulative[i] = acc += std::norm(amps_[i]);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::size_t> out(shots);
    for (auto& o : out) {
      const double u = unit(rng) * acc;
      const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
      o = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), amps_.size() - 1);
    }
    return out;
  }

  std::size_t measure_all(std::uint64_t seed) const { return sample(1, seed).front(); }

 private:
  StateVector(unsigned qubits, std::vector<Complex> amps) : qubits_(qubits), amps_(std::move(amps)) {}

  static void check_qubits(unsigned qubits) {
    if (qubits < 1 || qubits > kMaxQubits) {
      throw std::out_of_range("register size " + std::to_string(qubits) + " qubits outside [1, " +
                              std::to_string(kMaxQubits) + "]");
    }
  }

  unsigned qubits_ = 0;
  std::vector<Complex> amps_;
  std::size_t oracle_calls_ = 0;
};

inline StateVector uniform_superposition(unsigned qubits) { return StateVector::uniform_superposition(qubits); }

inline StateVector apply_phase_oracle(StateVector state, std::span<const std::size_t> solutions) {
  state.apply_phase_oracle(solutions);
  return state;
}

inline StateVector apply_diffusion(StateVector state) {
  state.apply_diffusion();
  return state;
}

inline std::size_t measure_all(const StateVector& state, std::uint64_t seed) { return state.measure_all(seed); }

inline double probability_of(const StateVector& state, std::size_t index) { return state.probability_of(index); }

}  // namespace qpm
