#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "qpm/statevec.hpp"

namespace qpm {
namespace {

StateVector random_state(unsigned qubits, std::mt19937_64& rng) {
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

void expect_amplitudes(const StateVector& s, const std::vector<Complex>& expected) {
  ASSERT_EQ(s.dimension(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_NEAR(std::abs(s[i] - expected[i]), 0.0, kEqualityTolerance) << "index " << i;
  }
}

TEST(StateVector, UniformOneQubit) {
  const double h = 1.0 / std::sqrt(2.0);
  expect_amplitudes(uniform_superposition(1), {h, h});
}

TEST(StateVector, UniformThreeQubits) {
  const auto s = uniform_superposition(3);
  expect_amplitudes(s, std::vector<Complex>(8, 1.0 / std::sqrt(8.0)));
  EXPECT_NEAR(s.norm_squared(), 1.0, kNormTolerance);
}

TEST(StateVector, RegisterSizeLimits) {
  EXPECT_THROW(uniform_superposition(0), std::out_of_range);
  EXPECT_THROW(uniform_superposition(kMaxQubits + 1), std::out_of_range);
}

TEST(StateVector, FromAmplitudesValidates) {
  EXPECT_THROW(StateVector::from_amplitudes({1.0, 0.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(StateVector::from_amplitudes({1.0, 1.0}), std::invalid_argument);
}

TEST(PhaseOracle, EmptySetIsIdentity) {
  auto s = uniform_superposition(2);
  s.apply_phase_oracle({});
  expect_amplitudes(s, std::vector<Complex>(4, 0.5));
  EXPECT_EQ(s.oracle_calls(), 1u);
}

TEST(PhaseOracle, FlipsMarkedIndex) {
  const std::vector<std::size_t> marked = {3};
  expect_amplitudes(apply_phase_oracle(uniform_superposition(2), marked), {0.5, 0.5, 0.5, -0.5});
}

TEST(PhaseOracle, DuplicateIndicesFlipOnce) {
  const std::vector<std::size_t> marked = {1, 1};
  expect_amplitudes(apply_phase_oracle(uniform_superposition(2), marked), {0.5, -0.5, 0.5, 0.5});
}

TEST(PhaseOracle, OutOfRangeIndex) {
  auto s = uniform_superposition(2);
  const std::vector<std::size_t> marked = {4};
  EXPECT_THROW(s.apply_phase_oracle(marked), std::out_of_range);
}

TEST(Diffusion, UniformIsFixedPoint) {
  const auto u = uniform_superposition(4);
  expect_amplitudes(apply_diffusion(u), std::vector<Complex>(u.amplitudes().begin(), u.amplitudes().end()));
}

TEST(Diffusion, BasisStateReflection) {
  // 2 * mean - a with mean 1/4.
  expect_amplitudes(apply_diffusion(StateVector::basis_state(2, 0)), {-0.5, 0.5, 0.5, 0.5});
}

TEST(Measure, CertainOutcome) {
  const auto s = StateVector::basis_state(3, 5);
  for (std::uint64_t seed = 0; seed < 50; ++seed) EXPECT_EQ(measure_all(s, seed), 5u);
}

TEST(Measure, UniformFrequencies) {
  const auto draws = uniform_superposition(2).sample(100000, 99);
  std::array<std::size_t, 4> counts{};
  for (auto d : draws) ++counts[d];
  for (auto c : counts) EXPECT_NEAR(static_cast<double>(c) / 1e5, 0.25, 0.01);
}

TEST(Measure, SeedReproducible) {
  std::mt19937_64 rng(5);
  const auto s = random_state(5, rng);
  for (std::uint64_t seed = 0; seed < 20; ++seed) EXPECT_EQ(measure_all(s, seed), measure_all(s, seed));
  EXPECT_EQ(s.sample(100, 3), s.sample(100, 3));
}

TEST(Probability, UniformEighth) {
  const auto s = uniform_superposition(3);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(probability_of(s, i), 0.125, kEqualityTolerance);
  EXPECT_THROW(probability_of(s, 8), std::out_of_range);
}

TEST(StateVectorProperty, UnitaryOperationsPreserveNorm) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const unsigned t = 1 + rng() % 8;
    auto s = random_state(t, rng);
    std::vector<std::size_t> marked;
    for (std::size_t i = 0; i < s.dimension(); ++i) {
      if (rng() % 3 == 0) marked.push_back(i);
    }
    s.apply_phase_oracle(marked);
    EXPECT_NEAR(s.norm_squared(), 1.0, kNormTolerance);
    s.apply_diffusion();
    EXPECT_NEAR(s.norm_squared(), 1.0, kNormTolerance);
  }
}

TEST(StateVectorProperty, OracleIsInvolution) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = random_state(1 + rng() % 7, rng);
    std::vector<std::size_t> marked;
    for (std::size_t i = 0; i < s.dimension(); ++i) {
      if (rng() % 2 == 0) marked.push_back(i);
    }
    auto twice = s;
    twice.apply_phase_oracle(marked);
    twice.apply_phase_oracle(marked);
    for (std::size_t i = 0; i < s.dimension(); ++i) EXPECT_LE(std::abs(twice[i] - s[i]), kEqualityTolerance);
  }
}

TEST(StateVectorProperty, PhaseOracleLeavesProbabilities) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = random_state(1 + rng() % 6, rng);
    std::vector<std::size_t> marked = {0};
    const auto flipped = apply_phase_oracle(s, marked);
    double total = 0.0;
    for (std::size_t i = 0; i < s.dimension(); ++i) {
      EXPECT_NEAR(flipped.probability_of(i), s.probability_of(i), kEqualityTolerance);
      total += flipped.probability_of(i);
    }
    EXPECT_NEAR(total, 1.0, kNormTolerance);
  }
}

}  // namespace
}  // namespace qpm
