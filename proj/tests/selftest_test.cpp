#include <gtest/gtest.h>

#include <algorithm>

#include "qpm/selftest.hpp"

namespace qpm {
namespace {

TEST(Selftest, AllChecksPass) {
  const auto checks = run_selftest();
  EXPECT_GE(checks.size(), 6u);
  for (const auto& c : checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

TEST(Selftest, CorruptedTableIsDetected) {
  const auto bad = Alphabet::unchecked("dna", "ATGC", {0b000, 0b000, 0b100, 0b110}, 3);
  const auto checks = run_selftest(bad);
  EXPECT_TRUE(std::any_of(checks.begin(), checks.end(), [](const auto& c) { return !c.passed; }));
}

}  // namespace
}  // namespace qpm
