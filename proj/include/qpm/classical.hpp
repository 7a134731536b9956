#pragma once

// Classical reference matchers: the naive window scan that defines the
// match predicate, and the brute-force Hamming map over all windows.

#include <bit>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qpm/encoding.hpp"

namespace qpm {

struct MatchQuery {
  std::string text;
  std::string pattern;
  std::optional<std::size_t> prefix_len;  // K; defaults to the pattern length

  std::size_t effective_prefix() const { return prefix_len.value_or(pattern.size()); }

  void validate() const {
    if (pattern.empty()) throw std::invalid_argument("pattern must not be empty");
    if (pattern.size() > text.size()) {
      throw std::invalid_argument("pattern length " + std::to_string(pattern.size()) + " exceeds text length " +
                                  std::to_string(text.size()));
    }
    const auto k = effective_prefix();
    if (k < 1 || k > pattern.size()) {
      throw std::invalid_argument("prefix length must lie in [1, " + std::to_string(pattern.size()) + "]");
    }
  }
};

/// Every window start x in [0, N-M] whose first K symbols equal the
/// pattern's first K symbols, ascending.
inline std::vector<std::size_t> naive_match_positions(const MatchQuery& q) {
  q.validate();
  const std::size_t n = q.text.size();
  const std::size_t m = q.pattern.size();
  const std::size_t k = q.effective_prefix();
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x + m <= n; ++x) {
    std::size_t j = 0;
    while (j < k && q.text[x + j] == q.pattern[j]) ++j;
    if (j == k) out.push_back(x);
  }
  return out;
}

struct WindowDistance {
  std::size_t position = 0;
  std::size_t bit_distance = 0;
  std::size_t symbol_distance = 0;

  friend bool operator==(const WindowDistance&, const WindowDistance&) = default;
};

/// Per-window distances computed symbol by symbol from the code table.
inline std::vector<WindowDistance> hamming_map_classical(std::string_view text, std::string_view pattern,
                                                         const Alphabet& alphabet) {
  if (pattern.empty()) throw std::invalid_argument("pattern must not be empty");
  if (pattern.size() > text.size()) throw std::invalid_argument("pattern longer than text");
  validate_text(text, alphabet, "text");
  validate_text(pattern, alphabet, "pattern");

  std::vector<std::uint32_t> pat_codes(pattern.size());
  for (std::size_t j = 0; j < pattern.size(); ++j) pat_codes[j] = alphabet.code(pattern[j]);

  std::vector<WindowDistance> out;
  out.reserve(text.size() - pattern.size() + 1);
  for (std::size_t x = 0; x + pattern.size() <= text.size(); ++x) {
    WindowDistance d{x, 0, 0};
    for (std::size_t j = 0; j < pattern.size(); ++j) {
      const auto diff = alphabet.code(text[x + j]) ^ pat_codes[j];
      d.bit_distance += static_cast<std::size_t>(std::popcount(diff));
      d.symbol_distance += diff != 0;
    }
    out.push_back(d);
  }
  return out;
}

}  // namespace qpm
