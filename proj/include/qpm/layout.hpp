#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "qpm/statevec.hpp"

namespace qpm {

/// Sizing of the position register for a text of length N and pattern of
/// length M. Positions [0, live_positions) are real windows; the rest up to
/// padded_size are dead padding.
struct RegisterLayout {
  unsigned qubits = 0;
  std::size_t padded_size = 0;
  std::size_t live_positions = 0;

  friend bool operator==(const RegisterLayout&, const RegisterLayout&) = default;
};

inline RegisterLayout position_register_size(std::size_t text_len, std::size_t pattern_len) {
  if (pattern_len < 1) throw std::invalid_argument("pattern length must be at least 1");
  if (pattern_len > text_len) {
    throw std::invalid_argument("pattern length " + std::to_string(pattern_len) + " exceeds text length " +
                                std::to_string(text_len));
  }
  const std::size_t live = text_len - pattern_len + 1;
  const auto qubits = std::max(1u, static_cast<unsigned>(std::bit_width(live - 1)));
  if (qubits > kMaxQubits) {
    throw std::out_of_range(std::to_string(live) + " positions need " + std::to_string(qubits) +
                            " qubits, above the " + std::to_string(kMaxQubits) + "-qubit limit");
  }
  return {qubits, std::size_t{1} << qubits, live};
}

}  // namespace qpm
