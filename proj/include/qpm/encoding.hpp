#pragma once

// Symbol alphabets and their fixed-width binary encoding.
//
// Every alphabet reserves the all-ones code for the padding symbol 'Z'. An
// encoded string is the concatenation of its symbol codes, symbol 0 in the
// most-significant (leftmost) block.

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qpm {

/// Fixed-width bit string, bit 0 is the leftmost bit.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t width) : width_(width), words_((width + 63) / 64, 0) {}

  static BitString from_string(std::string_view bits) {
    BitString out(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1') {
        out.set(i, true);
      } else if (bits[i] != '0') {
        throw std::invalid_argument("bit string may only contain '0' and '1'");
      }
    }
    return out;
  }

  std::size_t width() const { return width_; }

  bool test(std::size_t i) const { return (words_[i / 64] >> (63 - i % 64)) & 1U; }

  void set(std::size_t i, bool value) {
    const std::uint64_t mask = std::uint64_t{1} << (63 - i % 64);
    if (value) {
      words_[i / 64] |= mask;
    } else {
      words_[i / 64] &= ~mask;
    }
  }

  /// Writes `code` (width `b`, MSB first) into block `index`.
  void set_block(std::size_t index, unsigned b, std::uint32_t code) {
    const std::size_t base = index * b;
    for (unsigned j = 0; j < b; ++j) set(base + j, (code >> (b - 1 - j)) & 1U);
  }

  std::uint32_t block(std::size_t index, unsigned b) const {
    const std::size_t base = index * b;
    std::uint32_t code = 0;
    for (unsigned j = 0; j < b; ++j) code = (code << 1) | static_cast<std::uint32_t>(test(base + j));
    return code;
  }

  BitString& operator^=(const BitString& other) {
    if (other.width_ != width_) throw std::invalid_argument("XOR of bit strings with different widths");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }

  friend BitString operator^(BitString lhs, const BitString& rhs) { return lhs ^= rhs; }
  friend bool operator==(const BitString&, const BitString&) = default;

  std::size_t popcount() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  bool none() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }

  /// Number of `b`-bit blocks holding at least one set bit.
  std::size_t nonzero_blocks(unsigned b) const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < width_ / b; ++i) n += block(i, b) != 0;
    return n;
  }

  std::string to_string() const {
    std::string s(width_, '0');
    for (std::size_t i = 0; i < width_; ++i) s[i] = test(i) ? '1' : '0';
    return s;
  }

  std::size_t hash() const {
    std::size_t h = width_;
    for (auto w : words_) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

 private:
  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

class Alphabet {
 public:
  static constexpr char kPaddingSymbol = 'Z';
  static constexpr std::size_t kMaxSymbols = 255;

  /// Nucleotide alphabet: A=000, T=010, G=100, C=110, padding Z=111.
  static Alphabet dna() { return Alphabet("dna", "ATGC", {0b000, 0b010, 0b100, 0b110}, 3); }

  /// Codes assigned in symbol order from 0, width ceil(log2(n + 1)).
  static Alphabet custom(std::string_view symbols) {
    if (symbols.empty()) throw std::invalid_argument("alphabet must contain at least one symbol");
    if (symbols.size() > kMaxSymbols) throw std::invalid_argument("alphabet has more than 255 symbols");
    std::array<bool, 256> seen{};
    for (char c : symbols) {
      const auto u = static_cast<unsigned char>(c);
      if (c == kPaddingSymbol) throw std::invalid_argument("symbol 'Z' is reserved for padding");
      if (std::isspace(u)) throw std::invalid_argument("whitespace cannot be an alphabet symbol");
      if (seen[u]) throw std::invalid_argument(std::string("duplicate alphabet symbol '") + c + "'");
      seen[u] = true;
    }
    const unsigned b = static_cast<unsigned>(std::bit_width(symbols.size()));
    std::vector<std::uint32_t> codes(symbols.size());
    for (std::size_t i = 0; i < codes.size(); ++i) codes[i] = static_cast<std::uint32_t>(i);
    return Alphabet("custom:" + std::string(symbols), std::string(symbols), std::move(codes), b);
  }

  /// Builds a table without validating it. Only for exercising self-checks
  /// against a corrupted encoding.
  static Alphabet unchecked(std::string id, std::string symbols, std::vector<std::uint32_t> codes, unsigned b) {
    return Alphabet(std::move(id), std::move(symbols), std::move(codes), b, /*validate=*/false);
  }

  const std::string& id() const { return id_; }
  const std::string& symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  unsigned bits_per_symbol() const { return bits_; }
  std::uint32_t padding_code() const { return (std::uint32_t{1} << bits_) - 1; }

  bool contains(char c) const { return code_of_[static_cast<unsigned char>(c)] >= 0; }

  std::uint32_t code(char c) const {
    const auto v = code_of_[static_cast<unsigned char>(c)];
    if (v < 0) throw std::invalid_argument(std::string("symbol '") + c + "' is not in alphabet " + id_);
    return static_cast<std::uint32_t>(v);
  }

  /// Symbol for a code, 'Z' for the padding code, nullopt for unassigned codes.
  std::optional<char> symbol_for(std::uint32_t code) const {
    if (code == padding_code()) return kPaddingSymbol;
    if (code >= symbol_of_code_.size() || symbol_of_code_[code] < 0) return std::nullopt;
    return static_cast<char>(symbol_of_code_[code]);
  }

  /// True when no symbol is a lowercase letter, so ingested text may be uppercased.
  bool folds_case() const {
    return std::none_of(symbols_.begin(), symbols_.end(),
                        [](char c) { return std::islower(static_cast<unsigned char>(c)) != 0; });
  }

 private:
  Alphabet(std::string id, std::string symbols, std::vector<std::uint32_t> codes, unsigned b, bool validate = true)
      : id_(std::move(id)), symbols_(std::move(symbols)), bits_(b) {
    if (validate) {
      if (b == 0 || b > 8) throw std::invalid_argument("bits per symbol must be in [1, 8]");
      if (codes.size() != symbols_.size()) throw std::invalid_argument("one code per symbol required");
    }
    code_of_.fill(-1);
    symbol_of_code_.assign(std::size_t{1} << bits_, -1);
    for (std::size_t i = 0; i < symbols_.size() && i < codes.size(); ++i) {
      const auto code = codes[i];
      if (validate) {
        if (code >= padding_code()) throw std::invalid_argument("code collides with padding or exceeds width");
        if (symbol_of_code_[code] >= 0) throw std::invalid_argument("alphabet codes must be injective");
      }
      code_of_[static_cast<unsigned char>(symbols_[i])] = static_cast<std::int16_t>(code);
      if (code < symbol_of_code_.size()) {
        symbol_of_code_[code] = static_cast<std::int16_t>(static_cast<unsigned char>(symbols_[i]));
      }
    }
  }

  std::string id_;
  std::string symbols_;
  unsigned bits_ = 0;
  std::array<std::int16_t, 256> code_of_{};
  std::vector<std::int16_t> symbol_of_code_;
};

inline Alphabet dna_alphabet() { return Alphabet::dna(); }
inline Alphabet custom_alphabet(std::string_view symbols) { return Alphabet::custom(symbols); }

/// Parses the `--alphabet` option value: `dna` or `custom:<symbols>`.
inline Alphabet parse_alphabet(std::string_view spec) {
  if (spec == "dna") return Alphabet::dna();
  constexpr std::string_view prefix = "custom:";
  if (spec.substr(0, prefix.size()) == prefix) return Alphabet::custom(spec.substr(prefix.size()));
  throw std::invalid_argument("unknown alphabet '" + std::string(spec) + "' (expected dna or custom:<symbols>)");
}

struct EncodedString {
  std::size_t symbol_count = 0;
  BitString bits;
  unsigned bits_per_symbol = 0;
  std::string alphabet_id;

  friend bool operator==(const EncodedString&, const EncodedString&) = default;
};

enum class PaddingPolicy { reject, allow };

inline EncodedString encode_string(std::string_view text, const Alphabet& alphabet,
                                   PaddingPolicy padding = PaddingPolicy::reject) {
  const unsigned b = alphabet.bits_per_symbol();
  EncodedString out{text.size(), BitString(text.size() * b), b, alphabet.id()};
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == Alphabet::kPaddingSymbol && padding == PaddingPolicy::allow) {
      out.bits.set_block(i, b, alphabet.padding_code());
    } else if (alphabet.contains(c)) {
      out.bits.set_block(i, b, alphabet.code(c));
    } else {
      throw std::invalid_argument(std::string("character '") + c + "' at offset " + std::to_string(i) +
                                  " is not in alphabet " + alphabet.id());
    }
  }
  return out;
}

inline std::string decode_string(const EncodedString& enc, const Alphabet& alphabet) {
  const unsigned b = alphabet.bits_per_symbol();
  if (enc.bits.width() != enc.symbol_count * b) {
    throw std::invalid_argument("encoded width does not match symbol count for alphabet " + alphabet.id());
  }
  std::string out(enc.symbol_count, '\0');
  for (std::size_t i = 0; i < enc.symbol_count; ++i) {
    const auto code = enc.bits.block(i, b);
    const auto sym = alphabet.symbol_for(code);
    if (!sym) {
      throw std::invalid_argument("block " + std::to_string(i) + " holds unassigned code " +
                                  enc.bits.to_string().substr(i * b, b));
    }
    out[i] = *sym;
  }
  return out;
}

/// Drops whitespace and, for case-insensitive alphabets, uppercases.
inline std::string normalize_text(std::string_view raw, const Alphabet& alphabet) {
  const bool fold = alphabet.folds_case();
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isspace(u)) continue;
    out.push_back(fold ? static_cast<char>(std::toupper(u)) : c);
  }
  return out;
}

/// Throws if any character of `text` is outside the alphabet.
inline void validate_text(std::string_view text, const Alphabet& alphabet, std::string_view what = "text") {
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (!alphabet.contains(text[i])) {
      throw std::invalid_argument(std::string(what) + ": character '" + text[i] + "' at offset " +
                                  std::to_string(i) + " is not in alphabet " + alphabet.id());
    }
  }
}

}  // namespace qpm

template <>
struct std::hash<qpm::BitString> {
  std::size_t operator()(const qpm::BitString& b) const noexcept { return b.hash(); }
};
