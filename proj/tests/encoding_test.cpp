#include <gtest/gtest.h>

#include <random>
#include <set>
#include <string>

#include "qpm/encoding.hpp"

namespace qpm {
namespace {

std::string random_text(std::mt19937_64& rng, const std::string& symbols, std::size_t len) {
  std::uniform_int_distribution<std::size_t> pick(0, symbols.size() - 1);
  std::string s(len, '\0');
  for (auto& c : s) c = symbols[pick(rng)];
  return s;
}

TEST(Alphabet, DnaCodeTable) {
  const auto dna = dna_alphabet();
  EXPECT_EQ(dna.bits_per_symbol(), 3u);
  EXPECT_EQ(dna.code('A'), 0b000u);
  EXPECT_EQ(dna.code('T'), 0b010u);
  EXPECT_EQ(dna.code('G'), 0b100u);
  EXPECT_EQ(dna.code('C'), 0b110u);
  EXPECT_EQ(dna.padding_code(), 0b111u);
  EXPECT_FALSE(dna.contains('U'));
}

TEST(Alphabet, CustomWidthFollowsCeilLog2) {
  // Smallest b with 2^b >= n + 1, by counting.
  for (std::size_t n = 1; n <= 40; ++n) {
    unsigned expected = 0;
    while ((std::size_t{1} << expected) < n + 1) ++expected;
    std::string symbols;
    for (std::size_t i = 0; i < n; ++i) symbols.push_back(static_cast<char>('!' + i));
    EXPECT_EQ(custom_alphabet(symbols).bits_per_symbol(), expected) << n;
  }
}

TEST(Alphabet, CustomSingleSymbol) {
  const auto a = custom_alphabet("a");
  EXPECT_EQ(a.bits_per_symbol(), 1u);
  EXPECT_EQ(a.code('a'), 0u);
  EXPECT_EQ(a.padding_code(), 1u);
}

TEST(Alphabet, CustomThreeSymbols) {
  const auto a = custom_alphabet("abc");
  EXPECT_EQ(a.bits_per_symbol(), 2u);
  EXPECT_EQ(a.code('a'), 0b00u);
  EXPECT_EQ(a.code('b'), 0b01u);
  EXPECT_EQ(a.code('c'), 0b10u);
  EXPECT_EQ(a.padding_code(), 0b11u);
}

TEST(Alphabet, FullWidthUsesEveryNonPaddingCode) {
  const auto a = custom_alphabet("abcdefg");
  EXPECT_EQ(a.bits_per_symbol(), 3u);
  EXPECT_EQ(a.code('g'), 0b110u);
}

TEST(Alphabet, CustomRejectsBadSymbolLists) {
  EXPECT_THROW(custom_alphabet("aa"), std::invalid_argument);
  EXPECT_THROW(custom_alphabet(""), std::invalid_argument);
  EXPECT_THROW(custom_alphabet("aZ"), std::invalid_argument);
  EXPECT_THROW(custom_alphabet("a b"), std::invalid_argument);
}

TEST(Alphabet, ParseOptionValue) {
  EXPECT_EQ(parse_alphabet("dna").id(), "dna");
  EXPECT_EQ(parse_alphabet("custom:xy").bits_per_symbol(), 2u);
  EXPECT_THROW(parse_alphabet("rna"), std::invalid_argument);
}

TEST(Encode, PatternTensorProduct) {
  const auto enc = encode_string("AGGCA", dna_alphabet());
  EXPECT_EQ(enc.symbol_count, 5u);
  EXPECT_EQ(enc.bits.to_string(), "000100100110000");
}

TEST(Encode, EmptyText) {
  const auto enc = encode_string("", dna_alphabet());
  EXPECT_EQ(enc.symbol_count, 0u);
  EXPECT_EQ(enc.bits.width(), 0u);
}

TEST(Encode, RejectsUnknownCharacter) {
  EXPECT_THROW(encode_string("AX", dna_alphabet()), std::invalid_argument);
}

TEST(Encode, PaddingNeedsExplicitPermission) {
  EXPECT_THROW(encode_string("AZ", dna_alphabet()), std::invalid_argument);
  EXPECT_EQ(encode_string("AZ", dna_alphabet(), PaddingPolicy::allow).bits.to_string(), "000111");
}

TEST(Decode, PaddingBlocksBecomeZ) {
  const EncodedString enc{2, BitString::from_string("111111"), 3, "dna"};
  EXPECT_EQ(decode_string(enc, dna_alphabet()), "ZZ");
}

TEST(Decode, UnassignedCodeIsRejected) {
  for (const char* bits : {"011", "001", "101"}) {
    const EncodedString enc{1, BitString::from_string(bits), 3, "dna"};
    EXPECT_THROW(decode_string(enc, dna_alphabet()), std::invalid_argument) << bits;
  }
}

TEST(Decode, WidthMismatchIsRejected) {
  const EncodedString enc{2, BitString::from_string("0000"), 3, "dna"};
  EXPECT_THROW(decode_string(enc, dna_alphabet()), std::invalid_argument);
}

TEST(Normalize, StripsWhitespaceAndUppercases) {
  EXPECT_EQ(normalize_text(" ac\ngt\r\n\tA ", dna_alphabet()), "ACGTA");
}

TEST(Normalize, KeepsCaseForLowercaseAlphabets) {
  EXPECT_EQ(normalize_text("a b\nc", custom_alphabet("abc")), "abc");
}

TEST(BitString, XorAndPopcountAcrossWords) {
  BitString a(130), b(130);
  a.set(0, true);
  a.set(64, true);
  a.set(129, true);
  b.set(64, true);
  b.set(100, true);
  const auto x = a ^ b;
  EXPECT_EQ(x.popcount(), 3u);
  EXPECT_TRUE(x.test(0));
  EXPECT_FALSE(x.test(64));
  EXPECT_TRUE(x.test(100));
  EXPECT_FALSE((a ^ a).popcount());
  EXPECT_TRUE((a ^ a).none());
  EXPECT_THROW(a ^= BitString(3), std::invalid_argument);
}

TEST(BitString, BlocksAndNonzeroCount) {
  BitString s(9);
  s.set_block(0, 3, 0b101);
  s.set_block(2, 3, 0b001);
  EXPECT_EQ(s.to_string(), "101000001");
  EXPECT_EQ(s.block(0, 3), 0b101u);
  EXPECT_EQ(s.block(1, 3), 0u);
  EXPECT_EQ(s.nonzero_blocks(3), 2u);
}

TEST(EncodingProperty, RoundTrip) {
  std::mt19937_64 rng(11);
  const auto dna = dna_alphabet();
  const auto custom = custom_alphabet("xyz0123");
  for (int i = 0; i < 500; ++i) {
    const auto len = rng() % 40;
    const auto s = random_text(rng, "ATGC", len);
    EXPECT_EQ(decode_string(encode_string(s, dna), dna), s);
    const auto c = random_text(rng, "xyz0123", len);
    EXPECT_EQ(decode_string(encode_string(c, custom), custom), c);
  }
}

TEST(EncodingProperty, DistinctTextsGiveDistinctBits) {
  std::mt19937_64 rng(12);
  const auto dna = dna_alphabet();
  std::set<std::string> texts;
  std::set<std::string> encodings;
  for (int i = 0; i < 2000; ++i) {
    const auto s = random_text(rng, "ATGC", 6);
    if (texts.insert(s).second) encodings.insert(encode_string(s, dna).bits.to_string());
  }
  EXPECT_EQ(texts.size(), encodings.size());
}

TEST(EncodingProperty, BlockDistanceSoundness) {
  for (const auto& alphabet : {dna_alphabet(), custom_alphabet("abcdefghij")}) {
    for (char a : alphabet.symbols()) {
      for (char b : alphabet.symbols()) {
        const auto d = (encode_string(std::string(1, a), alphabet).bits ^
                        encode_string(std::string(1, b), alphabet).bits)
                           .popcount();
        if (a == b) {
          EXPECT_EQ(d, 0u);
        } else {
          EXPECT_GE(d, 1u);
        }
      }
    }
  }
}

}  // namespace
}  // namespace qpm
