#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "ffadc/digital.hpp"
#include "ffadc/error.hpp"

using namespace ffadc;

namespace {

ThermometerWord word(const char* s) { return ThermometerWord::from_string(s); }

// Independent majority-of-three with explicit padding, written per window.
ThermometerWord reference_majority(const ThermometerWord& in) {
  std::array<int, 9> padded{};
  padded[0] = 1;
  for (int i = 0; i < 7; ++i) padded[i + 1] = in.bits[i];
  padded[8] = 0;
  ThermometerWord out;
  for (int i = 0; i < 7; ++i) {
    const int a = padded[i], b = padded[i + 1], c = padded[i + 2];
    out.bits[i] = (a && b) || (a && c) || (b && c);
  }
  return out;
}

TEST(BubbleCorrect, Examples) {
  EXPECT_EQ(bubble_correct(word("1110000")).to_string(), "1110000");
  EXPECT_EQ(bubble_correct(word("1101000")).to_string(), "1110000");
  EXPECT_EQ(bubble_correct(word("0000000")).to_string(), "0000000");
  EXPECT_EQ(bubble_correct(word("1111111")).to_string(), "1111111");
}

TEST(BubbleCorrect, MatchesReferenceOnAllWords) {
  for (unsigned m = 0; m < 128; ++m) {
    const auto w = ThermometerWord::from_mask(m);
    ASSERT_EQ(bubble_correct(w), reference_majority(w)) << w.to_string();
  }
}

TEST(BubbleCorrect, CleanWordsAreFixedPoints) {
  for (int k = 0; k <= 7; ++k) {
    const auto w = ThermometerWord::from_mask((1u << k) - 1u);
    ASSERT_TRUE(w.is_clean());
    ASSERT_EQ(bubble_correct(w), w);
  }
}

// One majority pass is not a projection: alternating patterns keep moving on
// a second pass. Exactly 24 of the 128 words are affected, and every word
// within one bit flip of a clean word is stable.
TEST(BubbleCorrect, IdempotenceHoldsExceptAlternatingPatterns) {
  int unstable = 0;
  for (unsigned m = 0; m < 128; ++m) {
    const auto once = bubble_correct(ThermometerWord::from_mask(m));
    if (bubble_correct(once) != once) ++unstable;
  }
  EXPECT_EQ(unstable, 24);
  EXPECT_NE(bubble_correct(bubble_correct(word("0101010"))), bubble_correct(word("0101010")));
  for (int k = 0; k <= 7; ++k) {
    for (int i = 0; i < 7; ++i) {
      auto w = ThermometerWord::from_mask((1u << k) - 1u);
      w.bits[i] ^= 1u;
      const auto once = bubble_correct(w);
      ASSERT_EQ(bubble_correct(once), once) << w.to_string();
    }
  }
}

bool clean_distance_one(const ThermometerWord& w) {
  for (int k = 0; k <= 7; ++k) {
    const auto clean = ThermometerWord::from_mask((1u << k) - 1u);
    int diff = 0;
    for (int i = 0; i < 7; ++i) diff += w.bits[i] != clean.bits[i];
    if (diff == 1) return true;
  }
  return false;
}

// Every word one flip away from a clean word (and not clean itself) has a
// single bubble; the corrector must return some clean word for all of them.
TEST(BubbleCorrect, RemovesEverySingleBubble) {
  int words = 0;
  for (unsigned m = 0; m < 128; ++m) {
    const auto w = ThermometerWord::from_mask(m);
    if (w.is_clean() || !clean_distance_one(w)) continue;
    ++words;
    ASSERT_TRUE(bubble_correct(w).is_clean()) << w.to_string();
  }
  EXPECT_EQ(words, 36);
}

// A bubble at least two places from the thermometer edge (padding extended)
// is restored to the exact original word.
TEST(BubbleCorrect, RestoresBubblesAwayFromTheEdge) {
  int restored = 0;
  for (int k = 0; k <= 7; ++k) {
    const auto clean = ThermometerWord::from_mask((1u << k) - 1u);
    auto bit = [&](int j) { return j < 0 ? 1 : (j > 6 ? 0 : int{clean.bits[j]}); };
    for (int i = 0; i < 7; ++i) {
      if (bit(i - 2) != bit(i) || bit(i + 2) != bit(i) || bit(i - 1) != bit(i) || bit(i + 1) != bit(i)) continue;
      auto raw = clean;
      raw.bits[i] ^= 1u;
      ASSERT_EQ(bubble_correct(raw), clean) << raw.to_string();
      ++restored;
    }
  }
  EXPECT_EQ(restored, 30);
}

TEST(ThermToCount, CountsCleanWords) {
  EXPECT_EQ(therm_to_count(word("0000000")), 0);
  EXPECT_EQ(therm_to_count(word("1110000")), 3);
  EXPECT_EQ(therm_to_count(word("1111111")), 7);
}

TEST(ThermToCount, ResidualBubble) {
  try {
    therm_to_count(word("1010000"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kResidualBubble);
  }
}

TEST(AssembleCode, StraddlesZeroContinuously) {
  EXPECT_EQ(assemble_code(1, 7).value, 15);
  EXPECT_EQ(assemble_code(0, 7).value, 0);
  EXPECT_EQ(assemble_code(0, 0).value, 7);
  EXPECT_EQ(assemble_code(1, 0).value, 8);
  EXPECT_THROW(assemble_code(1, 8), Error);
}

TEST(AssembleCode, CoversEveryCodeOnce) {
  std::set<int> seen;
  for (int sign = 0; sign <= 1; ++sign)
    for (int count = 0; count <= 7; ++count) seen.insert(assemble_code(sign, count).value);
  EXPECT_EQ(seen.size(), 16u);
}

TEST(Gray, Values) {
  EXPECT_EQ(assemble_code(0, 7).gray_string(), "0000");
  EXPECT_EQ(assemble_code(1, 7).gray_string(), "1000");
  EXPECT_EQ(assemble_code(0, 0).gray_string(), "0100");
  EXPECT_EQ(assemble_code(1, 0).gray_string(), "1100");
}

TEST(Gray, RoundTripAndSingleBitAdjacency) {
  for (int v = 0; v < 16; ++v) ASSERT_EQ(gray_to_bin(bin_to_gray(v)), v);
  for (int v = 0; v < 15; ++v) {
    const auto a = bin_to_gray(v), b = bin_to_gray(v + 1);
    int diff = 0;
    for (int i = 0; i < 4; ++i) diff += a[i] != b[i];
    ASSERT_EQ(diff, 1) << v;
  }
}

TEST(OracleQuantize, MidRiseStraddleAndClip) {
  EXPECT_EQ(oracle_quantize(-1e-12, 0.5), 7);
  EXPECT_EQ(oracle_quantize(0.0, 0.5), 7);
  EXPECT_EQ(oracle_quantize(1e-12, 0.5), 8);
  EXPECT_EQ(oracle_quantize(0.25, 0.5), 15);
  EXPECT_EQ(oracle_quantize(-0.25, 0.5), 0);
  EXPECT_EQ(oracle_quantize(5.0, 0.5), 15);
  EXPECT_EQ(oracle_quantize(-5.0, 0.5), 0);
  // Threshold ties: positive side -> lower code, negative side -> upper code.
  EXPECT_EQ(oracle_quantize(31.25e-3, 0.5), 8);
  EXPECT_EQ(oracle_quantize(-31.25e-3, 0.5), 7);
}

TEST(CodesCsv, Format) {
  std::ostringstream out;
  const std::vector<AdcCode> codes{assemble_code(1, 7), assemble_code(0, 0)};
  write_codes_csv(out, codes);
  EXPECT_EQ(out.str(), "index,value,gray_bits\n0,15,1000\n1,7,0100\n");
}

}  // namespace
