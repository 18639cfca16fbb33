#include <gtest/gtest.h>

#include "flate/symbol_tables.hpp"
#include "support/golden.hpp"

using namespace flate;

TEST(LengthTable, MatchesTabulatedRanges) {
  for (const auto& r : golden::kLengthRanges) {
    const auto e = length_entry(r.code);
    ASSERT_TRUE(e) << r.code;
    EXPECT_EQ((*e)->extra_bits, r.extra_bits) << r.code;
    EXPECT_EQ((*e)->base, r.first) << r.code;
    EXPECT_EQ((*e)->base + (*e)->range_size - 1u, r.last) << r.code;
  }
}

TEST(LengthTable, RoundTripEveryLength) {
  for (unsigned len = 3; len <= 258; ++len) {
    const auto sv = length_encode(len);
    ASSERT_TRUE(sv);
    EXPECT_LT(sv->extra, 1u << sv->extra_bits);
    const auto back = length_decode(sv->codepoint, sv->extra);
    ASSERT_TRUE(back);
    EXPECT_EQ(*back, len);
    // the tabulated range containing len names the same code
    for (const auto& r : golden::kLengthRanges) {
      if (r.first <= len && len <= r.last) {
        EXPECT_EQ(sv->codepoint, r.code) << len;
      }
    }
  }
  EXPECT_EQ(length_encode(258)->codepoint, 285u);
  EXPECT_EQ(length_encode(257)->codepoint, 284u);
  EXPECT_EQ(length_encode(257)->extra, 30u);
}

TEST(LengthTable, RangesTileThreeTo258) {
  unsigned next = 3;
  for (unsigned cp = kFirstLengthCode; cp <= kLastLengthCode; ++cp) {
    const auto e = length_entry(cp);
    ASSERT_TRUE(e);
    EXPECT_EQ((*e)->base, next) << cp;
    if (cp != 284) {
      EXPECT_EQ((*e)->range_size, 1u << (*e)->extra_bits) << cp;
    }
    next += (*e)->range_size;
  }
  EXPECT_EQ(next, 259u);
}

TEST(LengthTable, Rejections) {
  EXPECT_EQ(length_entry(256).error(), Errc::InvalidCodepoint);
  EXPECT_EQ(length_entry(286).error(), Errc::InvalidCodepoint);
  EXPECT_EQ(length_decode(286, 0).error(), Errc::InvalidCodepoint);
  EXPECT_EQ(length_decode(284, 31).error(), Errc::InvalidLengthExtra);
  EXPECT_EQ(*length_decode(284, 30), 257u);
  EXPECT_EQ(length_decode(265, 2).error(), Errc::InvalidLengthExtra);
  EXPECT_EQ(length_encode(2).error(), Errc::ValueOutOfRange);
  EXPECT_EQ(length_encode(259).error(), Errc::ValueOutOfRange);
}

TEST(DistanceTable, MatchesTabulatedRanges) {
  for (const auto& r : golden::kDistanceRanges) {
    EXPECT_EQ(kDistanceTable[r.code].extra_bits, r.extra_bits);
    EXPECT_EQ(*distance_decode(r.code, 0), r.first);
    EXPECT_EQ(*distance_decode(r.code, (1u << r.extra_bits) - 1), r.last);
  }
}

TEST(DistanceTable, RoundTripEveryDistance) {
  unsigned prev_code = 0;
  for (unsigned d = 1; d <= 32768; ++d) {
    const auto sv = distance_encode(d);
    ASSERT_TRUE(sv);
    ASSERT_GE(sv->codepoint, prev_code);
    prev_code = sv->codepoint;
    ASSERT_EQ(sv->extra_bits, kDistanceTable[sv->codepoint].extra_bits);
    ASSERT_EQ(*distance_decode(sv->codepoint, sv->extra), d);
  }
}

TEST(DistanceTable, Rejections) {
  EXPECT_EQ(distance_decode(30, 0).error(), Errc::InvalidDistanceCodepoint);
  EXPECT_EQ(distance_decode(31, 0).error(), Errc::InvalidDistanceCodepoint);
  EXPECT_EQ(distance_decode(4, 2).error(), Errc::ValueOutOfRange);
  EXPECT_EQ(distance_encode(0).error(), Errc::ValueOutOfRange);
  EXPECT_EQ(distance_encode(32769).error(), Errc::ValueOutOfRange);
}

TEST(WorkedExampleCodepoints, LengthsAndDistances) {
  EXPECT_EQ(length_encode(3)->codepoint, 257u);
  EXPECT_EQ(length_encode(5)->codepoint, 259u);
  EXPECT_EQ(distance_encode(2)->codepoint, 1u);
  EXPECT_EQ(*distance_encode(7), (SuffixedValue{5, 0, 1}));
  EXPECT_EQ(*distance_encode(8), (SuffixedValue{5, 1, 1}));
}

TEST(ClCodeOrder, IsAPermutation) {
  std::array<int, 19> seen{};
  for (auto s : kClCodeOrder) ++seen[s];
  for (int n : seen) EXPECT_EQ(n, 1);
  EXPECT_EQ(kClCodeOrder[0], 16);
  EXPECT_EQ(kClCodeOrder[18], 15);
}

static_assert(*length_decode(285, 0) == 258);
static_assert(length_encode(10)->codepoint == 264);
