#pragma once

#include <array>
#include <cstdint>

#include "flate/error.hpp"

namespace flate {

/// BTYPE field values.
enum class BlockType : std::uint8_t { Stored = 0, Static = 1, Dynamic = 2 };

struct LengthEntry {
  std::uint16_t codepoint;
  std::uint8_t extra_bits;
  std::uint16_t base;
  std::uint16_t range_size;
};

struct DistanceEntry {
  std::uint8_t codepoint;
  std::uint8_t extra_bits;
  std::uint16_t base;
};

struct SuffixedValue {
  unsigned codepoint;
  unsigned extra;
  unsigned extra_bits;
  bool operator==(const SuffixedValue&) const = default;
};

inline constexpr unsigned kEndOfBlock = 256;
inline constexpr unsigned kFirstLengthCode = 257;
inline constexpr unsigned kLastLengthCode = 285;
inline constexpr unsigned kMinMatch = 3;
inline constexpr unsigned kMaxMatch = 258;
inline constexpr unsigned kMaxDistance = 32768;
inline constexpr unsigned kDistanceCodes = 30;

// Codepoint 284 nominally has 32 suffixes, but suffix 31 would spell 258,
// which belongs to 285 alone. Its range therefore holds 31 lengths.
inline constexpr std::array<LengthEntry, 29> kLengthTable{{
    {257, 0, 3, 1},    {258, 0, 4, 1},    {259, 0, 5, 1},    {260, 0, 6, 1},    {261, 0, 7, 1},
    {262, 0, 8, 1},    {263, 0, 9, 1},    {264, 0, 10, 1},   {265, 1, 11, 2},   {266, 1, 13, 2},
    {267, 1, 15, 2},   {268, 1, 17, 2},   {269, 2, 19, 4},   {270, 2, 23, 4},   {271, 2, 27, 4},
    {272, 2, 31, 4},   {273, 3, 35, 8},   {274, 3, 43, 8},   {275, 3, 51, 8},   {276, 3, 59, 8},
    {277, 4, 67, 16},  {278, 4, 83, 16},  {279, 4, 99, 16},  {280, 4, 115, 16}, {281, 5, 131, 32},
    {282, 5, 163, 32}, {283, 5, 195, 32}, {284, 5, 227, 31}, {285, 0, 258, 1},
}};

inline constexpr std::array<DistanceEntry, kDistanceCodes> kDistanceTable{{
    {0, 0, 1},        {1, 0, 2},        {2, 0, 3},         {3, 0, 4},         {4, 1, 5},
    {5, 1, 7},        {6, 2, 9},        {7, 2, 13},        {8, 3, 17},        {9, 3, 25},
    {10, 4, 33},      {11, 4, 49},      {12, 5, 65},       {13, 5, 97},       {14, 6, 129},
    {15, 6, 193},     {16, 7, 257},     {17, 7, 385},      {18, 8, 513},      {19, 8, 769},
    {20, 9, 1025},    {21, 9, 1537},    {22, 10, 2049},    {23, 10, 3073},    {24, 11, 4097},
    {25, 11, 6145},   {26, 12, 8193},   {27, 12, 12289},   {28, 13, 16385},   {29, 13, 24577},
}};

/// Transmission order of the code-length coding's lengths.
inline constexpr std::array<std::uint8_t, 19> kClCodeOrder{16, 17, 18, 0, 8,  7, 9,  6, 10, 5,
                                                           11, 4,  12, 3, 13, 2, 14, 1, 15};

constexpr Expected<const LengthEntry*> length_entry(unsigned codepoint) {
  if (codepoint < kFirstLengthCode || codepoint > kLastLengthCode) return Errc::InvalidCodepoint;
  return &kLengthTable[codepoint - kFirstLengthCode];
}

constexpr Expected<unsigned> length_decode(unsigned codepoint, unsigned extra) {
  const auto entry = length_entry(codepoint);
  if (!entry) return entry.error();
  if (extra >= (*entry)->range_size) return Errc::InvalidLengthExtra;
  return (*entry)->base + extra;
}

constexpr Expected<SuffixedValue> length_encode(unsigned length) {
  if (length < kMinMatch || length > kMaxMatch) return Errc::ValueOutOfRange;
  if (length == kMaxMatch) return SuffixedValue{kLastLengthCode, 0, 0};
  unsigned i = 0;
  while (i + 1 < kLengthTable.size() && kLengthTable[i + 1].base <= length) ++i;
  const auto& e = kLengthTable[i];
  return SuffixedValue{e.codepoint, length - e.base, e.extra_bits};
}

constexpr Expected<unsigned> distance_decode(unsigned codepoint, unsigned extra) {
  if (codepoint >= kDistanceCodes) return Errc::InvalidDistanceCodepoint;
  const auto& e = kDistanceTable[codepoint];
  if (extra >= (1u << e.extra_bits)) return Errc::ValueOutOfRange;
  return e.base + extra;
}

constexpr Expected<SuffixedValue> distance_encode(unsigned distance) {
  if (distance < 1 || distance > kMaxDistance) return Errc::ValueOutOfRange;
  unsigned i = 0;
  while (i + 1 < kDistanceTable.size() && kDistanceTable[i + 1].base <= distance) ++i;
  const auto& e = kDistanceTable[i];
  return SuffixedValue{e.codepoint, distance - e.base, e.extra_bits};
}

}  // namespace flate
