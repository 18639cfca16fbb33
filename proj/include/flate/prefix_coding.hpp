#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "flate/bitio.hpp"
#include "flate/code.hpp"
#include "flate/error.hpp"

namespace flate {

inline constexpr unsigned kMaxCodeLength = 15;    // literal/length and distance codings
inline constexpr unsigned kMaxClCodeLength = 7;   // code-length coding (3-bit fields)

/// Per-character code lengths; 0 marks a character that does not occur.
class CodeLengths {
 public:
  CodeLengths() = default;

  explicit CodeLengths(std::vector<std::uint8_t> lengths, unsigned max_len = kMaxCodeLength)
      : lengths_(std::move(lengths)), max_len_(max_len) {
    if (max_len_ > kMaxCodeLength) throw Error(Errc::LengthOverflow);
    for (auto l : lengths_) {
      if (l > max_len_) throw Error(Errc::LengthOverflow);
    }
  }

  static Expected<CodeLengths> make(std::vector<std::uint8_t> lengths, unsigned max_len = kMaxCodeLength) {
    if (max_len > kMaxCodeLength) return Errc::LengthOverflow;
    for (auto l : lengths) {
      if (l > max_len) return Errc::LengthOverflow;
    }
    CodeLengths c;
    c.lengths_ = std::move(lengths);
    c.max_len_ = max_len;
    return c;
  }

  std::size_t size() const noexcept { return lengths_.size(); }
  unsigned operator[](std::size_t i) const { return lengths_[i]; }
  std::span<const std::uint8_t> lengths() const noexcept { return lengths_; }
  unsigned max_len() const noexcept { return max_len_; }

  bool operator==(const CodeLengths&) const = default;

 private:
  std::vector<std::uint8_t> lengths_;
  unsigned max_len_ = kMaxCodeLength;
};

/// Exact sum of dyadic fractions, held as numerator / 2^15.
struct KraftValue {
  static constexpr unsigned kScaleBits = kMaxCodeLength;
  static constexpr std::uint64_t kOne = std::uint64_t{1} << kScaleBits;

  std::uint64_t numerator = 0;

  static constexpr KraftValue fraction(std::uint64_t num, unsigned log2_den) {
    return KraftValue{num << (kScaleBits - log2_den)};
  }

  constexpr bool is_one() const noexcept { return numerator == kOne; }
  constexpr bool exceeds_one() const noexcept { return numerator > kOne; }
  constexpr auto operator<=>(const KraftValue&) const = default;
};

inline KraftValue kraft_sum(std::span<const std::uint8_t> lengths) {
  KraftValue k;
  for (auto l : lengths) {
    if (l != 0) k.numerator += KraftValue::kOne >> l;
  }
  return k;
}

inline KraftValue kraft_sum(const CodeLengths& l) { return kraft_sum(l.lengths()); }

/// A canonical prefix-free coding. Instances are only produced by the two
/// constructions below, so every instance satisfies the canonicity axioms and
/// can be decoded with a per-length first-code table.
class DeflateCoding {
 public:
  DeflateCoding() = default;

  std::size_t size() const noexcept { return codes_.size(); }
  const Code& operator[](std::size_t sym) const { return codes_[sym]; }
  std::span<const Code> codes() const noexcept { return codes_; }
  unsigned max_len() const noexcept { return max_len_; }
  /// Longest nonempty code, 0 when every code is empty.
  unsigned max_used_len() const noexcept { return max_used_len_; }

  bool operator==(const DeflateCoding& o) const { return codes_ == o.codes_; }

 private:
  friend Expected<DeflateCoding> try_build_coding(const CodeLengths& l);
  friend Expected<DeflateCoding> try_build_coding_counting(const CodeLengths& l);
  friend ParseOutcome<unsigned> decode_symbol(const DeflateCoding& c, const BitCursor& cur);

  DeflateCoding(std::vector<Code> codes, unsigned max_len) : codes_(std::move(codes)), max_len_(max_len) {
    build_index();
  }

  void build_index() {
    count_.fill(0);
    offset_.fill(0);
    max_used_len_ = 0;
    for (const auto& c : codes_) {
      if (c.empty()) continue;
      ++count_[c.length()];
      max_used_len_ = std::max(max_used_len_, c.length());
    }
    std::uint16_t offset = 0;
    for (unsigned len = 1; len <= kMaxCodeLength; ++len) {
      offset_[len] = offset;
      offset = static_cast<std::uint16_t>(offset + count_[len]);
    }
    sorted_.resize(offset);
    auto next = offset_;
    for (std::size_t sym = 0; sym < codes_.size(); ++sym) {
      const auto len = codes_[sym].length();
      if (len != 0) sorted_[next[len]++] = static_cast<std::uint16_t>(sym);
    }
  }

  std::vector<Code> codes_;
  unsigned max_len_ = kMaxCodeLength;
  unsigned max_used_len_ = 0;
  std::array<std::uint16_t, kMaxCodeLength + 1> count_{};
  std::array<std::uint16_t, kMaxCodeLength + 1> offset_{};
  std::vector<std::uint16_t> sorted_;
};

/// Builds the coding by sorted insertion: characters are visited in order of
/// (length, character), and each receives the smallest code of its length
/// that is not prefixed by, and lexicographically follows, every code handed
/// out so far. That code is the previous code plus one, padded with zeros.
inline Expected<DeflateCoding> try_build_coding(const CodeLengths& l) {
  if (kraft_sum(l).exceeds_one()) return Errc::KraftViolation;

  std::vector<std::size_t> order(l.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return l[a] < l[b]; });

  std::vector<Code> codes(l.size());
  std::optional<Code> last;
  for (auto sym : order) {
    const unsigned len = l[sym];
    if (len == 0) continue;
    if (!last) {
      codes[sym] = Code(0, len);
    } else {
      // A remaining all-ones code would mean the Kraft sum is already 1.
      if (last->all_ones()) return Errc::KraftViolation;
      const std::uint32_t fresh = last->value() + 1;
      codes[sym] = Code(fresh << (len - last->length()), len);
    }
    last = codes[sym];
  }
  return DeflateCoding(std::move(codes), l.max_len());
}

/// Counting construction: tally lengths, derive the smallest code of every
/// length with next[m] = (next[m-1] + count[m-1]) << 1, then hand out
/// consecutive codes in character order. The closed form
/// sum_{j<m} 2^j count[j] matches this recurrence only for some length
/// profiles (e.g. count[1]=0, count[2]=2 gives 8 instead of 4), so it is not
/// used.
inline Expected<DeflateCoding> try_build_coding_counting(const CodeLengths& l) {
  if (kraft_sum(l).exceeds_one()) return Errc::KraftViolation;

  std::array<std::uint32_t, kMaxCodeLength + 1> count{};
  for (auto len : l.lengths()) ++count[len];
  count[0] = 0;

  std::array<std::uint32_t, kMaxCodeLength + 1> next{};
  std::uint32_t code = 0;
  for (unsigned bits = 1; bits <= kMaxCodeLength; ++bits) {
    code = (code + count[bits - 1]) << 1;
    next[bits] = code;
  }

  std::vector<Code> codes(l.size());
  for (std::size_t sym = 0; sym < l.size(); ++sym) {
    const unsigned len = l[sym];
    if (len != 0) codes[sym] = Code(next[len]++, len);
  }
  return DeflateCoding(std::move(codes), l.max_len());
}

inline DeflateCoding build_coding(const CodeLengths& l) { return try_build_coding(l).value(); }
inline DeflateCoding build_coding_counting(const CodeLengths& l) { return try_build_coding_counting(l).value(); }

inline KraftValue kraft_sum(const DeflateCoding& c) {
  KraftValue k;
  for (const auto& code : c.codes()) {
    if (!code.empty()) k.numerator += KraftValue::kOne >> code.length();
  }
  return k;
}

inline bool has_all_ones_code(std::span<const Code> codes) {
  return std::any_of(codes.begin(), codes.end(), [](const Code& c) { return c.all_ones(); });
}

inline bool has_all_ones_code(const DeflateCoding& c) { return has_all_ones_code(c.codes()); }

// Axiom checking ------------------------------------------------------------

struct AxiomResult {
  bool holds = true;
  /// Violating character pair (axioms 1-3): first, second.
  std::optional<std::pair<std::size_t, std::size_t>> pair;
  /// Axiom 4: the offending character and the unprefixed bit sequence.
  std::optional<std::size_t> character;
  std::optional<Code> list;
};

struct AxiomReport {
  // axioms[0] is axiom 1 (prefix-freeness), [1] shorter-precedes-longer,
  // [2] same-length order follows characters, [3] no gaps below a code.
  std::array<AxiomResult, 4> axioms;

  bool all_hold() const noexcept {
    return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& r) { return r.holds; });
  }
  const AxiomResult& axiom(unsigned n) const { return axioms.at(n - 1); }
};

/// Checks the four canonicity axioms on an arbitrary coding and reports a
/// witness for every axiom that fails.
inline AxiomReport check_axioms(std::span<const Code> codes) {
  AxiomReport report;
  const std::size_t n = codes.size();

  // 1: among nonempty codes in lexicographic order, a prefix relation
  // between any two implies one between neighbours.
  {
    std::vector<std::size_t> nonempty;
    for (std::size_t i = 0; i < n; ++i) {
      if (!codes[i].empty()) nonempty.push_back(i);
    }
    std::sort(nonempty.begin(), nonempty.end(), [&](std::size_t a, std::size_t b) {
      if (codes[a] != codes[b]) return codes[a] < codes[b];
      return a < b;
    });
    for (std::size_t k = 1; k < nonempty.size(); ++k) {
      if (codes[nonempty[k - 1]].is_prefix_of(codes[nonempty[k]])) {
        report.axioms[0] = {false, std::pair{nonempty[k - 1], nonempty[k]}, {}, {}};
        break;
      }
    }
  }

  // Group characters by code length, in character order.
  std::array<std::vector<std::size_t>, Code::kMaxLength + 1> by_len;
  for (std::size_t i = 0; i < n; ++i) by_len[codes[i].length()].push_back(i);

  // 2: the largest code shorter than L must not exceed the smallest code of length L.
  {
    std::optional<std::size_t> max_shorter;
    for (unsigned len = 0; len <= Code::kMaxLength && report.axioms[1].holds; ++len) {
      const auto& group = by_len[len];
      if (!group.empty() && max_shorter) {
        auto min_it = std::min_element(group.begin(), group.end(),
                                       [&](std::size_t a, std::size_t b) { return codes[a] < codes[b]; });
        if (codes[*min_it] < codes[*max_shorter]) {
          report.axioms[1] = {false, std::pair{*max_shorter, *min_it}, {}, {}};
        }
      }
      for (auto i : group) {
        if (!max_shorter || codes[*max_shorter] < codes[i]) max_shorter = i;
      }
    }
  }

  // 3: within a length group, codes increase with the character.
  for (unsigned len = 0; len <= Code::kMaxLength && report.axioms[2].holds; ++len) {
    const auto& group = by_len[len];
    for (std::size_t k = 1; k < group.size(); ++k) {
      if (codes[group[k]] < codes[group[k - 1]]) {
        report.axioms[2] = {false, std::pair{group[k - 1], group[k]}, {}, {}};
        break;
      }
    }
  }

  // 4: for each length L, find the smallest L-bit sequence with no code
  // prefix; every code of length L above it is a violation.
  for (unsigned len = 1; len <= Code::kMaxLength && report.axioms[3].holds; ++len) {
    if (by_len[len].empty()) continue;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> covered;
    for (unsigned shorter = 1; shorter <= len; ++shorter) {
      for (auto i : by_len[shorter]) {
        const std::uint64_t lo = std::uint64_t{codes[i].value()} << (len - shorter);
        covered.emplace_back(lo, lo + (std::uint64_t{1} << (len - shorter)));
      }
    }
    std::sort(covered.begin(), covered.end());
    std::uint64_t gap = 0;
    for (const auto& [lo, hi] : covered) {
      if (lo > gap) break;
      gap = std::max(gap, hi);
    }
    for (auto i : by_len[len]) {
      if (codes[i].value() > gap) {
        report.axioms[3] = {false, {}, i, Code(static_cast<std::uint32_t>(gap), len)};
        break;
      }
    }
  }
  return report;
}

inline AxiomReport check_axioms(const DeflateCoding& c) { return check_axioms(c.codes()); }

// Symbol transcoding ---------------------------------------------------------

/// Reads one code, leftmost bit first, and returns its character.
inline ParseOutcome<unsigned> decode_symbol(const DeflateCoding& c, const BitCursor& cur) {
  const unsigned max_len = c.max_used_len_;
  if (max_len == 0) return NoParse{Errc::BadCode, cur.bit_pos()};

  const bool fast = cur.bits_remaining() >= max_len;
  const std::uint32_t window = fast ? cur.peek_bits_unchecked(max_len) : 0;
  std::uint32_t code = 0;
  std::uint32_t first = 0;
  std::uint32_t index = 0;
  for (unsigned len = 1; len <= max_len; ++len) {
    unsigned bit;
    if (fast) {
      bit = (window >> (len - 1)) & 1u;
    } else {
      if (cur.bits_remaining() < len) return NoParse{Errc::EndOfInput, cur.bit_pos() + len - 1};
      bit = cur.advanced(len - 1).peek_bits_unchecked(1);
    }
    code |= bit;
    const std::uint32_t count = c.count_[len];
    if (code - first < count) {
      return Parsed<unsigned>{c.sorted_[index + (code - first)], len, cur.advanced(len)};
    }
    index += count;
    first = (first + count) << 1;
    code <<= 1;
  }
  return NoParse{Errc::BadCode, cur.bit_pos()};
}

inline Code encode_symbol(const DeflateCoding& c, std::size_t sym) {
  if (sym >= c.size()) throw Error(Errc::InvalidCodepoint);
  const Code& code = c[sym];
  if (code.empty()) throw Error(Errc::UnencodableCharacter);
  return code;
}

// Fixed codings of statically compressed blocks ------------------------------

inline const DeflateCoding& fixed_lit_coding() {
  static const DeflateCoding coding = [] {
    std::vector<std::uint8_t> l(288);
    for (std::size_t i = 0; i < 288; ++i) {
      l[i] = i < 144 ? 8 : i < 256 ? 9 : i < 280 ? 7 : 8;
    }
    return build_coding(CodeLengths(std::move(l)));
  }();
  return coding;
}

inline const DeflateCoding& fixed_dist_coding() {
  static const DeflateCoding coding = build_coding(CodeLengths(std::vector<std::uint8_t>(32, 5)));
  return coding;
}

}  // namespace flate
