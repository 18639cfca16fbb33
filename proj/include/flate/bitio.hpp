#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "flate/code.hpp"
#include "flate/error.hpp"

namespace flate {

template <class V>
class ParseOutcome;

/// Immutable position in a byte sequence, read as a bit stream in which each
/// byte contributes its least significant bit first. Reads never modify the
/// cursor; they return the advanced cursor inside the outcome.
class BitCursor {
 public:
  static constexpr unsigned kMaxReadWidth = 16;

  constexpr BitCursor() = default;
  constexpr explicit BitCursor(std::span<const std::uint8_t> bytes, std::size_t bit_pos = 0) noexcept
      : bytes_(bytes), bit_pos_(bit_pos) {}

  constexpr std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }
  constexpr std::size_t bit_pos() const noexcept { return bit_pos_; }
  constexpr std::size_t byte_index() const noexcept { return bit_pos_ >> 3; }
  constexpr std::size_t bits_remaining() const noexcept { return bytes_.size() * 8 - bit_pos_; }
  constexpr bool at_byte_boundary() const noexcept { return (bit_pos_ & 7u) == 0; }

  constexpr BitCursor advanced(std::size_t nbits) const noexcept { return BitCursor(bytes_, bit_pos_ + nbits); }

  constexpr BitCursor align_to_byte() const noexcept {
    return BitCursor(bytes_, (bit_pos_ + 7u) & ~std::size_t{7});
  }

  inline ParseOutcome<unsigned> read_bit() const;

  /// Reads `n` ≤ 16 bits; the first bit read is the least significant bit of
  /// the result.
  inline ParseOutcome<unsigned> read_bits(unsigned n) const;

  /// Unchecked variant of read_bits for callers that tested bits_remaining().
  std::uint32_t peek_bits_unchecked(unsigned n) const noexcept {
    const std::size_t first = bit_pos_ >> 3;
    const unsigned shift = bit_pos_ & 7u;
    std::uint32_t acc = 0;
    const std::size_t avail = bytes_.size() - first;
    const std::size_t take = avail < 4 ? avail : 4;
    for (std::size_t i = 0; i < take; ++i) acc |= std::uint32_t{bytes_[first + i]} << (8 * i);
    return (acc >> shift) & ((std::uint32_t{1} << n) - 1u);
  }

 private:
  std::span<const std::uint8_t> bytes_{};
  std::size_t bit_pos_ = 0;
};

struct NoParse {
  Errc reason;
  std::size_t bit_offset;
};

template <class V>
struct Parsed {
  V value;
  std::size_t consumed_bits;
  BitCursor rest;
};

/// Result of running a prefix parser on a cursor: either a value together with
/// the exact number of bits it was read from, or the reason no prefix parses.
template <class V>
class ParseOutcome {
 public:
  using value_type = V;

  ParseOutcome(Parsed<V> p) : v_(std::move(p)) {}
  ParseOutcome(NoParse f) : v_(f) {}

  static ParseOutcome fail(Errc reason, std::size_t bit_offset) { return NoParse{reason, bit_offset}; }

  bool ok() const noexcept { return v_.index() == 0; }
  explicit operator bool() const noexcept { return ok(); }

  const V& value() const& { return parsed().value; }
  V& value() & { return std::get<0>(v_).value; }
  V&& value() && { return std::move(std::get<0>(v_).value); }
  std::size_t consumed_bits() const { return parsed().consumed_bits; }
  const BitCursor& rest() const { return parsed().rest; }
  const Parsed<V>& parsed() const { return std::get<0>(v_); }
  const NoParse& failure() const { return std::get<1>(v_); }

  /// Re-types a failure so it can be propagated from a parser of another type.
  NoParse propagate() const { return failure(); }

  V value_or_throw() && {
    if (!ok()) throw Error(failure().reason, failure().bit_offset);
    return std::move(std::get<0>(v_).value);
  }

 private:
  std::variant<Parsed<V>, NoParse> v_;
};

inline ParseOutcome<unsigned> BitCursor::read_bit() const {
  if (bit_pos_ >= bytes_.size() * 8) return NoParse{Errc::EndOfInput, bit_pos_};
  const unsigned b = (bytes_[bit_pos_ >> 3] >> (bit_pos_ & 7u)) & 1u;
  return Parsed<unsigned>{b, 1, advanced(1)};
}

inline ParseOutcome<unsigned> BitCursor::read_bits(unsigned n) const {
  if (n > kMaxReadWidth) return NoParse{Errc::ValueOutOfRange, bit_pos_};
  if (n > bits_remaining()) return NoParse{Errc::EndOfInput, bit_pos_};
  if (n == 0) return Parsed<unsigned>{0, 0, *this};
  return Parsed<unsigned>{peek_bits_unchecked(n), n, advanced(n)};
}

/// Growable bit writer, the mirror image of BitCursor: integers go in least
/// significant bit first, codes leftmost bit first. Padding is zero bits.
class BitSink {
 public:
  BitSink() = default;

  void write_bits(std::uint32_t value, unsigned n) {
    if (n > 32 || (n < 32 && (std::uint64_t{value} >> n) != 0)) throw Error(Errc::ValueOutOfRange);
    for (unsigned i = 0; i < n; ++i) put_bit((value >> i) & 1u);
  }

  void write_code(const Code& code) {
    for (unsigned i = 0; i < code.length(); ++i) put_bit(code.bit(i));
  }

  /// Pads to a byte boundary with zero bits.
  void align_to_byte() noexcept { total_bits_ = (total_bits_ + 7u) & ~std::size_t{7}; }

  void write_byte_aligned(std::span<const std::uint8_t> data) {
    align_to_byte();
    bytes_.insert(bytes_.end(), data.begin(), data.end());
    total_bits_ += data.size() * 8;
  }

  /// Bits written so far, excluding padding added by flush.
  std::size_t bit_count() const noexcept { return total_bits_; }
  unsigned bit_fill() const noexcept { return static_cast<unsigned>(total_bits_ & 7u); }

  const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }

  std::vector<std::uint8_t> flush() && {
    align_to_byte();
    return std::move(bytes_);
  }

 private:
  void put_bit(unsigned b) {
    if ((total_bits_ & 7u) == 0) bytes_.push_back(0);
    bytes_.back() = static_cast<std::uint8_t>(bytes_.back() | (b << (total_bits_ & 7u)));
    ++total_bits_;
  }

  std::vector<std::uint8_t> bytes_;
  std::size_t total_bits_ = 0;
};

}  // namespace flate
