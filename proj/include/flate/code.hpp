#pragma once

#include <cassert>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace flate {

/// A finite bit sequence, stored as an unsigned value whose most significant
/// used bit is the leftmost bit of the sequence. Codes are emitted into a
/// stream leftmost bit first.
class Code {
 public:
  static constexpr unsigned kMaxLength = 31;

  constexpr Code() = default;
  constexpr Code(std::uint32_t value, unsigned length) : value_(value), length_(static_cast<std::uint8_t>(length)) {
    assert(length <= kMaxLength);
    assert(length == 32 || value < (std::uint32_t{1} << length));
  }

  static Code from_bits(std::initializer_list<int> bits) {
    Code c;
    for (int b : bits) c = c.append(static_cast<unsigned>(b != 0));
    return c;
  }

  /// Parses a string of '0'/'1' characters; anything else is ignored, so the
  /// spaced listings "010 100" read naturally.
  static Code from_string(std::string_view s) {
    Code c;
    for (char ch : s) {
      if (ch == '0' || ch == '1') c = c.append(static_cast<unsigned>(ch == '1'));
    }
    return c;
  }

  constexpr std::uint32_t value() const noexcept { return value_; }
  constexpr unsigned length() const noexcept { return length_; }
  constexpr bool empty() const noexcept { return length_ == 0; }

  /// The i-th bit counted from the left.
  constexpr unsigned bit(unsigned i) const noexcept {
    assert(i < length_);
    return (value_ >> (length_ - 1 - i)) & 1u;
  }

  constexpr Code append(unsigned b) const noexcept {
    return Code((value_ << 1) | (b & 1u), length_ + 1u);
  }

  constexpr bool all_ones() const noexcept {
    return length_ != 0 && value_ == ((std::uint32_t{1} << length_) - 1u);
  }

  /// `*this` is a (non-strict) prefix of `other`.
  constexpr bool is_prefix_of(const Code& other) const noexcept {
    if (length_ > other.length_) return false;
    return (other.value_ >> (other.length_ - length_)) == value_;
  }

  std::vector<int> bits() const {
    std::vector<int> out;
    out.reserve(length_);
    for (unsigned i = 0; i < length_; ++i) out.push_back(static_cast<int>(bit(i)));
    return out;
  }

  std::string to_string() const {
    std::string s;
    s.reserve(length_);
    for (unsigned i = 0; i < length_; ++i) s.push_back(bit(i) ? '1' : '0');
    return s;
  }

  constexpr bool operator==(const Code&) const = default;

  /// Lexicographic order on bit sequences: a proper prefix precedes its
  /// extensions, otherwise the first differing bit decides.
  constexpr std::strong_ordering operator<=>(const Code& other) const noexcept {
    const unsigned common = length_ < other.length_ ? length_ : other.length_;
    const std::uint32_t a = common == 0 ? 0 : value_ >> (length_ - common);
    const std::uint32_t b = common == 0 ? 0 : other.value_ >> (other.length_ - common);
    if (a != b) return a <=> b;
    return length_ <=> other.length_;
  }

 private:
  std::uint32_t value_ = 0;
  std::uint8_t length_ = 0;
};

}  // namespace flate
