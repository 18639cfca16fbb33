#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace flate {

enum class Errc {
  EndOfInput,
  ValueOutOfRange,
  KraftViolation,
  LengthOverflow,
  BadCode,
  UnencodableCharacter,
  InvalidCodepoint,
  InvalidLengthExtra,
  InvalidDistanceCodepoint,
  IndexOutOfRange,
  DistanceTooFar,
  ReservedBlockType,
  LenNlenMismatch,
  RepeatWithoutPrevious,
  RepeatOverrun,
  ForbiddenHlit,
  BadCoding,
  BadMagic,
  UnsupportedMethod,
  TrailerMismatch,
};

constexpr std::string_view to_string(Errc e) noexcept {
  switch (e) {
    case Errc::EndOfInput: return "end of input";
    case Errc::ValueOutOfRange: return "value out of range";
    case Errc::KraftViolation: return "code lengths violate the Kraft inequality";
    case Errc::LengthOverflow: return "code length exceeds maximum";
    case Errc::BadCode: return "bit sequence matches no code";
    case Errc::UnencodableCharacter: return "character has no code";
    case Errc::InvalidCodepoint: return "invalid codepoint";
    case Errc::InvalidLengthExtra: return "invalid length extra bits";
    case Errc::InvalidDistanceCodepoint: return "invalid distance codepoint";
    case Errc::IndexOutOfRange: return "index out of range";
    case Errc::DistanceTooFar: return "backreference distance exceeds history";
    case Errc::ReservedBlockType: return "reserved block type";
    case Errc::LenNlenMismatch: return "stored block LEN/NLEN mismatch";
    case Errc::RepeatWithoutPrevious: return "repeat code without previous length";
    case Errc::RepeatOverrun: return "repeat code overruns length table";
    case Errc::ForbiddenHlit: return "forbidden literal/length count";
    case Errc::BadCoding: return "header describes an invalid coding";
    case Errc::BadMagic: return "bad gzip magic";
    case Errc::UnsupportedMethod: return "unsupported gzip compression method";
    case Errc::TrailerMismatch: return "gzip trailer mismatch";
  }
  return "unknown error";
}

/// Exception thrown by the non-parser entry points. Decoder failures carry the
/// absolute bit offset at which parsing stopped.
class Error : public std::runtime_error {
 public:
  explicit Error(Errc code, std::optional<std::size_t> bit_offset = std::nullopt)
      : std::runtime_error(describe(code, bit_offset)), code_(code), bit_offset_(bit_offset) {}

  Errc code() const noexcept { return code_; }
  std::optional<std::size_t> bit_offset() const noexcept { return bit_offset_; }

 private:
  static std::string describe(Errc code, std::optional<std::size_t> bit_offset) {
    std::string msg(to_string(code));
    if (bit_offset) {
      msg += " at bit ";
      msg += std::to_string(*bit_offset);
    }
    return msg;
  }

  Errc code_;
  std::optional<std::size_t> bit_offset_;
};

/// Value-or-error for table lookups that parsers call on their hot path.
template <class T>
class Expected {
 public:
  constexpr Expected(T value) : v_(std::move(value)) {}
  constexpr Expected(Errc e) : v_(e) {}

  constexpr bool has_value() const noexcept { return v_.index() == 0; }
  constexpr explicit operator bool() const noexcept { return has_value(); }

  const T& value() const {
    if (!has_value()) throw Error(std::get<1>(v_));
    return std::get<0>(v_);
  }
  constexpr const T& operator*() const { return std::get<0>(v_); }
  constexpr const T* operator->() const { return &std::get<0>(v_); }
  constexpr Errc error() const { return std::get<1>(v_); }

 private:
  std::variant<T, Errc> v_;
};

}  // namespace flate
