#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "flate/deflate.hpp"
#include "flate/error.hpp"
#include "flate/inflate.hpp"

namespace flate {

namespace detail {

inline constexpr std::array<std::uint32_t, 256> kCrcTable = [] {
  std::array<std::uint32_t, 256> t{};
  for (std::uint32_t n = 0; n < 256; ++n) {
    std::uint32_t c = n;
    for (int k = 0; k < 8; ++k) c = (c & 1u) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
    t[n] = c;
  }
  return t;
}();

inline void put_le32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline std::uint32_t get_le32(std::span<const std::uint8_t> b) {
  return std::uint32_t{b[0]} | std::uint32_t{b[1]} << 8 | std::uint32_t{b[2]} << 16 | std::uint32_t{b[3]} << 24;
}

}  // namespace detail

/// Incremental reflected CRC-32 (polynomial 0xEDB88320).
class Crc32 {
 public:
  Crc32& update(std::span<const std::uint8_t> data) noexcept {
    for (auto b : data) state_ = detail::kCrcTable[(state_ ^ b) & 0xFFu] ^ (state_ >> 8);
    return *this;
  }
  std::uint32_t value() const noexcept { return state_ ^ 0xFFFFFFFFu; }

 private:
  std::uint32_t state_ = 0xFFFFFFFFu;
};

inline std::uint32_t crc32(std::span<const std::uint8_t> data) noexcept { return Crc32{}.update(data).value(); }

struct PlaintextStats {
  std::uint32_t crc;
  std::uint32_t isize;  // length mod 2^32

  static PlaintextStats of(std::span<const std::uint8_t> data) noexcept {
    return {crc32(data), static_cast<std::uint32_t>(data.size())};
  }
};

inline constexpr std::uint8_t kGzipId1 = 0x1F;
inline constexpr std::uint8_t kGzipId2 = 0x8B;
inline constexpr std::uint8_t kGzipDeflate = 8;
inline constexpr std::uint8_t kGzipOsUnknown = 255;

namespace gzip_flag {
inline constexpr std::uint8_t kText = 0x01;
inline constexpr std::uint8_t kHcrc = 0x02;
inline constexpr std::uint8_t kExtra = 0x04;
inline constexpr std::uint8_t kName = 0x08;
inline constexpr std::uint8_t kComment = 0x10;
inline constexpr std::uint8_t kReserved = 0xE0;
}  // namespace gzip_flag

/// Minimal member: no name, no timestamp, OS "unknown".
inline std::vector<std::uint8_t> gzip_wrap(std::span<const std::uint8_t> deflate_bytes, PlaintextStats stats) {
  std::vector<std::uint8_t> out{kGzipId1, kGzipId2, kGzipDeflate, 0, 0, 0, 0, 0, 0, kGzipOsUnknown};
  out.reserve(out.size() + deflate_bytes.size() + 8);
  out.insert(out.end(), deflate_bytes.begin(), deflate_bytes.end());
  detail::put_le32(out, stats.crc);
  detail::put_le32(out, stats.isize);
  return out;
}

/// Length of the member header, optional fields included.
inline Expected<std::size_t> gzip_header_size(std::span<const std::uint8_t> b) {
  if (b.size() < 2 || b[0] != kGzipId1 || b[1] != kGzipId2) return Errc::BadMagic;
  if (b.size() < 10) return Errc::EndOfInput;
  if (b[2] != kGzipDeflate) return Errc::UnsupportedMethod;
  const std::uint8_t flags = b[3];
  if (flags & gzip_flag::kReserved) return Errc::UnsupportedMethod;
  std::size_t at = 10;
  if (flags & gzip_flag::kExtra) {
    if (b.size() < at + 2) return Errc::EndOfInput;
    at += 2 + (std::size_t{b[at]} | std::size_t{b[at + 1]} << 8);
  }
  for (auto f : {gzip_flag::kName, gzip_flag::kComment}) {
    if (!(flags & f)) continue;
    while (at < b.size() && b[at] != 0) ++at;
    ++at;  // terminating zero
  }
  if (flags & gzip_flag::kHcrc) at += 2;
  if (at > b.size()) return Errc::EndOfInput;
  return at;
}

/// Single-member view: the deflate payload lies between the header and the
/// final 8 trailer bytes.
struct GzipMember {
  std::size_t header_size;
  std::span<const std::uint8_t> deflate_bytes;
  std::uint32_t expected_crc;
  std::uint32_t expected_isize;
};

inline GzipMember gzip_unwrap(std::span<const std::uint8_t> bytes) {
  const auto header = gzip_header_size(bytes);
  if (!header) throw Error(header.error());
  if (bytes.size() < *header + 8) throw Error(Errc::EndOfInput);
  const auto trailer = bytes.subspan(bytes.size() - 8);
  return {*header, bytes.subspan(*header, bytes.size() - 8 - *header), detail::get_le32(trailer),
          detail::get_le32(trailer.subspan(4))};
}

struct GunzipResult {
  std::vector<std::uint8_t> bytes;
  /// Bytes after the first member; ignored.
  std::size_t trailing_bytes = 0;
};

/// Decodes the first member, locating its trailer right after the end of the
/// deflate stream, and validates CRC-32 and ISIZE.
template <ByteWindow W = RingWindow>
GunzipResult gunzip(std::span<const std::uint8_t> bytes, W window = W{}) {
  const auto header = gzip_header_size(bytes);
  if (!header) throw Error(header.error());
  const auto body = bytes.subspan(*header);
  auto out = try_inflate(body, std::move(window));
  if (!out) throw Error(out.failure().reason, out.failure().bit_offset + *header * 8);
  const std::size_t trailer_at = (out.consumed_bits() + 7) / 8;
  if (body.size() < trailer_at + 8) throw Error(Errc::EndOfInput, (*header + body.size()) * 8);
  const auto trailer = body.subspan(trailer_at, 8);
  const auto stats = PlaintextStats::of(out.value());
  if (detail::get_le32(trailer) != stats.crc || detail::get_le32(trailer.subspan(4)) != stats.isize) {
    throw Error(Errc::TrailerMismatch, (*header + trailer_at) * 8);
  }
  return {std::move(out).value(), body.size() - trailer_at - 8};
}

inline std::vector<std::uint8_t> gzip_compress(std::span<const std::uint8_t> data, const CompressParams& p = {}) {
  return gzip_wrap(deflate(data, p), PlaintextStats::of(data));
}

}  // namespace flate
