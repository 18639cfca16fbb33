#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "flate/bitio.hpp"
#include "flate/history_window.hpp"
#include "flate/parse.hpp"
#include "flate/prefix_coding.hpp"
#include "flate/symbol_tables.hpp"

namespace flate {

struct BlockHeader {
  bool is_final = false;
  BlockType type = BlockType::Stored;
  bool operator==(const BlockHeader&) const = default;
};

struct DynamicHeader {
  unsigned hlit = 0;   // 257..286
  unsigned hdist = 0;  // 1..32
  unsigned hclen = 0;  // 4..19
  DeflateCoding cl_coding;
  DeflateCoding lit_coding;
  DeflateCoding dist_coding;
};

inline ParseOutcome<BlockHeader> parse_block_header(const BitCursor& cur) {
  auto bits = cur.read_bits(3);
  if (!bits) return bits.propagate();
  const unsigned v = bits.value();
  const unsigned btype = v >> 1;
  if (btype == 3) return NoParse{Errc::ReservedBlockType, cur.bit_pos() + 1};
  return Parsed<BlockHeader>{{(v & 1u) != 0, static_cast<BlockType>(btype)}, 3, bits.rest()};
}

/// Body of a stored block: alignment padding, LEN, NLEN, then LEN raw bytes.
inline ParseOutcome<std::span<const std::uint8_t>> parse_stored_payload(const BitCursor& cur) {
  const BitCursor aligned = cur.align_to_byte();
  auto len = aligned.read_bits(16);
  if (!len) return len.propagate();
  auto nlen = len.rest().read_bits(16);
  if (!nlen) return nlen.propagate();
  if ((len.value() ^ 0xFFFFu) != nlen.value()) return NoParse{Errc::LenNlenMismatch, len.rest().bit_pos()};
  const BitCursor body = nlen.rest();
  const std::size_t n = len.value();
  if (body.bits_remaining() < n * 8) return NoParse{Errc::EndOfInput, body.bits_remaining() + body.bit_pos()};
  const BitCursor end = body.advanced(n * 8);
  return Parsed<std::span<const std::uint8_t>>{body.bytes().subspan(body.byte_index(), n),
                                               end.bit_pos() - cur.bit_pos(), end};
}

inline ParseOutcome<std::vector<std::uint8_t>> parse_stored_block(const BitCursor& cur) {
  auto p = parse_stored_payload(cur);
  if (!p) return p.propagate();
  return Parsed<std::vector<std::uint8_t>>{{p.value().begin(), p.value().end()}, p.consumed_bits(), p.rest()};
}

/// Reads `hclen` 3-bit lengths in transmission order and scatters them into
/// the 19-entry code-length alphabet.
inline ParseOutcome<CodeLengths> parse_cl_lengths(const BitCursor& cur, unsigned hclen) {
  if (hclen > kClCodeOrder.size()) return NoParse{Errc::ValueOutOfRange, cur.bit_pos()};
  std::vector<std::uint8_t> lengths(kClCodeOrder.size(), 0);
  BitCursor at = cur;
  for (unsigned i = 0; i < hclen; ++i) {
    auto v = at.read_bits(3);
    if (!v) return v.propagate();
    lengths[kClCodeOrder[i]] = static_cast<std::uint8_t>(v.value());
    at = v.rest();
  }
  return Parsed<CodeLengths>{CodeLengths(std::move(lengths), kMaxClCodeLength), at.bit_pos() - cur.bit_pos(), at};
}

/// Decodes `total` code lengths compressed with the code-length coding.
/// Symbols 0-15 are lengths; 16 repeats the previous length 3-6 times, 17
/// emits 3-10 zeros and 18 emits 11-138 zeros. Runs may straddle the
/// literal/distance boundary.
inline ParseOutcome<std::vector<std::uint8_t>> parse_rle_code_lengths(const BitCursor& cur, const DeflateCoding& cl,
                                                                      std::size_t total) {
  std::vector<std::uint8_t> lengths;
  lengths.reserve(total);
  BitCursor at = cur;
  while (lengths.size() < total) {
    const std::size_t sym_pos = at.bit_pos();
    auto sym = decode_symbol(cl, at);
    if (!sym) return sym.propagate();
    at = sym.rest();
    const unsigned s = sym.value();
    if (s < 16) {
      lengths.push_back(static_cast<std::uint8_t>(s));
      continue;
    }
    unsigned extra_bits = 0;
    unsigned base = 0;
    std::uint8_t fill = 0;
    switch (s) {
      case 16:
        if (lengths.empty()) return NoParse{Errc::RepeatWithoutPrevious, sym_pos};
        extra_bits = 2;
        base = 3;
        fill = lengths.back();
        break;
      case 17:
        extra_bits = 3;
        base = 3;
        break;
      case 18:
        extra_bits = 7;
        base = 11;
        break;
      default:
        return NoParse{Errc::BadCode, sym_pos};
    }
    auto extra = at.read_bits(extra_bits);
    if (!extra) return extra.propagate();
    at = extra.rest();
    const std::size_t run = base + extra.value();
    if (lengths.size() + run > total) return NoParse{Errc::RepeatOverrun, sym_pos};
    lengths.insert(lengths.end(), run, fill);
  }
  return Parsed<std::vector<std::uint8_t>>{std::move(lengths), at.bit_pos() - cur.bit_pos(), at};
}

struct HeaderCounts {
  unsigned hlit;
  unsigned hdist;
  unsigned hclen;
};

/// HLIT (5 bits), HDIST (5 bits), HCLEN (4 bits).
inline ParseOutcome<HeaderCounts> parse_header_counts(const BitCursor& cur) {
  auto counts = parse_sequence(
      bits_parser(5), [](const unsigned&) { return parse_sequence(bits_parser(5), [](const unsigned&) { return bits_parser(4); },
                                                                  [](unsigned d, unsigned c) { return std::pair{d, c}; }); },
      [](unsigned l, const std::pair<unsigned, unsigned>& dc) {
        return HeaderCounts{l + 257, dc.first + 1, dc.second + 4};
      })(cur);
  if (!counts) return counts;
  if (counts.value().hlit > 286) return NoParse{Errc::ForbiddenHlit, cur.bit_pos()};
  return counts;
}

inline ParseOutcome<DynamicHeader> parse_dynamic_header(const BitCursor& cur) {
  auto counts = parse_header_counts(cur);
  if (!counts) return counts.propagate();
  const auto [hlit, hdist, hclen] = counts.value();

  auto cl_lengths = parse_cl_lengths(counts.rest(), hclen);
  if (!cl_lengths) return cl_lengths.propagate();
  auto cl = try_build_coding(cl_lengths.value());
  if (!cl) return NoParse{Errc::BadCoding, counts.rest().bit_pos()};

  auto lengths = parse_rle_code_lengths(cl_lengths.rest(), *cl, hlit + hdist);
  if (!lengths) return lengths.propagate();
  const auto& all = lengths.value();

  auto lit_lengths = CodeLengths::make({all.begin(), all.begin() + hlit});
  auto dist_lengths = CodeLengths::make({all.begin() + hlit, all.end()});
  if (!lit_lengths || !dist_lengths) return NoParse{Errc::BadCoding, cl_lengths.rest().bit_pos()};
  auto lit = try_build_coding(*lit_lengths);
  auto dist = try_build_coding(*dist_lengths);
  if (!lit || !dist) return NoParse{Errc::BadCoding, cl_lengths.rest().bit_pos()};

  const BitCursor end = lengths.rest();
  return Parsed<DynamicHeader>{DynamicHeader{hlit, hdist, hclen, *cl, *lit, *dist}, end.bit_pos() - cur.bit_pos(),
                               end};
}

/// One literal, backreference, or end-of-block marker of a compressed block.
inline ParseOutcome<Token> parse_token(const BitCursor& cur, const DeflateCoding& lit, const DeflateCoding& dist) {
  auto sym = decode_symbol(lit, cur);
  if (!sym) return sym.propagate();
  const unsigned s = sym.value();
  if (s < kEndOfBlock) return Parsed<Token>{Token::literal(static_cast<std::uint8_t>(s)), sym.consumed_bits(), sym.rest()};
  if (s == kEndOfBlock) return Parsed<Token>{Token::end_of_block(), sym.consumed_bits(), sym.rest()};

  const auto entry = length_entry(s);
  if (!entry) return NoParse{entry.error(), cur.bit_pos()};
  auto lextra = sym.rest().read_bits((*entry)->extra_bits);
  if (!lextra) return lextra.propagate();
  const auto length = length_decode(s, lextra.value());
  if (!length) return NoParse{length.error(), sym.rest().bit_pos()};

  const BitCursor dpos = lextra.rest();
  auto dsym = decode_symbol(dist, dpos);
  if (!dsym) return dsym.propagate();
  if (dsym.value() >= kDistanceCodes) return NoParse{Errc::InvalidDistanceCodepoint, dpos.bit_pos()};
  auto dextra = dsym.rest().read_bits(kDistanceTable[dsym.value()].extra_bits);
  if (!dextra) return dextra.propagate();
  const auto distance = distance_decode(dsym.value(), dextra.value());
  if (!distance) return NoParse{distance.error(), dsym.rest().bit_pos()};

  const BitCursor end = dextra.rest();
  return Parsed<Token>{Token::backref(*length, *distance), end.bit_pos() - cur.bit_pos(), end};
}

/// Token sequence of a compressed block, up to and including end-of-block.
inline ParseOutcome<std::vector<Token>> parse_compressed_tokens(const BitCursor& cur, const DeflateCoding& lit,
                                                                const DeflateCoding& dist) {
  std::vector<Token> tokens;
  BitCursor at = cur;
  for (;;) {
    auto t = parse_token(at, lit, dist);
    if (!t) return t.propagate();
    tokens.push_back(t.value());
    at = t.rest();
    if (tokens.back().is_end()) break;
  }
  return Parsed<std::vector<Token>>{std::move(tokens), at.bit_pos() - cur.bit_pos(), at};
}

// Whole-stream decoding ------------------------------------------------------

/// Drives a stream block by block and reports each block's content to
/// `visitor`, which must provide
///   void on_block(const BlockHeader&, std::size_t bit_offset);
///   bool on_stored(std::span<const std::uint8_t>);
///   bool on_token(const Token&);
/// A false return from the visitor aborts with DistanceTooFar. On success the
/// outcome holds the number of blocks and the bits consumed through the end
/// of the final block; anything after that is ignored.
template <class Visitor>
ParseOutcome<std::size_t> walk_stream(const BitCursor& start, Visitor& visitor) {
  BitCursor at = start;
  std::size_t blocks = 0;
  for (;;) {
    auto header = parse_block_header(at);
    if (!header) return header.propagate();
    visitor.on_block(header.value(), at.bit_pos());
    at = header.rest();
    ++blocks;

    switch (header.value().type) {
      case BlockType::Stored: {
        auto payload = parse_stored_payload(at);
        if (!payload) return payload.propagate();
        if (!visitor.on_stored(payload.value())) return NoParse{Errc::DistanceTooFar, at.bit_pos()};
        at = payload.rest();
        break;
      }
      case BlockType::Static:
      case BlockType::Dynamic: {
        DynamicHeader dyn;
        const DeflateCoding* lit = &fixed_lit_coding();
        const DeflateCoding* dist = &fixed_dist_coding();
        if (header.value().type == BlockType::Dynamic) {
          auto h = parse_dynamic_header(at);
          if (!h) return h.propagate();
          dyn = std::move(h).value();
          lit = &dyn.lit_coding;
          dist = &dyn.dist_coding;
          at = h.rest();
        }
        for (;;) {
          auto t = parse_token(at, *lit, *dist);
          if (!t) return t.propagate();
          if (!visitor.on_token(t.value())) return NoParse{Errc::DistanceTooFar, at.bit_pos()};
          at = t.rest();
          if (t.value().is_end()) break;
        }
        break;
      }
    }
    if (header.value().is_final) break;
  }
  return Parsed<std::size_t>{blocks, at.bit_pos() - start.bit_pos(), at};
}

template <ByteWindow W>
struct ResolvingVisitor {
  W window;
  std::vector<std::uint8_t> out;

  void on_block(const BlockHeader&, std::size_t) {}
  bool on_stored(std::span<const std::uint8_t> bytes) {
    for (auto b : bytes) {
      out.push_back(b);
      window.push(b);
    }
    return true;
  }
  bool on_token(const Token& t) { return resolve_token(t, window, out); }
};

/// Decompresses a raw deflate stream. The history window persists across
/// blocks. The outcome's consumed_bits marks the end of the final block.
template <ByteWindow W = RingWindow>
ParseOutcome<std::vector<std::uint8_t>> try_inflate(std::span<const std::uint8_t> bytes, W window = W{}) {
  ResolvingVisitor<W> v{std::move(window), {}};
  auto walked = walk_stream(BitCursor(bytes), v);
  if (!walked) return walked.propagate();
  return Parsed<std::vector<std::uint8_t>>{std::move(v.out), walked.consumed_bits(), walked.rest()};
}

/// Throws Error carrying the failing bit offset.
template <ByteWindow W = RingWindow>
std::vector<std::uint8_t> inflate(std::span<const std::uint8_t> bytes, W window = W{}) {
  return try_inflate(bytes, std::move(window)).value_or_throw();
}

struct BlockTokens {
  BlockHeader header;
  std::size_t bit_offset = 0;
  std::vector<Token> tokens;            // compressed blocks
  std::vector<std::uint8_t> stored;     // stored blocks
};

/// Parses a stream without resolving backreferences.
inline ParseOutcome<std::vector<BlockTokens>> inflate_tokens(std::span<const std::uint8_t> bytes) {
  struct Collector {
    std::vector<BlockTokens> blocks;
    void on_block(const BlockHeader& h, std::size_t off) { blocks.push_back({h, off, {}, {}}); }
    bool on_stored(std::span<const std::uint8_t> b) {
      blocks.back().stored.assign(b.begin(), b.end());
      return true;
    }
    bool on_token(const Token& t) {
      blocks.back().tokens.push_back(t);
      return true;
    }
  } c;
  auto walked = walk_stream(BitCursor(bytes), c);
  if (!walked) return walked.propagate();
  return Parsed<std::vector<BlockTokens>>{std::move(c.blocks), walked.consumed_bits(), walked.rest()};
}

}  // namespace flate
