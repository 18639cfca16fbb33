#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "flate/bitio.hpp"
#include "flate/history_window.hpp"
#include "flate/prefix_coding.hpp"
#include "flate/symbol_tables.hpp"

namespace flate {

inline constexpr std::size_t kMaxStoredBlock = 65535;

struct CompressParams {
  /// Candidate positions examined per match attempt; also the bucket capacity.
  unsigned max_chain = 128;
  unsigned min_match = kMinMatch;
  unsigned max_match = kMaxMatch;
  /// Input bytes per emitted block. The default is a multiple of the stored
  /// block size so the stored fallback never leaves a short sub-block mid-stream.
  std::size_t block_payload_limit = 16 * kMaxStoredBlock;

  void validate() const {
    if (min_match < kMinMatch || min_match > max_match || max_match > kMaxMatch || max_chain == 0 ||
        block_payload_limit == 0) {
      throw Error(Errc::ValueOutOfRange);
    }
  }
};

struct Match {
  unsigned length;
  unsigned distance;
  bool operator==(const Match&) const = default;
};

inline constexpr unsigned kHashBits = 15;

constexpr std::uint32_t hash3(std::uint8_t a, std::uint8_t b, std::uint8_t c) noexcept {
  return ((std::uint32_t{a} << 10) ^ (std::uint32_t{b} << 5) ^ std::uint32_t{c}) & ((1u << kHashBits) - 1u);
}

/// Positions of earlier 3-byte sequences, bucketed by their hash. Each bucket
/// is a small queue of doom, so it keeps the most recent positions only.
class MatchTable {
 public:
  explicit MatchTable(unsigned bucket_capacity = 128)
      : buckets_(std::size_t{1} << kHashBits, QueueOfDoom<std::uint32_t>(std::max(1u, bucket_capacity))) {}

  void insert(std::span<const std::uint8_t> data, std::size_t pos) {
    if (pos + 2 >= data.size()) return;
    buckets_[hash3(data[pos], data[pos + 1], data[pos + 2])].push(static_cast<std::uint32_t>(pos));
  }

  /// Visits positions sharing the hash of data[pos..pos+3), newest first,
  /// until `f` returns false.
  template <class F>
  void for_each_candidate(std::span<const std::uint8_t> data, std::size_t pos, F&& f) const {
    if (pos + 2 >= data.size()) return;
    buckets_[hash3(data[pos], data[pos + 1], data[pos + 2])].for_each_recent_until(f);
  }

 private:
  std::vector<QueueOfDoom<std::uint32_t>> buckets_;
};

/// Longest match for data[pos..] among the candidates examined, limited to
/// data[..limit). Ties go to the smaller distance. The match may overlap pos.
inline std::optional<Match> find_match(std::span<const std::uint8_t> data, std::size_t pos, const MatchTable& table,
                                       const CompressParams& p, std::size_t limit) {
  limit = std::min(limit, data.size());
  if (pos + p.min_match > limit) return std::nullopt;
  const std::size_t max_len = std::min<std::size_t>(p.max_match, limit - pos);
  std::optional<Match> best;
  unsigned examined = 0;
  table.for_each_candidate(data, pos, [&](std::uint32_t cand) {
    if (examined++ >= p.max_chain) return false;
    if (cand >= pos) return true;
    const std::size_t distance = pos - cand;
    if (distance > kMaxDistance) return false;
    std::size_t len = 0;
    while (len < max_len && data[cand + len] == data[pos + len]) ++len;
    if (len >= p.min_match && (!best || len > best->length)) {
      best = Match{static_cast<unsigned>(len), static_cast<unsigned>(distance)};
    }
    return len < max_len;
  });
  return best;
}

inline std::optional<Match> find_match(std::span<const std::uint8_t> data, std::size_t pos, const MatchTable& table,
                                       const CompressParams& p) {
  return find_match(data, pos, table, p, data.size());
}

/// Greedy tokenizer. Keeps its match table across calls so later blocks can
/// refer back into earlier ones.
class Tokenizer {
 public:
  explicit Tokenizer(const CompressParams& p) : params_(p), table_(p.max_chain) { p.validate(); }

  /// Tokens for data[begin..end), terminated by EndOfBlock. Every position
  /// is hashed, including those covered by a match.
  std::vector<Token> tokenize_range(std::span<const std::uint8_t> data, std::size_t begin, std::size_t end) {
    std::vector<Token> out;
    std::size_t pos = begin;
    while (pos < end) {
      const auto m = find_match(data, pos, table_, params_, end);
      if (m) {
        out.push_back(Token::backref(m->length, m->distance));
        for (std::size_t k = 0; k < m->length; ++k) table_.insert(data, pos + k);
        pos += m->length;
      } else {
        out.push_back(Token::literal(data[pos]));
        table_.insert(data, pos);
        ++pos;
      }
    }
    out.push_back(Token::end_of_block());
    return out;
  }

 private:
  CompressParams params_;
  MatchTable table_;
};

/// Token stream for `data`: one EndOfBlock-terminated run per block of
/// `block_payload_limit` input bytes (a single empty block for empty input).
inline std::vector<Token> tokenize(std::span<const std::uint8_t> data, const CompressParams& p = {}) {
  Tokenizer tz(p);
  std::vector<Token> out;
  std::size_t begin = 0;
  do {
    const std::size_t end = std::min(data.size(), begin + p.block_payload_limit);
    auto block = tz.tokenize_range(data, begin, end);
    out.insert(out.end(), block.begin(), block.end());
    begin = end;
  } while (begin < data.size());
  return out;
}

/// Bits a statically compressed block of these tokens occupies, header included.
inline std::size_t static_block_bits(std::span<const Token> tokens) {
  const auto& lit = fixed_lit_coding();
  std::size_t bits = 3;
  for (const auto& t : tokens) {
    switch (t.kind) {
      case Token::Kind::Literal:
        bits += lit[t.byte].length();
        break;
      case Token::Kind::EndOfBlock:
        bits += lit[kEndOfBlock].length();
        break;
      case Token::Kind::BackRef: {
        const auto l = length_encode(t.length).value();
        const auto d = distance_encode(t.distance).value();
        bits += lit[l.codepoint].length() + l.extra_bits + fixed_dist_coding()[d.codepoint].length() + d.extra_bits;
        break;
      }
    }
  }
  return bits;
}

inline void write_static_block(std::span<const Token> tokens, bool final, BitSink& sink) {
  if (tokens.empty() || !tokens.back().is_end()) throw Error(Errc::ValueOutOfRange);
  const auto& lit = fixed_lit_coding();
  const auto& dist = fixed_dist_coding();
  sink.write_bits(final ? 1 : 0, 1);
  sink.write_bits(static_cast<unsigned>(BlockType::Static), 2);
  for (const auto& t : tokens) {
    switch (t.kind) {
      case Token::Kind::Literal:
        sink.write_code(lit[t.byte]);
        break;
      case Token::Kind::EndOfBlock:
        sink.write_code(lit[kEndOfBlock]);
        break;
      case Token::Kind::BackRef: {
        const auto l = length_encode(t.length).value();
        const auto d = distance_encode(t.distance).value();
        sink.write_code(encode_symbol(lit, l.codepoint));
        sink.write_bits(l.extra, l.extra_bits);
        sink.write_code(encode_symbol(dist, d.codepoint));
        sink.write_bits(d.extra, d.extra_bits);
        break;
      }
    }
  }
}

inline void write_stored_block(std::span<const std::uint8_t> data, bool final, BitSink& sink) {
  if (data.size() > kMaxStoredBlock) throw Error(Errc::ValueOutOfRange);
  sink.write_bits(final ? 1 : 0, 1);
  sink.write_bits(static_cast<unsigned>(BlockType::Stored), 2);
  sink.align_to_byte();
  const auto len = static_cast<std::uint32_t>(data.size());
  sink.write_bits(len, 16);
  sink.write_bits(len ^ 0xFFFFu, 16);
  sink.write_byte_aligned(data);
}

/// Bits needed to store `n` bytes as stored blocks starting at bit `at`.
inline std::size_t stored_blocks_bits(std::size_t n, std::size_t at) {
  const std::size_t start = at;
  do {
    const std::size_t chunk = std::min(n, kMaxStoredBlock);
    at = ((at + 3 + 7) & ~std::size_t{7}) + 32 + 8 * chunk;
    n -= chunk;
  } while (n > 0);
  return at - start;
}

/// Compresses into a raw deflate stream of statically compressed blocks,
/// falling back to stored blocks wherever those are not larger.
inline std::vector<std::uint8_t> deflate(std::span<const std::uint8_t> data, const CompressParams& p = {}) {
  Tokenizer tz(p);
  BitSink sink;
  std::size_t begin = 0;
  do {
    const std::size_t end = std::min(data.size(), begin + p.block_payload_limit);
    const bool final = end == data.size();
    const auto tokens = tz.tokenize_range(data, begin, end);
    const std::size_t n = end - begin;
    if (n > 0 && stored_blocks_bits(n, sink.bit_count()) < static_block_bits(tokens)) {
      for (std::size_t at = begin; at < end; at += kMaxStoredBlock) {
        const std::size_t chunk = std::min(end - at, kMaxStoredBlock);
        write_stored_block(data.subspan(at, chunk), final && at + chunk == end, sink);
      }
    } else {
      write_static_block(tokens, final, sink);
    }
    begin = end;
  } while (begin < data.size());
  return std::move(sink).flush();
}

}  // namespace flate
