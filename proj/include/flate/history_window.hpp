#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "flate/error.hpp"
#include "flate/explist.hpp"
#include "flate/symbol_tables.hpp"

namespace flate {

inline constexpr std::size_t kWindowSize = 32768;

/// One event of a decompressed stream.
struct Token {
  enum class Kind : std::uint8_t { Literal, BackRef, EndOfBlock };

  Kind kind = Kind::EndOfBlock;
  std::uint8_t byte = 0;
  std::uint16_t length = 0;
  std::uint16_t distance = 0;

  static constexpr Token literal(std::uint8_t b) noexcept { return {Kind::Literal, b, 0, 0}; }
  static constexpr Token backref(unsigned length, unsigned distance) noexcept {
    return {Kind::BackRef, 0, static_cast<std::uint16_t>(length), static_cast<std::uint16_t>(distance)};
  }
  static constexpr Token end_of_block() noexcept { return {}; }

  constexpr bool is_literal() const noexcept { return kind == Kind::Literal; }
  constexpr bool is_backref() const noexcept { return kind == Kind::BackRef; }
  constexpr bool is_end() const noexcept { return kind == Kind::EndOfBlock; }

  /// Bytes this token appends to the output.
  constexpr std::size_t output_size() const noexcept {
    return is_literal() ? 1 : is_backref() ? length : 0;
  }

  constexpr bool operator==(const Token&) const = default;
};

/// Two-list bounded history. Pushes go to the front list; once it holds
/// `capacity` elements the next push turns it into the back list, starting a
/// fresh front and dropping the old back. Lookback reaches front + back.
template <class T>
class QueueOfDoom {
 public:
  explicit QueueOfDoom(std::size_t capacity = kWindowSize) : capacity_(capacity) {}

  void push(T x) {
    if (front_.size() == capacity_) {
      back_ = std::move(front_);
      front_ = ExpList<T>{};
    }
    front_ = front_.cons(std::move(x));
  }

  /// The element pushed `distance` pushes ago (1 = most recent).
  Expected<T> lookback(std::size_t distance) const {
    if (distance == 0) return Errc::DistanceTooFar;
    if (distance <= front_.size()) return front_.index(distance - 1);
    const std::size_t in_back = distance - 1 - front_.size();
    if (in_back < back_.size()) return back_.index(in_back);
    return Errc::DistanceTooFar;
  }

  /// Visits the stored elements newest first until `f` returns false.
  template <class F>
  void for_each_recent_until(F&& f) const {
    if (front_.for_each_until(f)) back_.for_each_until(f);
  }

  std::size_t available() const noexcept { return front_.size() + back_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }
  const ExpList<T>& front() const noexcept { return front_; }
  const ExpList<T>& back() const noexcept { return back_; }

 private:
  ExpList<T> front_;
  ExpList<T> back_;
  std::size_t capacity_;
};

using QueueWindow = QueueOfDoom<std::uint8_t>;

/// Fixed-size circular byte history.
class RingWindow {
 public:
  explicit RingWindow(std::size_t capacity = kWindowSize) : buf_(capacity) {}

  void push(std::uint8_t b) {
    buf_[write_] = b;
    if (++write_ == buf_.size()) write_ = 0;
    if (fill_ < buf_.size()) ++fill_;
  }

  Expected<std::uint8_t> lookback(std::size_t distance) const {
    if (distance == 0 || distance > fill_) return Errc::DistanceTooFar;
    const std::size_t at = write_ >= distance ? write_ - distance : write_ + buf_.size() - distance;
    return buf_[at];
  }

  std::size_t available() const noexcept { return fill_; }
  std::size_t capacity() const noexcept { return buf_.size(); }

 private:
  std::vector<std::uint8_t> buf_;
  std::size_t write_ = 0;
  std::size_t fill_ = 0;
};

template <class W>
concept ByteWindow = requires(W w, const W cw, std::uint8_t b, std::size_t d) {
  w.push(b);
  { cw.lookback(d) } -> std::same_as<Expected<std::uint8_t>>;
  { cw.available() } -> std::convertible_to<std::size_t>;
};

/// Appends the bytes of one token to `out`, keeping `window` in step. A
/// backreference copies one byte at a time from the growing output, so a
/// length above the distance repeats the most recent bytes.
template <ByteWindow W>
bool resolve_token(const Token& t, W& window, std::vector<std::uint8_t>& out) {
  switch (t.kind) {
    case Token::Kind::Literal:
      out.push_back(t.byte);
      window.push(t.byte);
      return true;
    case Token::Kind::BackRef:
      if (t.distance == 0 || t.distance > window.available()) return false;
      for (unsigned k = 0; k < t.length; ++k) {
        const auto b = window.lookback(t.distance);
        if (!b) return false;
        out.push_back(*b);
        window.push(*b);
      }
      return true;
    case Token::Kind::EndOfBlock:
      return true;
  }
  return false;
}

template <ByteWindow W>
struct Resolved {
  std::vector<std::uint8_t> bytes;
  W window;
};

template <ByteWindow W>
Resolved<W> resolve_tokens_with(std::span<const Token> tokens, W window) {
  Resolved<W> r{{}, std::move(window)};
  for (const auto& t : tokens) {
    if (!resolve_token(t, r.window, r.bytes)) throw Error(Errc::DistanceTooFar);
  }
  return r;
}

inline Resolved<QueueWindow> resolve_tokens(std::span<const Token> tokens, QueueWindow window = QueueWindow{}) {
  return resolve_tokens_with(tokens, std::move(window));
}

inline Resolved<RingWindow> resolve_tokens_ring(std::span<const Token> tokens, RingWindow window = RingWindow{}) {
  return resolve_tokens_with(tokens, std::move(window));
}

}  // namespace flate
