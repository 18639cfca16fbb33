#pragma once

#include <type_traits>
#include <utility>

#include "flate/bitio.hpp"

namespace flate {

// A prefix parser is any callable BitCursor -> ParseOutcome<V>. Two
// properties are expected of every parser in this library:
//   - consumption is determined by the input: if a parser accepts some
//     prefix of a stream, every extension of that stream yields the same
//     value and the same consumed prefix;
//   - the parser is total: every cursor yields a value or a NoParse reason.
// Both are preserved by parse_sequence and are checked by the test suite.

template <class P>
using parser_value_t = typename std::invoke_result_t<P, const BitCursor&>::value_type;

/// Runs `first`, feeds its value to `then` to obtain the second parser, runs
/// that on the remaining input, and joins both values with `combine`.
/// Consumed bits add up.
template <class P, class Q, class C>
auto parse_sequence(P first, Q then, C combine) {
  using A = parser_value_t<P>;
  using Second = std::invoke_result_t<Q, const A&>;
  using B = parser_value_t<Second>;
  using R = std::invoke_result_t<C, const A&, const B&>;
  return [first = std::move(first), then = std::move(then),
          combine = std::move(combine)](const BitCursor& cur) -> ParseOutcome<R> {
    auto a = first(cur);
    if (!a) return a.propagate();
    auto b = then(a.value())(a.rest());
    if (!b) return b.propagate();
    return Parsed<R>{combine(a.value(), b.value()), a.consumed_bits() + b.consumed_bits(), b.rest()};
  };
}

/// Fixed-width little-endian field.
inline auto bits_parser(unsigned n) {
  return [n](const BitCursor& cur) { return cur.read_bits(n); };
}

}  // namespace flate
