#include <gtest/gtest.h>

#include <deque>
#include <random>
#include <string>

#include "flate/history_window.hpp"
#include "support/oracles.hpp"

using namespace flate;

namespace {

template <class T>
std::vector<T> to_vector(const ExpList<T>& l) {
  std::vector<T> out;
  l.for_each_until([&](const T& x) {
    out.push_back(x);
    return true;
  });
  return out;
}

std::string as_string(const std::vector<std::uint8_t>& v) { return {v.begin(), v.end()}; }

std::vector<Token> literals(std::string_view s) {
  std::vector<Token> out;
  for (char c : s) out.push_back(Token::literal(static_cast<std::uint8_t>(c)));
  return out;
}

std::vector<Token> concat(std::initializer_list<std::vector<Token>> parts) {
  std::vector<Token> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace

TEST(ExpList, IndexMatchesConsOrder) {
  ExpList<int> l;
  std::deque<int> model;
  for (int i = 0; i < 1000; ++i) {
    l = l.cons(i);
    model.push_front(i);
    ASSERT_EQ(l.size(), model.size());
  }
  for (std::size_t i = 0; i < model.size(); ++i) ASSERT_EQ(*l.index(i), model[i]);
  EXPECT_EQ(l.index(1000).error(), Errc::IndexOutOfRange);
  EXPECT_EQ(to_vector(l), std::vector<int>(model.begin(), model.end()));
}

TEST(ExpList, Persistent) {
  const auto a = ExpList<int>{}.cons(1).cons(2);
  const auto b = a.cons(3);
  const auto c = a.cons(4);
  EXPECT_EQ(to_vector(a), (std::vector<int>{2, 1}));
  EXPECT_EQ(to_vector(b), (std::vector<int>{3, 2, 1}));
  EXPECT_EQ(to_vector(c), (std::vector<int>{4, 2, 1}));
}

TEST(ExpList, RandomizedAgainstVector) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    ExpList<std::uint32_t> l;
    std::vector<std::uint32_t> model;  // newest last
    const int n = 1 + static_cast<int>(rng() % 5000);
    for (int i = 0; i < n; ++i) {
      const auto x = static_cast<std::uint32_t>(rng());
      l = l.cons(x);
      model.push_back(x);
    }
    for (int q = 0; q < 500; ++q) {
      const std::size_t i = rng() % (model.size() + 3);
      const auto got = l.index(i);
      if (i < model.size()) {
        ASSERT_TRUE(got);
        ASSERT_EQ(*got, model[model.size() - 1 - i]);
      } else {
        ASSERT_FALSE(got);
      }
    }
  }
}

TEST(ExpList, EarlyStop) {
  ExpList<int> l;
  for (int i = 0; i < 10; ++i) l = l.cons(i);
  int seen = 0;
  EXPECT_FALSE(l.for_each_until([&](int) { return ++seen < 4; }));
  EXPECT_EQ(seen, 4);
  EXPECT_TRUE(ExpList<int>{}.for_each_until([](int) { return false; }));
}

TEST(QueueOfDoom, CapacityThreeTrace) {
  using State = std::pair<std::vector<int>, std::vector<int>>;
  const std::vector<State> expected{
      {{1}, {}},       {{2, 1}, {}},       {{3, 2, 1}, {}},       {{4}, {3, 2, 1}},
      {{5, 4}, {3, 2, 1}}, {{6, 5, 4}, {3, 2, 1}}, {{7}, {6, 5, 4}},
  };
  QueueOfDoom<int> q(3);
  EXPECT_TRUE(q.front().empty());
  EXPECT_TRUE(q.back().empty());
  for (int i = 1; i <= 7; ++i) {
    q.push(i);
    EXPECT_EQ(State(to_vector(q.front()), to_vector(q.back())), expected[i - 1]) << "push " << i;
  }
  EXPECT_EQ(*q.lookback(1), 7);
  EXPECT_EQ(*q.lookback(4), 4);
  EXPECT_EQ(q.lookback(5).error(), Errc::DistanceTooFar);
  EXPECT_EQ(q.lookback(0).error(), Errc::DistanceTooFar);
}

TEST(QueueOfDoom, AlwaysRetainsAtLeastCapacity) {
  QueueOfDoom<int> q(5);
  for (int i = 1; i <= 100; ++i) {
    q.push(i);
    ASSERT_GE(q.available(), std::min<std::size_t>(i, 5));
    for (std::size_t d = 1; d <= q.available(); ++d) ASSERT_EQ(*q.lookback(d), i + 1 - static_cast<int>(d));
  }
}

TEST(RingWindow, Lookback) {
  RingWindow w(4);
  EXPECT_EQ(w.lookback(1).error(), Errc::DistanceTooFar);
  for (std::uint8_t i = 1; i <= 6; ++i) w.push(i);
  EXPECT_EQ(*w.lookback(1), 6);
  EXPECT_EQ(*w.lookback(4), 3);
  EXPECT_EQ(w.lookback(5).error(), Errc::DistanceTooFar);
  EXPECT_EQ(w.available(), 4u);
}

TEST(Resolve, ShortenedSentences) {
  const auto eq2 = concat({literals("ananas_b"), {Token::backref(5, 8), Token::backref(3, 7)}, literals("tata")});
  EXPECT_EQ(as_string(resolve_tokens(eq2).bytes), "ananas_banana_batata");
  const auto eq3 = concat({literals("an"), {Token::backref(3, 2)}, literals("s_b"),
                           {Token::backref(5, 8), Token::backref(3, 7)}, literals("t"), {Token::backref(3, 2)}});
  EXPECT_EQ(as_string(resolve_tokens(eq3).bytes), "ananas_banana_batata");
  EXPECT_EQ(as_string(resolve_tokens_ring(eq3).bytes), "ananas_banana_batata");
  const auto rle = concat({literals("a"), {Token::backref(7, 1)}, literals("rgh!")});
  EXPECT_EQ(as_string(resolve_tokens(rle).bytes), "aaaaaaaargh!");
}

TEST(Resolve, OverlapRepeatsPeriod) {
  for (unsigned d = 1; d <= 6; ++d) {
    for (unsigned l = 3; l <= 40; ++l) {
      std::vector<Token> toks;
      for (unsigned i = 0; i < d; ++i) toks.push_back(Token::literal(static_cast<std::uint8_t>('a' + i)));
      toks.push_back(Token::backref(l, d));
      const auto out = resolve_tokens(toks).bytes;
      ASSERT_EQ(out.size(), d + l);
      for (std::size_t k = d; k < out.size(); ++k) ASSERT_EQ(out[k], out[k % d]);
    }
  }
}

TEST(Resolve, DistanceBeyondOutputFails) {
  const auto toks = concat({literals("ab"), {Token::backref(3, 3)}});
  EXPECT_THROW(resolve_tokens(toks), Error);
  EXPECT_THROW(resolve_tokens_ring(toks), Error);
  std::vector<std::uint8_t> out;
  RingWindow w;
  EXPECT_FALSE(resolve_token(Token::backref(3, 1), w, out));
}

TEST(Resolve, EndOfBlockEmitsNothing) {
  const auto toks = concat({literals("x"), {Token::end_of_block()}, literals("y")});
  EXPECT_EQ(as_string(resolve_tokens(toks).bytes), "xy");
}

TEST(Resolve, QueueRingAndNaiveAgree) {
  std::mt19937_64 rng(17);
  std::vector<Token> toks;
  std::vector<oracle::Tok> naive;
  std::size_t produced = 0;
  for (int i = 0; i < 200000; ++i) {
    if (produced < 3 || rng() % 3 == 0) {
      const auto b = static_cast<std::uint8_t>(rng() % 4);
      toks.push_back(Token::literal(b));
      naive.push_back({0, 0, b});
      ++produced;
    } else {
      const unsigned len = 3 + static_cast<unsigned>(rng() % 30);
      const std::size_t maxd = std::min<std::size_t>(produced, kWindowSize);
      const unsigned dist = static_cast<unsigned>(rng() % 4 == 0 ? 1 + rng() % maxd : 1 + rng() % std::min<std::size_t>(maxd, 64));
      toks.push_back(Token::backref(len, dist));
      naive.push_back({len, dist, 0});
      produced += len;
    }
  }
  const auto q = resolve_tokens(toks).bytes;
  const auto r = resolve_tokens_ring(toks).bytes;
  const auto n = oracle::resolve_naive(naive);
  ASSERT_TRUE(n);
  EXPECT_EQ(q.size(), produced);
  EXPECT_TRUE(q == r);
  EXPECT_TRUE(q == *n);
}
