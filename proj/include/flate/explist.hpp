#pragma once

#include <cstddef>
#include <memory>
#include <utility>
#include <variant>

#include "flate/error.hpp"

namespace flate {

/// Persistent random-access list with cheap access near the front.
///
/// Level k of the spine holds one or two perfect binary trees of 2^k
/// elements followed by the rest of the spine, which plays the role of a
/// list of element pairs. Consing onto a level holding two trees pairs them
/// up and pushes the pair one level down, so element i lives at level
/// O(log i) and is reached in O(log i) steps. Values are immutable and share
/// structure; copying is O(1).
template <class T>
class ExpList {
  struct Tree;
  using TreePtr = std::shared_ptr<const Tree>;
  struct Tree {
    std::variant<T, std::pair<TreePtr, TreePtr>> node;
  };

  struct Level;
  using LevelPtr = std::shared_ptr<const Level>;
  struct Level {
    TreePtr first;
    TreePtr second;  // null for the one-tree constructor
    LevelPtr rest;
  };

 public:
  ExpList() = default;

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  ExpList cons(T x) const {
    ExpList out;
    out.head_ = push(std::make_shared<const Tree>(Tree{std::move(x)}), head_);
    out.size_ = size_ + 1;
    return out;
  }

  Expected<T> index(std::size_t i) const {
    if (i >= size_) return Errc::IndexOutOfRange;
    const Level* level = head_.get();
    unsigned depth = 0;
    while (level != nullptr) {
      const std::size_t width = std::size_t{1} << depth;
      if (i < width) return leaf(*level->first, i, depth);
      i -= width;
      if (level->second) {
        if (i < width) return leaf(*level->second, i, depth);
        i -= width;
      }
      level = level->rest.get();
      ++depth;
    }
    return Errc::IndexOutOfRange;
  }

  /// Visits elements in index order until `f` returns false. Returns whether
  /// every element was visited.
  template <class F>
  bool for_each_until(F&& f) const {
    for (const Level* level = head_.get(); level != nullptr; level = level->rest.get()) {
      if (!visit(*level->first, f)) return false;
      if (level->second && !visit(*level->second, f)) return false;
    }
    return true;
  }

 private:
  static LevelPtr push(TreePtr t, const LevelPtr& level) {
    if (!level) return std::make_shared<const Level>(Level{std::move(t), nullptr, nullptr});
    if (!level->second) return std::make_shared<const Level>(Level{std::move(t), level->first, level->rest});
    auto pair = std::make_shared<const Tree>(Tree{std::pair{level->first, level->second}});
    return std::make_shared<const Level>(Level{std::move(t), nullptr, push(std::move(pair), level->rest)});
  }

  static const T& leaf(const Tree& root, std::size_t i, unsigned depth) {
    const Tree* t = &root;
    while (depth > 0) {
      const auto& [left, right] = std::get<1>(t->node);
      const std::size_t half = std::size_t{1} << (depth - 1);
      if (i < half) {
        t = left.get();
      } else {
        t = right.get();
        i -= half;
      }
      --depth;
    }
    return std::get<0>(t->node);
  }

  template <class F>
  static bool visit(const Tree& t, F& f) {
    if (t.node.index() == 0) return static_cast<bool>(f(std::get<0>(t.node)));
    const auto& [left, right] = std::get<1>(t.node);
    return visit(*left, f) && visit(*right, f);
  }

  LevelPtr head_;
  std::size_t size_ = 0;
};

}  // namespace flate
