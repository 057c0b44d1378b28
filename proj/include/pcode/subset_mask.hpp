#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace pcode {

/// Fixed-width bitset over the elements {0, ..., n-1} of a parent group.
/// All set operations used by the search and the deciders are word-parallel.
class SubsetMask {
public:
  SubsetMask() = default;

  explicit SubsetMask(int universe) : n_(universe), words_((universe + 63) / 64, 0) {}

  static SubsetMask single(int universe, int bit) {
    SubsetMask m(universe);
    m.set(bit);
    return m;
  }

  static SubsetMask full(int universe) {
    SubsetMask m(universe);
    for (int w = 0; w < static_cast<int>(m.words_.size()); ++w) m.words_[w] = ~0ULL;
    m.trim();
    return m;
  }

  int universe_size() const { return n_; }

  bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1ULL; }
  void set(int i) { words_[i >> 6] |= 1ULL << (i & 63); }
  void reset(int i) { words_[i >> 6] &= ~(1ULL << (i & 63)); }

  int count() const {
    int c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
  }

  bool any() const {
    for (std::uint64_t w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  /// Least set bit, or -1 when empty.
  int first() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w]) return static_cast<int>(w * 64 + std::countr_zero(words_[w]));
    return -1;
  }

  /// Visits set bits in ascending order.
  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        f(static_cast<int>(w * 64 + std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  std::vector<int> to_vector() const {
    std::vector<int> v;
    v.reserve(count());
    for_each([&](int i) { v.push_back(i); });
    return v;
  }

  bool is_subset_of(const SubsetMask& other) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & ~other.words_[w]) return false;
    return true;
  }

  bool intersects(const SubsetMask& other) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & other.words_[w]) return true;
    return false;
  }

  SubsetMask& operator|=(const SubsetMask& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    return *this;
  }
  SubsetMask& operator&=(const SubsetMask& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
    return *this;
  }

  friend SubsetMask operator|(SubsetMask a, const SubsetMask& b) { return a |= b; }
  friend SubsetMask operator&(SubsetMask a, const SubsetMask& b) { return a &= b; }

  SubsetMask complement() const {
    SubsetMask m(n_);
    for (std::size_t w = 0; w < words_.size(); ++w) m.words_[w] = ~words_[w];
    m.trim();
    return m;
  }

  SubsetMask minus(const SubsetMask& o) const {
    SubsetMask m(n_);
    for (std::size_t w = 0; w < words_.size(); ++w) m.words_[w] = words_[w] & ~o.words_[w];
    return m;
  }

  bool operator==(const SubsetMask& o) const { return n_ == o.n_ && words_ == o.words_; }
  bool operator!=(const SubsetMask& o) const { return !(*this == o); }

  /// Lexicographic order on the word vector; a deterministic total order.
  bool operator<(const SubsetMask& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    for (std::size_t w = words_.size(); w-- > 0;)
      if (words_[w] != o.words_[w]) return words_[w] < o.words_[w];
    return false;
  }

  std::size_t hash() const {
    std::size_t h = std::hash<int>{}(n_);
    for (std::uint64_t w : words_) h = h * 1099511628211ULL ^ std::hash<std::uint64_t>{}(w);
    return h;
  }

  /// Hex rendering of the bit integer, e.g. {0,2} -> "0x5".
  std::string to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s;
    bool started = false;
    for (std::size_t w = words_.size(); w-- > 0;) {
      for (int shift = 60; shift >= 0; shift -= 4) {
        int d = static_cast<int>((words_[w] >> shift) & 0xF);
        if (d != 0 && !started) started = true;
        if (started) s.push_back(digits[d]);
      }
    }
    if (!started) s = "0";
    return "0x" + s;
  }

private:
  void trim() {
    int used = n_ & 63;
    if (used && !words_.empty()) words_.back() &= (1ULL << used) - 1;
  }

  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct SubsetMaskHash {
  std::size_t operator()(const SubsetMask& m) const { return m.hash(); }
};

}  // namespace pcode
