#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace starcut {

/// Subset of the vertex universe {0, ..., n-1}, packed into 64-bit words.
/// Used both for cuts (S vs V\S) and for pulse flip configurations.
class VertexSet {
 public:
  VertexSet() = default;

  explicit VertexSet(int universe) : n_(universe), words_((universe + 63) / 64, 0) {
    if (universe < 0) throw std::invalid_argument("VertexSet: negative universe");
  }

  static VertexSet of(int universe, std::initializer_list<int> members) {
    VertexSet s(universe);
    for (int v : members) s.set(v);
    return s;
  }

  static VertexSet from_mask(int universe, std::uint64_t mask) {
    VertexSet s(universe);
    if (universe > 0) s.words_[0] = mask;
    s.trim();
    return s;
  }

  int universe_size() const { return n_; }

  bool test(int v) const {
    check(v);
    return (words_[v >> 6] >> (v & 63)) & 1u;
  }

  void set(int v, bool value = true) {
    check(v);
    std::uint64_t bit = std::uint64_t{1} << (v & 63);
    if (value)
      words_[v >> 6] |= bit;
    else
      words_[v >> 6] &= ~bit;
  }

  void flip(int v) {
    check(v);
    words_[v >> 6] ^= std::uint64_t{1} << (v & 63);
  }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  VertexSet complement() const {
    VertexSet s(n_);
    for (std::size_t i = 0; i < words_.size(); ++i) s.words_[i] = ~words_[i];
    s.trim();
    return s;
  }

  /// Number of vertices whose membership differs (cost of moving between
  /// flip configurations with single-qubit X operations).
  int hamming_distance(const VertexSet& other) const {
    if (other.n_ != n_) throw std::invalid_argument("VertexSet: universe mismatch");
    int d = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      d += std::popcount(words_[i] ^ other.words_[i]);
    return d;
  }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(count());
    for (int v = 0; v < n_; ++v)
      if (test(v)) out.push_back(v);
    return out;
  }

  /// Low word of the packed representation; only meaningful for n <= 64.
  std::uint64_t mask64() const { return words_.empty() ? 0 : words_[0]; }

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

 private:
  void check(int v) const {
    if (v < 0 || v >= n_) throw std::out_of_range("VertexSet: vertex out of range");
  }
  void trim() {
    if (n_ % 64 != 0 && !words_.empty())
      words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }

  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace starcut
