#pragma once

#include <cstdint>
#include <vector>

namespace cambrian {

// Fixed-capacity dynamic bitset. std::bitset needs a compile-time size and
// boost is not a dependency here, so this covers the handful of operations
// the lattice and inversion-set code needs.
class Bits {
public:
  Bits() = default;
  explicit Bits(int n) : n_(n), w_((n + 63) / 64, 0) {}

  int size() const { return n_; }

  void set(int i) { w_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void reset(int i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

  bool any() const {
    for (auto w : w_)
      if (w) return true;
    return false;
  }

  int count() const {
    int c = 0;
    for (auto w : w_) c += __builtin_popcountll(w);
    return c;
  }

  // true iff other is a subset of *this
  bool contains(const Bits& other) const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (other.w_[k] & ~w_[k]) return false;
    return true;
  }

  Bits& operator|=(const Bits& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
    return *this;
  }
  Bits& operator&=(const Bits& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
    return *this;
  }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }

  bool operator==(const Bits& o) const { return n_ == o.n_ && w_ == o.w_; }

  std::vector<int> members() const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

private:
  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace cambrian
