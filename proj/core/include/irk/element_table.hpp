#pragma once

#include <cstdint>
#include <vector>

#include "irk/group.hpp"
#include "irk/perm.hpp"

namespace irk {

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(std::size_t i) const {
    return (w_[i >> 6] >> (i & 63)) & 1;
  }
  std::size_t size() const { return n_; }
  std::size_t count() const;
  std::size_t hash() const;
  bool operator==(const Bitset&) const = default;

  Bitset& operator&=(const Bitset& o);
  // Index of the first set bit at position >= from, or -1.
  long first_set(std::size_t from = 0) const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

// Enumerated element list of a small group with O(1) multiplication.
// Elements are indexed by lexicographic rank of their image sequence, so
// index order is the global element order used by all searches; index 0 is
// always the identity.
class ElementTable {
 public:
  static constexpr std::size_t kOrderCap = 25000;      // enumeration cap
  static constexpr std::size_t kMultTableCap = 4200;   // dense table cap

  static ElementTable build(const Group& g, std::size_t order_cap = kOrderCap);

  std::size_t size() const { return size_; }
  unsigned degree() const { return degree_; }
  const Group& group() const { return group_; }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (!mult_.empty()) return mult_[a * size_ + b];
    return mul_slow(a, b);
  }
  std::uint32_t inv(std::uint32_t a) const { return inv_[a]; }
  std::uint32_t identity_index() const { return 0; }

  long find(const Perm& p) const;  // -1 if not in the group
  Perm perm(std::uint32_t idx) const;
  bool is_even(std::uint32_t idx) const { return even_.test(idx); }

  // Closure of ⟨gens⟩ as sorted element indices. If the closure is
  // provably the full group (index < 2), `full` is set and members may be
  // left empty.
  struct Closure {
    bool full = false;
    std::vector<std::uint32_t> members;
  };
  Closure closure(const std::vector<std::uint32_t>& gens) const;

 private:
  std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const;
  long find_raw(const std::uint8_t* img) const;

  Group group_;
  unsigned degree_ = 0;
  std::size_t size_ = 0;
  std::vector<std::uint8_t> flat_;       // size_ * degree_ images
  std::vector<std::uint16_t> mult_;      // dense table when small enough
  std::vector<std::uint32_t> inv_;
  Bitset even_;
  // open-addressing index: (hash, id) with power-of-two bucket count
  std::vector<std::uint32_t> slots_;
  std::size_t mask_ = 0;
  std::size_t hash_images(const std::uint8_t* img) const;
};

}  // namespace irk
