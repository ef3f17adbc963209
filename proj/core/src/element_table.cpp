#include "irk/element_table.hpp"

#include <algorithm>
#include <bit>
#include <cstring>

#include "irk/error.hpp"

namespace irk {

std::size_t Bitset::count() const {
  std::size_t c = 0;
  for (auto w : w_) c += std::popcount(w);
  return c;
}

std::size_t Bitset::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (auto w : w_) {
    h ^= w;
    h *= 1099511628211ull;
  }
  return h;
}

Bitset& Bitset::operator&=(const Bitset& o) {
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
  return *this;
}

long Bitset::first_set(std::size_t from) const {
  if (from >= n_) return -1;
  std::size_t wi = from >> 6;
  std::uint64_t w = w_[wi] & (~std::uint64_t{0} << (from & 63));
  while (true) {
    if (w) {
      std::size_t i = (wi << 6) + std::countr_zero(w);
      return i < n_ ? static_cast<long>(i) : -1;
    }
    if (++wi >= w_.size()) return -1;
    w = w_[wi];
  }
}

std::size_t ElementTable::hash_images(const std::uint8_t* img) const {
  std::size_t h = 1469598103934665603ull;
  for (unsigned i = 0; i < degree_; ++i) {
    h ^= img[i];
    h *= 1099511628211ull;
  }
  return h;
}

ElementTable ElementTable::build(const Group& g, std::size_t order_cap) {
  if (g.order() > order_cap)
    fail(ErrorCode::cap_exceeded,
         "group order " + g.order().str() + " exceeds enumeration cap " +
             std::to_string(order_cap));
  ElementTable t;
  t.group_ = g;
  t.degree_ = g.degree();
  std::size_t n = static_cast<std::size_t>(g.order());
  t.size_ = n;

  // breadth-first closure, then lexicographic reindexing
  std::vector<std::vector<std::uint8_t>> elems;
  elems.reserve(n);
  elems.push_back(Perm::identity(t.degree_).images());
  {
    std::vector<std::vector<std::uint8_t>> sorted_probe;
    std::size_t buckets = 1;
    while (buckets < 2 * n) buckets <<= 1;
    std::vector<long> idx(buckets, -1);
    auto insert = [&](const std::vector<std::uint8_t>& img) -> bool {
      std::size_t h = t.hash_images(img.data()) & (buckets - 1);
      while (idx[h] >= 0) {
        if (elems[idx[h]] == img) return false;
        h = (h + 1) & (buckets - 1);
      }
      idx[h] = static_cast<long>(elems.size());
      elems.push_back(img);
      return true;
    };
    insert(elems[0]);  // seeds the index with the identity
    for (std::size_t head = 0; head < elems.size(); ++head) {
      for (const auto& gen : g.generators()) {
        std::vector<std::uint8_t> prod(t.degree_);
        for (unsigned x = 0; x < t.degree_; ++x) prod[x] = gen(elems[head][x]);
        insert(prod);
      }
    }
  }
  if (elems.size() != n) fail(ErrorCode::internal, "closure size != chain order");
  std::sort(elems.begin(), elems.end());

  t.flat_.resize(n * t.degree_);
  for (std::size_t i = 0; i < n; ++i)
    std::memcpy(&t.flat_[i * t.degree_], elems[i].data(), t.degree_);

  // index for find/mul_slow
  std::size_t buckets = 1;
  while (buckets < 2 * n) buckets <<= 1;
  t.mask_ = buckets - 1;
  t.slots_.assign(buckets, UINT32_MAX);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t h = t.hash_images(&t.flat_[i * t.degree_]) & t.mask_;
    while (t.slots_[h] != UINT32_MAX) h = (h + 1) & t.mask_;
    t.slots_[h] = static_cast<std::uint32_t>(i);
  }

  t.even_ = Bitset(n);
  for (std::size_t i = 0; i < n; ++i)
    if (parity(t.perm(static_cast<std::uint32_t>(i))) == Parity::even)
      t.even_.set(i);

  t.inv_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Perm p = t.perm(static_cast<std::uint32_t>(i)).inverse();
    t.inv_[i] = static_cast<std::uint32_t>(t.find(p));
  }

  if (n <= kMultTableCap) {
    t.mult_.resize(n * n);
    std::vector<std::uint8_t> prod(t.degree_);
    for (std::size_t a = 0; a < n; ++a) {
      const std::uint8_t* pa = &t.flat_[a * t.degree_];
      for (std::size_t b = 0; b < n; ++b) {
        const std::uint8_t* pb = &t.flat_[b * t.degree_];
        for (unsigned x = 0; x < t.degree_; ++x) prod[x] = pa[pb[x]];
        long id = t.find_raw(prod.data());
        t.mult_[a * n + b] = static_cast<std::uint16_t>(id);
      }
    }
  }
  return t;
}

long ElementTable::find(const Perm& p) const {
  if (p.degree() != degree_) return -1;
  return find_raw(p.images().data());
}

long ElementTable::find_raw(const std::uint8_t* img) const {
  std::size_t h = hash_images(img) & mask_;
  while (slots_[h] != UINT32_MAX) {
    std::uint32_t id = slots_[h];
    if (std::memcmp(&flat_[id * degree_], img, degree_) == 0) return id;
    h = (h + 1) & mask_;
  }
  return -1;
}

Perm ElementTable::perm(std::uint32_t idx) const {
  std::vector<std::uint8_t> img(flat_.begin() + idx * degree_,
                                flat_.begin() + (idx + 1) * degree_);
  return Perm::from_images(std::move(img));
}

std::uint32_t ElementTable::mul_slow(std::uint32_t a, std::uint32_t b) const {
  const std::uint8_t* pa = &flat_[a * degree_];
  const std::uint8_t* pb = &flat_[b * degree_];
  std::uint8_t prod[256];
  for (unsigned x = 0; x < degree_; ++x) prod[x] = pa[pb[x]];
  return static_cast<std::uint32_t>(find_raw(prod));
}

ElementTable::Closure ElementTable::closure(
    const std::vector<std::uint32_t>& gens) const {
  Closure out;
  Bitset seen(size_);
  std::vector<std::uint32_t> list{identity_index()};
  seen.set(identity_index());
  std::size_t half = size_ / 2;
  for (std::size_t head = 0; head < list.size(); ++head) {
    for (auto g : gens) {
      std::uint32_t y = mul(list[head], g);
      if (!seen.test(y)) {
        seen.set(y);
        list.push_back(y);
        if (list.size() > half) {  // index < 2 forces the whole group
          out.full = true;
          return out;
        }
      }
    }
  }
  std::sort(list.begin(), list.end());
  out.members = std::move(list);
  return out;
}

}  // namespace irk
