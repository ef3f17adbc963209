#pragma once

#include <cstdint>

namespace irk {

// Counter-based generator: output depends only on (seed, stream, counter),
// so split streams are reproducible independent of consumption order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream) {}

  std::uint64_t next() { return mix(seed_, stream_, counter_++); }

  // uniform in [0, bound), bound > 0
  std::uint64_t below(std::uint64_t bound) {
    // rejection sampling to avoid modulo bias
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  Rng split(std::uint64_t child) const {
    return Rng(mix(seed_, stream_, 0x9e3779b97f4a7c15ull ^ child), child);
  }

 private:
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    std::uint64_t z = a ^ (b * 0xbf58476d1ce4e5b9ull) ^ (c * 0x94d049bb133111ebull);
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace irk
