#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "irk/bigint.hpp"
#include "irk/chain.hpp"
#include "irk/perm.hpp"

namespace irk {

inline constexpr unsigned kDefaultDegreeCap = 128;

class Group {
 public:
  Group() = default;

  static Group generate(std::vector<Perm> gens, unsigned degree);

  unsigned degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  const StabilizerChain& chain() const { return *chain_; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  bool member(const Perm& p) const;
  const BigInt& order() const;
  bool is_trivial() const { return order() == 1; }

  // Orbit partition on points, each orbit sorted, orbits sorted by minimum.
  std::vector<std::vector<Point>> orbits() const;
  bool is_transitive() const;
  std::vector<Point> orbit_of(Point x) const;

  bool same_group(const Group& other) const;  // mutual generator membership
  bool contains_group(const Group& other) const;

 private:
  unsigned degree_ = 0;
  std::vector<Perm> gens_;
  std::shared_ptr<const StabilizerChain> chain_;
  std::string name_;
  mutable std::optional<BigInt> order_;
};

struct BlockSystem {
  std::vector<std::vector<Point>> blocks;  // equal-size cells, sorted
};

// Every generator maps blocks onto blocks.
bool is_block_system(const Group& g, const BlockSystem& bs);
// Minimal block system containing {a,b}; nullopt if it is the whole point set
// (i.e. no proper system through that pair). Group must be transitive.
std::optional<BlockSystem> minimal_blocks(const Group& g, Point a, Point b);

// Transitive on ordered pairs of distinct points.
bool is_two_transitive(const Group& g);

// λ(G): number of prime factors of |G| with multiplicity.
unsigned lambda_of(const Group& g);

// Prime factorization of a positive big integer (trial division to 10^6,
// then Pollard rho). Returns (prime, exponent) pairs, primes increasing.
std::vector<std::pair<BigInt, unsigned>> factorize(const BigInt& n);

}  // namespace irk
