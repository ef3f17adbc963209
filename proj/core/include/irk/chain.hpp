#pragma once

#include <vector>

#include "irk/bigint.hpp"
#include "irk/perm.hpp"

namespace irk {

// Deterministic (non-randomized) Schreier–Sims with base points taken in
// increasing order. Reproducible for a fixed generator order.
class StabilizerChain {
 public:
  struct Level {
    Point base = 0;
    std::vector<Perm> gens;          // strong generators fixing earlier bases
    std::vector<Point> orbit;        // discovery order, orbit[0] == base
    std::vector<int> orbit_pos;      // point -> index into orbit, or -1
    std::vector<Perm> transversal;   // transversal[i] maps base -> orbit[i]
  };

  static StabilizerChain build(unsigned degree, const std::vector<Perm>& gens);

  unsigned degree() const { return degree_; }
  bool contains(const Perm& p) const;
  BigInt order() const;
  const std::vector<Level>& levels() const { return levels_; }

  // Residue after stripping p through the chain; identity iff member.
  Perm sift(const Perm& p) const;

 private:
  void insert(const Perm& g, std::size_t from_level);
  void close_level(std::size_t li);

  unsigned degree_ = 0;
  std::vector<Level> levels_;
};

}  // namespace irk
