#include "irk/chain.hpp"

#include "irk/error.hpp"

namespace irk {

StabilizerChain StabilizerChain::build(unsigned degree,
                                       const std::vector<Perm>& gens) {
  StabilizerChain c;
  c.degree_ = degree;
  for (const auto& g : gens) {
    if (g.degree() != degree) fail(ErrorCode::usage, "generator degree mismatch");
    c.insert(g, 0);
  }
  return c;
}

Perm StabilizerChain::sift(const Perm& p) const {
  Perm r = p;
  for (const auto& lvl : levels_) {
    Point x = r(lvl.base);
    if (x == lvl.base) continue;
    int pos = lvl.orbit_pos[x];
    if (pos < 0) return r;  // stuck: not a member
    r = compose(lvl.transversal[pos].inverse(), r);
  }
  return r;
}

bool StabilizerChain::contains(const Perm& p) const {
  if (p.degree() != degree_) return false;
  return sift(p).is_identity();
}

BigInt StabilizerChain::order() const {
  BigInt o = 1;
  for (const auto& lvl : levels_) o *= static_cast<unsigned>(lvl.orbit.size());
  return o;
}

void StabilizerChain::insert(const Perm& g, std::size_t from_level) {
  if (g.is_identity()) return;
  Perm r = g;
  std::size_t li = from_level;
  for (; li < levels_.size(); ++li) {
    const auto& lvl = levels_[li];
    Point x = r(lvl.base);
    if (x == lvl.base) continue;
    int pos = lvl.orbit_pos[x];
    if (pos < 0) break;  // extends this level's orbit
    r = compose(lvl.transversal[pos].inverse(), r);
    if (r.is_identity()) return;
  }
  if (li == levels_.size()) {
    // residue fixes all existing bases: open a new level at its least moved point
    Point b = 0;
    while (r(b) == b) ++b;
    Level lvl;
    lvl.base = b;
    lvl.orbit = {b};
    lvl.orbit_pos.assign(degree_, -1);
    lvl.orbit_pos[b] = 0;
    lvl.transversal = {Perm::identity(degree_)};
    levels_.push_back(std::move(lvl));
  }
  levels_[li].gens.push_back(r);
  close_level(li);
}

void StabilizerChain::close_level(std::size_t li) {
  // Re-extend the orbit with the updated generator set and push every
  // Schreier generator down the chain. Points are processed in discovery
  // order and generators in addition order, so the result is deterministic.
  // levels_ may reallocate during the recursive insert; index, don't alias.
  std::size_t head = 0;
  while (head < levels_[li].orbit.size()) {
    for (std::size_t gi = 0; gi < levels_[li].gens.size(); ++gi) {
      const Perm g = levels_[li].gens[gi];
      const Perm tx = levels_[li].transversal[head];
      Point y = g(levels_[li].orbit[head]);
      int pos = levels_[li].orbit_pos[y];
      if (pos < 0) {
        auto& lvl = levels_[li];
        lvl.orbit.push_back(y);
        lvl.orbit_pos[y] = static_cast<int>(lvl.orbit.size()) - 1;
        lvl.transversal.push_back(compose(g, tx));
      } else {
        Perm schreier =
            compose(levels_[li].transversal[pos].inverse(), compose(g, tx));
        if (!schreier.is_identity()) insert(schreier, li + 1);
      }
    }
    ++head;
  }
}

}  // namespace irk
