#include "irk/group.hpp"

#include <algorithm>
#include <numeric>

#include "irk/error.hpp"

namespace irk {

Group Group::generate(std::vector<Perm> gens, unsigned degree) {
  if (degree > kDefaultDegreeCap * 2)
    fail(ErrorCode::cap_exceeded, "degree exceeds engine cap");
  for (const auto& g : gens)
    if (g.degree() != degree)
      fail(ErrorCode::usage, "generator degree mismatch");
  Group g;
  g.degree_ = degree;
  g.gens_ = std::move(gens);
  g.chain_ = std::make_shared<StabilizerChain>(
      StabilizerChain::build(degree, g.gens_));
  return g;
}

bool Group::member(const Perm& p) const {
  if (p.degree() != degree_) return false;
  return chain_->contains(p);
}

const BigInt& Group::order() const {
  if (!order_) order_ = chain_->order();
  return *order_;
}

std::vector<std::vector<Point>> Group::orbits() const {
  std::vector<int> owner(degree_, -1);
  std::vector<std::vector<Point>> out;
  for (unsigned start = 0; start < degree_; ++start) {
    if (owner[start] >= 0) continue;
    int id = static_cast<int>(out.size());
    std::vector<Point> orb{start};
    owner[start] = id;
    for (std::size_t head = 0; head < orb.size(); ++head) {
      for (const auto& g : gens_) {
        Point y = g(orb[head]);
        if (owner[y] < 0) {
          owner[y] = id;
          orb.push_back(y);
        }
      }
    }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

std::vector<Point> Group::orbit_of(Point x) const {
  std::vector<bool> seen(degree_, false);
  std::vector<Point> orb{x};
  seen[x] = true;
  for (std::size_t head = 0; head < orb.size(); ++head)
    for (const auto& g : gens_) {
      Point y = g(orb[head]);
      if (!seen[y]) {
        seen[y] = true;
        orb.push_back(y);
      }
    }
  std::sort(orb.begin(), orb.end());
  return orb;
}

bool Group::is_transitive() const {
  if (degree_ == 0) return true;
  return orbit_of(0).size() == degree_;
}

bool Group::contains_group(const Group& other) const {
  for (const auto& g : other.generators())
    if (!member(g)) return false;
  return true;
}

bool Group::same_group(const Group& other) const {
  return degree_ == other.degree_ && contains_group(other) &&
         other.contains_group(*this);
}

bool is_block_system(const Group& g, const BlockSystem& bs) {
  if (bs.blocks.empty()) return false;
  std::vector<int> block_of(g.degree(), -1);
  std::size_t cell = bs.blocks.front().size();
  std::size_t covered = 0;
  for (std::size_t b = 0; b < bs.blocks.size(); ++b) {
    if (bs.blocks[b].size() != cell) return false;
    for (Point x : bs.blocks[b]) {
      if (x >= g.degree() || block_of[x] >= 0) return false;
      block_of[x] = static_cast<int>(b);
      ++covered;
    }
  }
  if (covered != g.degree()) return false;
  for (const auto& gen : g.generators()) {
    for (const auto& blk : bs.blocks) {
      int target = block_of[gen(blk[0])];
      for (Point x : blk)
        if (block_of[gen(x)] != target) return false;
    }
  }
  return true;
}

std::optional<BlockSystem> minimal_blocks(const Group& g, Point a, Point b) {
  if (!g.is_transitive())
    fail(ErrorCode::precondition, "minimal_blocks requires a transitive group");
  // Atkinson's algorithm: union-find refinement of the seed identification.
  std::vector<Point> parent(g.degree());
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](Point x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  // unite returns the absorbed class root (the larger one), or -1 if no-op
  auto unite = [&](Point x, Point y) -> int {
    x = find(x);
    y = find(y);
    if (x == y) return -1;
    if (x < y) std::swap(x, y);
    parent[x] = y;
    return static_cast<int>(x);
  };
  std::vector<Point> queue;
  if (int m = unite(a, b); m >= 0) queue.push_back(static_cast<Point>(m));
  while (!queue.empty()) {
    Point x = queue.back();
    queue.pop_back();
    Point rx = find(x);
    for (const auto& gen : g.generators()) {
      if (int m = unite(gen(x), gen(rx)); m >= 0)
        queue.push_back(static_cast<Point>(m));
    }
  }
  std::vector<std::vector<Point>> cells(g.degree());
  for (unsigned x = 0; x < g.degree(); ++x) cells[find(x)].push_back(x);
  BlockSystem bs;
  for (auto& c : cells)
    if (!c.empty()) bs.blocks.push_back(std::move(c));
  if (bs.blocks.size() <= 1) return std::nullopt;
  return bs;
}

bool is_two_transitive(const Group& g) {
  unsigned n = g.degree();
  if (n < 2) return false;
  // orbit of the ordered pair (0, 1) must cover all n(n-1) pairs
  std::vector<bool> seen(n * n, false);
  std::vector<std::pair<Point, Point>> stack{{0, 1}};
  seen[0 * n + 1] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    auto [x, y] = stack.back();
    stack.pop_back();
    for (const auto& gen : g.generators()) {
      Point u = gen(x), v = gen(y);
      if (!seen[u * n + v]) {
        seen[u * n + v] = true;
        ++count;
        stack.emplace_back(u, v);
      }
    }
  }
  return count == static_cast<std::size_t>(n) * (n - 1);
}

unsigned lambda_of(const Group& g) {
  unsigned total = 0;
  for (const auto& [p, e] : factorize(g.order())) total += e;
  return total;
}

}  // namespace irk
