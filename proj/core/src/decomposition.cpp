#include "irk/decomposition.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "irk/bounds.hpp"
#include "irk/error.hpp"

namespace irk {

void OrderedPartition::validate() const {
  if (blocks.empty()) fail(ErrorCode::usage, "partition needs m >= 1 blocks");
  std::vector<bool> seen(n, false);
  auto take = [&](Point x) {
    if (x >= n) fail(ErrorCode::usage, "partition point out of range");
    if (seen[x]) fail(ErrorCode::usage, "partition blocks are not disjoint");
    seen[x] = true;
  };
  for (Point x : x0) take(x);
  for (const auto& b : blocks) {
    if (b.empty()) fail(ErrorCode::usage, "partition block X_i must be nonempty");
    for (Point x : b) take(x);
  }
  for (unsigned x = 0; x < n; ++x)
    if (!seen[x]) fail(ErrorCode::usage, "partition does not cover {1..n}");
}

std::vector<unsigned> OrderedPartition::block_index() const {
  std::vector<unsigned> idx(n, 0);
  for (unsigned b = 0; b < blocks.size(); ++b)
    for (Point x : blocks[b]) idx[x] = b + 1;
  return idx;
}

OrderedPartition OrderedPartition::parse(const std::string& text) {
  OrderedPartition p;
  std::vector<std::pair<unsigned, std::vector<Point>>> parts;
  std::stringstream ss(text);
  std::string seg;
  unsigned maxpt = 0;
  while (std::getline(ss, seg, '|')) {
    auto colon = seg.find(':');
    if (colon == std::string::npos)
      fail(ErrorCode::usage, "partition segment needs 'idx:'");
    unsigned label = std::stoul(seg.substr(0, colon));
    std::vector<Point> pts;
    std::stringstream ps(seg.substr(colon + 1));
    std::string tok;
    while (std::getline(ps, tok, ',')) {
      if (tok.empty()) continue;
      unsigned v = std::stoul(tok);
      if (v == 0) fail(ErrorCode::usage, "points are 1-based");
      pts.push_back(v - 1);
      maxpt = std::max(maxpt, v);
    }
    parts.emplace_back(label, std::move(pts));
  }
  unsigned next = 0;
  for (auto& [label, pts] : parts) {
    if (label == 0 && next == 0) {
      p.x0 = pts;
    } else {
      if (label != (p.blocks.size() + 1))
        fail(ErrorCode::usage, "block labels must be 0,1,2,... in order");
      p.blocks.push_back(pts);
    }
    next = label + 1;
  }
  p.n = maxpt;
  p.validate();
  return p;
}

std::string OrderedPartition::str() const {
  std::ostringstream os;
  os << "0:";
  for (std::size_t i = 0; i < x0.size(); ++i) os << (i ? "," : "") << x0[i] + 1;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    os << '|' << b + 1 << ':';
    for (std::size_t i = 0; i < blocks[b].size(); ++i)
      os << (i ? "," : "") << blocks[b][i] + 1;
  }
  return os.str();
}

bool partition_less(const OrderedPartition& p, const OrderedPartition& q) {
  if (p.n != q.n) fail(ErrorCode::usage, "partition degree mismatch");
  auto sorted = [](std::vector<Point> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  // clause 1: one point moved out of X_0 into some block
  if (q.blocks.size() == p.blocks.size() && p.x0.size() == q.x0.size() + 1) {
    auto px0 = sorted(p.x0), qx0 = sorted(q.x0);
    if (std::includes(px0.begin(), px0.end(), qx0.begin(), qx0.end())) {
      std::vector<Point> diff;
      std::set_difference(px0.begin(), px0.end(), qx0.begin(), qx0.end(),
                          std::back_inserter(diff));
      if (diff.size() == 1) {
        Point moved = diff[0];
        int mismatch = -1;
        for (std::size_t i = 0; i < p.blocks.size(); ++i) {
          if (sorted(p.blocks[i]) == sorted(q.blocks[i])) continue;
          if (mismatch >= 0) return false;
          mismatch = static_cast<int>(i);
          auto with = sorted(p.blocks[i]);
          with.push_back(moved);
          std::sort(with.begin(), with.end());
          if (with != sorted(q.blocks[i])) return false;
        }
        if (mismatch >= 0) return true;
      }
    }
  }
  // clause 2: two adjacent blocks merged
  if (q.blocks.size() + 1 == p.blocks.size() && sorted(p.x0) == sorted(q.x0)) {
    for (std::size_t i0 = 0; i0 < q.blocks.size(); ++i0) {
      bool ok = true;
      for (std::size_t i = 0; i < i0 && ok; ++i)
        ok = sorted(p.blocks[i]) == sorted(q.blocks[i]);
      if (!ok) continue;
      auto merged = p.blocks[i0];
      merged.insert(merged.end(), p.blocks[i0 + 1].begin(),
                    p.blocks[i0 + 1].end());
      if (sorted(merged) != sorted(q.blocks[i0])) continue;
      for (std::size_t i = i0 + 1; i < q.blocks.size() && ok; ++i)
        ok = sorted(p.blocks[i + 1]) == sorted(q.blocks[i]);
      if (ok) return true;
    }
  }
  return false;
}

namespace {

Perm cycle_perm(unsigned degree, const std::vector<Point>& cyc) {
  return Perm::from_cycles(degree, {cyc});
}

Perm transposition(unsigned degree, Point a, Point b) {
  return Perm::from_cycles(degree, {{a, b}});
}

}  // namespace

MDecomposition m_decompose(const Perm& h, const OrderedPartition& p) {
  if (h.degree() != p.n) fail(ErrorCode::usage, "degree mismatch");
  p.validate();
  const auto bidx = p.block_index();
  const unsigned degree = p.n;

  auto cd = cycle_decomposition(h);
  std::vector<std::vector<Point>> alpha_cycles, beta0_cycles, cross;
  for (auto& cyc : cd.cycles) {
    std::set<unsigned> touched;
    for (Point x : cyc) touched.insert(bidx[x]);
    if (touched.size() == 1) {
      if (*touched.begin() == 0)
        beta0_cycles.push_back(cyc);
      else
        alpha_cycles.push_back(cyc);
    } else {
      cross.push_back(cyc);
    }
  }

  // classes of cross cycles: cycles sharing a positive block merge
  std::vector<int> cls(cross.size(), -1);
  std::map<unsigned, int> block_owner;  // positive block -> class id
  int nclasses = 0;
  std::vector<int> remap;
  for (std::size_t c = 0; c < cross.size(); ++c) {
    int mine = -1;
    std::set<unsigned> pos;
    for (Point x : cross[c])
      if (bidx[x] > 0) pos.insert(bidx[x]);
    for (unsigned b : pos) {
      auto it = block_owner.find(b);
      if (it == block_owner.end()) continue;
      int root = it->second;
      while (remap[root] != root) root = remap[root];
      if (mine < 0)
        mine = root;
      else if (root != mine)
        remap[root] = mine;  // merge classes
    }
    if (mine < 0) {
      mine = nclasses++;
      remap.push_back(mine);
    }
    cls[c] = mine;
    for (unsigned b : pos) block_owner[b] = mine;
  }
  auto root_of = [&](int c) {
    while (remap[c] != c) c = remap[c];
    return c;
  };
  std::map<int, std::vector<std::size_t>> classes;  // root -> cycle indices
  for (std::size_t c = 0; c < cross.size(); ++c)
    classes[root_of(cls[c])].push_back(c);

  MDecomposition out;
  std::vector<Perm> alpha_parts;
  for (const auto& cyc : alpha_cycles) alpha_parts.push_back(cycle_perm(degree, cyc));

  std::vector<std::pair<std::vector<Point>, std::vector<Perm>>> merged_classes;
  for (auto& [root, idxs] : classes) {
    std::vector<Point> merged = cross[idxs[0]];
    std::vector<bool> done(idxs.size(), false);
    done[0] = true;
    std::vector<Perm> taus;
    for (std::size_t step = 1; step < idxs.size(); ++step) {
      // next cycle sharing a positive block with the merged cycle
      std::size_t pick = idxs.size();
      unsigned best_block = UINT32_MAX;
      std::vector<unsigned> merged_blocks(p.blocks.size() + 1, UINT32_MAX);
      std::vector<Point> merged_min(p.blocks.size() + 1, UINT32_MAX);
      for (Point x : merged)
        if (bidx[x] > 0) merged_min[bidx[x]] = std::min(merged_min[bidx[x]], x);
      for (std::size_t t = 0; t < idxs.size(); ++t) {
        if (done[t]) continue;
        for (Point x : cross[idxs[t]]) {
          unsigned b = bidx[x];
          if (b > 0 && merged_min[b] != UINT32_MAX && b < best_block) {
            best_block = b;
            pick = t;
          }
        }
      }
      if (pick == idxs.size())
        fail(ErrorCode::internal, "cross-cycle class is not block-connected");
      // rotate merged to start at a, the picked cycle to start at b
      Point a = merged_min[best_block];
      const auto& cyc = cross[idxs[pick]];
      Point b = UINT32_MAX;
      for (Point x : cyc)
        if (bidx[x] == best_block) b = std::min(b, x);
      auto rotate_to = [](std::vector<Point> v, Point start) {
        auto it = std::find(v.begin(), v.end(), start);
        std::rotate(v.begin(), it, v.end());
        return v;
      };
      merged = rotate_to(merged, a);
      auto addend = rotate_to(cyc, b);
      // (a,x1..xk)(b,y1..yl) = (a,b) ∘ (a,x1..xk,b,y1..yl)
      taus.push_back(transposition(degree, a, b));
      merged.insert(merged.end(), addend.begin(), addend.end());
      done[pick] = true;
    }
    merged_classes.emplace_back(std::move(merged), std::move(taus));
  }
  std::sort(merged_classes.begin(), merged_classes.end(),
            [](const auto& a, const auto& b) {
              return *std::min_element(a.first.begin(), a.first.end()) <
                     *std::min_element(b.first.begin(), b.first.end());
            });

  Perm alpha = Perm::identity(degree);
  for (const auto& part : alpha_parts) alpha = compose(alpha, part);
  for (const auto& [merged, taus] : merged_classes)
    for (const auto& t : taus) alpha = compose(alpha, t);
  out.alpha = alpha;

  Perm beta0 = Perm::identity(degree);
  for (const auto& cyc : beta0_cycles) beta0 = compose(beta0, cycle_perm(degree, cyc));
  out.beta0 = beta0;

  for (const auto& [merged, taus] : merged_classes) {
    out.betas.push_back(cycle_perm(degree, merged));
    std::set<unsigned> ys;
    for (Point x : merged)
      if (bidx[x] > 0) ys.insert(bidx[x] - 1);  // 0-based block index
    out.q.emplace_back(ys.begin(), ys.end());
  }

  // reconstruction sanity check
  Perm rec = compose(out.alpha, out.beta0);
  for (const auto& b : out.betas) rec = compose(rec, b);
  if (!(rec == h)) fail(ErrorCode::internal, "M-decomposition reconstruction failed");
  return out;
}

StrongMDecomposition strong_m_decompose(const Perm& h,
                                        const std::vector<Point>& x,
                                        const std::vector<Point>& y) {
  OrderedPartition p;
  p.n = h.degree();
  p.blocks = {x, y};
  p.validate();
  auto md = m_decompose(h, p);
  StrongMDecomposition out;
  out.alpha = compose(md.alpha, md.beta0);  // beta0 is identity (X0 empty)
  if (md.betas.empty()) {
    out.beta = Perm::identity(h.degree());
    return out;
  }
  if (md.betas.size() != 1)
    fail(ErrorCode::internal, "two-block cross cycles did not merge");
  std::vector<bool> in_x(h.degree(), false);
  for (Point v : x) in_x[v] = true;

  std::vector<Point> n_pts;  // the cross cycle as a point sequence
  {
    auto cd = cycle_decomposition(md.betas[0]);
    n_pts = cd.cycles.at(0);
  }
  Perm alpha = out.alpha;
  // peel same-side adjacent pairs: (x1,x2,t...) = (x1,x2) ∘ (x2,t...)
  while (n_pts.size() >= 2) {
    std::size_t len = n_pts.size();
    std::size_t at = len;
    for (std::size_t i = 0; i < len; ++i)
      if (in_x[n_pts[i]] == in_x[n_pts[(i + 1) % len]]) {
        at = i;
        break;
      }
    if (at == len) break;  // strictly alternating
    std::rotate(n_pts.begin(), n_pts.begin() + at, n_pts.end());
    alpha = compose(alpha, transposition(h.degree(), n_pts[0], n_pts[1]));
    n_pts.erase(n_pts.begin());
  }
  out.alpha = alpha;
  if (n_pts.size() < 2) {
    out.beta = Perm::identity(h.degree());
  } else {
    // canonical rotation: start at the least X-side point
    std::size_t best = 0;
    for (std::size_t i = 0; i < n_pts.size(); ++i)
      if (in_x[n_pts[i]] && (!in_x[n_pts[best]] || n_pts[i] < n_pts[best]))
        best = i;
    std::rotate(n_pts.begin(), n_pts.begin() + best, n_pts.end());
    out.beta = cycle_perm(h.degree(), n_pts);
  }
  if (!(compose(out.alpha, out.beta) == h))
    fail(ErrorCode::internal, "strong M-decomposition reconstruction failed");
  return out;
}

namespace {

// Star transpositions generating each S_{X_i}, i >= 1.
std::vector<Perm> block_product_gens(const OrderedPartition& p) {
  std::vector<Perm> gens;
  for (const auto& b : p.blocks)
    for (std::size_t i = 1; i < b.size(); ++i)
      gens.push_back(transposition(p.n, b[0], b[i]));
  return gens;
}

// Closure of <seed> under conjugation by the given conjugator generators.
// Every enqueued conjugate is either absorbed or already a member, and
// membership only grows, so the result is conjugation-closed on all its
// generators (and hence on the whole group).
Group conjugation_closure(std::vector<Perm> seed,
                          const std::vector<Perm>& conjugators,
                          unsigned degree) {
  std::vector<Perm> gens;
  std::deque<Perm> work(seed.begin(), seed.end());
  Group cur = Group::generate({}, degree);
  while (!work.empty()) {
    Perm g = work.front();
    work.pop_front();
    if (cur.member(g)) continue;
    gens.push_back(g);
    cur = Group::generate(gens, degree);
    for (const auto& s : conjugators) work.push_back(conjugate(g, s));
  }
  return cur;
}

}  // namespace

bool has_m_property(const Group& g, const OrderedPartition& p) {
  if (g.degree() != p.n) fail(ErrorCode::usage, "degree mismatch");
  p.validate();
  for (const auto& s : block_product_gens(p))
    for (const auto& h : g.generators())
      if (!g.member(conjugate(h, s))) return false;
  return true;
}

Group m_closure(const std::vector<Perm>& t, const OrderedPartition& p) {
  p.validate();
  return conjugation_closure(t, block_product_gens(p), p.n);
}

bool has_sp_property(const Group& i, const OrderedPartition& p,
                     unsigned degree_cap) {
  if (i.degree() != p.n) fail(ErrorCode::usage, "degree mismatch");
  p.validate();
  if (p.n > degree_cap)
    fail(ErrorCode::cap_exceeded, "SP-property exhaustion capped at n <= " +
                                      std::to_string(degree_cap));
  // active blocks (|X_i| >= 2) contribute a transposition slot
  std::vector<std::vector<Perm>> slot_transpositions;
  for (const auto& b : p.blocks) {
    if (b.size() < 2) continue;
    std::vector<Perm> ts;
    for (std::size_t u = 0; u < b.size(); ++u)
      for (std::size_t v = u + 1; v < b.size(); ++v)
        ts.push_back(transposition(p.n, b[u], b[v]));
    slot_transpositions.push_back(std::move(ts));
  }

  // enumerate ΠS_{X_i} as full-degree permutations
  std::vector<Perm> prod{Perm::identity(p.n)};
  for (const auto& b : p.blocks) {
    std::vector<Point> arr = b;
    std::sort(arr.begin(), arr.end());
    std::vector<Perm> block_perms;
    std::vector<Point> sorted_b = arr;
    do {
      std::vector<std::uint8_t> img(p.n);
      std::iota(img.begin(), img.end(), std::uint8_t{0});
      for (std::size_t j = 0; j < sorted_b.size(); ++j)
        img[sorted_b[j]] = static_cast<std::uint8_t>(arr[j]);
      block_perms.push_back(Perm::from_images(std::move(img)));
    } while (std::next_permutation(arr.begin(), arr.end()));
    if (prod.size() * block_perms.size() > kSpEnumerationCap)
      fail(ErrorCode::cap_exceeded, "SP-property enumeration too large");
    std::vector<Perm> next;
    next.reserve(prod.size() * block_perms.size());
    for (const auto& a : prod)
      for (const auto& bperm : block_perms) next.push_back(compose(a, bperm));
    prod = std::move(next);
  }
  std::sort(prod.begin(), prod.end());

  // representatives of I₀\ΠS: skip s once some u·s with u ∈ I₀ was handled
  std::vector<Perm> i0;
  for (const auto& s : prod)
    if (i.member(s)) i0.push_back(s);
  std::unordered_set<Perm, PermHash> handled;

  const std::size_t slots = slot_transpositions.size();
  std::vector<std::size_t> pick(slots, 0);
  for (const auto& s : prod) {
    if (handled.count(s)) continue;
    for (const auto& u : i0) handled.insert(compose(u, s));
    // all transposition tuples for this coset representative
    std::fill(pick.begin(), pick.end(), 0);
    while (true) {
      bool found = false;
      for (std::uint32_t eps = 0; eps < (1u << slots) && !found; ++eps) {
        Perm cand = s;
        for (std::size_t t = 0; t < slots; ++t)
          if (eps & (1u << t))
            cand = compose(cand, slot_transpositions[t][pick[t]]);
        found = i.member(cand);
      }
      if (!found) return false;
      // next tuple
      std::size_t t = 0;
      for (; t < slots; ++t) {
        if (++pick[t] < slot_transpositions[t].size()) break;
        pick[t] = 0;
      }
      if (t == slots) break;
    }
  }
  return true;
}

bool has_k_property(const Group& g, const OrderedPartition& p, const Group& i,
                    bool check_sp) {
  if (check_sp && !has_sp_property(i, p))
    fail(ErrorCode::precondition, "I lacks the SP-property wrt P");
  for (const auto& x : i.generators())
    for (const auto& h : g.generators())
      if (!g.member(conjugate(h, x))) return false;
  return true;
}

Group gikp_closure(const Group& i, const std::vector<Perm>& k,
                   const OrderedPartition& p, bool check_sp) {
  if (check_sp && !has_sp_property(i, p))
    fail(ErrorCode::precondition, "I lacks the SP-property wrt P");
  return conjugation_closure(k, i.generators(), p.n);
}

CoverResult closure_cover(const std::vector<Perm>& h, const OrderedPartition& p,
                          CoverMode mode, const Group* i) {
  p.validate();
  if (mode == CoverMode::k_property && i == nullptr)
    fail(ErrorCode::usage, "K-mode cover needs the subgroup I");
  CoverResult out;
  Group cur = Group::generate({}, p.n);
  for (const auto& elem : h) {
    if (cur.member(elem)) continue;
    out.k.push_back(elem);
    cur = mode == CoverMode::m_property ? m_closure(out.k, p)
                                        : gikp_closure(*i, out.k, p, false);
  }
  for (const auto& elem : h)
    if (!cur.member(elem))
      fail(ErrorCode::internal, "closure cover misses an element of H");

  CoverReport& rep = out.report;
  rep.cover_size = out.k.size();
  std::size_t min_block = SIZE_MAX;
  for (const auto& b : p.blocks) min_block = std::min(min_block, b.size());
  if (mode == CoverMode::m_property && p.blocks.size() == 2 && p.x0.empty()) {
    rep.lemma = "lemma6";
    rep.hypothesis_met = p.n >= 10;
    rep.bound = 9;
  } else if (mode == CoverMode::m_property) {
    rep.lemma = "lemma12";
    rep.hypothesis_met = min_block >= 4;
    rep.bound = bounds::psi(static_cast<unsigned>(p.x0.size()),
                            static_cast<unsigned>(p.blocks.size()));
  } else {
    rep.lemma = "lemma14";
    rep.hypothesis_met = min_block >= 6;
    rep.bound = bounds::omega(static_cast<unsigned>(p.x0.size()),
                              static_cast<unsigned>(p.blocks.size()));
  }
  if (!rep.hypothesis_met)
    rep.verdict = "vacuous";
  else if (BigInt(rep.cover_size) <= *rep.bound)
    rep.verdict = "verified";
  else
    rep.verdict = "inconclusive";
  return out;
}

FixPointwiseResult fix_pointwise_reduce(const std::vector<Perm>& h,
                                        const std::vector<Point>& x,
                                        const Group& i,
                                        const OrderedPartition& p) {
  p.validate();
  const auto bidx = p.block_index();
  std::vector<bool> in_x(p.n, false);
  for (Point v : x) {
    if (bidx[v] == 0)
      fail(ErrorCode::precondition, "X must lie inside the union of X_i");
    in_x[v] = true;
  }
  for (const auto& b : p.blocks) {
    std::size_t outside = 0;
    for (Point v : b)
      if (!in_x[v]) ++outside;
    if (outside < 4)
      fail(ErrorCode::precondition, "|X_i \\ X| >= 4 is required");
  }
  if (!has_sp_property(i, p))
    fail(ErrorCode::precondition, "I lacks the SP-property wrt P");

  FixPointwiseResult out;
  out.bound = x.size() * (p.blocks.size() + p.x0.size());
  std::vector<Perm> g(h.size(), Perm::identity(p.n));
  std::set<std::size_t> k_idx;

  std::vector<Point> xs = x;
  std::sort(xs.begin(), xs.end());
  std::vector<Point> processed;
  for (Point pt : xs) {
    // classes of the images l_h(pt): by block for positive blocks, singleton
    // for X_0 points
    std::map<std::pair<unsigned, Point>, std::size_t> rep;  // class -> index in h
    auto class_key = [&](Point s) {
      return bidx[s] > 0 ? std::make_pair(bidx[s], Point{0})
                         : std::make_pair(0u, s);
    };
    for (std::size_t j = 0; j < h.size(); ++j) {
      Point s = compose(g[j], h[j])(pt);
      if (s == pt) continue;
      auto key = class_key(s);
      if (!rep.count(key)) {
        rep[key] = j;
        k_idx.insert(j);
      }
    }
    for (std::size_t j = 0; j < h.size(); ++j) {
      Perm lj = compose(g[j], h[j]);
      Point sh = lj(pt);
      if (sh == pt) continue;
      std::size_t ri = rep[class_key(sh)];
      Perm lrep = compose(g[ri], h[ri]);
      Point si = lrep(pt);
      Perm mh;
      if (si == sh) {
        mh = lrep;
      } else {
        // sh, si share a positive block; swap them inside I
        Perm swap = transposition(p.n, sh, si);
        std::vector<Perm> slot;  // one transposition per block, in X_t \ X
        for (std::size_t t = 0; t < p.blocks.size(); ++t) {
          std::vector<Point> free;
          for (Point v : p.blocks[t])
            if (!in_x[v] && v != sh && v != si) free.push_back(v);
          if (free.size() < 2)
            fail(ErrorCode::internal, "no spare points in block");
          slot.push_back(transposition(p.n, free[0], free[1]));
        }
        Perm nh;
        bool found = false;
        for (std::uint32_t eps = 0; eps < (1u << slot.size()) && !found; ++eps) {
          Perm cand = swap;
          for (std::size_t t = 0; t < slot.size(); ++t)
            if (eps & (1u << t)) cand = compose(cand, slot[t]);
          if (i.member(cand)) {
            nh = cand;
            found = true;
          }
        }
        if (!found)
          fail(ErrorCode::precondition,
               "SP-property did not supply the swap element");
        mh = compose(nh, compose(lrep, nh.inverse()));
      }
      g[j] = compose(mh.inverse(), g[j]);
      Perm check = compose(g[j], h[j]);
      if (check(pt) != pt)
        fail(ErrorCode::internal, "fix_pointwise step failed to fix the point");
      for (Point q : processed)
        if (check(q) != q)
          fail(ErrorCode::internal, "fix_pointwise step disturbed a fixed point");
    }
    processed.push_back(pt);
  }
  for (auto j : k_idx) out.k.push_back(h[j]);
  out.g_map = std::move(g);
  if (out.k.size() > out.bound)
    fail(ErrorCode::internal, "fix_pointwise cover exceeded k(m+|X0|)");
  return out;
}

}  // namespace irk
