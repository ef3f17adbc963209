#include "irk/irredundance.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <thread>
#include <unordered_set>

#include "irk/error.hpp"
#include "irk/subgroup_registry.hpp"

namespace irk {

namespace {

using Clock = std::chrono::steady_clock;

std::vector<Perm> group_elements(const Group& g, std::size_t cap) {
  if (g.order() > cap)
    fail(ErrorCode::cap_exceeded, "group too large to enumerate");
  std::unordered_set<Perm, PermHash> seen;
  std::vector<Perm> list{Perm::identity(g.degree())};
  seen.insert(list[0]);
  for (std::size_t head = 0; head < list.size(); ++head)
    for (const auto& gen : g.generators()) {
      Perm p = compose(gen, list[head]);
      if (seen.insert(p).second) list.push_back(p);
    }
  std::sort(list.begin(), list.end());
  return list;
}

unsigned lambda_of_order(std::uint64_t n) {
  unsigned total = 0;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2))
    while (n % p == 0) {
      ++total;
      n /= p;
    }
  if (n > 1) ++total;
  return total;
}

// Shared state of one exhaustive search over a table group.
struct Dfs {
  SubgroupRegistry& reg;
  std::uint32_t target;                    // subgroup being searched
  const std::vector<std::uint32_t>& cand;  // candidate elements, ascending
  unsigned depth_cap;
  bool record_all;  // i-search records every node, m-search only leaves
  // replacement mode: when set, generating leaves at depth == depth_cap are
  // screened for a replacement counterexample instead of recorded
  bool replacement = false;

  std::uint64_t nodes = 0;
  std::uint64_t node_limit = UINT64_MAX;
  Clock::time_point deadline = Clock::time_point::max();
  bool aborted = false;

  unsigned best_size = 0;
  std::vector<std::uint32_t> best_witness;
  bool have_counterexample = false;
  std::vector<std::uint32_t> cx_set;
  std::uint32_t cx_elem = 0;

  std::vector<std::uint32_t> chain;
  // uminus_stack[d][j] = <chain[0..d) \ chain[j]> for the depth-d prefix
  std::vector<std::vector<std::uint32_t>> uminus_stack;

  void prepare() {
    chain.clear();
    uminus_stack.assign(depth_cap + 2, {});
    for (auto& v : uminus_stack) v.reserve(depth_cap + 1);
  }

  bool tick() {
    if (++nodes >= node_limit) {
      aborted = true;
      return false;
    }
    if ((nodes & 0xfff) == 0 && Clock::now() > deadline) {
      aborted = true;
      return false;
    }
    return true;
  }

  void record(unsigned size) {
    if (size > best_size) {
      best_size = size;
      best_witness = chain;
    }
  }

  void leaf_replacement_check(const std::vector<std::uint32_t>& uminus) {
    Bitset meet = reg.non_generating(uminus[0]);
    for (std::size_t j = 1; j < uminus.size(); ++j)
      meet &= reg.non_generating(uminus[j]);
    long h = meet.first_set(0);
    if (h == static_cast<long>(reg.table().identity_index()))
      h = meet.first_set(static_cast<std::size_t>(h) + 1);
    if (h >= 0) {
      have_counterexample = true;
      cx_set = chain;
      cx_elem = static_cast<std::uint32_t>(h);
    }
  }

  // Extends the depth-d prefix (d = chain.size(), subgroup u) with
  // candidates at positions >= from. uminus_stack[d] holds the prefix's
  // drop-one subgroups.
  void run(std::uint32_t u, std::size_t from) {
    if (aborted || have_counterexample) return;
    const std::size_t d = chain.size();
    const Bitset& in_u = reg.elems(u);
    const auto& uminus = uminus_stack[d];
    auto& next_uminus = uminus_stack[d + 1];
    for (std::size_t ci = from; ci < cand.size(); ++ci) {
      std::uint32_t h = cand[ci];
      if (in_u.test(h)) continue;
      if (!tick()) return;
      next_uminus.clear();
      bool irredundant = true;
      for (std::size_t j = 0; j < uminus.size(); ++j) {
        std::uint32_t uj = reg.extend(uminus[j], h);
        if (reg.elems(uj).test(chain[j])) {
          irredundant = false;
          break;
        }
        next_uminus.push_back(uj);
      }
      if (!irredundant) continue;
      next_uminus.push_back(u);
      std::uint32_t nu = reg.extend(u, h);
      chain.push_back(h);
      if (record_all) record(static_cast<unsigned>(chain.size()));
      if (nu == target) {
        if (replacement) {
          if (chain.size() == depth_cap) leaf_replacement_check(next_uminus);
        } else if (!record_all) {
          record(static_cast<unsigned>(chain.size()));
        }
      } else if (chain.size() < depth_cap) {
        run(nu, ci + 1);
      }
      chain.pop_back();
      if (aborted || have_counterexample) return;
    }
  }
};

struct WorkerResult {
  unsigned best_size = 0;
  std::vector<std::uint32_t> best_witness;
  bool have_cx = false;
  std::vector<std::uint32_t> cx_set;
  std::uint32_t cx_elem = 0;
  std::uint64_t nodes = 0;
  bool aborted = false;
};

struct ParallelOutcome {
  WorkerResult merged;
  double seconds = 0.0;
};

// Splits the search over first-element choices. Workers own disjoint
// residue classes of the candidate list; the merge is deterministic.
ParallelOutcome parallel_search(const ElementTable& tab, bool record_all,
                                bool replacement, unsigned depth_cap,
                                const SearchBudget& budget) {
  auto t0 = Clock::now();
  unsigned workers = budget.workers == 0
                         ? std::max(1u, std::thread::hardware_concurrency())
                         : budget.workers;
  std::vector<std::uint32_t> cand(tab.size());
  for (std::size_t i = 0; i < tab.size(); ++i)
    cand[i] = static_cast<std::uint32_t>(i);

  auto deadline =
      budget.time_limit_seconds == std::numeric_limits<double>::infinity()
          ? Clock::time_point::max()
          : t0 + std::chrono::duration_cast<Clock::duration>(
                     std::chrono::duration<double>(budget.time_limit_seconds));
  std::uint64_t per_worker_nodes = budget.node_limit == UINT64_MAX
                                       ? UINT64_MAX
                                       : budget.node_limit / std::max(1u, workers);

  std::vector<WorkerResult> results(workers);
  auto body = [&](unsigned w) {
    SubgroupRegistry reg(tab);
    Dfs dfs{reg, reg.full_id(), cand, depth_cap, record_all, replacement};
    dfs.node_limit = per_worker_nodes;
    dfs.deadline = deadline;
    dfs.prepare();
    WorkerResult& r = results[w];
    for (std::size_t ci = w; ci < cand.size() && !dfs.aborted; ci += workers) {
      std::uint32_t h = cand[ci];
      if (h == tab.identity_index()) continue;
      if (!dfs.tick()) break;
      std::uint32_t u1 = reg.extend(reg.trivial_id(), h);
      dfs.chain.assign(1, h);
      dfs.uminus_stack[1].assign(1, reg.trivial_id());
      if (record_all) dfs.record(1);
      if (u1 == reg.full_id()) {
        if (dfs.replacement) {
          if (depth_cap == 1) dfs.leaf_replacement_check(dfs.uminus_stack[1]);
        } else if (!record_all) {
          dfs.record(1);
        }
      } else if (depth_cap > 1) {
        dfs.run(u1, ci + 1);
      }
      if (dfs.have_counterexample) break;
    }
    r.best_size = dfs.best_size;
    r.best_witness = dfs.best_witness;
    r.have_cx = dfs.have_counterexample;
    r.cx_set = dfs.cx_set;
    r.cx_elem = dfs.cx_elem;
    r.nodes = dfs.nodes;
    r.aborted = dfs.aborted;
  };

  if (workers == 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body, w);
    for (auto& th : pool) th.join();
  }

  ParallelOutcome out;
  for (auto& r : results) {
    out.merged.nodes += r.nodes;
    out.merged.aborted = out.merged.aborted || r.aborted;
    if (r.best_size > out.merged.best_size ||
        (r.best_size == out.merged.best_size && r.best_size > 0 &&
         r.best_witness < out.merged.best_witness)) {
      out.merged.best_size = r.best_size;
      out.merged.best_witness = r.best_witness;
    }
    if (r.have_cx) {
      if (!out.merged.have_cx ||
          std::make_pair(r.cx_set, r.cx_elem) <
              std::make_pair(out.merged.cx_set, out.merged.cx_elem)) {
        out.merged.have_cx = true;
        out.merged.cx_set = r.cx_set;
        out.merged.cx_elem = r.cx_elem;
      }
    }
  }
  out.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return out;
}

SearchOutcome run_search(const Group& g, const SearchBudget& budget,
                         bool record_all) {
  SearchOutcome out;
  if (g.order() == 1) return out;  // m = i = 0, empty witness
  ElementTable tab = ElementTable::build(g);
  unsigned cap = lambda_of_order(static_cast<std::uint64_t>(g.order()));
  auto res = parallel_search(tab, record_all, false, cap, budget);
  out.value = res.merged.best_size;
  out.exact = !res.merged.aborted;
  out.nodes = res.merged.nodes;
  out.seconds = res.seconds;
  for (auto e : res.merged.best_witness) out.witness.push_back(tab.perm(e));
  return out;
}

}  // namespace

bool is_irredundant(const std::vector<Perm>& s, const Group& g) {
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (!g.member(s[j]))
      fail(ErrorCode::precondition, "set element outside the group");
    std::vector<Perm> rest;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (i != j) rest.push_back(s[i]);
    if (StabilizerChain::build(g.degree(), rest).contains(s[j])) return false;
  }
  return true;
}

bool is_irredundant_generating(const std::vector<Perm>& s, const Group& g) {
  auto chain = StabilizerChain::build(g.degree(), s);
  if (chain.order() != g.order()) return false;
  return is_irredundant(s, g);
}

SearchOutcome m_search(const Group& g, const SearchBudget& budget) {
  return run_search(g, budget, false);
}

SearchOutcome i_search(const Group& g, const SearchBudget& budget) {
  return run_search(g, budget, true);
}

ReplacementOutcome replacement_property(const Group& g,
                                        const SearchBudget& budget) {
  ReplacementOutcome out;
  if (g.order() == 1) {
    out.holds = true;  // no non-identity element exists
    return out;
  }
  SearchOutcome m = m_search(g, budget);
  out.m_value = m.value;
  out.nodes = m.nodes;
  out.seconds = m.seconds;
  if (!m.exact) {
    out.exact = false;
    return out;
  }
  ElementTable tab = ElementTable::build(g);
  auto res = parallel_search(tab, false, true, m.value, budget);
  out.nodes += res.merged.nodes;
  out.seconds += res.seconds;
  out.exact = !res.merged.aborted;
  if (res.merged.have_cx) {
    std::vector<Perm> set;
    for (auto e : res.merged.cx_set) set.push_back(tab.perm(e));
    out.counterexample = {std::move(set), tab.perm(res.merged.cx_elem)};
    out.holds = false;
    out.exact = true;  // a concrete counterexample is exact regardless
  } else {
    out.holds = out.exact;
  }
  return out;
}

unsigned m_search_in(SubgroupRegistry& reg, std::uint32_t target_sid,
                     std::vector<std::uint32_t>* witness) {
  const auto& cand = reg.members(target_sid);
  if (cand.size() == 1) {
    if (witness) witness->clear();
    return 0;
  }
  Dfs dfs{reg, target_sid, cand, lambda_of_order(cand.size()), false, false};
  dfs.node_limit = UINT64_MAX;
  dfs.deadline = Clock::time_point::max();
  dfs.prepare();
  for (std::size_t ci = 0; ci < cand.size(); ++ci) {
    std::uint32_t h = cand[ci];
    if (h == reg.table().identity_index()) continue;
    std::uint32_t u1 = reg.extend(reg.trivial_id(), h);
    dfs.chain.assign(1, h);
    dfs.uminus_stack[1].assign(1, reg.trivial_id());
    if (u1 == target_sid)
      dfs.record(1);
    else if (dfs.depth_cap > 1)
      dfs.run(u1, ci + 1);
  }
  if (witness) *witness = dfs.best_witness;
  return dfs.best_size;
}

std::vector<Group> enumerate_subgroups(const Group& g, std::size_t order_cap) {
  if (g.order() > order_cap)
    fail(ErrorCode::cap_exceeded, "order cap exceeded in enumerate_subgroups");
  ElementTable tab = ElementTable::build(g, order_cap);
  SubgroupRegistry reg(tab);
  std::vector<Group> out;
  for (auto sid : reg.all_subgroups()) {
    std::vector<Perm> gens;
    for (auto e : reg.gens(sid)) gens.push_back(tab.perm(e));
    out.push_back(Group::generate(std::move(gens), g.degree()));
  }
  return out;
}

namespace {

bool flatness(const Group& g, std::size_t order_cap, bool strict) {
  if (g.order() > order_cap)
    fail(ErrorCode::cap_exceeded, "order cap exceeded in flatness check");
  ElementTable tab = ElementTable::build(g, order_cap);
  SubgroupRegistry reg(tab);
  unsigned mg = m_search_in(reg, reg.full_id());
  for (auto sid : reg.all_subgroups()) {
    if (sid == reg.full_id()) continue;
    unsigned mh = m_search_in(reg, sid);
    if (strict ? mh >= mg : mh > mg) return false;
  }
  return true;
}

}  // namespace

bool is_flat(const Group& g, std::size_t order_cap) {
  return flatness(g, order_cap, false);
}

bool is_strongly_flat(const Group& g, std::size_t order_cap) {
  return flatness(g, order_cap, true);
}

WhistonRefinement whiston_refine(const std::vector<Perm>& s, const Group& g,
                                 const Group& n) {
  // N normal in G: conjugates of N-generators by G-generators stay in N.
  for (const auto& gg : g.generators())
    for (const auto& ng : n.generators())
      if (!n.member(conjugate(ng, gg)))
        fail(ErrorCode::precondition, "N is not normal in G");
  if (!g.contains_group(n))
    fail(ErrorCode::precondition, "N is not a subgroup of G");
  if (!is_irredundant_generating(s, g))
    fail(ErrorCode::precondition, "S is not an irredundant generating set");

  const std::size_t m = s.size();
  std::vector<Perm> n_elems = group_elements(n, ElementTable::kOrderCap);

  auto with_n = [&](const std::vector<Perm>& t) {
    std::vector<Perm> gens = t;
    for (const auto& x : n.generators()) gens.push_back(x);
    return StabilizerChain::build(g.degree(), gens);
  };

  // subsets of S in (size, lex) order
  std::vector<std::vector<std::size_t>> subsets;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<std::size_t> ix;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (std::uint64_t{1} << i)) ix.push_back(i);
    subsets.push_back(std::move(ix));
  }
  std::stable_sort(subsets.begin(), subsets.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });

  for (const auto& kept : subsets) {
    std::vector<Perm> kset;
    for (auto i : kept) kset.push_back(s[i]);
    if (with_n(kset).order() != g.order()) continue;
    // minimality by inclusion on the quotient side
    bool minimal = true;
    for (std::size_t drop = 0; drop < kept.size() && minimal; ++drop) {
      std::vector<Perm> sub;
      for (std::size_t i = 0; i < kept.size(); ++i)
        if (i != drop) sub.push_back(kset[i]);
      if (with_n(sub).order() == g.order()) minimal = false;
    }
    if (!minimal) continue;

    std::vector<std::size_t> dropped;
    for (std::size_t i = 0; i < m; ++i)
      if (std::find(kept.begin(), kept.end(), i) == kept.end())
        dropped.push_back(i);

    auto kchain = StabilizerChain::build(g.degree(), kset);
    // candidate replacements per dropped element: h = (g_i ν)⁻¹ g_i = ν⁻¹
    // for ν ∈ N with g_i∘ν ∈ <K>
    std::vector<std::vector<Perm>> cands(dropped.size());
    bool ok = true;
    for (std::size_t d = 0; d < dropped.size(); ++d) {
      for (const auto& nu : n_elems) {
        if (kchain.contains(compose(s[dropped[d]], nu)))
          cands[d].push_back(nu.inverse());
      }
      if (cands[d].empty()) ok = false;
    }
    if (!ok) continue;

    // backtrack over replacement choices, lексicographically
    std::vector<std::size_t> pick(dropped.size(), 0);
    std::uint64_t attempts = 0;
    while (true) {
      std::vector<Perm> refined = kset;
      std::vector<Perm> reps;
      for (std::size_t d = 0; d < dropped.size(); ++d) {
        refined.push_back(cands[d][pick[d]]);
        reps.push_back(cands[d][pick[d]]);
      }
      if (is_irredundant_generating(refined, g)) {
        WhistonRefinement out;
        out.k = static_cast<unsigned>(kept.size());
        for (auto i : kept) out.reordered.push_back(s[i]);
        for (auto i : dropped) out.reordered.push_back(s[i]);
        out.replacements = std::move(reps);
        out.refined = std::move(refined);
        return out;
      }
      if (++attempts > 100000) break;
      std::size_t d = dropped.size();
      while (d > 0) {
        --d;
        if (++pick[d] < cands[d].size()) break;
        pick[d] = 0;
        if (d == 0) {
          d = SIZE_MAX;
          break;
        }
      }
      if (d == SIZE_MAX || dropped.empty()) break;
    }
  }
  fail(ErrorCode::falsification,
       "no Whiston refinement found (this would falsify Lemma 1)");
}

namespace {

std::vector<Point> support_of(const Group& g) {
  std::vector<Point> sup;
  for (unsigned x = 0; x < g.degree(); ++x)
    for (const auto& gen : g.generators())
      if (gen(x) != x) {
        sup.push_back(x);
        break;
      }
  return sup;
}

Perm restrict_to(const Perm& p, const std::vector<bool>& in_support) {
  std::vector<std::uint8_t> img(p.degree());
  for (unsigned x = 0; x < p.degree(); ++x)
    img[x] = in_support[x] ? p(x) : static_cast<std::uint8_t>(x);
  return Perm::from_images(std::move(img));
}

}  // namespace

DirectProductRefinement direct_product_refine(
    const std::vector<Perm>& s, const std::vector<Group>& factors) {
  if (factors.empty()) fail(ErrorCode::usage, "no factors given");
  unsigned degree = factors.front().degree();
  std::vector<std::vector<bool>> in_sup;
  std::vector<bool> covered(degree, false);
  for (const auto& f : factors) {
    if (f.degree() != degree) fail(ErrorCode::usage, "factor degree mismatch");
    std::vector<bool> mask(degree, false);
    for (Point x : support_of(f)) {
      if (covered[x])
        fail(ErrorCode::precondition, "factor supports are not disjoint");
      covered[x] = true;
      mask[x] = true;
    }
    in_sup.push_back(std::move(mask));
  }
  for (const auto& p : s) {
    Perm rebuilt = Perm::identity(degree);
    for (std::size_t i = 0; i < factors.size(); ++i) {
      Perm pi = restrict_to(p, in_sup[i]);
      if (!factors[i].member(pi))
        fail(ErrorCode::precondition,
             "ambient is not a direct product of the declared factors");
      rebuilt = compose(rebuilt, pi);
    }
    if (!(rebuilt == p))
      fail(ErrorCode::precondition,
           "element moves points outside the declared factor supports");
  }

  DirectProductRefinement out;
  std::vector<Perm> current = s;
  for (std::size_t fi = 0; fi < factors.size(); ++fi) {
    // T target: π_i of the group generated by the current residual set
    std::vector<Perm> proj;
    for (const auto& p : current) proj.push_back(restrict_to(p, in_sup[fi]));
    auto t_full = StabilizerChain::build(degree, proj);

    // smallest sub-multiset (by size, then lex index order) projecting onto it
    std::size_t csz = current.size();
    std::vector<std::size_t> chosen;
    bool found = false;
    for (std::size_t size = 0; size <= csz && !found; ++size) {
      std::vector<std::size_t> ix(size);
      // enumerate size-subsets of {0..csz-1} in lex order
      std::function<bool(std::size_t, std::size_t)> rec =
          [&](std::size_t pos, std::size_t from) -> bool {
        if (pos == size) {
          std::vector<Perm> sub;
          for (auto i : ix) sub.push_back(proj[i]);
          if (StabilizerChain::build(degree, sub).order() == t_full.order()) {
            chosen = ix;
            return true;
          }
          return false;
        }
        for (std::size_t i = from; i < csz; ++i) {
          ix[pos] = i;
          if (rec(pos + 1, i + 1)) return true;
        }
        return false;
      };
      found = rec(0, 0);
    }
    if (!found) fail(ErrorCode::internal, "projection subset search failed");

    std::vector<Perm> h_part;
    for (auto i : chosen) h_part.push_back(current[i]);

    // peel the remaining elements down to the later factors
    std::vector<Perm> rest;
    for (std::size_t i = 0; i < csz; ++i)
      if (std::find(chosen.begin(), chosen.end(), i) == chosen.end())
        rest.push_back(current[i]);
    std::vector<Perm> hgen_elems =
        group_elements(Group::generate(h_part, degree), ElementTable::kOrderCap);
    std::vector<Perm> residual;
    for (const auto& h : rest) {
      Perm target_inv = restrict_to(h, in_sup[fi]).inverse();
      bool done = false;
      for (const auto& gamma : hgen_elems) {
        if (restrict_to(gamma, in_sup[fi]) == target_inv) {
          residual.push_back(compose(gamma, h));
          done = true;
          break;
        }
      }
      if (!done)
        fail(ErrorCode::internal, "no γ with π_i(γ h) = 1 (Lemma 16 step)");
    }
    if (!residual.empty() &&
        !is_irredundant(residual, Group::generate(residual, degree)))
      fail(ErrorCode::falsification,
           "residual set not irredundant (this would falsify Lemma 16)");

    std::vector<Perm> t_gens;
    for (const auto& h : h_part) t_gens.push_back(restrict_to(h, in_sup[fi]));
    Group t_i = Group::generate(t_gens, degree);
    out.m_of_t.push_back(m_search(t_i).value);
    out.t_factors.push_back(std::move(t_i));
    out.size_total += static_cast<unsigned>(h_part.size());
    out.parts.push_back(std::move(h_part));
    current = std::move(residual);
  }
  if (!current.empty())
    fail(ErrorCode::falsification,
         "residual chain did not empty (this would falsify Lemma 16)");
  unsigned bound = 0;
  for (auto v : out.m_of_t) bound += v;
  out.inequality_holds = out.size_total <= bound;
  return out;
}

}  // namespace irk
