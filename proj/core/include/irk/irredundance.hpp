#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "irk/element_table.hpp"
#include "irk/group.hpp"
#include "irk/perm.hpp"

namespace irk {

struct SearchBudget {
  std::uint64_t node_limit = std::numeric_limits<std::uint64_t>::max();
  double time_limit_seconds = std::numeric_limits<double>::infinity();
  unsigned workers = 1;  // 0 = hardware concurrency
};

struct SearchOutcome {
  unsigned value = 0;
  std::vector<Perm> witness;
  bool exact = true;   // false when the budget ran out (value is a lower bound)
  std::uint64_t nodes = 0;
  double seconds = 0.0;
};

bool is_irredundant(const std::vector<Perm>& s, const Group& g);
bool is_irredundant_generating(const std::vector<Perm>& s, const Group& g);

// Exact maximum size of an irredundant generating set / irredundant set,
// by pruned exhaustive DFS over the enumerated element list in global
// (lexicographic) element order. Witness is the lexicographically smallest
// of maximum size.
SearchOutcome m_search(const Group& g, const SearchBudget& budget = {});
SearchOutcome i_search(const Group& g, const SearchBudget& budget = {});

struct ReplacementOutcome {
  bool holds = false;
  std::optional<std::pair<std::vector<Perm>, Perm>> counterexample;
  unsigned m_value = 0;
  bool exact = true;
  std::uint64_t nodes = 0;
  double seconds = 0.0;
};

// Checks the replacement property over every maximum-length irredundant
// generating set.
ReplacementOutcome replacement_property(const Group& g,
                                        const SearchBudget& budget = {});

inline constexpr std::size_t kSubgroupOrderCap = 10000;

std::vector<Group> enumerate_subgroups(const Group& g,
                                       std::size_t order_cap = kSubgroupOrderCap);

bool is_flat(const Group& g, std::size_t order_cap = kSubgroupOrderCap);
bool is_strongly_flat(const Group& g, std::size_t order_cap = kSubgroupOrderCap);

struct WhistonRefinement {
  unsigned k = 0;                  // quotient-side prefix length
  std::vector<Perm> reordered;     // original elements, kept prefix first
  std::vector<Perm> replacements;  // h_{k+1..m}, all in N
  std::vector<Perm> refined;       // kept prefix followed by replacements
};

// Lemma-1 refinement along a normal subgroup N of G. Quotient-side tests
// use coset membership (g ∈ <T ∪ N>), never an explicit quotient group.
WhistonRefinement whiston_refine(const std::vector<Perm>& s, const Group& g,
                                 const Group& n);

struct DirectProductRefinement {
  std::vector<std::vector<Perm>> parts;  // H_i (refined residual elements)
  std::vector<Group> t_factors;          // T_i = π_i(<H_i>)
  std::vector<unsigned> m_of_t;          // m(T_i)
  unsigned size_total = 0;               // Σ|H_i|, must equal |S|
  bool inequality_holds = false;         // Σ|H_i| ≤ Σ m(T_i)
};

DirectProductRefinement direct_product_refine(const std::vector<Perm>& s,
                                              const std::vector<Group>& factors);

// m of a group already enumerated into a table, restricted to a target
// subgroup of it (target = full group when sid is the registry full id).
// Exposed for reuse by flatness, audits and acceptance.
class SubgroupRegistry;
unsigned m_search_in(SubgroupRegistry& reg, std::uint32_t target_sid,
                     std::vector<std::uint32_t>* witness = nullptr);

}  // namespace irk
