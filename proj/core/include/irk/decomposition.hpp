#pragma once

#include <optional>
#include <string>
#include <vector>

#include "irk/bigint.hpp"
#include "irk/group.hpp"
#include "irk/perm.hpp"

namespace irk {

// Ordered partition {X_0, X_1, ..., X_m} of {1..n}: X_0 is the distinguished,
// possibly empty block; X_1..X_m are nonempty. d(P) = |X_0| + m.
struct OrderedPartition {
  unsigned n = 0;
  std::vector<Point> x0;
  std::vector<std::vector<Point>> blocks;

  unsigned d() const {
    return static_cast<unsigned>(x0.size() + blocks.size());
  }
  void validate() const;
  // 0 for X_0 points, 1..m for block points.
  std::vector<unsigned> block_index() const;

  // Grammar: "0:|1:1,2,3|2:4,5" (1-based points; the 0: block may be empty).
  static OrderedPartition parse(const std::string& text);
  std::string str() const;
};

bool partition_less(const OrderedPartition& p, const OrderedPartition& q);
inline unsigned d_of(const OrderedPartition& p) { return p.d(); }

struct MDecomposition {
  Perm alpha;              // in ΠS_{X_i}
  Perm beta0;              // in S_{X_0}
  std::vector<Perm> betas; // pairwise commuting cross-block single cycles
  // Associated partition Q = {Y_1..Y_p} of μ ⊆ {1..m}; 0-based block indices.
  std::vector<std::vector<unsigned>> q;
};

MDecomposition m_decompose(const Perm& h, const OrderedPartition& p);

struct StrongMDecomposition {
  Perm alpha;  // in S_X × S_Y
  Perm beta;   // identity or a single alternating cycle (x1,y1,...,xk,yk)
};

StrongMDecomposition strong_m_decompose(const Perm& h,
                                        const std::vector<Point>& x,
                                        const std::vector<Point>& y);

// σhσ⁻¹ ∈ G for all h ∈ G, σ ∈ ΠS_{X_i}; checked on generators of both
// sides (conjugation is a homomorphism in both arguments).
bool has_m_property(const Group& g, const OrderedPartition& p);

// Smallest subgroup with M-property containing T.
Group m_closure(const std::vector<Perm>& t, const OrderedPartition& p);

inline constexpr unsigned kSpDegreeCap = 10;
inline constexpr std::size_t kSpEnumerationCap = 250000;

// Def-8 check by exhaustion over transposition tuples and coset
// representatives of I ∩ ΠS_{X_i}. Blocks of size 1 contribute no
// transposition.
bool has_sp_property(const Group& i, const OrderedPartition& p,
                     unsigned degree_cap = kSpDegreeCap);

// xgx⁻¹ ∈ G for g ∈ G, x ∈ I (I must have the SP-property).
bool has_k_property(const Group& g, const OrderedPartition& p, const Group& i,
                    bool check_sp = true);

// Subgroup generated by {xkx⁻¹ : x ∈ I, k ∈ K}.
Group gikp_closure(const Group& i, const std::vector<Perm>& k,
                   const OrderedPartition& p, bool check_sp = true);

enum class CoverMode { m_property, k_property };

struct CoverReport {
  std::string lemma;  // "lemma6" | "lemma12" | "lemma14"
  bool hypothesis_met = false;
  std::size_t cover_size = 0;
  std::optional<BigInt> bound;
  // verified | vacuous | inconclusive (greedy cover exceeded the bound,
  // which does not contradict the existence statement)
  std::string verdict;
};

struct CoverResult {
  std::vector<Perm> k;
  CoverReport report;
};

// Greedily grows K ⊆ H until the closure contains H, then reports |K|
// against the applicable bound (9 / ψ / ω).
CoverResult closure_cover(const std::vector<Perm>& h, const OrderedPartition& p,
                          CoverMode mode, const Group* i = nullptr);

struct FixPointwiseResult {
  std::vector<Perm> k;      // K ⊆ H (in H order)
  std::vector<Perm> g_map;  // g_h per input element, g_h·h fixes X pointwise
  std::size_t bound = 0;    // |X|·(m + |X_0|)
};

FixPointwiseResult fix_pointwise_reduce(const std::vector<Perm>& h,
                                        const std::vector<Point>& x,
                                        const Group& i,
                                        const OrderedPartition& p);

}  // namespace irk
