#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "irk/element_table.hpp"

namespace irk {

// Interns subgroups of an enumerated group by their element bitset and
// memoizes one-element extensions <U ∪ {h}> per subgroup. Extension rows
// are filled by sweeping (U,U) double cosets: <U, uhu'> = <U, h>, so one
// closure decides a whole double coset. This is the memo table behind all
// exhaustive searches.
class SubgroupRegistry {
 public:
  using SubId = std::uint32_t;

  explicit SubgroupRegistry(const ElementTable& tab, std::size_t sub_cap = 200000);

  const ElementTable& table() const { return *tab_; }
  SubId trivial_id() const { return trivial_; }
  SubId full_id() const { return full_; }

  SubId closure_id(const std::vector<std::uint32_t>& gen_elems);
  SubId extend(SubId sid, std::uint32_t h);

  const Bitset& elems(SubId sid) const { return subs_[sid].elems; }
  const std::vector<std::uint32_t>& members(SubId sid) const {
    return subs_[sid].members;
  }
  const std::vector<std::uint32_t>& gens(SubId sid) const {
    return subs_[sid].gens;
  }
  std::size_t order(SubId sid) const { return subs_[sid].members.size(); }

  // {h : <U, h> != G}; always contains the identity for proper U.
  const Bitset& non_generating(SubId sid);

  // Cyclic-extension enumeration of every subgroup (reachability from the
  // trivial subgroup through extension rows).
  std::vector<SubId> all_subgroups();

  std::size_t count() const { return subs_.size(); }

 private:
  struct Sub {
    Bitset elems;
    std::vector<std::uint32_t> members;  // sorted
    std::vector<std::uint32_t> gens;
    std::unique_ptr<std::vector<SubId>> row;
    std::unique_ptr<Bitset> ng;
  };

  SubId intern(Bitset elems, std::vector<std::uint32_t> members,
               std::vector<std::uint32_t> gens);
  void fill_row(SubId sid);

  const ElementTable* tab_;
  std::size_t sub_cap_;
  std::vector<Sub> subs_;
  std::unordered_map<std::size_t, std::vector<SubId>> index_;
  SubId trivial_ = 0;
  SubId full_ = 0;
};

}  // namespace irk
