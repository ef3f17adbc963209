#include "irk/subgroup_registry.hpp"

#include <algorithm>
#include <numeric>

#include "irk/error.hpp"

namespace irk {

SubgroupRegistry::SubgroupRegistry(const ElementTable& tab, std::size_t sub_cap)
    : tab_(&tab), sub_cap_(sub_cap) {
  std::size_t n = tab.size();
  {
    Bitset b(n);
    b.set(tab.identity_index());
    trivial_ = intern(std::move(b), {tab.identity_index()}, {});
  }
  {
    Bitset b(n);
    std::vector<std::uint32_t> all(n);
    std::iota(all.begin(), all.end(), 0u);
    for (auto i : all) b.set(i);
    std::vector<std::uint32_t> gens;
    for (const auto& g : tab.group().generators()) {
      long id = tab.find(g);
      if (id < 0) fail(ErrorCode::internal, "generator missing from table");
      gens.push_back(static_cast<std::uint32_t>(id));
    }
    full_ = intern(std::move(b), std::move(all), std::move(gens));
  }
}

SubgroupRegistry::SubId SubgroupRegistry::intern(
    Bitset elems, std::vector<std::uint32_t> members,
    std::vector<std::uint32_t> gens) {
  std::size_t h = elems.hash();
  auto& bucket = index_[h];
  for (SubId id : bucket)
    if (subs_[id].elems == elems) return id;
  if (subs_.size() >= sub_cap_)
    fail(ErrorCode::cap_exceeded, "subgroup registry cap exceeded");
  Sub s;
  s.elems = std::move(elems);
  s.members = std::move(members);
  s.gens = std::move(gens);
  subs_.push_back(std::move(s));
  SubId id = static_cast<SubId>(subs_.size() - 1);
  bucket.push_back(id);
  return id;
}

SubgroupRegistry::SubId SubgroupRegistry::closure_id(
    const std::vector<std::uint32_t>& gen_elems) {
  if (gen_elems.empty()) return trivial_;
  auto cl = tab_->closure(gen_elems);
  if (cl.full) return full_;
  Bitset b(tab_->size());
  for (auto e : cl.members) b.set(e);
  return intern(std::move(b), std::move(cl.members), gen_elems);
}

void SubgroupRegistry::fill_row(SubId sid) {
  std::size_t n = tab_->size();
  auto row = std::make_unique<std::vector<SubId>>(n, UINT32_MAX);
  const auto& mem = subs_[sid].members;
  for (auto h : mem) (*row)[h] = sid;
  for (std::uint32_t h = 0; h < n; ++h) {
    if ((*row)[h] != UINT32_MAX) continue;
    std::vector<std::uint32_t> gens = subs_[sid].gens;
    gens.push_back(h);
    SubId fid = closure_id(gens);
    // mark the whole double coset U h U
    const auto& mem2 = subs_[sid].members;  // re-read: intern may reallocate
    for (auto u1 : mem2) {
      std::uint32_t x = tab_->mul(u1, h);
      for (auto u2 : mem2) (*row)[tab_->mul(x, u2)] = fid;
    }
  }
  subs_[sid].row = std::move(row);
}

SubgroupRegistry::SubId SubgroupRegistry::extend(SubId sid, std::uint32_t h) {
  if (!subs_[sid].row) fill_row(sid);
  return (*subs_[sid].row)[h];
}

const Bitset& SubgroupRegistry::non_generating(SubId sid) {
  if (!subs_[sid].ng) {
    if (!subs_[sid].row) fill_row(sid);
    auto ng = std::make_unique<Bitset>(tab_->size());
    const auto& row = *subs_[sid].row;
    for (std::size_t h = 0; h < row.size(); ++h)
      if (row[h] != full_) ng->set(h);
    subs_[sid].ng = std::move(ng);
  }
  return *subs_[sid].ng;
}

std::vector<SubgroupRegistry::SubId> SubgroupRegistry::all_subgroups() {
  std::vector<SubId> out{trivial_};
  std::vector<bool> seen(subs_.size(), false);
  auto mark = [&](SubId id) {
    if (id >= seen.size()) seen.resize(subs_.size(), false);
    if (seen[id]) return false;
    seen[id] = true;
    return true;
  };
  mark(trivial_);
  for (std::size_t head = 0; head < out.size(); ++head) {
    SubId u = out[head];
    if (!subs_[u].row) fill_row(u);
    for (std::uint32_t h = 0; h < tab_->size(); ++h) {
      SubId v = (*subs_[u].row)[h];
      if (mark(v)) out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end(), [&](SubId a, SubId b) {
    if (subs_[a].members.size() != subs_[b].members.size())
      return subs_[a].members.size() < subs_[b].members.size();
    return subs_[a].members < subs_[b].members;
  });
  return out;
}

}  // namespace irk
