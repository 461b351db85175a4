#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <span>
#include <unordered_set>
#include <variant>
#include <vector>

#include "tgrowth/errors.hpp"
#include "tgrowth/groups.hpp"

namespace tgrowth {

/// A finite subset of a group: deduplicated, in canonical (wire form) order.
template <GroupLike G>
class GroupSet {
 public:
  using group_type = G;
  using element_type = typename G::element_type;

  /// Validates every element against the group, then sorts and deduplicates.
  GroupSet(G group, std::vector<element_type> elements)
      : group_(std::move(group)), elements_(std::move(elements)) {
    for (const auto& x : elements_) {
      if (!group_.valid(x)) throw ParameterError("element is not in the group");
    }
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  }

  /// Builds from keys already known to be sorted, unique and valid.
  static GroupSet from_sorted_keys(G group, std::span<const std::uint64_t> keys) {
    GroupSet out(std::move(group));
    out.elements_.reserve(keys.size());
    for (auto k : keys) out.elements_.push_back(G::from_key(k));
    return out;
  }

  const G& group() const noexcept { return group_; }
  const Field& field() const noexcept { return group_.field(); }
  std::span<const element_type> elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }
  const element_type& operator[](std::size_t i) const noexcept { return elements_[i]; }

  bool contains(const element_type& x) const {
    return std::binary_search(elements_.begin(), elements_.end(), x);
  }

  /// Whether every element of `other` is in this set.
  bool includes(const GroupSet& other) const {
    return std::includes(elements_.begin(), elements_.end(), other.elements_.begin(),
                         other.elements_.end());
  }

  bool operator==(const GroupSet& o) const {
    return group_ == o.group_ && elements_ == o.elements_;
  }

 private:
  explicit GroupSet(G group) : group_(std::move(group)) {}

  G group_;
  std::vector<element_type> elements_;
};

using T2Set = GroupSet<T2Group>;
using HeisSet = GroupSet<HeisGroup>;
using AnySet = std::variant<T2Set, HeisSet>;

template <GroupLike G>
void require_same_group(const GroupSet<G>& a, const GroupSet<G>& b) {
  if (!(a.group() == b.group())) throw SpecMismatch("sets live over different fields");
}

template <GroupLike G>
GroupSet<G> intersect(const GroupSet<G>& a, const GroupSet<G>& b) {
  require_same_group(a, b);
  std::vector<typename G::element_type> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return GroupSet<G>(a.group(), std::move(out));
}

template <GroupLike G>
GroupSet<G> set_union(const GroupSet<G>& a, const GroupSet<G>& b) {
  require_same_group(a, b);
  std::vector<typename G::element_type> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return GroupSet<G>(a.group(), std::move(out));
}

template <GroupLike G>
GroupSet<G> inverse_set(const GroupSet<G>& a) {
  std::vector<typename G::element_type> out;
  out.reserve(a.size());
  for (const auto& x : a) out.push_back(a.group().inv(x));
  return GroupSet<G>(a.group(), std::move(out));
}

/// A ∪ A⁻¹ ∪ {e}.
template <GroupLike G>
GroupSet<G> symmetrize(const GroupSet<G>& a) {
  auto out = set_union(a, inverse_set(a));
  return set_union(out, GroupSet<G>(a.group(), {a.group().identity()}));
}

template <GroupLike G>
bool is_symmetric_with_identity(const GroupSet<G>& a) {
  return a.contains(a.group().identity()) && inverse_set(a) == a;
}

/// The subgroup generated by A, by breadth-first closure of A ∪ A⁻¹ ∪ {e}.
/// Throws ResourceLimit once more than `cap` elements have been found.
template <GroupLike G>
GroupSet<G> generated_closure(const GroupSet<G>& a, std::size_t cap) {
  if (a.empty()) throw ParameterError("generating set must be nonempty");
  const G& grp = a.group();
  const auto gens = symmetrize(a);
  std::unordered_set<std::uint64_t> seen;
  std::deque<typename G::element_type> frontier;
  for (const auto& g : gens) {
    seen.insert(G::key(g));
    frontier.push_back(g);
  }
  while (!frontier.empty()) {
    const auto x = frontier.front();
    frontier.pop_front();
    for (const auto& s : gens) {
      const auto y = grp.mul(x, s);
      if (seen.insert(G::key(y)).second) {
        if (seen.size() > cap) throw ResourceLimit("closure exceeds cap", seen.size());
        frontier.push_back(y);
      }
    }
  }
  std::vector<std::uint64_t> keys(seen.begin(), seen.end());
  std::sort(keys.begin(), keys.end());
  return GroupSet<G>::from_sorted_keys(grp, keys);
}

}  // namespace tgrowth
