#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tgrowth/caps.hpp"
#include "tgrowth/exact.hpp"
#include "tgrowth/group_set.hpp"

namespace tgrowth {

/// {a b : a in A, b in B}.
template <GroupLike G>
GroupSet<G> product_set(const GroupSet<G>& A, const GroupSet<G>& B, const Caps& caps = {},
                        Exec exec = Exec::parallel);

/// A^n, n >= 1.
template <GroupLike G>
GroupSet<G> power_set(const GroupSet<G>& A, int n, const Caps& caps = {});

/// A_(k) = (A ∪ A⁻¹ ∪ {e})^k, k >= 1.
template <GroupLike G>
GroupSet<G> symmetrized_power(const GroupSet<G>& A, int k, const Caps& caps = {});

enum class RepMode {
  inverse_left,  ///< x = a⁻¹ a'
  plain,         ///< x = a a'
};

/// r(x) for every x in the support, in canonical order.
template <GroupLike G>
struct RepFunction {
  RepMode mode = RepMode::inverse_left;
  std::vector<std::pair<typename G::element_type, std::uint64_t>> table;

  std::uint64_t total() const;
  std::uint64_t sum_of_squares() const;
};

template <GroupLike G>
RepFunction<G> rep_function(const GroupSet<G>& A, RepMode mode, const Caps& caps = {},
                            Exec exec = Exec::parallel);

/// E(A) = #{(g,h,u,v) in A^4 : g⁻¹h = u⁻¹v}, via the hash-join kernel.
template <GroupLike G>
std::uint64_t energy(const GroupSet<G>& A, const Caps& caps = {}, Exec exec = Exec::parallel);

/// E*(A) = #{(g,h,u,v) in A^4 : gh = uv}.
template <GroupLike G>
std::uint64_t energy_star(const GroupSet<G>& A, const Caps& caps = {}, Exec exec = Exec::parallel);

/// E(A) by direct enumeration of all |A|^4 quadruples. Refuses |A| > caps.oracle.
template <GroupLike G>
std::uint64_t energy_oracle(const GroupSet<G>& A, const Caps& caps = {});

/// Outcome of the multiplicative-combinatorics lemmas evaluated on one set.
struct LemmaVerdicts {
  SubgroupTag subgroup;
  int k = 2;

  // Plünnecke-Ruzsa: |A_(3)| |A|^2 <= 27 |A^3|^3, and
  // |A_(j)| |A_(1)|^(j-3) <= |A_(3)|^(j-2) for 3 <= j <= max(k, 3).
  bool plunnecke_tripling = false;
  std::vector<std::pair<int, bool>> plunnecke_powers;

  // Orbit-stabiliser for the left-multiplication action on cosets of H.
  std::uint64_t cosets = 0;
  std::uint64_t largest_coset_fiber = 0;
  bool orbit_lower = false;
  bool orbit_upper = false;

  // With B = A⁻¹A ∩ H: B^k ⊆ A_(2k) ∩ H.
  std::uint64_t b_size = 0;
  std::uint64_t b_power_size = 0;
  std::uint64_t a2k_in_h_size = 0;
  bool subgroup_growth = false;

  // Splitting over a normal subgroup N (H when normal, else U2 or Z).
  SubgroupTag normal_subgroup;
  std::uint64_t representatives = 0;
  bool splitting = false;

  bool all() const;
};

/// Throws GroupMismatch if `H` is not a subgroup of A's group.
template <GroupLike G>
LemmaVerdicts lemma_checks(const GroupSet<G>& A, const SubgroupTag& H, int k, const Caps& caps = {});

struct GrowthReport {
  std::uint64_t size = 0;
  std::uint64_t product_size = 0;          ///< |AA|
  std::uint64_t quotient_size = 0;         ///< |A⁻¹A|
  std::uint64_t triple_size = 0;           ///< |A^3|
  std::vector<std::pair<int, std::uint64_t>> symmetrized_sizes;  ///< k -> |A_(k)|
  Ratio tripling;                          ///< K = |A^3| / |A|
  std::uint64_t energy = 0;
  std::uint64_t energy_star = 0;

  bool cauchy_schwarz = false;       ///< E(A) |A⁻¹A| >= |A|^4
  bool cauchy_schwarz_star = false;  ///< E*(A) |AA| >= |A|^4
  bool energy_order = false;         ///< E*(A) <= E(A)
  LemmaVerdicts lemmas;
  std::string lemma_error;  ///< set when a cap stopped the lemma checks
};

/// The subgroup used for lemma checks when none is given: U2 for T2, Z for H.
template <GroupLike G>
SubgroupTag default_lemma_subgroup();

template <GroupLike G>
GrowthReport growth_report(const GroupSet<G>& A, std::span<const int> ks, const SubgroupTag& H,
                           int lemma_k, const Caps& caps = {}, Exec exec = Exec::parallel);

}  // namespace tgrowth
