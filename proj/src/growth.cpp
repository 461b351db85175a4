#include "tgrowth/growth.hpp"

#include <algorithm>

#include "tgrowth/kernels.hpp"

namespace tgrowth {

namespace {

void check_pairs(std::size_t n, std::size_t m, const Caps& caps, const char* what) {
  if (static_cast<std::uint64_t>(n) * m > caps.max_pairs) {
    throw ResourceLimit(std::string(what) + ": pair count exceeds cap", 0);
  }
}

template <GroupLike G, class KeyFn>
GroupSet<G> distinct_products(const G& grp, std::size_t n, std::size_t m, KeyFn&& key,
                              const Caps& caps, Exec exec) {
  auto keys = exec == Exec::serial ? kernels::distinct_pairs_serial(n, m, key)
                                   : kernels::distinct_pairs_parallel(n, m, key);
  if (keys.size() > caps.max_set) throw ResourceLimit("product set exceeds cap", keys.size());
  return GroupSet<G>::from_sorted_keys(grp, keys);
}

template <GroupLike G>
std::vector<kernels::KeyCount> pair_counts(const GroupSet<G>& A, RepMode mode, const Caps& caps,
                                           Exec exec) {
  check_pairs(A.size(), A.size(), caps, "representation function");
  const G& grp = A.group();
  const auto elems = A.elements();
  std::vector<typename G::element_type> left(elems.begin(), elems.end());
  if (mode == RepMode::inverse_left) {
    for (auto& x : left) x = grp.inv(x);
  }
  auto key = [&](std::size_t i, std::size_t j) { return G::key(grp.mul(left[i], elems[j])); };
  return exec == Exec::serial ? kernels::count_pairs_serial(A.size(), A.size(), key)
                              : kernels::count_pairs_parallel(A.size(), A.size(), key);
}

std::uint64_t sum_squares(const std::vector<kernels::KeyCount>& counts) {
  std::uint64_t total = 0;
  for (const auto& kc : counts) total += kc.count * kc.count;
  return total;
}

// Partition of A into classes of a ~ a' iff a⁻¹a' in H. Returns class sizes
// and the smallest member of each class, in order of first appearance.
template <GroupLike G>
std::pair<std::vector<std::uint64_t>, std::vector<typename G::element_type>> left_coset_classes(
    const GroupSet<G>& A, const SubgroupTag& H) {
  const G& grp = A.group();
  std::vector<int> assigned(A.size(), 0);
  std::vector<std::uint64_t> sizes;
  std::vector<typename G::element_type> reps;
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (assigned[i]) continue;
    const auto ai = grp.inv(A[i]);
    std::uint64_t count = 0;
    for (std::size_t j = i; j < A.size(); ++j) {
      if (!assigned[j] && subgroup_member(grp, grp.mul(ai, A[j]), H)) {
        assigned[j] = 1;
        ++count;
      }
    }
    sizes.push_back(count);
    reps.push_back(A[i]);
  }
  return {sizes, reps};
}

template <GroupLike G>
GroupSet<G> filter_subgroup(const GroupSet<G>& S, const SubgroupTag& H) {
  std::vector<typename G::element_type> out;
  for (const auto& x : S) {
    if (subgroup_member(S.group(), x, H)) out.push_back(x);
  }
  return GroupSet<G>(S.group(), std::move(out));
}

}  // namespace

template <GroupLike G>
GroupSet<G> product_set(const GroupSet<G>& A, const GroupSet<G>& B, const Caps& caps, Exec exec) {
  require_same_group(A, B);
  check_pairs(A.size(), B.size(), caps, "product set");
  const G& grp = A.group();
  auto key = [&](std::size_t i, std::size_t j) { return G::key(grp.mul(A[i], B[j])); };
  return distinct_products<G>(grp, A.size(), B.size(), key, caps, exec);
}

template <GroupLike G>
GroupSet<G> power_set(const GroupSet<G>& A, int n, const Caps& caps) {
  if (n < 1) throw ParameterError("power must be >= 1");
  GroupSet<G> out = A;
  for (int i = 1; i < n; ++i) out = product_set(out, A, caps);
  return out;
}

template <GroupLike G>
GroupSet<G> symmetrized_power(const GroupSet<G>& A, int k, const Caps& caps) {
  if (k < 1) throw ParameterError("symmetrized power must be >= 1");
  return power_set(symmetrize(A), k, caps);
}

template <GroupLike G>
std::uint64_t RepFunction<G>::total() const {
  std::uint64_t t = 0;
  for (const auto& [x, c] : table) t += c;
  return t;
}

template <GroupLike G>
std::uint64_t RepFunction<G>::sum_of_squares() const {
  std::uint64_t t = 0;
  for (const auto& [x, c] : table) t += c * c;
  return t;
}

template <GroupLike G>
RepFunction<G> rep_function(const GroupSet<G>& A, RepMode mode, const Caps& caps, Exec exec) {
  RepFunction<G> out;
  out.mode = mode;
  for (const auto& kc : pair_counts(A, mode, caps, exec)) {
    out.table.emplace_back(G::from_key(kc.key), kc.count);
  }
  return out;
}

template <GroupLike G>
std::uint64_t energy(const GroupSet<G>& A, const Caps& caps, Exec exec) {
  return sum_squares(pair_counts(A, RepMode::inverse_left, caps, exec));
}

template <GroupLike G>
std::uint64_t energy_star(const GroupSet<G>& A, const Caps& caps, Exec exec) {
  return sum_squares(pair_counts(A, RepMode::plain, caps, exec));
}

template <GroupLike G>
std::uint64_t energy_oracle(const GroupSet<G>& A, const Caps& caps) {
  if (A.size() > caps.oracle) throw ResourceLimit("energy oracle: set exceeds oracle cap", A.size());
  const G& grp = A.group();
  std::uint64_t count = 0;
  for (const auto& g : A) {
    const auto gi = grp.inv(g);
    for (const auto& h : A) {
      const auto lhs = grp.mul(gi, h);
      for (const auto& u : A) {
        const auto ui = grp.inv(u);
        for (const auto& v : A) {
          if (grp.mul(ui, v) == lhs) ++count;
        }
      }
    }
  }
  return count;
}

bool LemmaVerdicts::all() const {
  bool ok = plunnecke_tripling && orbit_lower && orbit_upper && subgroup_growth && splitting;
  for (const auto& [j, v] : plunnecke_powers) ok = ok && v;
  return ok;
}

template <GroupLike G>
LemmaVerdicts lemma_checks(const GroupSet<G>& A, const SubgroupTag& H, int k, const Caps& caps) {
  if (A.empty()) throw ParameterError("lemma checks need a nonempty set");
  if (k < 1) throw ParameterError("lemma exponent must be >= 1");
  const G& grp = A.group();
  (void)subgroup_member(grp, grp.identity(), H);  // rejects tags of the other group
  if (!H.closed()) throw ParameterError("L(a:b) with ab != 0 is not closed under the product");

  LemmaVerdicts out;
  out.subgroup = H;
  out.k = k;

  // Plünnecke-Ruzsa.
  const auto a3 = power_set(A, 3, caps);
  const int top = std::max(k, 3);
  std::vector<std::uint64_t> sym_sizes(static_cast<std::size_t>(std::max(2 * k, top)) + 1, 0);
  const auto a1 = symmetrize(A);
  std::vector<GroupSet<G>> sym_powers{a1};
  for (int j = 2; j <= std::max(2 * k, top); ++j) {
    sym_powers.push_back(product_set(sym_powers.back(), a1, caps));
  }
  auto sym = [&](int j) -> const GroupSet<G>& { return sym_powers[static_cast<std::size_t>(j - 1)]; };
  const BigInt n = A.size();
  out.plunnecke_tripling = BigInt(sym(3).size()) * n * n <= 27 * BigInt(a3.size()) * a3.size() * a3.size();
  for (int j = 3; j <= top; ++j) {
    const BigInt lhs = BigInt(sym(j).size()) * boost::multiprecision::pow(BigInt(sym(1).size()), j - 3);
    const BigInt rhs = boost::multiprecision::pow(BigInt(sym(3).size()), j - 2);
    out.plunnecke_powers.emplace_back(j, lhs <= rhs);
  }

  // Orbit-stabiliser.
  const auto [sizes, reps] = left_coset_classes(A, H);
  out.cosets = sizes.size();
  out.largest_coset_fiber = *std::max_element(sizes.begin(), sizes.end());
  out.orbit_lower = out.largest_coset_fiber * out.cosets >= A.size();
  const auto quotient = product_set(inverse_set(A), A, caps);
  out.orbit_upper = true;
  for (const GroupSet<G>* B : {&A, &quotient, &sym(2)}) {
    const auto AB = product_set(A, *B, caps);
    const auto in_h = filter_subgroup(*B, H);
    out.orbit_upper = out.orbit_upper && AB.size() >= in_h.size() * out.cosets;
  }

  // Growth in a subgroup.
  const auto B = filter_subgroup(quotient, H);
  const auto Bk = power_set(B, k, caps);
  const auto a2k_h = filter_subgroup(sym(2 * k), H);
  out.b_size = B.size();
  out.b_power_size = Bk.size();
  out.a2k_in_h_size = a2k_h.size();
  out.subgroup_growth = a2k_h.includes(Bk);

  // Splitting over a normal subgroup.
  out.normal_subgroup = H.normal() ? H : default_lemma_subgroup<G>();
  const auto [nsizes, phi] = left_coset_classes(A, out.normal_subgroup);
  out.representatives = phi.size();
  const auto kernel_part = filter_subgroup(quotient, out.normal_subgroup);
  out.splitting = std::all_of(A.begin(), A.end(), [&](const auto& a) {
    return std::any_of(phi.begin(), phi.end(),
                       [&](const auto& f) { return kernel_part.contains(grp.mul(grp.inv(f), a)); });
  });
  return out;
}

template <>
SubgroupTag default_lemma_subgroup<T2Group>() {
  return SubgroupTag::simple(SubgroupKind::U2);
}

template <>
SubgroupTag default_lemma_subgroup<HeisGroup>() {
  return SubgroupTag::simple(SubgroupKind::Z);
}

template <GroupLike G>
GrowthReport growth_report(const GroupSet<G>& A, std::span<const int> ks, const SubgroupTag& H,
                           int lemma_k, const Caps& caps, Exec exec) {
  if (A.empty()) throw ParameterError("growth report needs a nonempty set");
  GrowthReport out;
  out.size = A.size();
  out.product_size = product_set(A, A, caps, exec).size();
  out.quotient_size = product_set(inverse_set(A), A, caps, exec).size();
  out.triple_size = power_set(A, 3, caps).size();
  for (int k : ks) out.symmetrized_sizes.emplace_back(k, symmetrized_power(A, k, caps).size());
  out.tripling = Ratio::make(out.triple_size, out.size);
  out.energy = energy(A, caps, exec);
  out.energy_star = energy_star(A, caps, exec);

  const BigInt n4 = boost::multiprecision::pow(BigInt(out.size), 4);
  out.cauchy_schwarz = BigInt(out.energy) * out.quotient_size >= n4;
  out.cauchy_schwarz_star = BigInt(out.energy_star) * out.product_size >= n4;
  out.energy_order = out.energy_star <= out.energy;
  try {
    out.lemmas = lemma_checks(A, H, lemma_k, caps);
  } catch (const ResourceLimit& e) {
    out.lemmas.subgroup = H;
    out.lemmas.k = lemma_k;
    out.lemma_error = e.what();
  }
  return out;
}

#define TGROWTH_INSTANTIATE(G)                                                                   \
  template GroupSet<G> product_set(const GroupSet<G>&, const GroupSet<G>&, const Caps&, Exec); \
  template GroupSet<G> power_set(const GroupSet<G>&, int, const Caps&);                        \
  template GroupSet<G> symmetrized_power(const GroupSet<G>&, int, const Caps&);                \
  template struct RepFunction<G>;                                                              \
  template RepFunction<G> rep_function(const GroupSet<G>&, RepMode, const Caps&, Exec);        \
  template std::uint64_t energy(const GroupSet<G>&, const Caps&, Exec);                        \
  template std::uint64_t energy_star(const GroupSet<G>&, const Caps&, Exec);                   \
  template std::uint64_t energy_oracle(const GroupSet<G>&, const Caps&);                       \
  template LemmaVerdicts lemma_checks(const GroupSet<G>&, const SubgroupTag&, int, const Caps&); \
  template GrowthReport growth_report(const GroupSet<G>&, std::span<const int>,                \
                                      const SubgroupTag&, int, const Caps&, Exec);

TGROWTH_INSTANTIATE(T2Group)
TGROWTH_INSTANTIATE(HeisGroup)

#undef TGROWTH_INSTANTIATE

}  // namespace tgrowth
