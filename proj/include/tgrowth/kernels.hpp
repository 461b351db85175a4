#pragma once

// Pairwise counting kernels. Each kernel has a serial reference and an OpenMP
// version; both return identical results for every thread count, because
// partial results are merged with associative integer sums and the outputs
// are sorted.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tgrowth/field.hpp"
#include "tgrowth/projective.hpp"

namespace tgrowth::kernels {

inline void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

struct KeyCount {
  std::uint64_t key;
  std::uint64_t count;

  friend bool operator==(const KeyCount&, const KeyCount&) = default;
};

namespace detail {

inline std::vector<KeyCount> sorted_counts(const std::unordered_map<std::uint64_t, std::uint64_t>& m) {
  std::vector<KeyCount> out;
  out.reserve(m.size());
  for (const auto& [k, c] : m) out.push_back({k, c});
  std::sort(out.begin(), out.end(), [](const KeyCount& x, const KeyCount& y) { return x.key < y.key; });
  return out;
}

}  // namespace detail

/// Multiset of key(i, j) over [0, n) x [0, m), as (key, count) sorted by key.
template <class KeyFn>
std::vector<KeyCount> count_pairs_serial(std::size_t n, std::size_t m, KeyFn&& key) {
  std::unordered_map<std::uint64_t, std::uint64_t> counts;
  counts.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) ++counts[key(i, j)];
  }
  return detail::sorted_counts(counts);
}

template <class KeyFn>
std::vector<KeyCount> count_pairs_parallel(std::size_t n, std::size_t m, KeyFn&& key) {
  std::unordered_map<std::uint64_t, std::uint64_t> counts;
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel
  {
    std::unordered_map<std::uint64_t, std::uint64_t> local;
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < m; ++j) ++local[key(static_cast<std::size_t>(i), j)];
    }
#pragma omp critical(tgrowth_count_pairs)
    for (const auto& [k, c] : local) counts[k] += c;
  }
  return detail::sorted_counts(counts);
}

/// Distinct values of key(i, j), sorted.
template <class KeyFn>
std::vector<std::uint64_t> distinct_pairs_serial(std::size_t n, std::size_t m, KeyFn&& key) {
  std::unordered_set<std::uint64_t> seen;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) seen.insert(key(i, j));
  }
  std::vector<std::uint64_t> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

template <class KeyFn>
std::vector<std::uint64_t> distinct_pairs_parallel(std::size_t n, std::size_t m, KeyFn&& key) {
  std::vector<std::uint64_t> out;
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel
  {
    std::unordered_set<std::uint64_t> local;
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < m; ++j) local.insert(key(static_cast<std::size_t>(i), j));
    }
#pragma omp critical(tgrowth_distinct_pairs)
    out.insert(out.end(), local.begin(), local.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Heaviest fiber over a family of partitions. For each parameter in
/// [0, n_params) the items are bucketed by key(param, item) with the given
/// weights; the result is the heaviest bucket over all parameters, ties
/// broken towards the smallest (param, key).
struct FiberMax {
  std::uint64_t weight = 0;
  std::uint64_t param = 0;
  std::uint64_t key = 0;

  bool beats(const FiberMax& o) const noexcept {
    if (weight != o.weight) return weight > o.weight;
    return std::tie(param, key) < std::tie(o.param, o.key);
  }
  friend bool operator==(const FiberMax&, const FiberMax&) = default;
};

namespace detail {

template <class KeyFn>
FiberMax fiber_max_for_param(std::uint64_t param, std::span<const std::uint64_t> weights, KeyFn& key) {
  std::unordered_map<std::uint64_t, std::uint64_t> buckets;
  buckets.reserve(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) buckets[key(param, i)] += weights[i];
  FiberMax best{0, param, 0};
  bool first = true;
  for (const auto& [k, w] : buckets) {
    FiberMax cand{w, param, k};
    if (first || cand.beats(best)) best = cand;
    first = false;
  }
  return best;
}

}  // namespace detail

template <class KeyFn>
FiberMax fiber_max_serial(std::size_t n_params, std::span<const std::uint64_t> weights, KeyFn&& key) {
  FiberMax best{};
  bool first = true;
  for (std::size_t p = 0; p < n_params; ++p) {
    const auto cand = detail::fiber_max_for_param(p, weights, key);
    if (first || cand.beats(best)) best = cand;
    first = false;
  }
  return best;
}

template <class KeyFn>
FiberMax fiber_max_parallel(std::size_t n_params, std::span<const std::uint64_t> weights, KeyFn&& key) {
  FiberMax best{};
  bool have = false;
  const auto params = static_cast<std::ptrdiff_t>(n_params);
#pragma omp parallel
  {
    FiberMax local{};
    bool local_have = false;
#pragma omp for schedule(dynamic, 4) nowait
    for (std::ptrdiff_t p = 0; p < params; ++p) {
      const auto cand = detail::fiber_max_for_param(static_cast<std::uint64_t>(p), weights, key);
      if (!local_have || cand.beats(local)) local = cand;
      local_have = true;
    }
#pragma omp critical(tgrowth_fiber_max)
    if (local_have && (!have || local.beats(best))) {
      best = local;
      have = true;
    }
  }
  return best;
}

/// Sum of weight(point) * weight(plane) over incident pairs.
std::uint64_t incidences_serial(const Field& field, std::span<const ProjVector> points,
                                std::span<const ProjVector> planes);
std::uint64_t incidences_parallel(const Field& field, std::span<const ProjVector> points,
                                  std::span<const ProjVector> planes);

}  // namespace tgrowth::kernels
