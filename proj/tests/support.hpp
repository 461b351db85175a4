#pragma once

#include <cstdint>
#include <random>
#include <unordered_set>
#include <vector>

#include "tgrowth/group_set.hpp"

namespace tgrowth::testing {

inline Fq fq(std::uint32_t v) { return Fq{v}; }

inline T2Element t2(std::uint32_t a, std::uint32_t b, std::uint32_t c) { return {Fq{a}, Fq{b}, Fq{c}}; }
inline HeisElement heis(std::uint32_t a, std::uint32_t b, std::uint32_t c) { return {Fq{a}, Fq{b}, Fq{c}}; }

inline T2Element random_t2(const Field& F, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> any(0, F.q() - 1), unit(1, F.q() - 1);
  const Fq a{unit(rng)}, b{any(rng)}, c{unit(rng)};
  return {a, b, c};
}

inline HeisElement random_heis(const Field& F, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> any(0, F.q() - 1);
  const Fq g1{any(rng)}, g2{any(rng)}, g3{any(rng)};
  return {g1, g2, g3};
}

inline T2Set random_t2_set(FieldPtr F, std::size_t n, std::mt19937_64& rng) {
  T2Group grp(F);
  std::vector<T2Element> xs;
  std::unordered_set<std::uint64_t> seen;
  while (xs.size() < n) {
    const auto g = random_t2(*F, rng);
    if (seen.insert(T2Group::key(g)).second) xs.push_back(g);
  }
  return T2Set(grp, xs);
}

inline HeisSet random_heis_set(FieldPtr F, std::size_t n, std::mt19937_64& rng) {
  HeisGroup grp(F);
  std::vector<HeisElement> xs;
  std::unordered_set<std::uint64_t> seen;
  while (xs.size() < n) {
    const auto g = random_heis(*F, rng);
    if (seen.insert(HeisGroup::key(g)).second) xs.push_back(g);
  }
  return HeisSet(grp, xs);
}

}  // namespace tgrowth::testing
