#include <benchmark/benchmark.h>

#include <random>
#include <unordered_set>

#include "tgrowth/coset_geometry.hpp"
#include "tgrowth/growth.hpp"
#include "tgrowth/incidence.hpp"
#include "tgrowth/kernels.hpp"

namespace {

using namespace tgrowth;

T2Set random_t2(std::uint32_t q, std::size_t n, std::uint64_t seed) {
  const auto F = Field::builtin(q);
  const T2Group G(F);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> any(0, q - 1), unit(1, q - 1);
  std::unordered_set<std::uint64_t> seen;
  std::vector<T2Element> xs;
  while (xs.size() < n) {
    const T2Element g{Fq{unit(rng)}, Fq{any(rng)}, Fq{unit(rng)}};
    if (seen.insert(T2Group::key(g)).second) xs.push_back(g);
  }
  return T2Set(G, xs);
}

IncidenceInstance random_instance(std::uint32_t q, std::size_t n, std::uint64_t seed) {
  const auto F = Field::builtin(q);
  std::mt19937_64 rng(seed);
  auto draw = [&] {
    std::vector<ProjVector> raw;
    while (raw.size() < n) {
      Vec4 v{Fq{std::uint32_t(rng() % q)}, Fq{std::uint32_t(rng() % q)}, Fq{std::uint32_t(rng() % q)},
             Fq{std::uint32_t(rng() % q)}};
      if (!(v == Vec4{})) raw.push_back({v, 1});
    }
    return merge_projective(*F, raw);
  };
  return {F, draw(), draw(), {}};
}

Exec exec_of(const benchmark::State& state) { return state.range(1) ? Exec::parallel : Exec::serial; }

void BM_Energy(benchmark::State& state) {
  const auto A = random_t2(101, static_cast<std::size_t>(state.range(0)), 1);
  const Exec exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(energy(A, {}, exec));
  state.SetLabel(exec == Exec::serial ? "serial" : "parallel");
}

void BM_Incidences(benchmark::State& state) {
  const auto inst = random_instance(31, static_cast<std::size_t>(state.range(0)), 2);
  const Exec exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(incidence_count(inst, {}, exec));
  state.SetLabel(exec == Exec::serial ? "serial" : "parallel");
}

void BM_TorusScan(benchmark::State& state) {
  const auto A = random_t2(101, static_cast<std::size_t>(state.range(0)), 3);
  const Exec exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(coset_profile_t2(A, exec).m1);
  state.SetLabel(exec == Exec::serial ? "serial" : "parallel");
}

BENCHMARK(BM_Energy)->ArgsProduct({{100, 400}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Incidences)->ArgsProduct({{500, 2000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TorusScan)->ArgsProduct({{200, 1000}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
