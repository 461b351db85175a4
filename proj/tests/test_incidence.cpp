#include "tgrowth/incidence.hpp"

#include <gtest/gtest.h>

#include <random>

#include "tgrowth/coset_geometry.hpp"
#include "tgrowth/growth.hpp"
#include "support.hpp"

namespace tgrowth {
namespace {

using testing::fq;
using testing::heis;
using testing::t2;

Vec4 random_vec(const Field& F, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> any(0, F.q() - 1);
  Vec4 v;
  do {
    for (auto& x : v) x = Fq{any(rng)};
  } while (v[0].v == 0 && v[1].v == 0 && v[2].v == 0 && v[3].v == 0);
  return v;
}

Fq det3(const Field& F, const Vec4& x, const Vec4& y, const Vec4& z, int c0, int c1, int c2) {
  auto m = [&](const Vec4& v, int c) { return v[static_cast<std::size_t>(c)]; };
  const Fq t0 = F.mul(m(x, c0), F.sub(F.mul(m(y, c1), m(z, c2)), F.mul(m(y, c2), m(z, c1))));
  const Fq t1 = F.mul(m(x, c1), F.sub(F.mul(m(y, c0), m(z, c2)), F.mul(m(y, c2), m(z, c0))));
  const Fq t2v = F.mul(m(x, c2), F.sub(F.mul(m(y, c0), m(z, c1)), F.mul(m(y, c1), m(z, c0))));
  return F.add(F.sub(t0, t1), t2v);
}

// Three projective points are collinear iff every 3x3 minor of their 3x4 matrix vanishes.
bool collinear(const Field& F, const Vec4& x, const Vec4& y, const Vec4& z) {
  constexpr int kMinors[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  for (const auto& c : kMinors) {
    if (det3(F, x, y, z, c[0], c[1], c[2]).v != 0) return false;
  }
  return true;
}

Collinearity collinear_oracle(const Field& F, const std::vector<ProjVector>& pts) {
  Collinearity out;
  if (pts.size() < 2) return max_collinear(F, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      std::uint64_t k = 0, w = 0;
      for (const auto& r : pts) {
        if (collinear(F, pts[i].coords, pts[j].coords, r.coords)) {
          ++k;
          w += r.weight;
        }
      }
      out.k = std::max(out.k, k);
      out.weighted = std::max(out.weighted, w);
    }
  }
  return out;
}

std::uint64_t incidence_oracle(const IncidenceInstance& inst) {
  std::uint64_t n = 0;
  for (const auto& p : inst.points) {
    for (const auto& pi : inst.planes) {
      if (dot(*inst.field, p.coords, pi.coords).v == 0) n += p.weight * pi.weight;
    }
  }
  return n;
}

TEST(PairClasses, UnipotentSubgroupIsOneClass) {
  const T2Group G(Field::builtin(5));
  const T2Set U(G, subgroup_elements(G, SubgroupTag::simple(SubgroupKind::U2)));
  const auto classes = pair_classes(U);
  ASSERT_EQ(classes.size(), 1u);
  EXPECT_EQ(classes[0].key, (std::array<Fq, 2>{fq(1), fq(1)}));
  EXPECT_EQ(classes[0].members.size(), 25u);
}

TEST(PairClasses, PartitionAllOrderedPairs) {
  std::mt19937_64 rng(41);
  const auto F = Field::builtin(7);
  for (int i = 0; i < 5; ++i) {
    const auto A = testing::random_t2_set(F, 10 + rng() % 30, rng);
    std::uint64_t total = 0;
    for (const auto& C : pair_classes(A)) total += C.members.size();
    EXPECT_EQ(total, A.size() * A.size());
    const auto B = testing::random_heis_set(F, 10 + rng() % 30, rng);
    total = 0;
    for (const auto& C : pair_classes(B)) total += C.members.size();
    EXPECT_EQ(total, B.size() * B.size());
  }
}

template <class Set>
void check_bridge(const Set& A) {
  std::uint64_t sum = 0;
  for (const auto& C : pair_classes(A)) {
    const auto inst = build_instance(A, C);
    const auto I = incidence_count(inst);
    const auto Q = quadruple_count(A, C);
    ASSERT_EQ(I, Q) << "class (" << C.key[0].v << ", " << C.key[1].v << ")";
    EXPECT_EQ(I, incidence_count(inst, {}, Exec::serial));
    EXPECT_EQ(I, incidence_oracle(inst));
    EXPECT_EQ(inst.point_weight(), C.members.size());
    EXPECT_EQ(inst.plane_weight(), C.members.size());
    sum += Q;
  }
  EXPECT_EQ(sum, energy(A));
}

TEST(Bridge, T2IncidencesEqualQuadruples) {
  std::mt19937_64 rng(42);
  for (std::uint32_t q : {5u, 7u, 9u, 8u}) {
    const auto F = Field::builtin(q);
    for (int i = 0; i < 4; ++i) check_bridge(testing::random_t2_set(F, 5 + rng() % 25, rng));
  }
  const T2Group G(Field::builtin(5));
  check_bridge(T2Set(G, subgroup_elements(G, SubgroupTag::simple(SubgroupKind::LambdaU2))));
}

TEST(Bridge, HeisIncidencesEqualQuadruples) {
  std::mt19937_64 rng(43);
  for (std::uint32_t q : {5u, 7u, 4u, 9u}) {
    const auto F = Field::builtin(q);
    for (int i = 0; i < 4; ++i) check_bridge(testing::random_heis_set(F, 5 + rng() % 25, rng));
  }
  const HeisGroup G(Field::builtin(5));
  check_bridge(HeisSet(G, subgroup_elements(G, SubgroupTag::line(G.field(), SubgroupKind::LZ, fq(1), fq(2)))));
}

TEST(Instance, T2PointAndPlaneExample) {
  const T2Group G(Field::builtin(7));
  const T2Set A(G, {t2(2, 3, 4)});
  const auto classes = pair_classes(A);
  ASSERT_EQ(classes.size(), 1u);
  const auto inst = build_instance(A, classes[0]);
  ASSERT_EQ(inst.points.size(), 1u);
  ASSERT_EQ(inst.planes.size(), 1u);
  // (1 : 3/4 : 2*3 : 2*4) = (1 : 6 : 6 : 1).
  EXPECT_EQ(inst.points[0].coords, (Vec4{fq(1), fq(6), fq(6), fq(1)}));
  // (-2*3 : 2*4 : 1 : -3/4) = (1 : 1 : 1 : 1).
  EXPECT_EQ(inst.planes[0].coords, (Vec4{fq(1), fq(1), fq(1), fq(1)}));
  EXPECT_EQ(incidence_count(inst), 1u);
  EXPECT_EQ(quadruple_count(A, classes[0]), 1u);
}

TEST(Instance, NormalizationIsCanonical) {
  std::mt19937_64 rng(44);
  const auto F = Field::builtin(9);
  for (int i = 0; i < 200; ++i) {
    const Vec4 v = random_vec(*F, rng);
    const Vec4 n = normalize_projective(*F, v);
    std::size_t lead = 0;
    while (n[lead].v == 0) ++lead;
    EXPECT_EQ(n[lead], F->one());
    const Fq s{1 + static_cast<std::uint32_t>(rng() % 8)};
    Vec4 w;
    for (std::size_t t = 0; t < 4; ++t) w[t] = F->mul(s, v[t]);
    EXPECT_EQ(normalize_projective(*F, w), n);
  }
  EXPECT_THROW(normalize_projective(*F, Vec4{}), ParameterError);
}

TEST(Instance, MergeSumsWeights) {
  const auto F = Field::builtin(5);
  const std::vector<ProjVector> raw{{{fq(2), fq(4), fq(0), fq(1)}, 1}, {{fq(1), fq(2), fq(0), fq(3)}, 2},
                                    {{fq(0), fq(0), fq(0), fq(3)}, 1}};
  const auto merged = merge_projective(*F, raw);
  ASSERT_EQ(merged.size(), 2u);
  EXPECT_EQ(merged[0].coords, (Vec4{fq(0), fq(0), fq(0), fq(1)}));
  EXPECT_EQ(merged[0].weight, 1u);
  EXPECT_EQ(merged[1].coords, (Vec4{fq(1), fq(2), fq(0), fq(3)}));
  EXPECT_EQ(merged[1].weight, 3u);
}

TEST(Collinearity, Examples) {
  const auto F = Field::builtin(5);
  const std::vector<ProjVector> one{{{fq(1), fq(0), fq(0), fq(0)}, 3}};
  EXPECT_EQ(max_collinear(*F, one).k, 1u);
  EXPECT_EQ(max_collinear(*F, one).weighted, 3u);

  // The line x2 = x3 = 0 carries every (1 : t : 0 : 0) and (0 : 1 : 0 : 0).
  std::vector<ProjVector> line;
  for (std::uint32_t t = 0; t < 5; ++t) line.push_back({{fq(1), fq(t), fq(0), fq(0)}, 1});
  line.push_back({{fq(0), fq(1), fq(0), fq(0)}, 2});
  line.push_back({{fq(0), fq(0), fq(1), fq(0)}, 1});
  const auto c = max_collinear(*F, line);
  EXPECT_EQ(c.k, 6u);
  EXPECT_EQ(c.weighted, 7u);

  // A frame has no three collinear points.
  const std::vector<ProjVector> frame{{{fq(1), fq(0), fq(0), fq(0)}, 1}, {{fq(0), fq(1), fq(0), fq(0)}, 1},
                                      {{fq(0), fq(0), fq(1), fq(0)}, 1}, {{fq(0), fq(0), fq(0), fq(1)}, 1},
                                      {{fq(1), fq(1), fq(1), fq(1)}, 1}};
  EXPECT_EQ(max_collinear(*F, frame).k, 2u);
}

TEST(Collinearity, MatchesMinorsOracle) {
  std::mt19937_64 rng(45);
  for (std::uint32_t q : {3u, 4u, 5u}) {
    const auto F = Field::builtin(q);
    for (int i = 0; i < 20; ++i) {
      std::vector<ProjVector> raw;
      const std::size_t n = 2 + rng() % 25;
      for (std::size_t j = 0; j < n; ++j) raw.push_back({random_vec(*F, rng), 1 + rng() % 3});
      const auto pts = merge_projective(*F, raw);
      const auto got = max_collinear(*F, pts);
      const auto want = collinear_oracle(*F, pts);
      EXPECT_EQ(got.k, want.k);
      EXPECT_EQ(got.weighted, want.weighted);
    }
  }
}

TEST(Collinearity, T2InstancesBoundedByCosetProfile) {
  std::mt19937_64 rng(46);
  for (std::uint32_t q : {5u, 7u, 9u}) {
    const auto F = Field::builtin(q);
    for (int i = 0; i < 4; ++i) {
      const auto A = testing::random_t2_set(F, 5 + rng() % 25, rng);
      const auto prof = coset_profile_t2(A);
      for (const auto& C : pair_classes(A)) {
        const auto inst = build_instance(A, C);
        EXPECT_LE(max_collinear(*F, inst.points).weighted, prof.m1 + prof.m2);
      }
    }
  }
}

TEST(Collinearity, HeisInstancesBoundedByCosetProfile) {
  std::mt19937_64 rng(47);
  for (std::uint32_t q : {5u, 7u}) {
    const auto F = Field::builtin(q);
    for (int i = 0; i < 4; ++i) {
      const auto A = testing::random_heis_set(F, 5 + rng() % 25, rng);
      const auto prof = coset_profile_heis(A);
      for (const auto& C : pair_classes(A)) {
        const auto inst = build_instance(A, C);
        EXPECT_LE(max_collinear(*F, inst.points).weighted, std::max(prof.big_m, prof.m * prof.m));
      }
    }
  }
}

TEST(Rudnev, Examples) {
  const auto F = Field::builtin(5);
  IncidenceInstance inst;
  inst.field = F;
  for (std::uint32_t t = 0; t < 5; ++t) inst.points.push_back({{fq(1), fq(t), fq(0), fq(0)}, 1});
  // Planes x2 = 0 and x3 = 0 contain the whole line; x0 = 0 contains none of it.
  inst.planes = {{{fq(0), fq(0), fq(1), fq(0)}, 1}, {{fq(0), fq(0), fq(0), fq(1)}, 1},
                 {{fq(1), fq(0), fq(0), fq(0)}, 1}};
  const auto rec = rudnev_ratio(inst);
  EXPECT_TRUE(rec.swapped);
  EXPECT_EQ(rec.points, 3u);
  EXPECT_EQ(rec.planes, 5u);
  EXPECT_EQ(rec.incidences, 10u);
  EXPECT_EQ(rec.incidences, incidence_oracle(inst));
  EXPECT_EQ(rec.k, 2u);
  EXPECT_TRUE(rec.p_constraint);
  const Ratio c = pinned_rudnev_constant(rec);
  EXPECT_TRUE(rudnev_bound_holds(rec, c));
  EXPECT_FALSE(rudnev_bound_holds(rec, Ratio::make(c.num * (1'000'000'000ULL / c.den) - 1, 1'000'000'000ULL)));

  IncidenceInstance empty{F, {}, {}, {}};
  const auto e = rudnev_ratio(empty);
  EXPECT_EQ(e.incidences, 0u);
  EXPECT_TRUE(rudnev_bound_holds(e, Ratio::make(0, 1)));
}

TEST(Rudnev, WeightsAreDroppedForTheBound) {
  const auto F = Field::builtin(5);
  IncidenceInstance inst{F, {{{fq(1), fq(0), fq(0), fq(0)}, 4}}, {{{fq(0), fq(1), fq(0), fq(0)}, 3}}, {}};
  const auto rec = rudnev_ratio(inst);
  EXPECT_EQ(rec.weighted_incidences, 12u);
  EXPECT_EQ(rec.incidences, 1u);
  EXPECT_EQ(rec.weighted_points, 4u);
}

TEST(Kernels, IncidencesSerialEqualsParallel) {
  std::mt19937_64 rng(48);
  const auto F = Field::builtin(7);
  for (int i = 0; i < 10; ++i) {
    std::vector<ProjVector> pts, pls;
    for (int j = 0; j < 60; ++j) pts.push_back({random_vec(*F, rng), 1 + rng() % 4});
    for (int j = 0; j < 80; ++j) pls.push_back({random_vec(*F, rng), 1 + rng() % 4});
    const IncidenceInstance inst{F, merge_projective(*F, pts), merge_projective(*F, pls), {}};
    EXPECT_EQ(incidence_count(inst, {}, Exec::serial), incidence_count(inst, {}, Exec::parallel));
    EXPECT_EQ(incidence_count(inst), incidence_oracle(inst));
  }
}

}  // namespace
}  // namespace tgrowth
