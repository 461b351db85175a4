#include "tgrowth/growth.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

#include "support.hpp"

namespace tgrowth {
namespace {

using testing::t2;

class GrowthT2F5 : public ::testing::Test {
 protected:
  FieldPtr F = Field::builtin(5);
  T2Group G{F};
  std::mt19937_64 rng{21};

  T2Set U2() const { return T2Set(G, subgroup_elements(G, SubgroupTag::simple(SubgroupKind::U2))); }
};

TEST_F(GrowthT2F5, ProductSetExamples) {
  EXPECT_EQ(product_set(U2(), U2()), U2());
  const T2Set e(G, {G.identity()});
  const auto B = testing::random_t2_set(F, 12, rng);
  EXPECT_EQ(product_set(e, B), B);
  const T2Set A(G, {t2(1, 1, 1), t2(1, 2, 1)});
  EXPECT_EQ(product_set(A, A), T2Set(G, {t2(1, 2, 1), t2(1, 3, 1), t2(1, 4, 1)}));
}

TEST_F(GrowthT2F5, SymmetrizedPowers) {
  const auto S = symmetrize(testing::random_t2_set(F, 6, rng));
  EXPECT_EQ(symmetrized_power(S, 1), S);

  // (2, 0, 1) has order 3 in T2(F_7).
  const T2Group G7(Field::builtin(7));
  const T2Set g(G7, {t2(2, 0, 1)});
  EXPECT_EQ(symmetrized_power(g, 2).size(), 3u);

  const auto A = testing::random_t2_set(F, 5, rng);
  for (int k = 1; k < 4; ++k) EXPECT_TRUE(symmetrized_power(A, k + 1).includes(symmetrized_power(A, k)));
  const auto A3 = symmetrized_power(A, 3);
  EXPECT_TRUE(A3.contains(G.identity()));
  EXPECT_EQ(inverse_set(A3), A3);
}

TEST_F(GrowthT2F5, RepresentationFunction) {
  const T2Set e(G, {G.identity()});
  const auto r = rep_function(e, RepMode::inverse_left);
  ASSERT_EQ(r.table.size(), 1u);
  EXPECT_EQ(r.table[0].second, 1u);

  const auto g = t2(2, 1, 1);
  const T2Set A(G, {G.identity(), g});
  const auto rA = rep_function(A, RepMode::inverse_left);
  std::map<T2Element, std::uint64_t> m(rA.table.begin(), rA.table.end());
  EXPECT_EQ(m.size(), 3u);
  EXPECT_EQ(m[G.identity()], 2u);
  EXPECT_EQ(m[g], 1u);
  EXPECT_EQ(m[G.inv(g)], 1u);

  for (int i = 0; i < 10; ++i) {
    const auto B = testing::random_t2_set(F, 15, rng);
    for (auto mode : {RepMode::inverse_left, RepMode::plain}) {
      const auto rb = rep_function(B, mode);
      EXPECT_EQ(rb.total(), 225u);
    }
    EXPECT_EQ(rep_function(B, RepMode::inverse_left).sum_of_squares(), energy(B));
    EXPECT_EQ(rep_function(B, RepMode::plain).sum_of_squares(), energy_star(B));
    EXPECT_EQ(rep_function(B, RepMode::inverse_left).table.size(), product_set(inverse_set(B), B).size());
  }
}

TEST_F(GrowthT2F5, EnergyExamples) {
  const T2Set A(G, {G.identity(), t2(2, 1, 1)});
  EXPECT_EQ(energy(A), 6u);
  EXPECT_EQ(energy_oracle(A), 6u);
  const T2Set e(G, {G.identity()});
  EXPECT_EQ(energy_oracle(e), 1u);
  const T2Group G7(Field::builtin(7));
  const T2Set U(G7, subgroup_elements(G7, SubgroupTag::simple(SubgroupKind::U2)));
  EXPECT_EQ(energy(U), 343u);
  EXPECT_EQ(product_set(U, U).size(), 7u);
}

TEST_F(GrowthT2F5, EnergyMatchesOracleAndSerialPath) {
  for (int i = 0; i < 20; ++i) {
    const auto A = testing::random_t2_set(F, 1 + rng() % 30, rng);
    const auto E = energy(A);
    EXPECT_EQ(E, energy_oracle(A));
    EXPECT_EQ(E, energy(A, {}, Exec::serial));
    EXPECT_EQ(energy_star(A), energy_star(A, {}, Exec::serial));
    EXPECT_EQ(product_set(A, A), product_set(A, A, {}, Exec::serial));
  }
}

TEST_F(GrowthT2F5, EnergyInequalities) {
  for (int i = 0; i < 20; ++i) {
    const auto A = testing::random_t2_set(F, 2 + rng() % 40, rng);
    const auto r = growth_report(A, std::vector<int>{1, 2, 3}, SubgroupTag::simple(SubgroupKind::U2), 2);
    EXPECT_TRUE(r.cauchy_schwarz);
    EXPECT_TRUE(r.cauchy_schwarz_star);
    EXPECT_TRUE(r.energy_order);
    EXPECT_TRUE(r.lemmas.plunnecke_tripling);
  }
}

TEST_F(GrowthT2F5, Caps) {
  const auto A = testing::random_t2_set(F, 30, rng);
  Caps small;
  small.oracle = 10;
  EXPECT_THROW(energy_oracle(A, small), ResourceLimit);
  small.max_pairs = 100;
  EXPECT_THROW(energy(A, small), ResourceLimit);
  EXPECT_THROW(product_set(A, A, small), ResourceLimit);
  Caps tiny_set;
  tiny_set.max_set = 10;
  EXPECT_THROW(power_set(A, 3, tiny_set), ResourceLimit);
}

TEST_F(GrowthT2F5, LemmasOnSubgroup) {
  const auto v = lemma_checks(U2(), SubgroupTag::simple(SubgroupKind::U2), 2);
  EXPECT_TRUE(v.all());
  EXPECT_EQ(v.cosets, 1u);
  EXPECT_EQ(v.largest_coset_fiber, 5u);
  const auto r = growth_report(U2(), std::vector<int>{1, 2, 3}, SubgroupTag::simple(SubgroupKind::U2), 2);
  EXPECT_EQ(r.tripling, Ratio::make(1, 1));
}

TEST_F(GrowthT2F5, LemmasOnSingleCoset) {
  const auto g = t2(2, 3, 4);
  std::vector<T2Element> coset;
  for (const auto& h : subgroup_elements(G, SubgroupTag::simple(SubgroupKind::U2))) coset.push_back(G.mul(g, h));
  const T2Set A(G, coset);
  const auto v = lemma_checks(A, SubgroupTag::simple(SubgroupKind::U2), 2);
  EXPECT_EQ(v.cosets, 1u);
  EXPECT_EQ(v.largest_coset_fiber, A.size());
  EXPECT_TRUE(v.orbit_lower);
}

TEST_F(GrowthT2F5, LemmasOnRandomSets) {
  for (int i = 0; i < 5; ++i) {
    const auto A = testing::random_t2_set(F, 20, rng);
    EXPECT_TRUE(lemma_checks(A, SubgroupTag::simple(SubgroupKind::U2), 2).all());
    EXPECT_TRUE(lemma_checks(A, SubgroupTag::torus(Fq{2}), 2).all());
  }
  const T2Set A(G, {G.identity()});
  EXPECT_THROW(lemma_checks(A, SubgroupTag::simple(SubgroupKind::Z), 2), GroupMismatch);
}

TEST(GrowthHeis, EnergyMatchesOracle) {
  std::mt19937_64 rng(8);
  const auto F = Field::builtin(5);
  for (int i = 0; i < 20; ++i) {
    const auto A = testing::random_heis_set(F, 1 + rng() % 30, rng);
    EXPECT_EQ(energy(A), energy_oracle(A));
    EXPECT_EQ(energy(A), energy(A, {}, Exec::serial));
    const auto r = growth_report(A, std::vector<int>{1, 2, 3}, SubgroupTag::simple(SubgroupKind::Z), 2);
    EXPECT_TRUE(r.cauchy_schwarz && r.cauchy_schwarz_star && r.energy_order);
    EXPECT_TRUE(r.lemmas.all());
  }
}

TEST(GrowthHeis, LemmasOnLineSubgroup) {
  std::mt19937_64 rng(9);
  const auto F = Field::builtin(7);
  const auto A = testing::random_heis_set(F, 25, rng);
  const auto v = lemma_checks(A, SubgroupTag::line(*F, SubgroupKind::L, Fq{0}, Fq{1}), 2);
  EXPECT_TRUE(v.all());
  EXPECT_EQ(v.normal_subgroup.kind, SubgroupKind::Z);
  EXPECT_TRUE(lemma_checks(A, SubgroupTag::line(*F, SubgroupKind::LZ, Fq{1}, Fq{3}), 2).all());
  EXPECT_THROW(lemma_checks(A, SubgroupTag::line(*F, SubgroupKind::L, Fq{1}, Fq{3}), 2), ParameterError);
}

}  // namespace
}  // namespace tgrowth
