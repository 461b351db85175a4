#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tgrowth/caps.hpp"
#include "tgrowth/exact.hpp"
#include "tgrowth/group_set.hpp"
#include "tgrowth/projective.hpp"

namespace tgrowth {

/// Ordered pairs (g, v) of A x A sharing the conserved quantities of the
/// energy equation: (g1 v1, g3 v3) in T2 and (g1 + v1, g2 + v2) in H.
/// Members are index pairs into A.
struct PairClass {
  std::array<Fq, 2> key{};
  std::vector<std::pair<std::uint32_t, std::uint32_t>> members;
};

/// All nonempty classes, sorted by key; members in (i, j) order.
template <GroupLike G>
std::vector<PairClass> pair_classes(const GroupSet<G>& A, const Caps& caps = {});

/// #{((g,v),(h,u)) in C x C : g⁻¹h = u⁻¹v}, by direct evaluation in the group.
template <GroupLike G>
std::uint64_t quadruple_count(const GroupSet<G>& A, const PairClass& C, const Caps& caps = {});

/// Weighted points and planes of P^3(F_q) built from one pair class.
struct IncidenceInstance {
  FieldPtr field;
  std::vector<ProjVector> points;
  std::vector<ProjVector> planes;
  std::vector<std::array<Fq, 2>> provenance;

  std::uint64_t point_weight() const;
  std::uint64_t plane_weight() const;
};

/// Merges equal normalized vectors, summing weights; output sorted by coordinates.
std::vector<ProjVector> merge_projective(const Field& field, std::span<const ProjVector> raw);

/// T2: point (1 : g2/g3 : g1 v2 : g1 v3) per pair (g, v) and plane
/// (-u1 h2 : u1 h3 : 1 : -u2/u3) per pair (h, u).
IncidenceInstance build_instance(const T2Set& A, const PairClass& C);
/// H: point (-(g3+v3) + g1 g2 - C2 g1 : g1 : g2 : 1) per pair (g, v) and plane
/// (1 : u2 : -u1 : h3 + u3 - u1 u2 + C2 u1) per pair (h, u).
IncidenceInstance build_instance(const HeisSet& A, const PairClass& C);

/// Weighted incidences.
std::uint64_t incidence_count(const IncidenceInstance& inst, const Caps& caps = {},
                              Exec exec = Exec::parallel);

struct Collinearity {
  std::uint64_t k = 0;         ///< most distinct points on one line
  std::uint64_t weighted = 0;  ///< largest total weight on one line (km)
};

/// Lines are those spanned by pairs of distinct points. With fewer than two
/// distinct points, k is their number.
Collinearity max_collinear(const Field& field, std::span<const ProjVector> points);

/// Comparison of an instance against I <= C (|Π| |P|^(1/2) + k |Π|), with the
/// instance read as sets (weights dropped) and oriented so |P| <= |Π|.
struct RudnevRecord {
  std::uint64_t incidences = 0;
  std::uint64_t weighted_incidences = 0;
  std::uint64_t points = 0;
  std::uint64_t planes = 0;
  std::uint64_t weighted_points = 0;
  std::uint64_t weighted_planes = 0;
  std::uint64_t k = 0;
  std::uint64_t km = 0;
  bool swapped = false;
  SqrtForm rhs;
  std::string ratio;
  bool p_constraint = false;           ///< |P| <= p^2, distinct points
  bool p_constraint_weighted = false;  ///< same with the weighted count
};

RudnevRecord rudnev_ratio(const IncidenceInstance& inst, const Caps& caps = {});
bool rudnev_bound_holds(const RudnevRecord& rec, Ratio c);
Ratio pinned_rudnev_constant(const RudnevRecord& rec);

}  // namespace tgrowth
