#include "tgrowth/incidence.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "tgrowth/kernels.hpp"

namespace tgrowth {

namespace {

void check_pairs(std::uint64_t n, std::uint64_t m, const Caps& caps, const char* what) {
  if (n * m > caps.max_pairs) throw ResourceLimit(std::string(what) + ": pair count exceeds cap", 0);
}

std::array<Fq, 2> class_key(const T2Group& grp, const T2Element& g, const T2Element& v) {
  const Field& F = grp.field();
  return {F.mul(g.a, v.a), F.mul(g.c, v.c)};
}

std::array<Fq, 2> class_key(const HeisGroup& grp, const HeisElement& g, const HeisElement& v) {
  const Field& F = grp.field();
  return {F.add(g.g1, v.g1), F.add(g.g2, v.g2)};
}

}  // namespace

template <GroupLike G>
std::vector<PairClass> pair_classes(const GroupSet<G>& A, const Caps& caps) {
  check_pairs(A.size(), A.size(), caps, "pair classes");
  std::map<std::array<Fq, 2>, std::vector<std::pair<std::uint32_t, std::uint32_t>>> classes;
  for (std::uint32_t i = 0; i < A.size(); ++i) {
    for (std::uint32_t j = 0; j < A.size(); ++j) {
      classes[class_key(A.group(), A[i], A[j])].emplace_back(i, j);
    }
  }
  std::vector<PairClass> out;
  out.reserve(classes.size());
  for (auto& [key, members] : classes) out.push_back({key, std::move(members)});
  return out;
}

template <GroupLike G>
std::uint64_t quadruple_count(const GroupSet<G>& A, const PairClass& C, const Caps& caps) {
  check_pairs(C.members.size(), C.members.size(), caps, "quadruple count");
  const G& grp = A.group();
  std::vector<typename G::element_type> inverses;
  inverses.reserve(A.size());
  for (const auto& x : A) inverses.push_back(grp.inv(x));
  std::uint64_t count = 0;
  // First pair is (g, v), second is (h, u); the condition is g⁻¹h = u⁻¹v.
  for (const auto& [gi, vi] : C.members) {
    for (const auto& [hi, ui] : C.members) {
      if (grp.mul(inverses[gi], A[hi]) == grp.mul(inverses[ui], A[vi])) ++count;
    }
  }
  return count;
}

std::uint64_t IncidenceInstance::point_weight() const {
  std::uint64_t w = 0;
  for (const auto& p : points) w += p.weight;
  return w;
}

std::uint64_t IncidenceInstance::plane_weight() const {
  std::uint64_t w = 0;
  for (const auto& p : planes) w += p.weight;
  return w;
}

std::vector<ProjVector> merge_projective(const Field& field, std::span<const ProjVector> raw) {
  std::map<std::uint64_t, ProjVector> merged;
  for (const auto& v : raw) {
    const Vec4 n = normalize_projective(field, v.coords);
    auto [it, inserted] = merged.try_emplace(pack4(n), ProjVector{n, 0});
    it->second.weight += v.weight;
  }
  std::vector<ProjVector> out;
  out.reserve(merged.size());
  for (auto& [k, v] : merged) out.push_back(v);
  return out;
}

IncidenceInstance build_instance(const T2Set& A, const PairClass& C) {
  if (C.members.empty()) throw ParameterError("pair class is empty");
  const Field& F = A.field();
  std::vector<ProjVector> points, planes;
  points.reserve(C.members.size());
  planes.reserve(C.members.size());
  for (const auto& [i, j] : C.members) {
    const T2Element& g = A[i];
    const T2Element& v = A[j];
    if (g.c.v == 0 || v.c.v == 0) throw ParameterError("T2 element with zero diagonal entry");
    // As a point the pair is (g, v); as a plane it is (h, u) = (g, v).
    points.push_back({{F.one(), F.div(g.b, g.c), F.mul(g.a, v.b), F.mul(g.a, v.c)}, 1});
    const T2Element& h = g;
    const T2Element& u = v;
    planes.push_back({{F.neg(F.mul(u.a, h.b)), F.mul(u.a, h.c), F.one(), F.neg(F.div(u.b, u.c))}, 1});
  }
  return {A.group().field_ptr(), merge_projective(F, points), merge_projective(F, planes), {C.key}};
}

IncidenceInstance build_instance(const HeisSet& A, const PairClass& C) {
  if (C.members.empty()) throw ParameterError("pair class is empty");
  const Field& F = A.field();
  const Fq c2 = C.key[1];
  std::vector<ProjVector> points, planes;
  points.reserve(C.members.size());
  planes.reserve(C.members.size());
  for (const auto& [i, j] : C.members) {
    const HeisElement& g = A[i];
    const HeisElement& v = A[j];
    const Fq head = F.sub(F.add(F.neg(F.add(g.g3, v.g3)), F.mul(g.g1, g.g2)), F.mul(c2, g.g1));
    points.push_back({{head, g.g1, g.g2, F.one()}, 1});
    const HeisElement& h = g;
    const HeisElement& u = v;
    const Fq tail = F.add(F.sub(F.add(h.g3, u.g3), F.mul(u.g1, u.g2)), F.mul(c2, u.g1));
    planes.push_back({{F.one(), u.g2, F.neg(u.g1), tail}, 1});
  }
  return {A.group().field_ptr(), merge_projective(F, points), merge_projective(F, planes), {C.key}};
}

std::uint64_t incidence_count(const IncidenceInstance& inst, const Caps& caps, Exec exec) {
  check_pairs(inst.points.size(), inst.planes.size(), caps, "incidence count");
  return exec == Exec::serial ? kernels::incidences_serial(*inst.field, inst.points, inst.planes)
                              : kernels::incidences_parallel(*inst.field, inst.points, inst.planes);
}

Collinearity max_collinear(const Field& field, std::span<const ProjVector> points) {
  Collinearity out;
  if (points.size() < 2) {
    out.k = points.size();
    for (const auto& p : points) out.weighted += p.weight;
    return out;
  }
  // Points on a common line through P share the projection of Q away from P:
  // Q - Q[pivot] * P, normalized, where pivot is P's leading coordinate.
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vec4& P = points[i].coords;
    std::size_t pivot = 0;
    while (P[pivot].v == 0) ++pivot;
    std::unordered_map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> lines;
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      const Vec4& Q = points[j].coords;
      Vec4 d;
      for (std::size_t t = 0; t < 4; ++t) d[t] = field.sub(Q[t], field.mul(Q[pivot], P[t]));
      auto& entry = lines[pack4(normalize_projective(field, d))];
      entry.first += 1;
      entry.second += points[j].weight;
    }
    for (const auto& [key, entry] : lines) {
      out.k = std::max(out.k, entry.first + 1);
      out.weighted = std::max(out.weighted, entry.second + points[i].weight);
    }
  }
  return out;
}

RudnevRecord rudnev_ratio(const IncidenceInstance& inst, const Caps& caps) {
  RudnevRecord rec;
  const Field& F = *inst.field;
  rec.weighted_incidences = incidence_count(inst, caps);

  std::vector<ProjVector> pts = inst.points;
  std::vector<ProjVector> pls = inst.planes;
  if (pts.size() > pls.size()) {
    std::swap(pts, pls);
    rec.swapped = true;
  }
  for (const auto& p : pts) rec.weighted_points += p.weight;
  for (const auto& p : pls) rec.weighted_planes += p.weight;
  const auto col = max_collinear(F, pts);
  rec.k = col.k;
  rec.km = col.weighted;
  for (auto& p : pts) p.weight = 1;
  for (auto& p : pls) p.weight = 1;
  rec.incidences = kernels::incidences_parallel(F, pts, pls);
  rec.points = pts.size();
  rec.planes = pls.size();
  rec.rhs = {rec.planes, rec.points, BigInt(rec.k) * rec.planes};
  rec.ratio = quotient_decimal(rec.incidences, rec.rhs);
  const std::uint64_t p2 = std::uint64_t(F.p()) * F.p();
  rec.p_constraint = rec.points <= p2;
  rec.p_constraint_weighted = rec.weighted_points <= p2;
  return rec;
}

bool rudnev_bound_holds(const RudnevRecord& rec, Ratio c) {
  if (!rec.rhs.positive()) return rec.incidences == 0;
  return ratio_ge(c.num, c.den, rec.incidences, rec.rhs);
}

Ratio pinned_rudnev_constant(const RudnevRecord& rec) {
  if (!rec.rhs.positive()) return Ratio{0, 1};
  const BigInt t = scaled_ceil(rec.incidences, rec.rhs, 9);
  return Ratio::make(t.convert_to<std::uint64_t>(), 1'000'000'000ULL);
}

template std::vector<PairClass> pair_classes(const GroupSet<T2Group>&, const Caps&);
template std::vector<PairClass> pair_classes(const GroupSet<HeisGroup>&, const Caps&);
template std::uint64_t quadruple_count(const GroupSet<T2Group>&, const PairClass&, const Caps&);
template std::uint64_t quadruple_count(const GroupSet<HeisGroup>&, const PairClass&, const Caps&);

}  // namespace tgrowth
