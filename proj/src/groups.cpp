#include "tgrowth/groups.hpp"

#include <algorithm>

#include "tgrowth/errors.hpp"

namespace tgrowth {

std::string to_string(GroupKind kind) { return kind == GroupKind::T2 ? "T2" : "H"; }

GroupKind group_kind_from_string(const std::string& name) {
  if (name == "T2") return GroupKind::T2;
  if (name == "H") return GroupKind::H;
  throw ParameterError("unknown group '" + name + "'");
}

T2Group::T2Group(FieldPtr field) : field_(std::move(field)) {
  if (!field_) throw ParameterError("null field");
}

T2Element T2Group::mul(const T2Element& g, const T2Element& h) const noexcept {
  const Field& F = *field_;
  return {F.mul(g.a, h.a), F.add(F.mul(g.a, h.b), F.mul(g.b, h.c)), F.mul(g.c, h.c)};
}

T2Element T2Group::inv(const T2Element& g) const {
  const Field& F = *field_;
  const Fq ai = F.inv(g.a);
  const Fq ci = F.inv(g.c);
  return {ai, F.neg(F.mul(g.b, F.mul(ai, ci))), ci};
}

bool T2Group::valid(const T2Element& g) const noexcept {
  const Field& F = *field_;
  return F.contains(g.a) && F.contains(g.b) && F.contains(g.c) && g.a.v != 0 && g.c.v != 0;
}

std::uint64_t T2Group::order() const noexcept {
  const std::uint64_t q = field_->q();
  return (q - 1) * (q - 1) * q;
}

HeisGroup::HeisGroup(FieldPtr field) : field_(std::move(field)) {
  if (!field_) throw ParameterError("null field");
}

HeisElement HeisGroup::mul(const HeisElement& g, const HeisElement& h) const noexcept {
  const Field& F = *field_;
  return {F.add(g.g1, h.g1), F.add(g.g2, h.g2), F.add(F.add(g.g3, h.g3), F.mul(g.g1, h.g2))};
}

HeisElement HeisGroup::inv(const HeisElement& g) const noexcept {
  const Field& F = *field_;
  return {F.neg(g.g1), F.neg(g.g2), F.add(F.neg(g.g3), F.mul(g.g1, g.g2))};
}

bool HeisGroup::valid(const HeisElement& g) const noexcept {
  const Field& F = *field_;
  return F.contains(g.g1) && F.contains(g.g2) && F.contains(g.g3);
}

std::uint64_t HeisGroup::order() const noexcept {
  const std::uint64_t q = field_->q();
  return q * q * q;
}

Fq chi(const T2Group& grp, const T2Element& g) { return grp.field().div(g.a, g.c); }

T2Element pi_diag(const T2Element& g) { return {g.a, Fq{0}, g.c}; }

T2Element rho_affine(const T2Group& grp, const T2Element& g) {
  const Field& F = grp.field();
  const Fq ci = F.inv(g.c);
  return {F.mul(g.a, ci), F.mul(g.b, ci), F.one()};
}

T2Element unipotent(const Field& field, Fq x) { return {field.one(), x, field.one()}; }

namespace {

constexpr std::pair<SubgroupKind, const char*> kSubgroupNames[] = {
    {SubgroupKind::U2, "U2"},          {SubgroupKind::Lambda, "Lambda"},
    {SubgroupKind::D2, "D2"},          {SubgroupKind::Torus, "Torus"},
    {SubgroupKind::LambdaU2, "LambdaU2"}, {SubgroupKind::LambdaTorus, "LambdaTorus"},
    {SubgroupKind::Z, "Z"},            {SubgroupKind::L, "L"},
    {SubgroupKind::LZ, "LZ"},
};

}  // namespace

std::string to_string(SubgroupKind kind) {
  for (auto [k, name] : kSubgroupNames) {
    if (k == kind) return name;
  }
  return "?";
}

SubgroupKind subgroup_kind_from_string(const std::string& name) {
  for (auto [k, n] : kSubgroupNames) {
    if (name == n) return k;
  }
  throw ParameterError("unknown subgroup '" + name + "'");
}

SubgroupTag SubgroupTag::simple(SubgroupKind kind) {
  if (kind == SubgroupKind::Torus || kind == SubgroupKind::LambdaTorus ||
      kind == SubgroupKind::L || kind == SubgroupKind::LZ) {
    throw ParameterError(to_string(kind) + " needs a parameter");
  }
  return SubgroupTag{kind, {}, {}};
}

SubgroupTag SubgroupTag::torus(Fq x, bool with_centre) {
  return SubgroupTag{with_centre ? SubgroupKind::LambdaTorus : SubgroupKind::Torus, x, {}};
}

SubgroupTag SubgroupTag::line(const Field& field, SubgroupKind kind, Fq alpha, Fq beta) {
  if (kind != SubgroupKind::L && kind != SubgroupKind::LZ) {
    throw ParameterError("direction tags are L or LZ");
  }
  if (alpha.v == 0 && beta.v == 0) throw ParameterError("direction (0:0) is not projective");
  const Fq s = field.inv(alpha.v != 0 ? alpha : beta);
  return SubgroupTag{kind, {}, {field.mul(alpha, s), field.mul(beta, s)}};
}

bool SubgroupTag::closed() const noexcept {
  return kind != SubgroupKind::L || direction[0].v == 0 || direction[1].v == 0;
}

GroupKind SubgroupTag::group() const noexcept {
  switch (kind) {
    case SubgroupKind::Z:
    case SubgroupKind::L:
    case SubgroupKind::LZ:
      return GroupKind::H;
    default:
      return GroupKind::T2;
  }
}

bool SubgroupTag::normal() const noexcept {
  switch (kind) {
    case SubgroupKind::U2:
    case SubgroupKind::Lambda:
    case SubgroupKind::LambdaU2:
    case SubgroupKind::Z:
    case SubgroupKind::LZ:
      return true;
    default:
      return false;
  }
}

bool subgroup_member(const T2Group& grp, const T2Element& g, const SubgroupTag& tag) {
  const Field& F = grp.field();
  switch (tag.kind) {
    case SubgroupKind::U2:
      return g.a == F.one() && g.c == F.one();
    case SubgroupKind::Lambda:
      return g.a == g.c && g.b.v == 0;
    case SubgroupKind::D2:
      return g.b.v == 0;
    case SubgroupKind::LambdaU2:
      return g.a == g.c;
    case SubgroupKind::Torus:
    case SubgroupKind::LambdaTorus:
      return g.b == F.mul(F.sub(g.a, g.c), tag.x);
    default:
      throw GroupMismatch("subgroup " + to_string(tag.kind) + " is not a subgroup of T2");
  }
}

bool subgroup_member(const HeisGroup& grp, const HeisElement& g, const SubgroupTag& tag) {
  const Field& F = grp.field();
  auto on_line = [&] {
    return F.add(F.mul(tag.direction[0], g.g1), F.mul(tag.direction[1], g.g2)).v == 0;
  };
  switch (tag.kind) {
    case SubgroupKind::Z:
      return g.g1.v == 0 && g.g2.v == 0;
    case SubgroupKind::L:
      return g.g3.v == 0 && on_line();
    case SubgroupKind::LZ:
      return on_line();
    default:
      throw GroupMismatch("subgroup " + to_string(tag.kind) + " is not a subgroup of H");
  }
}

std::vector<T2Element> subgroup_elements(const T2Group& grp, const SubgroupTag& tag) {
  const Field& F = grp.field();
  if (tag.group() != GroupKind::T2) {
    throw GroupMismatch("subgroup " + to_string(tag.kind) + " is not a subgroup of T2");
  }
  std::vector<T2Element> out;
  const auto all = F.elements();
  std::vector<Fq> units(all.begin() + 1, all.end());
  switch (tag.kind) {
    case SubgroupKind::U2:
      for (Fq x : all) out.push_back({F.one(), x, F.one()});
      break;
    case SubgroupKind::Lambda:
      for (Fq l : units) out.push_back({l, F.zero(), l});
      break;
    case SubgroupKind::D2:
      for (Fq a : units)
        for (Fq c : units) out.push_back({a, F.zero(), c});
      break;
    case SubgroupKind::LambdaU2:
      for (Fq a : units)
        for (Fq b : all) out.push_back({a, b, a});
      break;
    case SubgroupKind::Torus:
    case SubgroupKind::LambdaTorus:
      for (Fq a : units)
        for (Fq c : units) out.push_back({a, F.mul(F.sub(a, c), tag.x), c});
      break;
    default:
      break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<HeisElement> subgroup_elements(const HeisGroup& grp, const SubgroupTag& tag) {
  const Field& F = grp.field();
  if (tag.group() != GroupKind::H) {
    throw GroupMismatch("subgroup " + to_string(tag.kind) + " is not a subgroup of H");
  }
  std::vector<HeisElement> out;
  const auto all = F.elements();
  // Points of alpha*g1 + beta*g2 = 0 are t * (beta, -alpha).
  const Fq dx = tag.direction[1];
  const Fq dy = F.neg(tag.direction[0]);
  switch (tag.kind) {
    case SubgroupKind::Z:
      for (Fq t : all) out.push_back({F.zero(), F.zero(), t});
      break;
    case SubgroupKind::L:
      for (Fq t : all) out.push_back({F.mul(t, dx), F.mul(t, dy), F.zero()});
      break;
    case SubgroupKind::LZ:
      for (Fq t : all)
        for (Fq s : all) out.push_back({F.mul(t, dx), F.mul(t, dy), s});
      break;
    default:
      break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tgrowth
