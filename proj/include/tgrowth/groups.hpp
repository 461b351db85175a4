#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tgrowth/field.hpp"

namespace tgrowth {

/// Upper triangular matrix [[a, b], [0, c]] with a, c nonzero.
struct T2Element {
  Fq a, b, c;

  friend constexpr auto operator<=>(const T2Element&, const T2Element&) = default;
};

/// Heisenberg element (g1, g2, g3), the unitriangular matrix
/// [[1, g1, g3], [0, 1, g2], [0, 0, 1]].
struct HeisElement {
  Fq g1, g2, g3;

  friend constexpr auto operator<=>(const HeisElement&, const HeisElement&) = default;
};

enum class GroupKind { T2, H };

std::string to_string(GroupKind kind);
GroupKind group_kind_from_string(const std::string& name);

// Elements pack into 48-bit keys, 16 bits per coordinate in wire order, so
// key order is lexicographic order of the wire forms.
constexpr std::uint64_t pack3(Fq x, Fq y, Fq z) noexcept {
  return (std::uint64_t(x.v) << 32) | (std::uint64_t(y.v) << 16) | z.v;
}

/// T_2(F_q). Holds the field; elements are plain value triples.
class T2Group {
 public:
  using element_type = T2Element;
  static constexpr GroupKind kind = GroupKind::T2;

  explicit T2Group(FieldPtr field);

  const Field& field() const noexcept { return *field_; }
  const FieldPtr& field_ptr() const noexcept { return field_; }

  T2Element identity() const noexcept { return {field_->one(), field_->zero(), field_->one()}; }
  T2Element mul(const T2Element& g, const T2Element& h) const noexcept;
  T2Element inv(const T2Element& g) const;
  bool valid(const T2Element& g) const noexcept;
  /// |T_2(F_q)| = (q-1)^2 q.
  std::uint64_t order() const noexcept;

  static std::uint64_t key(const T2Element& g) noexcept { return pack3(g.a, g.b, g.c); }
  static T2Element from_key(std::uint64_t k) noexcept {
    return {Fq{std::uint32_t(k >> 32)}, Fq{std::uint32_t((k >> 16) & 0xffff)},
            Fq{std::uint32_t(k & 0xffff)}};
  }

  bool operator==(const T2Group& o) const noexcept { return field_->same_as(*o.field_); }

 private:
  FieldPtr field_;
};

/// H(F_q) with (g h) = (g1+h1, g2+h2, g3+h3+g1 h2).
class HeisGroup {
 public:
  using element_type = HeisElement;
  static constexpr GroupKind kind = GroupKind::H;

  explicit HeisGroup(FieldPtr field);

  const Field& field() const noexcept { return *field_; }
  const FieldPtr& field_ptr() const noexcept { return field_; }

  HeisElement identity() const noexcept { return {}; }
  HeisElement mul(const HeisElement& g, const HeisElement& h) const noexcept;
  HeisElement inv(const HeisElement& g) const noexcept;
  bool valid(const HeisElement& g) const noexcept;
  std::uint64_t order() const noexcept;

  static std::uint64_t key(const HeisElement& g) noexcept { return pack3(g.g1, g.g2, g.g3); }
  static HeisElement from_key(std::uint64_t k) noexcept {
    return {Fq{std::uint32_t(k >> 32)}, Fq{std::uint32_t((k >> 16) & 0xffff)},
            Fq{std::uint32_t(k & 0xffff)}};
  }

  bool operator==(const HeisGroup& o) const noexcept { return field_->same_as(*o.field_); }

 private:
  FieldPtr field_;
};

template <class G>
concept GroupLike = requires(const G& grp, const typename G::element_type& x, std::uint64_t k) {
  { grp.mul(x, x) } -> std::same_as<typename G::element_type>;
  { grp.inv(x) } -> std::same_as<typename G::element_type>;
  { grp.identity() } -> std::same_as<typename G::element_type>;
  { G::key(x) } -> std::same_as<std::uint64_t>;
  { G::from_key(k) } -> std::same_as<typename G::element_type>;
  { grp.field() } -> std::same_as<const Field&>;
};

template <GroupLike G>
typename G::element_type commutator(const G& grp, const typename G::element_type& g,
                                    const typename G::element_type& h) {
  return grp.mul(grp.mul(grp.inv(g), grp.inv(h)), grp.mul(g, h));
}

// Homomorphisms on T_2.

/// a / c.
Fq chi(const T2Group& grp, const T2Element& g);
/// (a, 0, c).
T2Element pi_diag(const T2Element& g);
/// (a/c, b/c, 1), the projection onto the affine complement of the centre.
T2Element rho_affine(const T2Group& grp, const T2Element& g);
/// u(x) = (1, x, 1).
T2Element unipotent(const Field& field, Fq x);

enum class SubgroupKind { U2, Lambda, D2, Torus, LambdaU2, LambdaTorus, Z, L, LZ };

std::string to_string(SubgroupKind kind);
SubgroupKind subgroup_kind_from_string(const std::string& name);

/// A named subgroup. Torus kinds carry x; L and LZ carry a projective
/// direction (alpha : beta) normalized so its first nonzero entry is 1.
struct SubgroupTag {
  SubgroupKind kind = SubgroupKind::U2;
  Fq x{};
  std::array<Fq, 2> direction{};

  static SubgroupTag simple(SubgroupKind kind);
  static SubgroupTag torus(Fq x, bool with_centre = false);
  /// Throws ParameterError if alpha = beta = 0.
  static SubgroupTag line(const Field& field, SubgroupKind kind, Fq alpha, Fq beta);

  GroupKind group() const noexcept;
  /// Whether the subgroup is normal in its ambient group (for every q).
  bool normal() const noexcept;
  /// False only for L(α:β) with αβ != 0: there g3 = 0 is not preserved by
  /// the product, so the tagged set is a transversal rather than a subgroup.
  bool closed() const noexcept;

  bool operator==(const SubgroupTag&) const = default;
};

/// Throws GroupMismatch when the tag belongs to the other group.
bool subgroup_member(const T2Group& grp, const T2Element& g, const SubgroupTag& tag);
bool subgroup_member(const HeisGroup& grp, const HeisElement& g, const SubgroupTag& tag);

/// All elements of the tagged subgroup, in key order.
std::vector<T2Element> subgroup_elements(const T2Group& grp, const SubgroupTag& tag);
std::vector<HeisElement> subgroup_elements(const HeisGroup& grp, const SubgroupTag& tag);

}  // namespace tgrowth
