#pragma once

#include <array>
#include <compare>
#include <cstdint>

#include "tgrowth/field.hpp"

namespace tgrowth {

using Vec4 = std::array<Fq, 4>;

/// A weighted point or plane of P^3(F_q). Coordinates are normalized so the
/// first nonzero one is 1.
struct ProjVector {
  Vec4 coords{};
  std::uint64_t weight = 1;

  friend bool operator==(const ProjVector&, const ProjVector&) = default;
};

/// Scales `v` so its first nonzero coordinate is 1. Throws ParameterError on
/// the zero vector.
Vec4 normalize_projective(const Field& field, Vec4 v);

inline Fq dot(const Field& F, const Vec4& x, const Vec4& y) noexcept {
  Fq s = F.mul(x[0], y[0]);
  s = F.add(s, F.mul(x[1], y[1]));
  s = F.add(s, F.mul(x[2], y[2]));
  return F.add(s, F.mul(x[3], y[3]));
}

inline std::uint64_t pack4(const Vec4& v) noexcept {
  return (std::uint64_t(v[0].v) << 48) | (std::uint64_t(v[1].v) << 32) |
         (std::uint64_t(v[2].v) << 16) | v[3].v;
}

}  // namespace tgrowth
