#include "tgrowth/kernels.hpp"

#include "tgrowth/errors.hpp"

namespace tgrowth {

Vec4 normalize_projective(const Field& field, Vec4 v) {
  for (Fq c : v) {
    if (c.v == 0) continue;
    const Fq s = field.inv(c);
    for (Fq& x : v) x = field.mul(x, s);
    return v;
  }
  throw ParameterError("zero vector has no projective class");
}

namespace kernels {

std::uint64_t incidences_serial(const Field& field, std::span<const ProjVector> points,
                                std::span<const ProjVector> planes) {
  std::uint64_t total = 0;
  for (const auto& pt : points) {
    for (const auto& pl : planes) {
      if (dot(field, pt.coords, pl.coords).v == 0) total += pt.weight * pl.weight;
    }
  }
  return total;
}

std::uint64_t incidences_parallel(const Field& field, std::span<const ProjVector> points,
                                  std::span<const ProjVector> planes) {
  std::uint64_t total = 0;
  const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(static) reduction(+ : total)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto& pt = points[static_cast<std::size_t>(i)];
    for (const auto& pl : planes) {
      if (dot(field, pt.coords, pl.coords).v == 0) total += pt.weight * pl.weight;
    }
  }
  return total;
}

}  // namespace kernels
}  // namespace tgrowth
