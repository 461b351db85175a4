#include "tgrowth/coset_geometry.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_map>

#include "tgrowth/kernels.hpp"

namespace tgrowth {

namespace {

std::uint64_t pack2(Fq x, Fq y) { return (std::uint64_t(x.v) << 16) | y.v; }

template <class KeyFn>
kernels::FiberMax fiber_max(std::size_t n_params, std::span<const std::uint64_t> weights, KeyFn&& key,
                            Exec exec) {
  return exec == Exec::serial ? kernels::fiber_max_serial(n_params, weights, key)
                              : kernels::fiber_max_parallel(n_params, weights, key);
}

// Simple fiber maximum; ties go to the smallest key.
template <class KeyFn>
std::pair<std::uint64_t, std::uint64_t> largest_fiber(const T2Set& A, KeyFn&& key) {
  std::map<std::uint64_t, std::uint64_t> counts;
  for (const auto& g : A) ++counts[key(g)];
  std::pair<std::uint64_t, std::uint64_t> best{0, 0};
  for (const auto& [k, c] : counts) {
    if (c > best.first) best = {c, k};
  }
  return best;
}

// Line directions in lexicographic order: (0:1), then (1:beta).
std::array<Fq, 2> direction_at(std::uint64_t index) {
  if (index == 0) return {Fq{0}, Fq{1}};
  return {Fq{1}, Fq{static_cast<std::uint32_t>(index - 1)}};
}

std::uint64_t square(std::uint64_t x) { return x * x; }

}  // namespace

CosetProfileT2 coset_profile_t2(const T2Set& A, Exec exec) {
  if (A.empty()) throw ParameterError("coset profile needs a nonempty set");
  const Field& F = A.field();
  const T2Group& grp = A.group();
  CosetProfileT2 out;
  out.size = A.size();

  const auto [m3, diag] = largest_fiber(A, [](const T2Element& g) { return pack2(g.a, g.c); });
  out.m3 = m3;
  out.m3_a = Fq{static_cast<std::uint32_t>(diag >> 16)};
  out.m3_c = Fq{static_cast<std::uint32_t>(diag & 0xffff)};

  const auto [m2, d] = largest_fiber(A, [&](const T2Element& g) { return std::uint64_t(chi(grp, g).v); });
  out.m2 = m2;
  out.m2_chi = Fq{static_cast<std::uint32_t>(d)};

  // g maps the fixed point x of T_x to y = (a x + b) / c.
  std::vector<T2Element> elems(A.begin(), A.end());
  std::vector<Fq> c_inv;
  for (const auto& g : elems) c_inv.push_back(F.inv(g.c));
  const std::vector<std::uint64_t> weights(elems.size(), 1);
  const auto best = fiber_max(F.q(), weights, [&](std::uint64_t x, std::size_t i) {
    const auto& g = elems[i];
    return std::uint64_t(F.mul(F.add(F.mul(g.a, Fq{static_cast<std::uint32_t>(x)}), g.b), c_inv[i]).v);
  }, exec);
  out.m1 = best.weight;
  out.m1_x = Fq{static_cast<std::uint32_t>(best.param)};
  out.m1_y = Fq{static_cast<std::uint32_t>(best.key)};

  out.size_hypothesis = out.size * out.m3 <= square(F.p());
  return out;
}

CosetProfileHeis coset_profile_heis(const HeisSet& A, Exec exec) {
  if (A.empty()) throw ParameterError("coset profile needs a nonempty set");
  const Field& F = A.field();
  CosetProfileHeis out;
  out.size = A.size();

  // Z-coset fibers, in key order of (g1, g2).
  std::map<std::uint64_t, std::uint64_t> fibers;
  for (const auto& g : A) ++fibers[pack2(g.g1, g.g2)];
  std::vector<std::pair<Fq, Fq>> points;
  std::vector<std::uint64_t> weights;
  for (const auto& [k, c] : fibers) {
    points.emplace_back(Fq{static_cast<std::uint32_t>(k >> 16)}, Fq{static_cast<std::uint32_t>(k & 0xffff)});
    weights.push_back(c);
    if (c > out.m) {
      out.m = c;
      out.m_g1 = points.back().first;
      out.m_g2 = points.back().second;
    }
  }

  const auto best = fiber_max(std::size_t(F.q()) + 1, weights, [&](std::uint64_t dir, std::size_t i) {
    const auto ab = direction_at(dir);
    return std::uint64_t(F.add(F.mul(ab[0], points[i].first), F.mul(ab[1], points[i].second)).v);
  }, exec);
  out.big_m = best.weight;
  out.line_direction = direction_at(best.param);
  out.line_offset = Fq{static_cast<std::uint32_t>(best.key)};

  out.size_hypothesis = out.size * out.m <= square(F.p());
  out.sqrt_hypothesis = out.m * out.m <= out.size;
  return out;
}

std::uint64_t count_torus_coset(const T2Set& A, Fq x, Fq y) {
  const Field& F = A.field();
  return static_cast<std::uint64_t>(std::count_if(A.begin(), A.end(), [&](const T2Element& g) {
    return F.add(F.mul(g.a, x), g.b) == F.mul(g.c, y);
  }));
}

std::uint64_t count_chi_fiber(const T2Set& A, Fq d) {
  return static_cast<std::uint64_t>(std::count_if(
      A.begin(), A.end(), [&](const T2Element& g) { return chi(A.group(), g) == d; }));
}

std::uint64_t count_diagonal_fiber(const T2Set& A, Fq a, Fq c) {
  return static_cast<std::uint64_t>(
      std::count_if(A.begin(), A.end(), [&](const T2Element& g) { return g.a == a && g.c == c; }));
}

std::uint64_t count_z_coset(const HeisSet& A, Fq g1, Fq g2) {
  return static_cast<std::uint64_t>(
      std::count_if(A.begin(), A.end(), [&](const HeisElement& g) { return g.g1 == g1 && g.g2 == g2; }));
}

std::uint64_t count_lz_coset(const HeisSet& A, std::array<Fq, 2> direction, Fq offset) {
  const Field& F = A.field();
  return static_cast<std::uint64_t>(std::count_if(A.begin(), A.end(), [&](const HeisElement& g) {
    return F.add(F.mul(direction[0], g.g1), F.mul(direction[1], g.g2)) == offset;
  }));
}

std::vector<std::uint64_t> lambda_fiber_sizes(const T2Set& A) {
  const T2Group& grp = A.group();
  std::unordered_map<std::uint64_t, std::uint64_t> counts;
  std::vector<std::uint64_t> keys;
  keys.reserve(A.size());
  for (const auto& g : A) {
    keys.push_back(T2Group::key(rho_affine(grp, g)));
    ++counts[keys.back()];
  }
  std::vector<std::uint64_t> out;
  out.reserve(A.size());
  for (auto k : keys) out.push_back(counts[k]);
  return out;
}

std::vector<DyadicPiece> dyadic_decomposition(const T2Set& A) {
  const auto sizes = lambda_fiber_sizes(A);
  std::map<int, std::vector<T2Element>> pieces;
  for (std::size_t i = 0; i < A.size(); ++i) {
    pieces[std::bit_width(sizes[i]) - 1].push_back(A[i]);
  }
  std::vector<DyadicPiece> out;
  for (auto& [j, members] : pieces) out.push_back({j, T2Set(A.group(), std::move(members))});
  return out;
}

namespace {

void fill_ratios(BoundRecord& rec) {
  const BigInt e = rec.energy;
  rec.c_obs = quotient_decimal(e, rec.energy_rhs);
  SqrtForm scaled{rec.energy_rhs.x * rec.log_factor, rec.energy_rhs.y, rec.energy_rhs.z * rec.log_factor};
  rec.c_obs_log = quotient_decimal(e, scaled);
  rec.product_prediction = quotient_decimal(BigInt(rec.size) * rec.size, rec.product_denominator);
}

}  // namespace

BoundRecord theorem_bound_report(const T2Set& A, const CosetProfileT2& profile, std::uint64_t energy,
                                 std::uint64_t product_size, std::uint64_t quotient_size,
                                 const Caps& caps) {
  BoundRecord rec;
  rec.group = GroupKind::T2;
  rec.size = A.size();
  rec.energy = energy;
  rec.product_size = product_size;
  rec.quotient_size = quotient_size;
  const BigInt n = rec.size;
  rec.energy_rhs = {n * n, n * profile.m2, n * n * profile.m1};
  rec.product_denominator = {1, n * profile.m2, profile.m1};
  rec.log_factor = static_cast<std::uint64_t>(std::bit_width(rec.size));
  fill_ratios(rec);

  rec.size_hypothesis = profile.size_hypothesis;
  const Field& F = A.field();
  const std::uint64_t p2 = square(F.p());
  rec.piece_hypothesis = true;
  for (const auto& piece : dyadic_decomposition(A)) {
    const auto& members = piece.members;
    if (static_cast<std::uint64_t>(members.size()) * members.size() > caps.max_pairs) {
      throw ResourceLimit("dyadic piece classes: pair count exceeds cap", 0);
    }
    const auto classes = kernels::count_pairs_parallel(members.size(), members.size(),
                                                       [&](std::size_t i, std::size_t j) {
      return pack2(F.mul(members[i].a, members[j].a), F.mul(members[i].c, members[j].c));
    });
    for (const auto& kc : classes) {
      rec.max_piece_class = std::max(rec.max_piece_class, kc.count);
      if (kc.count > (std::uint64_t(1) << piece.j) * p2) rec.piece_hypothesis = false;
    }
  }
  return rec;
}

BoundRecord theorem_bound_report(const HeisSet& A, const CosetProfileHeis& profile, std::uint64_t energy,
                                 std::uint64_t product_size, std::uint64_t quotient_size,
                                 const Caps&) {
  BoundRecord rec;
  rec.group = GroupKind::H;
  rec.size = A.size();
  rec.energy = energy;
  rec.product_size = product_size;
  rec.quotient_size = quotient_size;
  const BigInt n = rec.size;
  rec.energy_rhs = {n * n * profile.m, n, n * n * profile.big_m};
  rec.product_denominator = {profile.m, n, profile.big_m};
  rec.log_factor = 1;
  fill_ratios(rec);
  rec.size_hypothesis = profile.size_hypothesis;
  rec.piece_hypothesis = profile.sqrt_hypothesis;
  return rec;
}

bool energy_bound_holds(const BoundRecord& rec, Ratio c, bool log_adjusted) {
  const std::uint64_t factor = log_adjusted ? rec.log_factor : 1;
  return ratio_ge(BigInt(c.num) * factor, c.den, rec.energy, rec.energy_rhs);
}

bool product_prediction_holds(const BoundRecord& rec, Ratio c, bool log_adjusted) {
  const std::uint64_t factor = log_adjusted ? rec.log_factor : 1;
  const BigInt target = BigInt(rec.size) * rec.size;
  for (std::uint64_t s : {rec.product_size, rec.quotient_size}) {
    if (!ratio_ge(BigInt(c.num) * factor * s, c.den, target, rec.product_denominator)) return false;
  }
  return true;
}

Ratio pinned_energy_constant(const BoundRecord& rec, bool log_adjusted) {
  const std::uint64_t factor = log_adjusted ? rec.log_factor : 1;
  const SqrtForm scaled{rec.energy_rhs.x * factor, rec.energy_rhs.y, rec.energy_rhs.z * factor};
  const BigInt t = scaled_ceil(rec.energy, scaled, 9);
  return Ratio::make(t.convert_to<std::uint64_t>(), 1'000'000'000ULL);
}

}  // namespace tgrowth
