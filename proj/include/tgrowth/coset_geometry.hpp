#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tgrowth/caps.hpp"
#include "tgrowth/exact.hpp"
#include "tgrowth/group_set.hpp"

namespace tgrowth {

/// Largest occupancies of cosets of the abelian obstructions in T2.
///   M1: cosets of Lambda*T_x, i.e. {g : a x + b = c y} for a pair (x, y).
///   M2: cosets of Lambda*U2, i.e. fibers of chi.
///   M3: cosets of U2, i.e. fibers of the diagonal (a, c).
struct CosetProfileT2 {
  std::uint64_t size = 0;
  std::uint64_t m1 = 0;
  Fq m1_x, m1_y;
  std::uint64_t m2 = 0;
  Fq m2_chi;
  std::uint64_t m3 = 0;
  Fq m3_a, m3_c;
  /// |A| M3 <= p^2.
  bool size_hypothesis = false;
};

/// Largest occupancies of cosets of Z (fibers over (g1, g2)) and of LZ
/// (preimages of affine lines alpha g1 + beta g2 = t).
struct CosetProfileHeis {
  std::uint64_t size = 0;
  std::uint64_t m = 0;
  Fq m_g1, m_g2;
  std::uint64_t big_m = 0;
  std::array<Fq, 2> line_direction{};
  Fq line_offset;
  /// |A| m <= p^2.
  bool size_hypothesis = false;
  /// m <= sqrt(|A|).
  bool sqrt_hypothesis = false;
};

CosetProfileT2 coset_profile_t2(const T2Set& A, Exec exec = Exec::parallel);
CosetProfileHeis coset_profile_heis(const HeisSet& A, Exec exec = Exec::parallel);

/// Occupancy of the witness cosets, counted directly.
std::uint64_t count_torus_coset(const T2Set& A, Fq x, Fq y);
std::uint64_t count_chi_fiber(const T2Set& A, Fq d);
std::uint64_t count_diagonal_fiber(const T2Set& A, Fq a, Fq c);
std::uint64_t count_z_coset(const HeisSet& A, Fq g1, Fq g2);
std::uint64_t count_lz_coset(const HeisSet& A, std::array<Fq, 2> direction, Fq offset);

/// Elements whose Lambda-coset fiber in A has size in [2^j, 2^(j+1)).
struct DyadicPiece {
  int j = 0;
  T2Set members;
};

/// Nonempty pieces in increasing j.
std::vector<DyadicPiece> dyadic_decomposition(const T2Set& A);

/// Size of the Lambda-coset fiber gΛ ∩ A for each element of A, in A's order.
std::vector<std::uint64_t> lambda_fiber_sizes(const T2Set& A);

/// Observed energy constants against the energy estimates, with the
/// product-set lower bounds they imply.
struct BoundRecord {
  GroupKind group = GroupKind::T2;
  std::uint64_t size = 0;
  std::uint64_t energy = 0;
  std::uint64_t product_size = 0;   ///< |AA|
  std::uint64_t quotient_size = 0;  ///< |A⁻¹A|

  /// T2: |A|^(5/2) M2^(1/2) + |A|^2 M1.  H: |A|^(5/2) m + |A|^2 M.
  SqrtForm energy_rhs;
  /// T2: M1 + sqrt(|A| M2).  H: M + m sqrt(|A|).
  SqrtForm product_denominator;
  /// floor(log2 |A|) + 1 for T2 (the number of possible dyadic pieces), 1 for H.
  std::uint64_t log_factor = 1;

  std::string c_obs;            ///< E / rhs
  std::string c_obs_log;        ///< E / (log_factor * rhs)
  std::string product_prediction;  ///< |A|^2 / product_denominator

  // Hypotheses. T2: size = |A| M3 <= p^2; piece = for every dyadic piece A_m and
  // every pair class C of A_m, |P_C| <= m p^2. H: size = |A| m <= p^2;
  // piece = m <= sqrt(|A|).
  bool size_hypothesis = false;
  bool piece_hypothesis = false;
  std::uint64_t max_piece_class = 0;  ///< T2: largest |P_C| over pieces (0 for H)

  bool hypotheses() const { return size_hypothesis && piece_hypothesis; }
};

BoundRecord theorem_bound_report(const T2Set& A, const CosetProfileT2& profile,
                                 std::uint64_t energy, std::uint64_t product_size,
                                 std::uint64_t quotient_size, const Caps& caps = {});
BoundRecord theorem_bound_report(const HeisSet& A, const CosetProfileHeis& profile,
                                 std::uint64_t energy, std::uint64_t product_size,
                                 std::uint64_t quotient_size, const Caps& caps = {});

/// E <= C * log_factor * rhs (log_adjusted) or E <= C * rhs.
bool energy_bound_holds(const BoundRecord& rec, Ratio c, bool log_adjusted);
/// min(|AA|, |A⁻¹A|) * C * factor * denominator >= |A|^2.
bool product_prediction_holds(const BoundRecord& rec, Ratio c, bool log_adjusted);
/// Smallest 9-digit decimal constant C with energy_bound_holds(rec, C, log_adjusted).
Ratio pinned_energy_constant(const BoundRecord& rec, bool log_adjusted);

}  // namespace tgrowth
