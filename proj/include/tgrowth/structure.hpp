#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tgrowth/caps.hpp"
#include "tgrowth/exact.hpp"
#include "tgrowth/group_set.hpp"

namespace tgrowth {

/// X = u⁻¹(A^4 ∩ U2): the corner entries of the unipotent elements of A^4.
std::vector<Fq> extract_X(const T2Set& A, const Caps& caps = {});

/// Either X + DX, or lDX - lDX for 1 <= l <= 6.
struct DilateForm {
  enum class Kind { x_plus_dx, signed_multiple } kind = Kind::x_plus_dx;
  int ell = 1;

  static DilateForm plus() { return {Kind::x_plus_dx, 1}; }
  static DilateForm signed_multiple(int ell) { return {Kind::signed_multiple, ell}; }
};

std::vector<Fq> dilate_sumset(const Field& field, std::span<const Fq> X, std::span<const Fq> D,
                              DilateForm form, const Caps& caps = {});

struct SumProductVerdict {
  SubfieldSpec subfield;        ///< F = <D>
  std::uint64_t x_size = 0;
  std::uint64_t sum_size = 0;   ///< |X + DX|
  std::uint64_t d_size = 0;
  std::uint64_t span_size = 0;  ///< |Span_F(X)|
  Ratio growth;                 ///< K' = |X + DX| / |X|
  Ratio density;                ///< |X| / |Span_F(X)|
  bool growth_alternative = false;   ///< K'^10 >= |D|
  bool density_alternative = false;  ///< |X| >= |Span_F(X)| / (2 K'^4)
  std::vector<std::pair<int, std::uint64_t>> multiple_sizes;  ///< l -> |lDX - lDX|
  std::optional<int> containment_depth;  ///< least l <= 6 with Span_F(X) ⊆ lDX - lDX
};

SumProductVerdict sum_product_oracle(const Field& field, std::span<const Fq> X, std::span<const Fq> D,
                                     const Caps& caps = {});

enum class StructureCase { potent, unipotent, inconclusive };

std::string to_string(StructureCase c);

struct StructureParams {
  /// POTENT when |D| <= K^exponent and |D| <= d_ceiling.
  std::uint32_t exponent = 10;
  std::uint64_t d_ceiling = 16;
  /// Largest k tried when looking for U inside A_(k).
  int power_budget = 12;
};

struct StructureReport {
  StructureParams params;
  bool symmetrized = false;  ///< input lacked e or was not closed under inverses
  std::uint64_t size = 0;    ///< size of the classified (symmetric) set
  Ratio tripling;
  std::vector<Fq> D;
  SubfieldSpec F;
  std::vector<Fq> X;
  StructureCase result = StructureCase::inconclusive;

  // POTENT.
  std::uint64_t overlap = 0;  ///< |A^2 ∩ ΛU2|
  Ratio overlap_ratio;

  // UNIPOTENT certificates.
  std::vector<Fq> W;
  std::optional<T2Set> U;
  bool c1_squares_in_u = false;   ///< A^2 ∩ U2 ⊆ U
  std::optional<int> c2_power;    ///< least k with U ⊆ A_(k)
  int c2_depth = 0;               ///< largest k examined
  bool c3_normalized = false;     ///< a⁻¹Ua = U for all a in A
  bool c4_commutators = false;    ///< [a, a'] in U for all a, a' in A
  std::string failed_certificate;

  std::string error;  ///< set when a cap stopped the pipeline
};

StructureReport classify(const T2Set& A, const StructureParams& params = {}, const Caps& caps = {});

}  // namespace tgrowth
