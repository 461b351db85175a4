#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tgrowth/caps.hpp"
#include "tgrowth/coset_geometry.hpp"
#include "tgrowth/group_set.hpp"
#include "tgrowth/incidence.hpp"
#include "tgrowth/serialize.hpp"
#include "tgrowth/structure.hpp"

namespace tgrowth {

inline constexpr const char* kToolName = "tgrowth";
inline constexpr const char* kToolVersion = "1.0.0";

/// A set on disk. `descriptor` is null for explicit element lists; otherwise
/// gen_set(descriptor) reproduces `elements` exactly.
struct SetFile {
  GroupKind group = GroupKind::T2;
  FieldSpec field;
  Json descriptor;
  std::vector<std::array<std::uint32_t, 3>> elements;  ///< wire forms, canonical order
};

Json encode(const SetFile& file);
/// Validates the elements against the group; throws ParameterError.
SetFile decode_set_file(const Json& j);
SetFile make_set_file(const AnySet& set, Json descriptor = nullptr);
AnySet load_set(const SetFile& file);

/// Hex SHA-256 of the compact dump of {"group", "field", "elements"}.
std::string digest(const SetFile& file);

/// Descriptor kinds, each with "group" ("T2" or "H") and "field":
///   random           size, seed
///   subgroup         tag
///   coset            tag, g             (the left coset gH)
///   box              n                  (H over a prime field with p > 3n^2)
///   union            parts              (parts inherit group, field and seed)
///   perturbed_coset  tag, g, swaps, seed
///   sample           of, size, seed     (a uniform subset of another set)
///   subfield_group   degree             (T2 of the subfield of that degree)
/// Random draws use SplitMix64(seed); "uniform without replacement" rejects
/// repeats and non-elements over the wire-form range.
SetFile gen_set(const Json& descriptor, const Caps& caps = {});

struct ReportOptions {
  Caps caps;
  /// Pair classes fed to the incidence bridge; default all when |A| <= 25,
  /// otherwise the first 16 in key order.
  std::optional<std::size_t> max_classes;
  /// Lemma exponent; default 2 when |A_(4)| is certain to fit under
  /// caps.max_set (the group is that small, or (2|A|+1)^4 is), otherwise 1.
  std::optional<int> lemma_k;
  bool structure = false;
  bool timings = false;
  StructureParams structure_params;
};

struct RunReport {
  Json json;
  std::optional<BoundRecord> bounds;
  bool cap_overflow = false;
  bool hypothesis_issue = false;
  bool mismatch = false;
};

RunReport run_report(const SetFile& file, const ReportOptions& options = {});

std::string csv_header();
std::string csv_row(const RunReport& report);

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitHypothesis = 2, kExitCap = 3, kExitMismatch = 4 };

int exit_code(const RunReport& report);

/// Seeded point-plane instances over F_q: 2..q^2 distinct points and
/// q^2..q^2+71 distinct planes, unit weights.
std::vector<IncidenceInstance> random_rudnev_instances(std::uint32_t q, std::size_t count, std::uint64_t seed);

struct VerifyRow {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyResult {
  std::vector<VerifyRow> rows;
  bool cap_overflow = false;

  bool ok() const;
};

struct VerifyOptions {
  /// Recompute every expected value and constant and rewrite the manifest.
  bool pin = false;
  Caps caps;
};

/// Re-runs the corpus listed in `dir`/manifest.json. Throws ParameterError
/// when the manifest is missing.
VerifyResult verify_suite(const std::filesystem::path& dir, const VerifyOptions& options = {});

/// Exact integers of a report that the manifest pins.
Json fingerprint(const Json& report);

Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);

}  // namespace tgrowth
