#pragma once

#include <cstddef>
#include <cstdint>

namespace tgrowth {

/// Resource caps. Every enumerating operation checks the relevant cap before
/// allocating and throws ResourceLimit when it would be exceeded.
struct Caps {
  /// Largest set (product set, power, span, closure) that may be materialized.
  std::size_t max_set = 1'000'000;
  /// Largest number of ordered pairs a pairwise kernel may visit.
  std::uint64_t max_pairs = 100'000'000;
  /// Largest |A| for the quartic energy oracle.
  std::size_t oracle = 60;
};

/// Which kernel implementation to run. Results are identical; `serial` is the
/// reference the parallel path is tested against.
enum class Exec { serial, parallel };

}  // namespace tgrowth
