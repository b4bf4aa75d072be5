#pragma once

#include <cstddef>
#include <cstdint>

namespace pimoduli {

/// Size limits; every computation that could blow up checks one of these and fails
/// with SizeBoundError instead of running away.
struct SizeBounds {
  /// Largest group accepted when building a group from generators or a table.
  std::size_t group_order = 512;
  /// Largest group whose bar complex we build.
  std::size_t bar_group_order = 16;
  /// Largest number of generators of a single cochain group (copies × module rank).
  std::size_t max_cochain_rank = 2048;
  /// Largest group for the brute-force automorphism search.
  std::size_t automorphism_group_order = 64;
  /// Largest finite abelian group whose elements we enumerate.
  std::size_t element_limit = std::size_t{1} << 16;
  /// Largest number of functions the cohomology oracle enumerates.
  std::uint64_t oracle_enumeration = std::uint64_t{1} << 20;
  /// Largest |Aut(A_1)| × |Aut(A_n)| candidate pair count for Aut(A).
  std::size_t max_aut_pairs = std::size_t{1} << 20;
};

}  // namespace pimoduli
