#ifndef PREFAB_SITE_GENERATOR_HPP
#define PREFAB_SITE_GENERATOR_HPP

#include "prefab/scene.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace prefab {

constexpr std::uint64_t kDefaultSiteSeed = 20200101;

/// Benchmark site with `wall_count` walls: wall_count / 5 bays (a partition
/// boxed in by four upright panels, so it can only leave once a bay wall
/// has gone), the rest as free-standing upright panels, and staging strips
/// above and below the platform. Deterministic for a given
/// (wall_count, seed); the seed only jitters bay and panel positions.
/// wall_count must be >= 4.
Scene generate_site(std::size_t wall_count, std::uint64_t seed = kDefaultSiteSeed);

/// The wall counts of the benchmark family.
inline const std::vector<std::size_t>& benchmark_wall_counts() {
  static const std::vector<std::size_t> counts = {9, 11, 17, 19};
  return counts;
}

}  // namespace prefab

#endif  // PREFAB_SITE_GENERATOR_HPP
