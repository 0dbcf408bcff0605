#ifndef PREFAB_BENCH_HPP
#define PREFAB_BENCH_HPP

#include "prefab/io.hpp"
#include "prefab/scene.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace prefab {

/// One (scene, radius) cell of the resolution study.
struct BenchCell {
  std::string scene_name;
  std::size_t wall_count = 0;
  double radius = 0.0;
  std::size_t node_count = 0;
  std::vector<double> samples_s;    // planning wall-clock per repetition
  double median_s = 0.0;
  double total_path_cost = 0.0;     // metres, summed over executed moves
  std::size_t deferrals = 0;
  std::size_t collision_count = 0;  // verifier violations at the default step
  double sample_step = 0.0;
  bool deadlocked = false;
};

struct BenchTable {
  std::vector<BenchCell> rows;
  int repetitions = 0;

  /// Throws LookupError when no such cell exists.
  const BenchCell& at(std::size_t wall_count, double radius) const;
};

/// Text placed in the output metadata describing what the timings cover.
extern const char* const kTimingDefinition;

/// Thread count for the untimed verification phase, read from
/// PREFAB_BENCH_THREADS (default 1). Timed runs are always sequential.
int bench_threads_from_env();

/// Plans every scene (disassembly, scene-file order) at every radius
/// `repetitions` times and records the median planning time. Scenes are
/// validated first; a failing scene aborts with its name.
BenchTable run_benchmark(const std::vector<Scene>& scenes, const std::vector<double>& radii,
                         int repetitions, int threads = 1);

Json bench_to_json(const BenchTable& table);

/// Wall count x radius grid of median times; '*' marks collisions and
/// 'D' a deadlock.
std::string format_bench_table(const BenchTable& table);

}  // namespace prefab

#endif  // PREFAB_BENCH_HPP
