#include "prefab/bench.hpp"

#include "prefab/errors.hpp"
#include "prefab/grid.hpp"
#include "prefab/planner.hpp"
#include "prefab/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <thread>

namespace prefab {

const char* const kTimingDefinition =
    "wall-clock seconds (steady clock) for grid construction, per-attempt occupancy masks, "
    "A* search and queue scheduling of a full disassembly; excludes file I/O, verification "
    "and rendering; median over repetitions";

const BenchCell& BenchTable::at(std::size_t wall_count, double radius) const {
  for (const BenchCell& c : rows) {
    if (c.wall_count == wall_count && std::abs(c.radius - radius) < 1e-12) return c;
  }
  throw LookupError("no benchmark cell for " + std::to_string(wall_count) + " walls at radius " +
                    std::to_string(radius));
}

int bench_threads_from_env() {
  const char* value = std::getenv("PREFAB_BENCH_THREADS");
  if (value == nullptr) return 1;
  const int n = std::atoi(value);
  return n > 0 ? n : 1;
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

BenchTable run_benchmark(const std::vector<Scene>& scenes, const std::vector<double>& radii,
                         int repetitions, int threads) {
  if (repetitions < 1) {
    throw PreconditionError("repetitions must be >= 1");
  }
  for (const Scene& s : scenes) {
    try {
      s.validate();
    } catch (const ValidationError& e) {
      throw ValidationError("scene '" + s.name + "': " + e.what());
    }
  }

  BenchTable table;
  table.repetitions = repetitions;
  std::vector<const Scene*> cell_scene;
  std::vector<Plan> cell_plan;

  // Cells and their reference plans (first repetition).
  for (const Scene& scene : scenes) {
    for (double radius : radii) {
      BenchCell cell;
      cell.scene_name = scene.name;
      cell.wall_count = scene.walls.size();
      cell.radius = radius;
      cell.sample_step = default_sample_step(scene, radius);
      table.rows.push_back(std::move(cell));
      cell_scene.push_back(&scene);
    }
  }
  std::vector<ScheduleResult> reference(table.rows.size());

  // Timed phase: strictly one cell at a time. Repetitions go round-robin
  // over the cells so that a change in machine speed costs each cell at
  // most one sample instead of skewing every sample of one cell; within a
  // round, cells of equal radius run back to back.
  std::vector<std::size_t> round;
  for (std::size_t r = 0; r < radii.size(); ++r) {
    for (std::size_t s = 0; s < scenes.size(); ++s) round.push_back(s * radii.size() + r);
  }
  for (int rep = 0; rep < repetitions; ++rep) {
    for (std::size_t i : round) {
      const Scene& scene = *cell_scene[i];
      BenchCell& cell = table.rows[i];
      const std::vector<std::string> order = scene_order(scene);
      const auto t0 = std::chrono::steady_clock::now();
      const Grid grid = build_grid(scene.bounds, cell.radius);
      ScheduleResult result = schedule_disassembly(scene, order, grid);
      const auto t1 = std::chrono::steady_clock::now();
      cell.samples_s.push_back(std::chrono::duration<double>(t1 - t0).count());
      cell.node_count = grid.size();
      if (rep == 0) {
        reference[i] = std::move(result);
      } else if (!(result.plan == reference[i].plan) || result.stuck != reference[i].stuck) {
        throw PlanningError("non-deterministic plan for scene '" + scene.name + "'");
      }
    }
  }
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    BenchCell& cell = table.rows[i];
    cell.median_s = median(cell.samples_s);
    cell.total_path_cost = reference[i].plan.total_cost();
    cell.deferrals = reference[i].plan.deferral_log.size();
    cell.deadlocked = reference[i].deadlocked();
    cell_plan.push_back(std::move(reference[i].plan));
  }

  // Untimed phase: verification, optionally spread over threads.
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < table.rows.size(); i = next++) {
      const VerificationReport report =
          verify_plan(*cell_scene[i], cell_plan[i], table.rows[i].sample_step);
      table.rows[i].collision_count = report.violations.size();
    }
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(table.rows.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  return table;
}

Json bench_to_json(const BenchTable& table) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["metadata"] = {{"timing_definition", kTimingDefinition},
                     {"repetitions", table.repetitions},
                     {"clock", "std::chrono::steady_clock"}};
  Json rows = Json::array();
  for (const BenchCell& c : table.rows) {
    rows.push_back({{"scene", c.scene_name},
                    {"wall_count", c.wall_count},
                    {"radius", c.radius},
                    {"node_count", c.node_count},
                    {"median_seconds", c.median_s},
                    {"samples_seconds", c.samples_s},
                    {"total_path_cost", c.total_path_cost},
                    {"deferrals", c.deferrals},
                    {"collision_count", c.collision_count},
                    {"sample_step", c.sample_step},
                    {"deadlocked", c.deadlocked}});
  }
  doc["rows"] = std::move(rows);
  return doc;
}

std::string format_bench_table(const BenchTable& table) {
  std::set<std::size_t> counts;
  std::set<double> radii;
  for (const BenchCell& c : table.rows) {
    counts.insert(c.wall_count);
    radii.insert(c.radius);
  }
  std::string out;
  char buf[64];
  out += "radius (m) | walls:";
  for (std::size_t n : counts) {
    std::snprintf(buf, sizeof buf, " %12zu", n);
    out += buf;
  }
  out += "\n";
  for (double r : radii) {
    std::snprintf(buf, sizeof buf, "%10.2f |       ", r);
    out += buf;
    for (std::size_t n : counts) {
      try {
        const BenchCell& c = table.at(n, r);
        std::snprintf(buf, sizeof buf, " %10.2fms%s", c.median_s * 1e3,
                      c.deadlocked ? "D" : (c.collision_count > 0 ? "*" : " "));
      } catch (const LookupError&) {
        std::snprintf(buf, sizeof buf, " %12s", "-");
      }
      out += buf;
    }
    out += "\n";
  }
  out += "* collision of a moving wall and another component (verifier); D deadlock\n";
  return out;
}

}  // namespace prefab
