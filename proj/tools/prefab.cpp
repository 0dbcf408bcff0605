// prefab: plan, verify, script, render and benchmark wall assembly sequences.
//
// Exit codes: 0 success / clean, 1 planner infeasibility or verifier
// collisions, 2 usage or validation error.

#include "prefab/bench.hpp"
#include "prefab/errors.hpp"
#include "prefab/grid.hpp"
#include "prefab/io.hpp"
#include "prefab/planner.hpp"
#include "prefab/scripting.hpp"
#include "prefab/site_generator.hpp"
#include "prefab/verifier.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    prefab::write_text(out_path, text);
  }
}

std::vector<std::string> split_ids(const std::string& csv) {
  std::vector<std::string> ids;
  std::stringstream in(csv);
  std::string id;
  while (std::getline(in, id, ',')) {
    if (!id.empty()) ids.push_back(id);
  }
  return ids;
}

struct PlanArgs {
  std::string scene;
  double radius = 1.0;
  std::string direction = "assemble";
  std::string order;
  std::string out;
};

int run_plan(const PlanArgs& a) {
  const prefab::Scene scene = prefab::load_scene(a.scene);
  const prefab::Grid grid = prefab::build_grid(scene.bounds, a.radius);
  const std::vector<std::string> order =
      a.order.empty() ? prefab::scene_order(scene) : split_ids(a.order);
  try {
    if (a.direction == "disassemble") {
      const prefab::Plan plan = prefab::plan_disassembly(scene, order, grid);
      emit(prefab::dump(prefab::plan_to_json(plan)), a.out);
    } else {
      const prefab::Plan plan = prefab::plan_assembly(scene, order, grid);
      const prefab::EventScript script = prefab::generate_script(plan, scene);
      emit(prefab::dump(prefab::plan_to_json(plan, &script)), a.out);
    }
  } catch (const prefab::DeadlockError& e) {
    std::cerr << "prefab plan: " << e.what() << "\n";
    return kExitInfeasible;
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string scene;
  std::string plan;
  std::optional<double> step;
  std::string out;
};

int run_verify(const VerifyArgs& a) {
  const prefab::Scene scene = prefab::load_scene(a.scene);
  const prefab::Plan plan = prefab::load_plan(a.plan);
  const double step = a.step.value_or(prefab::default_sample_step(scene, plan.grid_radius));
  const prefab::VerificationReport report = prefab::verify_plan(scene, plan, step, a.plan);
  emit(prefab::dump(prefab::report_to_json(report)), a.out);
  return report.clean() ? kExitOk : kExitInfeasible;
}

struct ScriptArgs {
  std::string plan;
  std::string scene;
  double tolerance = prefab::kDefaultAngleTolerance;
  bool json = false;
};

int run_script(const ScriptArgs& a) {
  const prefab::Scene scene = prefab::load_scene(a.scene);
  const prefab::Plan plan = prefab::load_plan(a.plan);
  const prefab::EventScript script = prefab::generate_script(plan, scene, a.tolerance);
  if (a.json) {
    std::cout << prefab::dump(prefab::script_to_json(script));
  } else {
    std::cout << prefab::format_script(script);
  }
  return kExitOk;
}

struct BenchArgs {
  std::vector<std::string> scenes;
  std::vector<double> radii = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  int reps = 5;
  std::string out;
};

int run_bench(const BenchArgs& a) {
  std::vector<prefab::Scene> scenes;
  for (const std::string& path : a.scenes) {
    if (path == "family") {
      for (std::size_t n : prefab::benchmark_wall_counts()) {
        scenes.push_back(prefab::generate_site(n));
      }
    } else {
      scenes.push_back(prefab::load_scene(path));
    }
  }
  const prefab::BenchTable table =
      prefab::run_benchmark(scenes, a.radii, a.reps, prefab::bench_threads_from_env());
  std::cout << prefab::format_bench_table(table);
  if (!a.out.empty()) {
    prefab::write_text(a.out, prefab::dump(prefab::bench_to_json(table)));
  }
  return kExitOk;
}

struct RenderArgs {
  std::string plan;
  std::string scene;
  std::string outdir;
};

int run_render(const RenderArgs& a) {
  const prefab::Scene scene = prefab::load_scene(a.scene);
  const prefab::Plan plan = prefab::load_plan(a.plan);
  const std::size_t n =
      prefab::export_plan(plan, nullptr, a.outdir, prefab::ExportFormat::kSvgFrames, &scene);
  std::cout << "wrote " << n << " frames to " << a.outdir << "\n";
  return kExitOk;
}

struct GenerateArgs {
  std::size_t walls = 9;
  std::uint64_t seed = prefab::kDefaultSiteSeed;
  std::string out;
};

int run_generate(const GenerateArgs& a) {
  emit(prefab::dump(prefab::scene_to_json(prefab::generate_site(a.walls, a.seed))), a.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clash-free wall assembly sequencing on a planar site"};
  app.require_subcommand(1);

  PlanArgs plan_args;
  auto* plan = app.add_subcommand("plan", "Plan an assembly or disassembly sequence");
  plan->add_option("--scene", plan_args.scene, "Scene JSON file")->required()->check(CLI::ExistingFile);
  plan->add_option("--radius", plan_args.radius, "Grid node radius in metres")
      ->check(CLI::PositiveNumber);
  plan->add_option("--direction", plan_args.direction, "assemble | disassemble")
      ->check(CLI::IsMember({"assemble", "disassemble"}));
  plan->add_option("--order", plan_args.order, "Comma-separated initial queue (default: file order)");
  plan->add_option("--out", plan_args.out, "Output plan JSON (default: stdout)");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Sweep-check a plan against its scene");
  verify->add_option("--scene", verify_args.scene)->required()->check(CLI::ExistingFile);
  verify->add_option("--plan", verify_args.plan)->required()->check(CLI::ExistingFile);
  verify->add_option("--step", verify_args.step, "Sample spacing in metres")
      ->check(CLI::PositiveNumber);
  verify->add_option("--out", verify_args.out, "Output report JSON (default: stdout)");

  ScriptArgs script_args;
  auto* script = app.add_subcommand("script", "Expand an assembly plan into construction events");
  script->add_option("--plan", script_args.plan)->required()->check(CLI::ExistingFile);
  script->add_option("--scene", script_args.scene)->required()->check(CLI::ExistingFile);
  script->add_option("--tolerance", script_args.tolerance, "Corner angle tolerance in degrees");
  script->add_flag("--json", script_args.json, "Emit JSON instead of text");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Grid radius versus wall count timing study");
  bench->add_option("--scenes", bench_args.scenes, "Scene files, or 'family' for the bundled generator")
      ->required();
  bench->add_option("--radii", bench_args.radii, "Grid radii in metres");
  bench->add_option("--reps", bench_args.reps, "Repetitions per cell")->check(CLI::PositiveNumber);
  bench->add_option("--out", bench_args.out, "Output table JSON");

  RenderArgs render_args;
  auto* render = app.add_subcommand("render", "Write one SVG frame per waypoint");
  render->add_option("--plan", render_args.plan)->required()->check(CLI::ExistingFile);
  render->add_option("--scene", render_args.scene)->required()->check(CLI::ExistingFile);
  render->add_option("--outdir", render_args.outdir)->required();

  GenerateArgs generate_args;
  auto* generate = app.add_subcommand("generate", "Write a benchmark site scene");
  generate->add_option("--walls", generate_args.walls)->check(CLI::Range(4, 1000));
  generate->add_option("--seed", generate_args.seed);
  generate->add_option("--out", generate_args.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*plan) return run_plan(plan_args);
    if (*verify) return run_verify(verify_args);
    if (*script) return run_script(script_args);
    if (*bench) return run_bench(bench_args);
    if (*render) return run_render(render_args);
    if (*generate) return run_generate(generate_args);
  } catch (const prefab::PlanningError& e) {
    std::cerr << "prefab: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "prefab: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
