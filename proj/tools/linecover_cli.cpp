// Command line front end: solve, validate, oracle, gen, bench.
// Exit codes: 0 success, 1 validation failure, 2 schema/IO error,
// 3 infeasible, 4 size cap exceeded.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "linecover/linecover.hpp"

namespace {

using namespace linecover;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitSchema = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitCap = 4;

SolverConfig make_config(const std::string& atsp, const std::string& stitch,
                         bool no_two_opt, bool no_short_circuit, std::uint64_t seed) {
  SolverConfig cfg;
  if (atsp == "exact")
    cfg.atsp_mode = AtspMode::ExactDP;
  else if (atsp == "heuristic")
    cfg.atsp_mode = AtspMode::Heuristic;
  else
    cfg.atsp_mode = AtspMode::Auto;
  cfg.stitch_mode = stitch == "gtsp" ? StitchMode::GTSP : StitchMode::ATSP;
  cfg.two_opt = !no_two_opt;
  cfg.short_circuit = !no_short_circuit;
  cfg.seed = seed;
  return cfg;
}

int run_solve(const std::string& instance_path, const SolverConfig& cfg,
              const std::string& out_path, const std::string& geojson_path) {
  LineCoverageInstance inst = parse_instance(instance_path);
  SolveReport report;
  CoverageTour tour = solve(inst, cfg, &report);
  auto validation = validate_tour(inst, tour);
  if (!validation.ok()) {
    std::cerr << "internal error: solver produced an invalid tour\n"
              << validation.to_string();
    return kExitValidation;
  }
  std::printf("cost %.6f  lower_bound %.6f  ratio %.4f  components %d\n",
              tour.total_cost, tour.lower_bound, report.ratio, report.components);
  for (const auto& [phase, secs] : report.phase_seconds)
    std::printf("  %-18s %8.3f s\n", phase.c_str(), secs);
  if (!out_path.empty()) write_tour(inst, tour, &report, cfg.seed, out_path);
  if (!geojson_path.empty()) export_geojson(inst, tour, geojson_path);
  return kExitOk;
}

int run_validate(const std::string& instance_path, const std::string& tour_path) {
  LineCoverageInstance inst = parse_instance(instance_path);
  CoverageTour tour = parse_tour(inst, tour_path);
  auto report = validate_tour(inst, tour);
  if (report.ok()) {
    std::printf("valid  cost %.6f\n", tour.total_cost);
    return kExitOk;
  }
  std::cout << report.to_string();
  return kExitValidation;
}

int run_oracle(const std::string& instance_path, const std::string& out_path) {
  LineCoverageInstance inst = parse_instance(instance_path);
  CoverageTour tour = brute_force_optimal(inst);
  std::printf("optimal cost %.6f  steps %zu\n", tour.total_cost, tour.steps.size());
  if (!out_path.empty()) write_tour(inst, tour, nullptr, 0, out_path);
  return kExitOk;
}

int run_gen(const GeneratorParams& params, const std::string& out_path) {
  LineCoverageInstance inst = random_instance(params);
  write_instance(inst, out_path);
  std::printf("wrote %s: %d vertices, %zu edges (%zu required)\n", out_path.c_str(),
              inst.vertex_count, inst.edges.size(), inst.required_edge_ids.size());
  return kExitOk;
}

int run_bench(const std::string& dir, int repeat, const SolverConfig& cfg) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    std::cerr << "no .json instances in " << dir << "\n";
    return kExitSchema;
  }
  std::printf("%-32s %12s %12s %7s %4s %9s\n", "instance", "cost", "lower_bound",
              "ratio", "C", "time[s]");
  for (const auto& file : files) {
    LineCoverageInstance inst = parse_instance(file.string());
    double best_secs = 0;
    SolveReport report;
    CoverageTour tour;
    for (int r = 0; r < repeat; ++r) {
      SolveReport rep;
      auto t0 = std::chrono::steady_clock::now();
      tour = solve(inst, cfg, &rep);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                        .count();
      if (r == 0 || secs < best_secs) best_secs = secs;
      report = rep;
    }
    std::printf("%-32s %12.4f %12.4f %7.4f %4d %9.3f\n",
                file.filename().string().c_str(), tour.total_cost, tour.lower_bound,
                report.ratio, report.components, best_secs);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Line coverage tour solver for undirected multigraphs with "
               "asymmetric service and deadhead costs"};
  app.require_subcommand(1);

  std::string instance_path, tour_path, out_path, geojson_path;
  std::string atsp = "auto", stitch = "atsp", profile = "connected", cost = "wind";
  bool no_two_opt = false, no_short_circuit = false;
  std::uint64_t seed = 0;
  int repeat = 1;
  GeneratorParams gen_params;

  auto* solve_cmd = app.add_subcommand("solve", "Compute a coverage tour");
  solve_cmd->add_option("instance", instance_path)->required();
  solve_cmd->add_option("--atsp", atsp)->check(CLI::IsMember({"exact", "heuristic", "auto"}));
  solve_cmd->add_option("--stitch", stitch)->check(CLI::IsMember({"atsp", "gtsp"}));
  solve_cmd->add_flag("--no-2opt", no_two_opt);
  solve_cmd->add_flag("--no-shortcircuit", no_short_circuit);
  solve_cmd->add_option("--seed", seed);
  solve_cmd->add_option("--out", out_path);
  solve_cmd->add_option("--geojson", geojson_path);

  auto* validate_cmd = app.add_subcommand("validate", "Check a tour against an instance");
  validate_cmd->add_option("instance", instance_path)->required();
  validate_cmd->add_option("tour", tour_path)->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "Exact brute-force solve (small instances)");
  oracle_cmd->add_option("instance", instance_path)->required();
  oracle_cmd->add_option("--out", out_path);

  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--seed", gen_params.seed);
  gen_cmd->add_option("--profile", profile)
      ->check(CLI::IsMember({"general", "connected", "eulerian"}));
  gen_cmd->add_option("--vertices", gen_params.n_vertices);
  gen_cmd->add_option("--required", gen_params.n_required);
  gen_cmd->add_option("--extra", gen_params.n_extra_edges);
  gen_cmd->add_option("--components", gen_params.components);
  gen_cmd->add_option("--cost", cost)->check(CLI::IsMember({"wind", "euclidean"}));
  gen_cmd->add_option("--out", out_path)->required();

  auto* bench_cmd = app.add_subcommand("bench", "Solve every instance in a directory");
  bench_cmd->add_option("dir", instance_path)->required();
  bench_cmd->add_option("--repeat", repeat)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--atsp", atsp)->check(CLI::IsMember({"exact", "heuristic", "auto"}));
  bench_cmd->add_option("--stitch", stitch)->check(CLI::IsMember({"atsp", "gtsp"}));
  bench_cmd->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);

  try {
    SolverConfig cfg = make_config(atsp, stitch, no_two_opt, no_short_circuit, seed);
    if (solve_cmd->parsed()) return run_solve(instance_path, cfg, out_path, geojson_path);
    if (validate_cmd->parsed()) return run_validate(instance_path, tour_path);
    if (oracle_cmd->parsed()) return run_oracle(instance_path, out_path);
    if (gen_cmd->parsed()) {
      gen_params.profile = profile == "eulerian"  ? Profile::EulerianRequired
                           : profile == "general" ? Profile::General
                                                  : Profile::ConnectedRequired;
      gen_params.cost_spec = cost == "euclidean" ? CostSpec{EuclideanDistance{}}
                                                 : CostSpec{WindModel{7.0, 10.0, 2.0,
                                                                      3.14159265358979 / 4}};
      return run_gen(gen_params, out_path);
    }
    if (bench_cmd->parsed()) return run_bench(instance_path, repeat, cfg);
  } catch (const SchemaError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitSchema;
  } catch (const Infeasible& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitInfeasible;
  } catch (const InfeasibleFlow& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitInfeasible;
  } catch (const TooLarge& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitCap;
  } catch (const SolverError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitSchema;
  }
  return kExitSchema;
}
