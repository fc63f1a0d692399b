// Acceptance suite: one PASS/FAIL line per criterion. Exit code is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "linecover/linecover.hpp"

using namespace linecover;

namespace {

int g_failures = 0;
std::vector<std::pair<int, std::string>> g_lines;

void report(int idx, const std::string& name, bool ok, const std::string& detail) {
  std::string line = "criterion " + std::to_string(idx) + " [" + name + "]: " +
                     (ok ? "PASS" : "FAIL") +
                     (detail.empty() ? "" : " - " + detail);
  g_lines.emplace_back(idx, line);
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

GeneratorParams tiny_params(std::uint64_t seed, Profile profile, int n_required) {
  GeneratorParams p;
  p.seed = seed;
  p.profile = profile;
  p.n_vertices = 5 + static_cast<int>(seed % 4);
  p.n_required = n_required;
  p.n_extra_edges = 3;
  p.cost_spec = WindModel{7.0, 10.0, 2.0, 0.7853981633974483};
  return p;
}

// Shared across criteria: lower-bound sandwich bookkeeping (criterion 4).
bool g_sandwich_ok = true;
std::string g_sandwich_detail;
std::size_t g_sandwich_checks = 0;

void check_sandwich(Cost lb, Cost solve_cost, Cost oracle_cost, bool have_oracle,
                    std::uint64_t seed) {
  ++g_sandwich_checks;
  bool ok = lb <= solve_cost + 1e-9 && (!have_oracle || lb <= oracle_cost + 1e-9);
  if (!ok && g_sandwich_ok) {
    g_sandwich_ok = false;
    g_sandwich_detail = "violated at seed " + std::to_string(seed);
  }
}

void criterion_1_and_6() {
  auto t0 = std::chrono::steady_clock::now();
  int solved = 0, optimal = 0;
  bool parity_ok = true;
  std::string detail;
  for (std::uint64_t seed = 0; solved < 200; ++seed) {
    int n_required = 4 + static_cast<int>(seed % 4);  // 4..7
    LineCoverageInstance inst;
    try {
      inst = random_instance(tiny_params(seed, Profile::EulerianRequired, n_required));
    } catch (const UnsatisfiableProfile&) {
      continue;
    }
    ++solved;

    auto lp = lp_solve(inst);
    if (!lp.ambiguous.empty()) parity_ok = false;
    for (auto f : lp.reversal_flows)
      if (f % 2 != 0) parity_ok = false;
    for (auto f : lp.deadhead_flows)
      if (f % 2 != 0) parity_ok = false;

    auto tour = solve(inst, SolverConfig{});
    auto best = brute_force_optimal(inst);
    check_sandwich(tour.lower_bound, tour.total_cost, best.total_cost, true, seed);
    double rel = std::abs(tour.total_cost - best.total_cost) /
                 std::max(1.0, best.total_cost);
    if (rel <= 1e-9 && validate_tour(inst, tour).ok()) {
      ++optimal;
    } else if (detail.empty()) {
      detail = "seed " + std::to_string(seed) + ": got " +
               std::to_string(tour.total_cost) + " vs optimum " +
               std::to_string(best.total_cost);
    }
  }
  double elapsed = seconds_since(t0);
  bool ok = optimal == solved && elapsed < 10.0;
  std::ostringstream os;
  os << optimal << "/" << solved << " optimal in " << elapsed << " s";
  if (!detail.empty()) os << "; first miss: " << detail;
  report(1, "eulerian optimality", ok, os.str());
  report(6, "flow parity", parity_ok,
         parity_ok ? "all flows even, no ambiguity" : "odd flow or ambiguity seen");
}

void criterion_2() {
  auto t0 = std::chrono::steady_clock::now();
  int within = 0, total = 0;
  std::string detail;
  for (std::uint64_t seed = 1000; total < 500; ++seed) {
    int n_required = 3 + static_cast<int>(seed % 5);  // 3..7
    auto inst = random_instance(tiny_params(seed, Profile::ConnectedRequired, n_required));
    ++total;
    auto tour = solve(inst, SolverConfig{});
    auto best = brute_force_optimal(inst);
    check_sandwich(tour.lower_bound, tour.total_cost, best.total_cost, true, seed);
    if (tour.total_cost <= 2.0 * best.total_cost + 1e-9 &&
        validate_tour(inst, tour).ok()) {
      ++within;
    } else if (detail.empty()) {
      detail = "seed " + std::to_string(seed) + " ratio " +
               std::to_string(tour.total_cost / best.total_cost);
    }
  }

  int big_within = 0, big_total = 0;
  for (std::uint64_t seed = 2000; big_total < 100; ++seed) {
    GeneratorParams p;
    p.seed = seed;
    p.profile = Profile::ConnectedRequired;
    p.n_vertices = 40 + static_cast<int>(seed % 40);
    p.n_required = 60 + static_cast<int>(seed % 120);
    p.n_extra_edges = 150;  // total edges stay below 500
    p.cost_spec = WindModel{7.0, 10.0, 2.0, 0.7853981633974483};
    auto inst = random_instance(p);
    ++big_total;
    auto tour = solve(inst, SolverConfig{});
    check_sandwich(tour.lower_bound, tour.total_cost, 0, false, seed);
    if (tour.total_cost <= 2.0 * tour.lower_bound + 1e-9 &&
        validate_tour(inst, tour).ok()) {
      ++big_within;
    } else if (detail.empty()) {
      detail = "large seed " + std::to_string(seed);
    }
  }
  double elapsed = seconds_since(t0);
  bool ok = within == total && big_within == big_total && elapsed < 60.0;
  std::ostringstream os;
  os << within << "/" << total << " small vs oracle, " << big_within << "/"
     << big_total << " large vs bound, in " << elapsed << " s";
  if (!detail.empty()) os << "; first miss: " << detail;
  report(2, "2-approximation", ok, os.str());
}

void criterion_3() {
  auto t0 = std::chrono::steady_clock::now();
  int within = 0, total = 0;
  std::string detail;
  for (std::uint64_t seed = 3000; total < 300; ++seed) {
    GeneratorParams p;
    p.seed = seed;
    p.profile = Profile::General;
    p.components = 2 + static_cast<int>(seed % 2);  // 2..3
    p.n_vertices = 8 + static_cast<int>(seed % 4);
    p.n_required = 5 + static_cast<int>(seed % 3);  // 5..7
    p.n_extra_edges = 4;
    p.cost_spec = WindModel{7.0, 10.0, 2.0, 0.7853981633974483};
    LineCoverageInstance inst;
    try {
      inst = random_instance(p);
    } catch (const UnsatisfiableProfile&) {
      continue;
    }
    ++total;
    SolverConfig cfg;
    cfg.atsp_mode = AtspMode::ExactDP;
    auto tour = solve(inst, cfg);
    auto best = brute_force_optimal(inst);
    check_sandwich(tour.lower_bound, tour.total_cost, best.total_cost, true, seed);
    if (tour.total_cost <= 3.0 * best.total_cost + 1e-9 &&
        validate_tour(inst, tour).ok()) {
      ++within;
    } else if (detail.empty()) {
      detail = "seed " + std::to_string(seed) + " ratio " +
               std::to_string(tour.total_cost / best.total_cost);
    }
  }
  double elapsed = seconds_since(t0);
  bool ok = within == total && elapsed < 60.0;
  std::ostringstream os;
  os << within << "/" << total << " within 3x in " << elapsed << " s";
  if (!detail.empty()) os << "; first miss: " << detail;
  report(3, "3-approximation", ok, os.str());
}

void criterion_4() {
  std::ostringstream os;
  os << g_sandwich_checks << " bound checks";
  if (!g_sandwich_detail.empty()) os << "; " << g_sandwich_detail;
  report(4, "lower-bound sandwich", g_sandwich_ok && g_sandwich_checks > 900, os.str());
}

// Exhaustive minimum over all integral flows with per-arc flow at most the
// total positive demand (enough for an optimum when costs are nonnegative).
bool enumerate_min_flow(const FlowNetwork& net, Cost& best_cost) {
  std::int64_t supply = 0;
  for (auto d : net.demands)
    if (d > 0) supply += d;
  const int m = static_cast<int>(net.arcs.size());
  std::vector<std::int64_t> flow(static_cast<std::size_t>(m), 0);
  bool found = false;
  best_cost = 0;

  std::vector<std::int64_t> balance(static_cast<std::size_t>(net.node_count), 0);
  Cost cost = 0;
  auto rec = [&](auto&& self, int i) -> void {
    if (found && cost >= best_cost + 1e-12) return;
    if (i == m) {
      for (int v = 0; v < net.node_count; ++v)
        if (balance[static_cast<std::size_t>(v)] !=
            net.demands[static_cast<std::size_t>(v)])
          return;
      if (!found || cost < best_cost) {
        found = true;
        best_cost = cost;
      }
      return;
    }
    const auto& a = net.arcs[static_cast<std::size_t>(i)];
    std::int64_t cap = a.unbounded ? supply : std::min(a.capacity, supply);
    for (std::int64_t f = 0; f <= cap; ++f) {
      balance[static_cast<std::size_t>(a.head)] += f;
      balance[static_cast<std::size_t>(a.tail)] -= f;
      cost += static_cast<Cost>(f) * a.unit_cost;
      self(self, i + 1);
      balance[static_cast<std::size_t>(a.head)] -= f;
      balance[static_cast<std::size_t>(a.tail)] += f;
      cost -= static_cast<Cost>(f) * a.unit_cost;
    }
  };
  rec(rec, 0);
  return found;
}

void criterion_5() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(12345);
  int agreed = 0, total = 0, infeasible_agreed = 0;
  std::string detail;
  while (total < 1000) {
    FlowNetwork net;
    net.node_count = 2 + static_cast<int>(rng() % 3);  // 2..4 nodes
    net.demands.assign(static_cast<std::size_t>(net.node_count), 0);
    // Random demands in [-3, 3] that sum to zero.
    for (int v = 0; v + 1 < net.node_count; ++v) {
      std::int64_t d = static_cast<std::int64_t>(rng() % 7) - 3;
      std::int64_t tail_so_far = 0;
      for (int w = 0; w <= v; ++w) tail_so_far += net.demands[static_cast<std::size_t>(w)];
      (void)tail_so_far;
      net.demands[static_cast<std::size_t>(v)] = d;
    }
    std::int64_t sum = 0;
    for (int v = 0; v + 1 < net.node_count; ++v)
      sum += net.demands[static_cast<std::size_t>(v)];
    if (sum < -3 || sum > 3) continue;
    net.demands.back() = -sum;

    int m = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < m; ++i) {
      int tail = static_cast<int>(rng() % static_cast<unsigned>(net.node_count));
      int head = static_cast<int>(rng() % static_cast<unsigned>(net.node_count));
      if (head == tail) head = (head + 1) % net.node_count;
      Cost cost = static_cast<Cost>(rng() % 10);
      if (rng() % 4 == 0)
        net.add_unbounded_arc(tail, head, cost);
      else
        net.add_arc(tail, head, static_cast<std::int64_t>(rng() % 5), cost);
    }
    ++total;

    Cost brute = 0;
    bool feasible = enumerate_min_flow(net, brute);
    try {
      auto sol = solve_min_cost_flow(net);
      if (feasible && std::abs(sol.total_cost - brute) <= 1e-9 &&
          verify_flow(net, sol)) {
        ++agreed;
      } else if (detail.empty()) {
        detail = "network " + std::to_string(total) + ": solver " +
                 std::to_string(sol.total_cost) + " vs brute " +
                 (feasible ? std::to_string(brute) : std::string("infeasible"));
      }
    } catch (const InfeasibleFlow&) {
      if (!feasible)
        ++infeasible_agreed;
      else if (detail.empty())
        detail = "network " + std::to_string(total) + ": solver infeasible, brute " +
                 std::to_string(brute);
    }
  }
  double elapsed = seconds_since(t0);
  bool ok = agreed + infeasible_agreed == total;
  std::ostringstream os;
  os << agreed << " optimal + " << infeasible_agreed << " infeasible of " << total
     << " in " << elapsed << " s";
  if (!detail.empty()) os << "; first miss: " << detail;
  report(5, "min-cost flow exactness", ok, os.str());
}

void criterion_7() {
  bool ok = true;
  std::string detail;
  int checked = 0;
  for (std::uint64_t seed = 5000; seed < 5120; ++seed) {
    Profile profile = seed % 3 == 0   ? Profile::EulerianRequired
                      : seed % 3 == 1 ? Profile::ConnectedRequired
                                      : Profile::General;
    GeneratorParams p = tiny_params(seed, profile, 4 + static_cast<int>(seed % 4));
    p.n_vertices += 2;
    LineCoverageInstance inst;
    try {
      inst = random_instance(p);
    } catch (const UnsatisfiableProfile&) {
      continue;
    }
    ++checked;
    SolverConfig raw;
    raw.short_circuit = false;
    raw.two_opt = false;
    auto base = solve(inst, raw);
    DeadheadPaths paths(inst);
    auto sc = short_circuit(inst, base, paths);
    auto to = two_opt(inst, sc, paths, 1000);
    bool step_ok = sc.total_cost <= base.total_cost + 1e-9 &&
                   to.total_cost <= sc.total_cost + 1e-9 &&
                   validate_tour(inst, sc).ok() && validate_tour(inst, to).ok();
    if (!step_ok && ok) {
      ok = false;
      detail = "seed " + std::to_string(seed);
    }
  }
  std::ostringstream os;
  os << checked << " instances";
  if (!detail.empty()) os << "; " << detail;
  report(7, "improvement monotonicity", ok && checked >= 100, os.str());
}

void criterion_8() {
  bool analytic = true;
  for (double v : {5.0, 7.0, 10.0}) {
    for (double w : {0.5, 2.0, 3.0}) {
      analytic = analytic && std::abs(effective_speed(v, 0.0, 1.234) - v) < 1e-12;
      analytic = analytic && std::abs(effective_speed(v, w, 0.0) - (v + w)) < 1e-12;
      analytic = analytic &&
                 std::abs(effective_speed(v, w, 3.14159265358979323846) - (v - w)) < 1e-12;
    }
  }

  bool costs_ok = true;
  bool any_asymmetry = false;
  for (std::uint64_t seed = 6000; seed < 6040; ++seed) {
    auto inst = random_instance(tiny_params(seed, Profile::ConnectedRequired, 5));
    for (const Edge& e : inst.edges) {
      if (e.required) {
        costs_ok = costs_ok && e.service_fwd >= e.deadhead_fwd - 1e-12 &&
                   e.service_rev >= e.deadhead_rev - 1e-12;
        if (std::abs(e.service_fwd - e.service_rev) > 1e-9) any_asymmetry = true;
      }
      if (std::abs(e.deadhead_fwd - e.deadhead_rev) > 1e-9) any_asymmetry = true;
    }
  }
  bool ok = analytic && costs_ok && any_asymmetry;
  report(8, "wind model", ok,
         std::string(analytic ? "analytic cases exact" : "analytic case failed") +
             (costs_ok ? ", service >= deadhead" : ", cost invariant broken") +
             (any_asymmetry ? ", asymmetry present" : ", no asymmetry seen"));
}

std::string file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void criterion_9() {
  GeneratorParams p = tiny_params(7777, Profile::ConnectedRequired, 6);
  p.n_vertices = 12;
  p.n_extra_edges = 8;
  auto inst = random_instance(p);
  SolverConfig cfg;
  cfg.seed = 7777;
  bool ok = true;
  std::string a, b;
  for (int run = 0; run < 2; ++run) {
    SolveReport rep;
    auto tour = solve(inst, cfg, &rep);
    std::string path = "/tmp/lc_accept_run" + std::to_string(run) + ".json";
    write_tour(inst, tour, &rep, cfg.seed, path);
    (run == 0 ? a : b) = file_bytes(path);
    std::remove(path.c_str());
  }
  ok = !a.empty() && a == b;
  report(9, "determinism", ok, ok ? "tour files byte-identical" : "outputs differ");
}

void criterion_10() {
  GeneratorParams p;
  p.seed = 99;
  p.profile = Profile::General;
  p.components = 3;
  p.n_vertices = 500;
  p.n_required = 600;
  p.n_extra_edges = 50;
  WindModel wind{7.0, 10.0, 2.0, 0.7853981633974483};
  p.cost_spec = wind;
  auto inst = random_instance(p);

  // Complete the non-required edge set over all vertex pairs.
  std::set<std::pair<int, int>> present;
  for (const Edge& e : inst.edges)
    present.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
  for (int u = 0; u < inst.vertex_count; ++u)
    for (int v = u + 1; v < inst.vertex_count; ++v)
      if (!present.count({u, v})) {
        Edge e;
        e.id = static_cast<int>(inst.edges.size());
        e.u = u;
        e.v = v;
        inst.edges.push_back(e);
      }
  inst = build_costs(inst, wind);

  auto t0 = std::chrono::steady_clock::now();
  SolverConfig cfg;
  SolveReport rep;
  auto tour = solve(inst, cfg, &rep);
  double elapsed = seconds_since(t0);
  bool valid = validate_tour(inst, tour).ok();
  check_sandwich(tour.lower_bound, tour.total_cost, 0, false, p.seed);
  bool ok = valid && elapsed < 10.0;
  std::ostringstream os;
  os << inst.edges.size() << " edges, cost " << tour.total_cost << ", ratio "
     << rep.ratio << ", " << elapsed << " s" << (valid ? "" : ", INVALID TOUR");
  report(10, "500-vertex performance", ok, os.str());
}

}  // namespace

int main() {
  criterion_1_and_6();
  criterion_2();
  criterion_3();
  criterion_5();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_4();  // aggregates bound checks from the runs above
  std::sort(g_lines.begin(), g_lines.end());
  for (const auto& [idx, line] : g_lines) std::printf("%s\n", line.c_str());
  return g_failures;
}
