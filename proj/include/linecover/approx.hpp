#ifndef LINECOVER_APPROX_HPP
#define LINECOVER_APPROX_HPP

#include <chrono>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "linecover/atsp.hpp"
#include "linecover/core.hpp"
#include "linecover/flow_pipeline.hpp"
#include "linecover/improve.hpp"
#include "linecover/paths.hpp"

namespace linecover {

class Infeasible : public SolverError {
 public:
  Infeasible() : SolverError("instance admits no finite-cost coverage tour") {}
};

enum class AtspMode { ExactDP, Heuristic, Auto };
enum class StitchMode { ATSP, GTSP };

struct SolverConfig {
  AtspMode atsp_mode = AtspMode::Auto;
  StitchMode stitch_mode = StitchMode::ATSP;
  bool short_circuit = true;
  bool two_opt = true;
  int two_opt_move_cap = 1000;
  int dp_threshold = kHeldKarpLimit;
  std::uint64_t seed = 0;
};

struct SolveReport {
  Cost total_cost = 0;
  Cost lower_bound = 0;
  double ratio = 0;  // total_cost / lower_bound
  int components = 1;
  std::size_t ambiguous_count = 0;
  std::vector<std::pair<std::string, double>> phase_seconds;
};

// Direction-resolution step of the 2-approximation: orient cycles of
// ambiguous edges along their traversal direction (a consistently oriented
// cycle is balanced on its own), then settle each remaining ambiguous arc by
// the cheaper of service-forward-plus-return-path and its reverse.
inline ArcMultiset resolve_ambiguous(const LineCoverageInstance& inst,
                                     const LpSolveResult& lp,
                                     const DeadheadPaths& paths) {
  ArcMultiset body = lp.balanced;
  if (lp.ambiguous.empty()) return body;

  std::vector<Arc> remaining;
  for (const Arc& a : lp.ambiguous) {
    const Edge& e = inst.edge(a.edge_id);
    if (e.u == e.v)
      body.insert(Arc{a.edge_id, true, TravelMode::Service});  // loop: either way
    else
      remaining.push_back(a);
  }

  // Cycle peeling on the undirected multigraph of ambiguous edges. Parallel
  // edges count as 2-cycles, so DFS tracks the entering edge, not the parent
  // vertex.
  std::vector<char> alive(remaining.size(), 1);
  bool found_cycle = true;
  while (found_cycle) {
    found_cycle = false;
    const std::size_t n = static_cast<std::size_t>(inst.vertex_count);
    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (other vertex, idx)
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      if (!alive[i]) continue;
      const Edge& e = inst.edge(remaining[i].edge_id);
      adj[static_cast<std::size_t>(e.u)].emplace_back(e.v, static_cast<int>(i));
      adj[static_cast<std::size_t>(e.v)].emplace_back(e.u, static_cast<int>(i));
    }
    std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
    for (int root = 0; root < inst.vertex_count && !found_cycle; ++root) {
      if (state[static_cast<std::size_t>(root)] != 0) continue;
      if (adj[static_cast<std::size_t>(root)].empty()) continue;
      // Iterative DFS remembering the edge used to reach each vertex.
      std::vector<std::tuple<int, int, std::size_t>> stack;  // vertex, via idx, cursor
      stack.emplace_back(root, -1, 0);
      state[static_cast<std::size_t>(root)] = 1;
      while (!stack.empty() && !found_cycle) {
        auto& [v, via, cursor] = stack.back();
        if (cursor >= adj[static_cast<std::size_t>(v)].size()) {
          state[static_cast<std::size_t>(v)] = 2;
          stack.pop_back();
          continue;
        }
        auto [w, idx] = adj[static_cast<std::size_t>(v)][cursor++];
        if (idx == via) continue;
        if (state[static_cast<std::size_t>(w)] == 1) {
          // Close the cycle w -> ... -> v -> w; orient along traversal.
          std::vector<std::pair<int, int>> cycle;  // (tail vertex, edge idx)
          cycle.emplace_back(v, idx);
          for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
            int sv = std::get<0>(*it);
            if (sv == w) break;
            int svia = std::get<1>(*it);
            int prev = std::get<0>(*(it + 1));
            cycle.emplace_back(prev, svia);
          }
          for (auto [tail, ei] : cycle) {
            const Edge& e = inst.edge(remaining[static_cast<std::size_t>(ei)].edge_id);
            body.insert(Arc{e.id, tail == e.u, TravelMode::Service});
            alive[static_cast<std::size_t>(ei)] = 0;
          }
          found_cycle = true;
        } else if (state[static_cast<std::size_t>(w)] == 0) {
          state[static_cast<std::size_t>(w)] = 1;
          stack.emplace_back(w, idx, 0);
        }
      }
    }
  }

  for (std::size_t i = 0; i < remaining.size(); ++i) {
    if (!alive[i]) continue;
    const Arc a = remaining[i];
    const Arc rev{a.edge_id, !a.forward, TravelMode::Service};
    Cost fwd_cost = arc_cost(inst, a) + paths.cost(arc_head(inst, a), arc_tail(inst, a));
    Cost rev_cost =
        arc_cost(inst, rev) + paths.cost(arc_head(inst, rev), arc_tail(inst, rev));
    const Arc& pick = fwd_cost <= rev_cost ? a : rev;
    body.insert(pick);
    for (const Arc& p : paths.path(inst, arc_head(inst, pick), arc_tail(inst, pick)))
      body.insert(p);
  }
  return body;
}

namespace detail {

// Weakly connected components over vertices with incident arcs, ordered by
// smallest contained vertex. Balance makes weak equal to strong here.
inline std::vector<std::vector<int>> body_components(const LineCoverageInstance& inst,
                                                     const ArcMultiset& body) {
  std::vector<int> parent(static_cast<std::size_t>(inst.vertex_count));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  std::vector<bool> touched(static_cast<std::size_t>(inst.vertex_count), false);
  for (const Arc& a : body.arcs) {
    int u = arc_tail(inst, a), v = arc_head(inst, a);
    touched[static_cast<std::size_t>(u)] = touched[static_cast<std::size_t>(v)] = true;
    int ru = find(u), rv = find(v);
    if (ru != rv) parent[static_cast<std::size_t>(std::max(ru, rv))] = std::min(ru, rv);
  }
  std::vector<std::vector<int>> comps;
  std::vector<int> index(static_cast<std::size_t>(inst.vertex_count), -1);
  for (int v = 0; v < inst.vertex_count; ++v) {
    if (!touched[static_cast<std::size_t>(v)]) continue;
    int r = find(v);
    if (index[static_cast<std::size_t>(r)] < 0) {
      index[static_cast<std::size_t>(r)] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[static_cast<std::size_t>(index[static_cast<std::size_t>(r)])].push_back(v);
  }
  return comps;
}

inline std::vector<bool> required_vertex_mask(const LineCoverageInstance& inst) {
  std::vector<bool> mask(static_cast<std::size_t>(inst.vertex_count), false);
  for (const Edge& e : inst.edges)
    if (e.required) {
      mask[static_cast<std::size_t>(e.u)] = true;
      mask[static_cast<std::size_t>(e.v)] = true;
    }
  return mask;
}

// Drop components that carry no service arc: they are pure deadhead cycles
// and removing them keeps balance while not increasing cost.
inline void drop_deadhead_only_components(const LineCoverageInstance& inst,
                                          ArcMultiset& body) {
  auto comps = body_components(inst, body);
  std::vector<int> comp_of(static_cast<std::size_t>(inst.vertex_count), -1);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (int v : comps[c]) comp_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
  std::vector<bool> has_service(comps.size(), false);
  for (const Arc& a : body.arcs)
    if (a.mode == TravelMode::Service)
      has_service[static_cast<std::size_t>(
          comp_of[static_cast<std::size_t>(arc_tail(inst, a))])] = true;
  if (std::all_of(has_service.begin(), has_service.end(), [](bool b) { return b; }))
    return;
  std::vector<Arc> kept;
  for (const Arc& a : body.arcs)
    if (has_service[static_cast<std::size_t>(
            comp_of[static_cast<std::size_t>(arc_tail(inst, a))])])
      kept.push_back(a);
  body.arcs = std::move(kept);
}

inline AtspTour run_atsp(const AtspInstance& m, const SolverConfig& cfg) {
  switch (cfg.atsp_mode) {
    case AtspMode::ExactDP:
      return held_karp_atsp(m);
    case AtspMode::Heuristic:
      return heuristic_atsp(m, cfg.seed);
    case AtspMode::Auto:
    default:
      return m.size <= cfg.dp_threshold ? held_karp_atsp(m)
                                        : heuristic_atsp(m, cfg.seed);
  }
}

// First-indexed required vertex in each component.
inline std::vector<int> component_representatives(
    const LineCoverageInstance& inst, const std::vector<std::vector<int>>& comps) {
  auto req = required_vertex_mask(inst);
  std::vector<int> reps;
  for (const auto& comp : comps) {
    int rep = -1;
    for (int v : comp)
      if (req[static_cast<std::size_t>(v)]) {
        rep = v;
        break;
      }
    if (rep < 0) rep = comp.front();  // component without required vertex
    reps.push_back(rep);
  }
  return reps;
}

// Stitch representatives in tour order with concrete shortest deadhead paths.
inline void stitch_vertices(const LineCoverageInstance& inst, const DeadheadPaths& paths,
                            const std::vector<int>& order, ArcMultiset& body) {
  for (std::size_t i = 0; i < order.size(); ++i) {
    int from = order[i], to = order[(i + 1) % order.size()];
    if (from == to) continue;
    for (const Arc& a : paths.path(inst, from, to)) body.insert(a);
  }
}

}  // namespace detail

// Join the Eulerian components of a balanced digraph into one, routing an
// ATSP tour over one representative vertex per component. With exactly two
// components the ATSP needs a third city: one representative is duplicated
// with zero-cost links.
inline ArcMultiset connect_components(const LineCoverageInstance& inst,
                                      const ArcMultiset& input,
                                      const DeadheadPaths& paths,
                                      const SolverConfig& cfg) {
  ArcMultiset body = input;
  detail::drop_deadhead_only_components(inst, body);
  auto comps = detail::body_components(inst, body);
  if (comps.size() <= 1) return body;

  std::vector<int> reps = detail::component_representatives(inst, comps);
  AtspInstance m;
  m.vertex_map = reps;
  if (reps.size() == 2) m.vertex_map.push_back(reps[0]);  // duplication fix
  m.size = static_cast<int>(m.vertex_map.size());
  m.costs.assign(static_cast<std::size_t>(m.size) * static_cast<std::size_t>(m.size), 0);
  for (int i = 0; i < m.size; ++i)
    for (int j = 0; j < m.size; ++j) {
      if (i == j) continue;
      int u = m.vertex_map[static_cast<std::size_t>(i)];
      int v = m.vertex_map[static_cast<std::size_t>(j)];
      m.cost(i, j) = u == v ? 0 : paths.cost(u, v);
    }

  AtspTour tour = detail::run_atsp(m, cfg);
  std::vector<int> order;
  for (int idx : tour.order) order.push_back(m.vertex_map[static_cast<std::size_t>(idx)]);
  detail::stitch_vertices(inst, paths, order, body);
  return body;
}

// GTSP-based stitching: clusters are the required vertices of each
// component; the Noon-Bean transform turns the cluster tour into an ATSP on
// all cluster nodes, which frees the representative choice.
inline ArcMultiset gtsp_connect(const LineCoverageInstance& inst,
                                const ArcMultiset& input, const DeadheadPaths& paths,
                                const SolverConfig& cfg) {
  ArcMultiset body = input;
  detail::drop_deadhead_only_components(inst, body);
  auto comps = detail::body_components(inst, body);
  if (comps.size() <= 1) return body;

  auto req = detail::required_vertex_mask(inst);
  std::vector<std::vector<int>> clusters;
  for (const auto& comp : comps) {
    std::vector<int> cluster;
    for (int v : comp)
      if (req[static_cast<std::size_t>(v)]) cluster.push_back(v);
    if (cluster.empty()) cluster.push_back(comp.front());
    clusters.push_back(std::move(cluster));
  }

  std::size_t total = 0;
  for (const auto& c : clusters) total += c.size();
  const std::size_t budget = cfg.atsp_mode == AtspMode::ExactDP
                                 ? static_cast<std::size_t>(cfg.dp_threshold)
                                 : 1000;
  if (total > budget)
    throw TooLarge("GTSP transform has " + std::to_string(total) +
                   " nodes, over the solver budget");

  if (total < 3) {
    // Two singleton clusters: no room for the transform, fall back to the
    // duplicated-vertex ATSP stitch.
    return connect_components(inst, input, paths, cfg);
  }

  // Noon-Bean: zero-cost directed cycle inside each cluster; an arc leaving
  // node i toward another cluster carries the cost of leaving i's cyclic
  // successor, shifted by M. The ATSP optimum then traverses each cluster
  // contiguously and the entry node decodes as the chosen vertex.
  AtspInstance m;
  m.size = static_cast<int>(total);
  std::vector<int> cluster_of;
  std::vector<int> succ(total);  // successor index inside the cluster cycle
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    std::size_t base = m.vertex_map.size();
    for (int v : clusters[c]) {
      m.vertex_map.push_back(v);
      cluster_of.push_back(static_cast<int>(c));
    }
    for (std::size_t k = 0; k < clusters[c].size(); ++k)
      succ[base + k] = static_cast<int>(base + (k + 1) % clusters[c].size());
  }

  Cost max_sp = 0;
  for (int u : m.vertex_map)
    for (int v : m.vertex_map)
      if (paths.reachable(u, v)) max_sp = std::max(max_sp, paths.cost(u, v));
  const Cost shift = max_sp * static_cast<Cost>(total) + 1;
  const Cost forbid = shift * static_cast<Cost>(total) * 4;

  m.costs.assign(total * total, 0);
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = 0; j < total; ++j) {
      if (i == j) continue;
      if (cluster_of[i] == cluster_of[j])
        m.cost(static_cast<int>(i), static_cast<int>(j)) =
            succ[i] == static_cast<int>(j) && clusters[static_cast<std::size_t>(
                                                  cluster_of[i])].size() > 1
                ? 0
                : forbid;
      else
        m.cost(static_cast<int>(i), static_cast<int>(j)) =
            paths.cost(m.vertex_map[succ[i]], m.vertex_map[j]) + shift;
    }

  AtspTour tour = detail::run_atsp(m, cfg);

  // Entry node of each cluster = node whose tour predecessor sits in a
  // different cluster; stitch entry vertices in cluster visit order.
  std::vector<int> order;
  const std::size_t tn = tour.order.size();
  for (std::size_t i = 0; i < tn; ++i) {
    int node = tour.order[i];
    int prev = tour.order[(i + tn - 1) % tn];
    if (cluster_of[static_cast<std::size_t>(node)] !=
        cluster_of[static_cast<std::size_t>(prev)])
      order.push_back(m.vertex_map[static_cast<std::size_t>(node)]);
  }
  if (order.size() != clusters.size())
    throw SolverError("GTSP decode failed: tour does not visit clusters contiguously");
  detail::stitch_vertices(inst, paths, order, body);
  return body;
}

inline CoverageTour tour_from_body(const LineCoverageInstance& inst,
                                   const ArcMultiset& body) {
  int start = -1;
  for (const Arc& a : body.arcs) {
    int t = arc_tail(inst, a);
    if (start < 0 || t < start) start = t;
  }
  if (start < 0) throw SolverError("empty solution digraph");
  return euler_tour(inst, body, start);
}

// Full pipeline: LP relaxation, ambiguity resolution, component stitching,
// Euler tour, improvements.
inline CoverageTour solve(const LineCoverageInstance& inst, const SolverConfig& cfg,
                          SolveReport* report = nullptr) {
  using Clock = std::chrono::steady_clock;
  auto mark = Clock::now();
  auto lap = [&mark](const char* name, SolveReport* rep) {
    auto now = Clock::now();
    if (rep)
      rep->phase_seconds.emplace_back(
          name, std::chrono::duration<double>(now - mark).count());
    mark = now;
  };

  check_instance(inst);
  DeadheadPaths paths(inst);
  lap("apsp", report);

  LpSolveResult lp = lp_solve(inst);
  lap("lp_solve", report);

  ArcMultiset body = resolve_ambiguous(inst, lp, paths);
  lap("resolve_ambiguous", report);

  int components = static_cast<int>(detail::body_components(inst, body).size());
  body = cfg.stitch_mode == StitchMode::GTSP
             ? gtsp_connect(inst, body, paths, cfg)
             : connect_components(inst, body, paths, cfg);
  lap("stitch", report);

  CoverageTour tour = tour_from_body(inst, body);
  tour.lower_bound = lp.lower_bound;
  lap("euler_tour", report);

  if (cfg.short_circuit) tour = short_circuit(inst, tour, paths);
  if (cfg.two_opt) tour = two_opt(inst, tour, paths, cfg.two_opt_move_cap);
  lap("improve", report);

  if (tour.total_cost >= kInfeasibleThreshold) throw Infeasible();

  if (report) {
    report->total_cost = tour.total_cost;
    report->lower_bound = tour.lower_bound;
    report->ratio = tour.lower_bound > 0 ? tour.total_cost / tour.lower_bound : 1.0;
    report->components = components;
    report->ambiguous_count = lp.ambiguous.size();
  }
  return tour;
}

}  // namespace linecover

#endif  // LINECOVER_APPROX_HPP
