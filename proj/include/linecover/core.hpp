#ifndef LINECOVER_CORE_HPP
#define LINECOVER_CORE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace linecover {

using Cost = double;

// Cost used to forbid travel along a direction. Any tour whose total cost
// reaches kInfeasibleThreshold is reported infeasible.
inline constexpr Cost kInfeasible = 1e15;
inline constexpr Cost kInfeasibleThreshold = 1e14;
inline constexpr double kEps = 1e-9;

inline bool cost_is_finite(Cost c) { return c < kInfeasibleThreshold; }

inline bool approx_equal(Cost a, Cost b, double rel = kEps) {
  double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= rel * scale;
}

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TravelMode : std::uint8_t { Service, Deadhead };

// An undirected multigraph edge with direction-dependent costs. The forward
// direction is u -> v. Service costs are meaningful only on required edges.
struct Edge {
  int id = -1;
  int u = -1;
  int v = -1;
  bool required = false;
  Cost service_fwd = kInfeasible;
  Cost service_rev = kInfeasible;
  Cost deadhead_fwd = kInfeasible;
  Cost deadhead_rev = kInfeasible;

  Cost service_cost(bool forward) const { return forward ? service_fwd : service_rev; }
  Cost deadhead_cost(bool forward) const { return forward ? deadhead_fwd : deadhead_rev; }
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Problem input: undirected multigraph with a required-edge subset and four
// per-edge directional costs. Self-loops and parallel edges are allowed.
struct LineCoverageInstance {
  int vertex_count = 0;
  std::vector<Point> coordinates;  // empty when no embedding is given
  std::vector<Edge> edges;
  std::vector<int> required_edge_ids;

  bool has_coordinates() const {
    return static_cast<int>(coordinates.size()) == vertex_count && vertex_count > 0;
  }
  const Edge& edge(int id) const { return edges.at(static_cast<std::size_t>(id)); }
};

// Directed traversal of an edge in one mode. forward is relative to Edge u->v.
struct Arc {
  int edge_id = -1;
  bool forward = true;
  TravelMode mode = TravelMode::Deadhead;

  friend bool operator==(const Arc&, const Arc&) = default;
};

inline int arc_tail(const LineCoverageInstance& inst, const Arc& a) {
  const Edge& e = inst.edge(a.edge_id);
  return a.forward ? e.u : e.v;
}

inline int arc_head(const LineCoverageInstance& inst, const Arc& a) {
  const Edge& e = inst.edge(a.edge_id);
  return a.forward ? e.v : e.u;
}

inline Cost arc_cost(const LineCoverageInstance& inst, const Arc& a) {
  const Edge& e = inst.edge(a.edge_id);
  return a.mode == TravelMode::Service ? e.service_cost(a.forward)
                                       : e.deadhead_cost(a.forward);
}

// Multiset of directed arcs over an instance; intermediate solution form.
struct ArcMultiset {
  std::vector<Arc> arcs;

  void insert(const Arc& a) { arcs.push_back(a); }
  void insert(const std::vector<Arc>& more) {
    arcs.insert(arcs.end(), more.begin(), more.end());
  }
  std::size_t size() const { return arcs.size(); }
  bool empty() const { return arcs.empty(); }
  std::size_t count(const Arc& a) const {
    return static_cast<std::size_t>(std::count(arcs.begin(), arcs.end(), a));
  }
};

inline Cost total_cost(const LineCoverageInstance& inst, const ArcMultiset& arcs) {
  Cost c = 0;
  for (const Arc& a : arcs.arcs) c += arc_cost(inst, a);
  return c;
}

// outdegree minus indegree at v. A self-loop arc contributes zero.
inline int imbalance(const LineCoverageInstance& inst, const ArcMultiset& arcs, int v) {
  int bal = 0;
  for (const Arc& a : arcs.arcs) {
    if (arc_tail(inst, a) == v) ++bal;
    if (arc_head(inst, a) == v) --bal;
  }
  return bal;
}

inline std::vector<int> imbalance_all(const LineCoverageInstance& inst,
                                      const ArcMultiset& arcs) {
  std::vector<int> bal(static_cast<std::size_t>(inst.vertex_count), 0);
  for (const Arc& a : arcs.arcs) {
    ++bal[static_cast<std::size_t>(arc_tail(inst, a))];
    --bal[static_cast<std::size_t>(arc_head(inst, a))];
  }
  return bal;
}

// Closed walk servicing every required edge exactly once; solver output.
struct CoverageTour {
  std::vector<Arc> steps;
  Cost total_cost = 0;
  Cost lower_bound = 0;  // z*, 0 when unknown
};

// Connected components of the graph induced by required edges, as sorted
// vertex lists, ordered by smallest contained vertex.
inline std::vector<std::vector<int>> required_components(
    const LineCoverageInstance& inst) {
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
  for (const Edge& e : inst.edges) {
    if (!e.required) continue;
    touched[static_cast<std::size_t>(e.u)] = true;
    touched[static_cast<std::size_t>(e.v)] = true;
    int ru = find(e.u), rv = find(e.v);
    if (ru != rv) parent[static_cast<std::size_t>(std::max(ru, rv))] = std::min(ru, rv);
  }
  std::vector<std::vector<int>> comps;
  std::vector<int> comp_index(static_cast<std::size_t>(inst.vertex_count), -1);
  for (int v = 0; v < inst.vertex_count; ++v) {
    if (!touched[static_cast<std::size_t>(v)]) continue;
    int r = find(v);
    if (comp_index[static_cast<std::size_t>(r)] < 0) {
      comp_index[static_cast<std::size_t>(r)] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[static_cast<std::size_t>(comp_index[static_cast<std::size_t>(r)])].push_back(v);
  }
  return comps;
}

namespace detail {

// Sort key for deterministic Hierholzer arc choice.
inline std::uint64_t arc_order_key(const Arc& a) {
  return (static_cast<std::uint64_t>(a.edge_id) << 2) |
         (static_cast<std::uint64_t>(a.forward ? 0 : 1) << 1) |
         (a.mode == TravelMode::Service ? 0 : 1);
}

}  // namespace detail

// Hierholzer's algorithm on the arc multiset. Requires balance at every
// vertex and weak connectivity of arc-incident vertices including start.
// Ties among outgoing arcs break by ascending (edge_id, direction).
inline CoverageTour euler_tour(const LineCoverageInstance& inst,
                               const ArcMultiset& arcs, int start) {
  CoverageTour tour;
  tour.total_cost = 0;
  if (arcs.empty()) return tour;

  auto bal = imbalance_all(inst, arcs);
  for (int v = 0; v < inst.vertex_count; ++v) {
    if (bal[static_cast<std::size_t>(v)] != 0)
      throw SolverError("euler_tour: arc multiset not balanced at vertex " +
                        std::to_string(v));
  }

  const std::size_t n = static_cast<std::size_t>(inst.vertex_count);
  std::vector<std::vector<int>> out(n);  // arc indices, sorted for determinism
  for (std::size_t i = 0; i < arcs.arcs.size(); ++i)
    out[static_cast<std::size_t>(arc_tail(inst, arcs.arcs[i]))].push_back(
        static_cast<int>(i));
  for (auto& lst : out)
    std::sort(lst.begin(), lst.end(), [&](int a, int b) {
      return detail::arc_order_key(arcs.arcs[static_cast<std::size_t>(a)]) <
             detail::arc_order_key(arcs.arcs[static_cast<std::size_t>(b)]);
    });

  std::vector<std::size_t> cursor(n, 0);
  std::vector<int> stack_v{start};
  std::vector<int> stack_a;  // arc used to reach stack_v[i+1]
  std::vector<int> circuit;  // arc indices in reverse completion order
  while (!stack_v.empty()) {
    int v = stack_v.back();
    auto& lst = out[static_cast<std::size_t>(v)];
    if (cursor[static_cast<std::size_t>(v)] < lst.size()) {
      int ai = lst[cursor[static_cast<std::size_t>(v)]++];
      stack_v.push_back(arc_head(inst, arcs.arcs[static_cast<std::size_t>(ai)]));
      stack_a.push_back(ai);
    } else {
      stack_v.pop_back();
      if (!stack_a.empty()) {
        circuit.push_back(stack_a.back());
        stack_a.pop_back();
      }
    }
  }
  if (circuit.size() != arcs.arcs.size())
    throw SolverError("euler_tour: arc multiset not connected from start vertex");

  tour.steps.reserve(circuit.size());
  for (auto it = circuit.rbegin(); it != circuit.rend(); ++it) {
    const Arc& a = arcs.arcs[static_cast<std::size_t>(*it)];
    tour.steps.push_back(a);
    tour.total_cost += arc_cost(inst, a);
  }
  return tour;
}

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const {
    std::string s;
    for (const auto& v : violations) {
      s += v;
      s += '\n';
    }
    return s;
  }
};

// Feasibility checks for a coverage tour: closed walk, each required edge
// serviced exactly once in one direction, balanced induced arc multiset,
// recomputed cost within tolerance, no forbidden-direction step.
inline ValidationReport validate_tour(const LineCoverageInstance& inst,
                                      const CoverageTour& tour) {
  ValidationReport rep;
  if (tour.steps.empty()) {
    if (!inst.required_edge_ids.empty())
      rep.violations.push_back("empty tour but instance has required edges");
    return rep;
  }
  const std::size_t k = tour.steps.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Arc& a = tour.steps[i];
    if (a.edge_id < 0 || a.edge_id >= static_cast<int>(inst.edges.size())) {
      rep.violations.push_back("step " + std::to_string(i) + ": unknown edge id " +
                               std::to_string(a.edge_id));
      return rep;
    }
    if (a.mode == TravelMode::Service && !inst.edge(a.edge_id).required)
      rep.violations.push_back("step " + std::to_string(i) +
                               ": service on non-required edge " +
                               std::to_string(a.edge_id));
    if (!cost_is_finite(arc_cost(inst, a)))
      rep.violations.push_back("step " + std::to_string(i) +
                               ": uses forbidden direction of edge " +
                               std::to_string(a.edge_id));
    const Arc& b = tour.steps[(i + 1) % k];
    if (arc_head(inst, a) != arc_tail(inst, b))
      rep.violations.push_back("step " + std::to_string(i) + ": head " +
                               std::to_string(arc_head(inst, a)) +
                               " != next tail " +
                               std::to_string(arc_tail(inst, b)));
  }

  std::vector<int> service_count(inst.edges.size(), 0);
  for (const Arc& a : tour.steps)
    if (a.mode == TravelMode::Service)
      ++service_count[static_cast<std::size_t>(a.edge_id)];
  for (const Edge& e : inst.edges) {
    int c = service_count[static_cast<std::size_t>(e.id)];
    if (e.required && c != 1)
      rep.violations.push_back("required edge " + std::to_string(e.id) +
                               " serviced " + std::to_string(c) + " times");
    if (!e.required && c != 0)
      rep.violations.push_back("non-required edge " + std::to_string(e.id) +
                               " serviced");
  }

  ArcMultiset induced;
  induced.arcs = tour.steps;
  auto bal = imbalance_all(inst, induced);
  for (int v = 0; v < inst.vertex_count; ++v)
    if (bal[static_cast<std::size_t>(v)] != 0)
      rep.violations.push_back("imbalance " +
                               std::to_string(bal[static_cast<std::size_t>(v)]) +
                               " at vertex " + std::to_string(v));

  Cost recomputed = total_cost(inst, induced);
  if (!approx_equal(recomputed, tour.total_cost))
    rep.violations.push_back("stated cost " + std::to_string(tour.total_cost) +
                             " != recomputed " + std::to_string(recomputed));
  return rep;
}

// Structural checks on the instance itself: dense vertex ids, cost
// invariants, at least one required edge, strongly connected deadhead graph.
inline void check_instance(const LineCoverageInstance& inst) {
  if (inst.vertex_count <= 0) throw SolverError("instance has no vertices");
  if (inst.edges.empty()) throw SolverError("instance has no edges");
  bool any_required = false;
  for (const Edge& e : inst.edges) {
    if (e.u < 0 || e.u >= inst.vertex_count || e.v < 0 || e.v >= inst.vertex_count)
      throw SolverError("edge " + std::to_string(e.id) + " has out-of-range endpoint");
    if (e.deadhead_fwd < 0 || e.deadhead_rev < 0)
      throw SolverError("edge " + std::to_string(e.id) + " has negative deadhead cost");
    if (e.required) {
      any_required = true;
      if (e.service_fwd < 0 || e.service_rev < 0)
        throw SolverError("edge " + std::to_string(e.id) + " has negative service cost");
      if (cost_is_finite(e.service_fwd) && e.service_fwd < e.deadhead_fwd - kEps)
        throw SolverError("edge " + std::to_string(e.id) +
                          ": forward service cost below deadhead cost");
      if (cost_is_finite(e.service_rev) && e.service_rev < e.deadhead_rev - kEps)
        throw SolverError("edge " + std::to_string(e.id) +
                          ": reverse service cost below deadhead cost");
    }
  }
  if (!any_required) throw SolverError("instance has no required edges");

  // Strong connectivity over finite deadhead arcs: forward BFS plus BFS on
  // the reversed graph from vertex 0.
  const std::size_t n = static_cast<std::size_t>(inst.vertex_count);
  std::vector<std::vector<int>> fwd(n), rev(n);
  for (const Edge& e : inst.edges) {
    if (cost_is_finite(e.deadhead_fwd)) {
      fwd[static_cast<std::size_t>(e.u)].push_back(e.v);
      rev[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    if (cost_is_finite(e.deadhead_rev)) {
      fwd[static_cast<std::size_t>(e.v)].push_back(e.u);
      rev[static_cast<std::size_t>(e.u)].push_back(e.v);
    }
  }
  auto reaches_all = [&](const std::vector<std::vector<int>>& adj) {
    std::vector<bool> seen(n, false);
    std::vector<int> queue{0};
    seen[0] = true;
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      for (int w : adj[static_cast<std::size_t>(v)])
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = true;
          queue.push_back(w);
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  };
  if (!reaches_all(fwd) || !reaches_all(rev))
    throw SolverError("deadhead graph is not strongly connected");
}

inline std::vector<int> derive_required_ids(const std::vector<Edge>& edges) {
  std::vector<int> ids;
  for (const Edge& e : edges)
    if (e.required) ids.push_back(e.id);
  return ids;
}

}  // namespace linecover

#endif  // LINECOVER_CORE_HPP
