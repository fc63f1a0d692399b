#ifndef LINECOVER_MCF_HPP
#define LINECOVER_MCF_HPP

#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

#include "linecover/core.hpp"

namespace linecover {

class InfeasibleFlow : public SolverError {
 public:
  InfeasibleFlow() : SolverError("flow demands are unsatisfiable") {}
};

// Node-demand min-cost flow input. demand(v) = required inflow minus outflow;
// positive demand means the node must absorb flow. Demands sum to zero.
struct FlowNetwork {
  struct NetArc {
    int tail = 0;
    int head = 0;
    std::int64_t capacity = 0;  // ignored when unbounded
    bool unbounded = false;
    Cost unit_cost = 0;
    int tag = -1;  // caller-defined arc identity
  };

  int node_count = 0;
  std::vector<std::int64_t> demands;
  std::vector<NetArc> arcs;

  void add_arc(int tail, int head, std::int64_t cap, Cost cost, int tag = -1) {
    arcs.push_back({tail, head, cap, false, cost, tag});
  }
  void add_unbounded_arc(int tail, int head, Cost cost, int tag = -1) {
    arcs.push_back({tail, head, 0, true, cost, tag});
  }
};

struct FlowSolution {
  std::vector<std::int64_t> flow;  // parallel to FlowNetwork::arcs
  Cost total_cost = 0;
};

namespace detail {

struct ResidualGraph {
  // Forward/backward residual arc pairs at even/odd indices.
  struct RArc {
    int head;
    std::int64_t residual;
    Cost cost;
  };
  std::vector<RArc> arcs;
  std::vector<std::vector<int>> out;

  explicit ResidualGraph(std::size_t nodes) : out(nodes) {}

  void add(int tail, int head, std::int64_t cap, Cost cost) {
    out[static_cast<std::size_t>(tail)].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({head, cap, cost});
    out[static_cast<std::size_t>(head)].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({tail, 0, -cost});
  }
};

}  // namespace detail

// Successive shortest augmenting paths with node potentials. All arc costs
// must be nonnegative, which lets Dijkstra run from the start with zero
// potentials. Demands are reduced to a super-source/super-sink max flow.
inline FlowSolution solve_min_cost_flow(const FlowNetwork& net) {
  if (net.node_count < 0 ||
      net.demands.size() != static_cast<std::size_t>(net.node_count))
    throw SolverError("flow network: demand vector size mismatch");
  std::int64_t demand_sum = 0, abs_sum = 0;
  for (std::int64_t d : net.demands) {
    demand_sum += d;
    abs_sum += d < 0 ? -d : d;
  }
  if (demand_sum != 0) throw SolverError("flow network: demands do not sum to zero");
  for (const auto& a : net.arcs) {
    if (a.unit_cost < 0) throw SolverError("flow network: negative arc cost");
    if (!a.unbounded && a.capacity < 0)
      throw SolverError("flow network: negative capacity");
  }

  // Unbounded capacity materialized as the total absolute demand: no arc can
  // usefully carry more in a feasibility flow.
  const std::int64_t cap_inf = abs_sum;
  const std::size_t n = static_cast<std::size_t>(net.node_count) + 2;
  const int source = net.node_count, sink = net.node_count + 1;

  detail::ResidualGraph rg(n);
  for (const auto& a : net.arcs)
    rg.add(a.tail, a.head, a.unbounded ? cap_inf : a.capacity, a.unit_cost);
  std::int64_t required_flow = 0;
  for (int v = 0; v < net.node_count; ++v) {
    std::int64_t d = net.demands[static_cast<std::size_t>(v)];
    if (d > 0) {
      rg.add(v, sink, d, 0);  // node absorbs d units
      required_flow += d;
    } else if (d < 0) {
      rg.add(source, v, -d, 0);  // node emits -d units
    }
  }

  constexpr Cost kInf = std::numeric_limits<Cost>::infinity();
  std::vector<Cost> potential(n, 0), dist(n);
  std::vector<int> prev_arc(n);
  std::int64_t sent = 0;
  Cost total = 0;

  while (sent < required_flow) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(prev_arc.begin(), prev_arc.end(), -1);
    dist[static_cast<std::size_t>(source)] = 0;
    using Item = std::pair<Cost, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
      auto [d, v] = heap.top();
      heap.pop();
      if (d > dist[static_cast<std::size_t>(v)]) continue;
      for (int ai : rg.out[static_cast<std::size_t>(v)]) {
        const auto& ra = rg.arcs[static_cast<std::size_t>(ai)];
        if (ra.residual <= 0) continue;
        // Nonnegative in exact arithmetic; clamp the floating-point error so
        // zero-cost residual cycles cannot be relaxed forever.
        Cost reduced = std::max(0.0, ra.cost + potential[static_cast<std::size_t>(v)] -
                                         potential[static_cast<std::size_t>(ra.head)]);
        Cost nd = d + reduced;
        if (nd < dist[static_cast<std::size_t>(ra.head)]) {
          dist[static_cast<std::size_t>(ra.head)] = nd;
          prev_arc[static_cast<std::size_t>(ra.head)] = ai;
          heap.emplace(nd, ra.head);
        }
      }
    }
    if (dist[static_cast<std::size_t>(sink)] == kInf) throw InfeasibleFlow();
    for (std::size_t v = 0; v < n; ++v)
      if (dist[v] != kInf) potential[v] += dist[v];

    std::int64_t push = required_flow - sent;
    for (int v = sink; v != source;) {
      int ai = prev_arc[static_cast<std::size_t>(v)];
      push = std::min(push, rg.arcs[static_cast<std::size_t>(ai)].residual);
      v = rg.arcs[static_cast<std::size_t>(ai ^ 1)].head;
    }
    for (int v = sink; v != source;) {
      int ai = prev_arc[static_cast<std::size_t>(v)];
      rg.arcs[static_cast<std::size_t>(ai)].residual -= push;
      rg.arcs[static_cast<std::size_t>(ai ^ 1)].residual += push;
      total += push * rg.arcs[static_cast<std::size_t>(ai)].cost;
      v = rg.arcs[static_cast<std::size_t>(ai ^ 1)].head;
    }
    sent += push;
  }

  FlowSolution sol;
  sol.flow.resize(net.arcs.size());
  for (std::size_t i = 0; i < net.arcs.size(); ++i)
    sol.flow[i] = rg.arcs[2 * i + 1].residual;  // backward residual = flow
  sol.total_cost = total;
  return sol;
}

// Checks conservation, capacities, nonnegativity, cost recomputation, and
// LP optimality (no negative-cost residual cycle, Bellman-Ford).
inline bool verify_flow(const FlowNetwork& net, const FlowSolution& sol) {
  if (sol.flow.size() != net.arcs.size()) return false;
  std::int64_t abs_sum = 0;
  for (std::int64_t d : net.demands) abs_sum += d < 0 ? -d : d;

  std::vector<std::int64_t> net_in(static_cast<std::size_t>(net.node_count), 0);
  Cost recomputed = 0;
  for (std::size_t i = 0; i < net.arcs.size(); ++i) {
    const auto& a = net.arcs[i];
    std::int64_t f = sol.flow[i];
    if (f < 0) return false;
    if (!a.unbounded && f > a.capacity) return false;
    net_in[static_cast<std::size_t>(a.head)] += f;
    net_in[static_cast<std::size_t>(a.tail)] -= f;
    recomputed += f * a.unit_cost;
  }
  for (int v = 0; v < net.node_count; ++v)
    if (net_in[static_cast<std::size_t>(v)] != net.demands[static_cast<std::size_t>(v)])
      return false;
  if (!approx_equal(recomputed, sol.total_cost, 1e-6)) return false;

  // Residual arcs: forward where slack remains, backward where flow > 0.
  struct RA {
    int tail, head;
    Cost cost;
  };
  std::vector<RA> res;
  for (std::size_t i = 0; i < net.arcs.size(); ++i) {
    const auto& a = net.arcs[i];
    std::int64_t cap = a.unbounded ? abs_sum + 1 : a.capacity;
    if (sol.flow[i] < cap) res.push_back({a.tail, a.head, a.unit_cost});
    if (sol.flow[i] > 0) res.push_back({a.head, a.tail, -a.unit_cost});
  }
  std::vector<Cost> dist(static_cast<std::size_t>(net.node_count), 0);
  for (int it = 0; it < net.node_count; ++it) {
    bool relaxed = false;
    for (const auto& r : res) {
      Cost nd = dist[static_cast<std::size_t>(r.tail)] + r.cost;
      if (nd < dist[static_cast<std::size_t>(r.head)] - 1e-7) {
        dist[static_cast<std::size_t>(r.head)] = nd;
        relaxed = true;
      }
    }
    if (!relaxed) return true;
  }
  return false;  // still relaxing after n passes: negative residual cycle
}

}  // namespace linecover

#endif  // LINECOVER_MCF_HPP
