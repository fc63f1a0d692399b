#ifndef LINECOVER_FLOW_PIPELINE_HPP
#define LINECOVER_FLOW_PIPELINE_HPP

#include <cassert>
#include <vector>

#include "linecover/core.hpp"
#include "linecover/mcf.hpp"

namespace linecover {

// The cheaper service direction per required edge.
struct MinCostDigraph {
  std::vector<Arc> chosen;  // one Service arc per required edge, by edge id order
};

inline MinCostDigraph min_cost_digraph(const LineCoverageInstance& inst) {
  MinCostDigraph mcd;
  mcd.chosen.reserve(inst.required_edge_ids.size());
  for (int id : inst.required_edge_ids) {
    const Edge& e = inst.edge(id);
    bool forward = e.service_fwd <= e.service_rev;  // tie keeps forward
    mcd.chosen.push_back(Arc{id, forward, TravelMode::Service});
  }
  return mcd;
}

namespace flow_tag {

// Network arc tags: edge id in the upper bits, kind in the lower two.
// Deadhead kinds are relative to edge orientation (u -> v); the reversal
// kind is unique per required edge.
enum Kind : int { DeadheadFwd = 0, DeadheadRev = 1, Reversal = 2 };

inline int make(int edge_id, Kind kind) { return edge_id * 4 + kind; }
inline int edge_id(int tag) { return tag / 4; }
inline Kind kind(int tag) { return static_cast<Kind>(tag % 4); }

}  // namespace flow_tag

// Per required edge: two unbounded deadhead arcs plus a capacity-2 service
// reversal arc directed against the chosen arc with unit cost
// (s(reverse) - s(chosen)) / 2. Per non-required edge: two unbounded
// deadhead arcs. Node demand = imbalance of the min-cost digraph.
inline FlowNetwork construct_flow_digraph(const LineCoverageInstance& inst,
                                          const MinCostDigraph& mcd) {
  FlowNetwork net;
  net.node_count = inst.vertex_count;
  net.demands.assign(static_cast<std::size_t>(inst.vertex_count), 0);

  std::vector<char> chosen_fwd(inst.edges.size(), 0);
  std::vector<char> is_chosen(inst.edges.size(), 0);
  for (const Arc& a : mcd.chosen) {
    is_chosen[static_cast<std::size_t>(a.edge_id)] = 1;
    chosen_fwd[static_cast<std::size_t>(a.edge_id)] = a.forward ? 1 : 0;
    ++net.demands[static_cast<std::size_t>(arc_tail(inst, a))];
    --net.demands[static_cast<std::size_t>(arc_head(inst, a))];
  }

  for (const Edge& e : inst.edges) {
    if (cost_is_finite(e.deadhead_fwd))
      net.add_unbounded_arc(e.u, e.v, e.deadhead_fwd,
                            flow_tag::make(e.id, flow_tag::DeadheadFwd));
    if (cost_is_finite(e.deadhead_rev))
      net.add_unbounded_arc(e.v, e.u, e.deadhead_rev,
                            flow_tag::make(e.id, flow_tag::DeadheadRev));
    if (e.required) {
      assert(is_chosen[static_cast<std::size_t>(e.id)]);
      bool fwd = chosen_fwd[static_cast<std::size_t>(e.id)] != 0;
      Cost reversal = (e.service_cost(!fwd) - e.service_cost(fwd)) / 2;
      assert(reversal >= 0);
      if (cost_is_finite(reversal)) {
        int tail = fwd ? e.v : e.u;  // against the chosen direction
        int head = fwd ? e.u : e.v;
        net.add_arc(tail, head, 2, reversal, flow_tag::make(e.id, flow_tag::Reversal));
      }
    }
  }
  return net;
}

// Output of the LP relaxation via min-cost flow: a balanced digraph (up to
// the ambiguous arcs), the ambiguous arc set, and the lower bound z*.
struct LpSolveResult {
  ArcMultiset balanced;          // service + deadhead arcs decided by the flow
  std::vector<Arc> ambiguous;    // chosen arcs whose reversal flow is 1
  Cost lower_bound = 0;          // s(A_m) + c(f)
  std::vector<std::int64_t> reversal_flows;  // by required edge order
  std::vector<std::int64_t> deadhead_flows;  // by network arc order, deadhead tags only
};

inline LpSolveResult lp_solve(const LineCoverageInstance& inst) {
  MinCostDigraph mcd = min_cost_digraph(inst);
  FlowNetwork net = construct_flow_digraph(inst, mcd);
  FlowSolution flow = solve_min_cost_flow(net);

  LpSolveResult result;
  Cost service_sum = 0;
  for (const Arc& a : mcd.chosen) service_sum += arc_cost(inst, a);
  result.lower_bound = service_sum + flow.total_cost;

  std::vector<std::int64_t> reversal(inst.edges.size(), 0);
  for (std::size_t i = 0; i < net.arcs.size(); ++i) {
    int tag = net.arcs[i].tag;
    if (flow_tag::kind(tag) == flow_tag::Reversal)
      reversal[static_cast<std::size_t>(flow_tag::edge_id(tag))] = flow.flow[i];
  }

  for (const Arc& a : mcd.chosen) {
    std::int64_t r = reversal[static_cast<std::size_t>(a.edge_id)];
    result.reversal_flows.push_back(r);
    if (r == 0) {
      result.balanced.insert(a);
    } else if (r == 2) {
      result.balanced.insert(Arc{a.edge_id, !a.forward, TravelMode::Service});
    } else {
      result.ambiguous.push_back(a);
    }
  }
  for (std::size_t i = 0; i < net.arcs.size(); ++i) {
    int tag = net.arcs[i].tag;
    flow_tag::Kind k = flow_tag::kind(tag);
    if (k == flow_tag::Reversal) continue;
    result.deadhead_flows.push_back(flow.flow[i]);
    Arc copy{flow_tag::edge_id(tag), k == flow_tag::DeadheadFwd, TravelMode::Deadhead};
    for (std::int64_t c = 0; c < flow.flow[i]; ++c) result.balanced.insert(copy);
  }
  return result;
}

}  // namespace linecover

#endif  // LINECOVER_FLOW_PIPELINE_HPP
