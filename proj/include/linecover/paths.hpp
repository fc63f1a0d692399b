#ifndef LINECOVER_PATHS_HPP
#define LINECOVER_PATHS_HPP

#include <limits>
#include <queue>
#include <vector>

#include "linecover/core.hpp"

namespace linecover {

class Unreachable : public SolverError {
 public:
  Unreachable(int src, int dst)
      : SolverError("no deadhead path from " + std::to_string(src) + " to " +
                    std::to_string(dst)) {}
};

// A directed deadhead path; arcs chain head-to-tail.
struct PathResult {
  Cost cost = 0;
  std::vector<Arc> arcs;
};

namespace detail {

// Directed deadhead adjacency: arcs with finite deadhead cost, both edge
// directions. Forbidden directions are simply absent.
struct DeadheadAdjacency {
  struct Out {
    int head;
    Cost cost;
    Arc arc;
  };
  std::vector<std::vector<Out>> out;

  explicit DeadheadAdjacency(const LineCoverageInstance& inst)
      : out(static_cast<std::size_t>(inst.vertex_count)) {
    for (const Edge& e : inst.edges) {
      if (cost_is_finite(e.deadhead_fwd))
        out[static_cast<std::size_t>(e.u)].push_back(
            {e.v, e.deadhead_fwd, Arc{e.id, true, TravelMode::Deadhead}});
      if (cost_is_finite(e.deadhead_rev))
        out[static_cast<std::size_t>(e.v)].push_back(
            {e.u, e.deadhead_rev, Arc{e.id, false, TravelMode::Deadhead}});
    }
  }
};

}  // namespace detail

// Dijkstra over deadhead arcs. src == dst yields an empty path of cost 0.
inline PathResult shortest_deadhead_path(const LineCoverageInstance& inst, int src,
                                         int dst) {
  PathResult result;
  if (src == dst) return result;
  detail::DeadheadAdjacency adj(inst);
  const std::size_t n = static_cast<std::size_t>(inst.vertex_count);
  constexpr Cost kUnset = std::numeric_limits<Cost>::infinity();
  std::vector<Cost> dist(n, kUnset);
  std::vector<Arc> via(n);
  std::vector<int> prev(n, -1);
  using Item = std::pair<Cost, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[static_cast<std::size_t>(src)] = 0;
  heap.emplace(0.0, src);
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[static_cast<std::size_t>(v)]) continue;
    if (v == dst) break;
    for (const auto& o : adj.out[static_cast<std::size_t>(v)]) {
      Cost nd = d + o.cost;
      if (nd < dist[static_cast<std::size_t>(o.head)]) {
        dist[static_cast<std::size_t>(o.head)] = nd;
        via[static_cast<std::size_t>(o.head)] = o.arc;
        prev[static_cast<std::size_t>(o.head)] = v;
        heap.emplace(nd, o.head);
      }
    }
  }
  if (dist[static_cast<std::size_t>(dst)] == kUnset) throw Unreachable(src, dst);
  result.cost = dist[static_cast<std::size_t>(dst)];
  for (int v = dst; v != src; v = prev[static_cast<std::size_t>(v)])
    result.arcs.push_back(via[static_cast<std::size_t>(v)]);
  std::reverse(result.arcs.begin(), result.arcs.end());
  return result;
}

// All-pairs shortest deadhead paths with arc reconstruction. Immutable after
// construction; queries are thread-safe.
class DeadheadPaths {
 public:
  explicit DeadheadPaths(const LineCoverageInstance& inst)
      : n_(static_cast<std::size_t>(inst.vertex_count)),
        dist_(n_ * n_, std::numeric_limits<Cost>::infinity()),
        first_arc_(n_ * n_) {
    // Floyd-Warshall; the solver needs the dense matrix anyway.
    detail::DeadheadAdjacency adj(inst);
    for (std::size_t v = 0; v < n_; ++v) dist_[v * n_ + v] = 0;
    for (std::size_t v = 0; v < n_; ++v)
      for (const auto& o : adj.out[v]) {
        std::size_t idx = v * n_ + static_cast<std::size_t>(o.head);
        if (o.cost < dist_[idx]) {
          dist_[idx] = o.cost;
          first_arc_[idx] = o.arc;
        }
      }
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t i = 0; i < n_; ++i) {
        Cost dik = dist_[i * n_ + k];
        if (dik == std::numeric_limits<Cost>::infinity()) continue;
        const Cost* row_k = &dist_[k * n_];
        Cost* row_i = &dist_[i * n_];
        for (std::size_t j = 0; j < n_; ++j) {
          Cost cand = dik + row_k[j];
          if (cand < row_i[j]) {
            row_i[j] = cand;
            first_arc_[i * n_ + j] = first_arc_[i * n_ + k];
          }
        }
      }
  }

  Cost cost(int u, int v) const {
    return dist_[static_cast<std::size_t>(u) * n_ + static_cast<std::size_t>(v)];
  }

  bool reachable(int u, int v) const {
    return cost(u, v) != std::numeric_limits<Cost>::infinity();
  }

  // Expand the shortest u -> v path into concrete deadhead arcs.
  std::vector<Arc> path(const LineCoverageInstance& inst, int u, int v) const {
    if (!reachable(u, v)) throw Unreachable(u, v);
    std::vector<Arc> arcs;
    int cur = u;
    while (cur != v) {
      const Arc& a =
          first_arc_[static_cast<std::size_t>(cur) * n_ + static_cast<std::size_t>(v)];
      arcs.push_back(a);
      cur = arc_head(inst, a);
    }
    return arcs;
  }

 private:
  std::size_t n_;
  std::vector<Cost> dist_;
  std::vector<Arc> first_arc_;
};

}  // namespace linecover

#endif  // LINECOVER_PATHS_HPP
