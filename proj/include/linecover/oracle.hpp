#ifndef LINECOVER_ORACLE_HPP
#define LINECOVER_ORACLE_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "linecover/atsp.hpp"  // TooLarge
#include "linecover/core.hpp"
#include "linecover/cost_model.hpp"
#include "linecover/paths.hpp"

namespace linecover {

class UnsatisfiableProfile : public SolverError {
 public:
  using SolverError::SolverError;
};

inline constexpr int kOracleRequiredCap = 8;

// Exact minimum by enumerating every cyclic service order and direction
// assignment, joining consecutive services with shortest deadhead paths.
// Rotation symmetry is cut by pinning the smallest required edge id first.
inline CoverageTour brute_force_optimal(const LineCoverageInstance& inst) {
  const int k = static_cast<int>(inst.required_edge_ids.size());
  if (k == 0) throw SolverError("oracle: no required edges");
  if (k > kOracleRequiredCap)
    throw TooLarge("oracle: " + std::to_string(k) + " required edges exceeds cap of " +
                   std::to_string(kOracleRequiredCap));
  check_instance(inst);
  DeadheadPaths paths(inst);

  std::vector<int> ids = inst.required_edge_ids;
  std::sort(ids.begin(), ids.end());
  std::vector<int> perm(ids.begin() + 1, ids.end());

  Cost best = std::numeric_limits<Cost>::infinity();
  std::vector<Arc> best_seq;
  std::vector<Arc> seq(static_cast<std::size_t>(k));
  do {
    for (std::uint32_t dirs = 0; dirs < (1u << k); ++dirs) {
      seq[0] = Arc{ids[0], (dirs & 1u) == 0, TravelMode::Service};
      for (int i = 1; i < k; ++i)
        seq[static_cast<std::size_t>(i)] =
            Arc{perm[static_cast<std::size_t>(i - 1)], (dirs & (1u << i)) == 0,
                TravelMode::Service};
      Cost c = 0;
      for (int i = 0; i < k && c < best; ++i) {
        const Arc& a = seq[static_cast<std::size_t>(i)];
        const Arc& b = seq[static_cast<std::size_t>((i + 1) % k)];
        c += arc_cost(inst, a) + paths.cost(arc_head(inst, a), arc_tail(inst, b));
      }
      if (c < best) {
        best = c;
        best_seq = seq;
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  CoverageTour tour;
  tour.total_cost = 0;
  for (int i = 0; i < k; ++i) {
    const Arc& a = best_seq[static_cast<std::size_t>(i)];
    const Arc& b = best_seq[static_cast<std::size_t>((i + 1) % k)];
    tour.steps.push_back(a);
    for (const Arc& p : paths.path(inst, arc_head(inst, a), arc_tail(inst, b)))
      tour.steps.push_back(p);
  }
  tour.total_cost = total_cost(inst, ArcMultiset{tour.steps});
  return tour;
}

enum class Profile { General, ConnectedRequired, EulerianRequired };

struct GeneratorParams {
  std::uint64_t seed = 0;
  int n_vertices = 10;
  int n_required = 5;
  int n_extra_edges = 5;
  CostSpec cost_spec = WindModel{};
  Profile profile = Profile::ConnectedRequired;
  int components = 2;  // General profile only
};

namespace detail {

inline int pick(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Connected required component: each new edge hangs off an already-used
// vertex. Vertices come from the half-open pool [lo, hi).
inline void gen_connected_required(std::mt19937_64& rng, int lo, int hi, int count,
                                   std::vector<std::pair<int, int>>& out) {
  std::vector<int> used{pick(rng, lo, hi - 1)};
  for (int i = 0; i < count; ++i) {
    int u = used[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(used.size()) - 1))];
    int v = pick(rng, lo, hi - 1);
    if (v == u) v = lo + (v - lo + 1) % (hi - lo);
    if (v == u) {  // pool of size one cannot avoid a loop
      throw UnsatisfiableProfile("vertex pool too small for required edges");
    }
    out.emplace_back(u, v);
    if (std::find(used.begin(), used.end(), v) == used.end()) used.push_back(v);
  }
}

// Union of cycles sharing a vertex with the growing component: every
// required degree stays even and the component stays connected.
inline void gen_eulerian_required(std::mt19937_64& rng, int n_vertices, int count,
                                  std::vector<std::pair<int, int>>& out) {
  if (count < 2) throw UnsatisfiableProfile("Eulerian profile needs >= 2 required edges");
  if (n_vertices < 2) throw UnsatisfiableProfile("Eulerian profile needs >= 2 vertices");
  if (n_vertices == 2 && count % 2 != 0)
    throw UnsatisfiableProfile("two vertices admit only even Eulerian edge counts");
  std::vector<int> used;
  int remaining = count;
  while (remaining > 0) {
    int max_len = std::min({remaining, 5, n_vertices});
    int len = pick(rng, 2, std::max(2, max_len));
    if (remaining - len == 1) {
      // A single leftover edge cannot form a cycle; grow or shrink this one.
      if (len + 1 <= std::min(remaining, n_vertices))
        ++len;
      else
        --len;
    }

    std::vector<int> cyc;
    if (used.empty())
      cyc.push_back(pick(rng, 0, n_vertices - 1));
    else
      cyc.push_back(used[static_cast<std::size_t>(
          pick(rng, 0, static_cast<int>(used.size()) - 1))]);
    while (static_cast<int>(cyc.size()) < len) {
      int v = pick(rng, 0, n_vertices - 1);
      if (std::find(cyc.begin(), cyc.end(), v) == cyc.end()) cyc.push_back(v);
    }
    for (int i = 0; i < len; ++i)
      out.emplace_back(cyc[static_cast<std::size_t>(i)],
                       cyc[static_cast<std::size_t>((i + 1) % len)]);
    for (int v : cyc)
      if (std::find(used.begin(), used.end(), v) == used.end()) used.push_back(v);
    remaining -= len;
  }
}

}  // namespace detail

// Seeded random instance; the same parameters always produce the same
// instance. Extra non-required edges are sprinkled uniformly and the
// deadhead graph is patched to connectivity afterwards.
inline LineCoverageInstance random_instance(const GeneratorParams& params) {
  if (params.n_required < 1)
    throw UnsatisfiableProfile("need at least one required edge");
  if (params.n_vertices < 2) throw UnsatisfiableProfile("need at least two vertices");
  std::mt19937_64 rng(params.seed);

  LineCoverageInstance inst;
  inst.vertex_count = params.n_vertices;
  std::uniform_real_distribution<double> coord(0.0, 500.0);
  inst.coordinates.reserve(static_cast<std::size_t>(params.n_vertices));
  for (int i = 0; i < params.n_vertices; ++i)
    inst.coordinates.push_back({coord(rng), coord(rng)});

  std::vector<std::pair<int, int>> required;
  switch (params.profile) {
    case Profile::ConnectedRequired:
      detail::gen_connected_required(rng, 0, params.n_vertices, params.n_required,
                                     required);
      break;
    case Profile::EulerianRequired:
      detail::gen_eulerian_required(rng, params.n_vertices, params.n_required, required);
      break;
    case Profile::General: {
      int c = std::max(1, params.components);
      if (c > params.n_required)
        throw UnsatisfiableProfile("more components than required edges");
      // Disjoint vertex pools guarantee exactly c required components.
      int pool = params.n_vertices / c;
      if (pool < 2) throw UnsatisfiableProfile("too few vertices for component count");
      for (int i = 0; i < c; ++i) {
        int count = params.n_required / c + (i < params.n_required % c ? 1 : 0);
        detail::gen_connected_required(rng, i * pool, (i + 1) * pool, count, required);
      }
      break;
    }
  }
  for (auto [u, v] : required) {
    Edge e;
    e.id = static_cast<int>(inst.edges.size());
    e.u = u;
    e.v = v;
    e.required = true;
    inst.edges.push_back(e);
  }

  for (int i = 0; i < params.n_extra_edges; ++i) {
    int u = detail::pick(rng, 0, params.n_vertices - 1);
    int v = detail::pick(rng, 0, params.n_vertices - 1);
    if (u == v) v = (v + 1) % params.n_vertices;
    Edge e;
    e.id = static_cast<int>(inst.edges.size());
    e.u = u;
    e.v = v;
    e.required = false;
    inst.edges.push_back(e);
  }

  // Patch the deadhead graph to connectivity with non-required chords.
  {
    std::vector<int> parent(static_cast<std::size_t>(params.n_vertices));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x)
        x = parent[static_cast<std::size_t>(x)] =
            parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      return x;
    };
    auto unite = [&](int a, int b) {
      a = find(a);
      b = find(b);
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    };
    for (const Edge& e : inst.edges) unite(e.u, e.v);
    for (int v = 1; v < params.n_vertices; ++v) {
      if (find(v) == find(0)) continue;
      Edge e;
      e.id = static_cast<int>(inst.edges.size());
      e.u = detail::pick(rng, 0, v - 1);
      e.v = v;
      e.required = false;
      inst.edges.push_back(e);
      unite(e.u, e.v);
    }
  }

  inst = build_costs(inst, params.cost_spec);
  check_instance(inst);

  // Profile guarantees are cheap to verify; fail loudly if construction slipped.
  auto comps = required_components(inst);
  switch (params.profile) {
    case Profile::ConnectedRequired:
      if (comps.size() != 1) throw UnsatisfiableProfile("connected profile violated");
      break;
    case Profile::EulerianRequired: {
      if (comps.size() != 1) throw UnsatisfiableProfile("eulerian profile violated");
      std::vector<int> deg(static_cast<std::size_t>(inst.vertex_count), 0);
      for (const Edge& e : inst.edges)
        if (e.required) {
          ++deg[static_cast<std::size_t>(e.u)];
          ++deg[static_cast<std::size_t>(e.v)];
        }
      for (int d : deg)
        if (d % 2 != 0) throw UnsatisfiableProfile("eulerian profile violated");
      break;
    }
    case Profile::General:
      if (static_cast<int>(comps.size()) != std::max(1, params.components))
        throw UnsatisfiableProfile("general profile component count violated");
      break;
  }
  return inst;
}

}  // namespace linecover

#endif  // LINECOVER_ORACLE_HPP
