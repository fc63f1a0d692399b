#ifndef LINECOVER_IMPROVE_HPP
#define LINECOVER_IMPROVE_HPP

#include <cstdint>
#include <vector>

#include "linecover/core.hpp"
#include "linecover/paths.hpp"

namespace linecover {

namespace detail {

// Rotate so the tour starts at a service step; deadhead runs then never wrap
// around the end of the step list.
inline std::vector<Arc> rotate_to_service(const std::vector<Arc>& steps) {
  for (std::size_t i = 0; i < steps.size(); ++i)
    if (steps[i].mode == TravelMode::Service) {
      std::vector<Arc> out(steps.begin() + static_cast<std::ptrdiff_t>(i), steps.end());
      out.insert(out.end(), steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(i));
      return out;
    }
  return steps;
}

}  // namespace detail

// Replace every maximal run of consecutive deadhead steps by the shortest
// deadhead path between the run's endpoints. Cost never increases.
inline CoverageTour short_circuit(const LineCoverageInstance& inst,
                                  const CoverageTour& tour,
                                  const DeadheadPaths& paths) {
  CoverageTour out;
  out.lower_bound = tour.lower_bound;
  if (tour.steps.empty()) return tour;
  std::vector<Arc> steps = detail::rotate_to_service(tour.steps);
  if (steps.front().mode != TravelMode::Service) return tour;  // no services

  std::size_t i = 0;
  while (i < steps.size()) {
    if (steps[i].mode == TravelMode::Service) {
      out.steps.push_back(steps[i]);
      ++i;
      continue;
    }
    std::size_t j = i;
    Cost run_cost = 0;
    while (j < steps.size() && steps[j].mode == TravelMode::Deadhead) {
      run_cost += arc_cost(inst, steps[j]);
      ++j;
    }
    int from = arc_tail(inst, steps[i]);
    int to = arc_head(inst, steps[j - 1]);
    if (paths.cost(from, to) < run_cost - 1e-12) {
      for (const Arc& a : paths.path(inst, from, to)) out.steps.push_back(a);
    } else {
      out.steps.insert(out.steps.end(), steps.begin() + static_cast<std::ptrdiff_t>(i),
                       steps.begin() + static_cast<std::ptrdiff_t>(j));
    }
    i = j;
  }
  out.total_cost = total_cost(inst, ArcMultiset{out.steps});
  return out;
}

namespace detail {

inline Cost service_sequence_cost(const LineCoverageInstance& inst,
                                  const DeadheadPaths& paths,
                                  const std::vector<Arc>& seq) {
  Cost c = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    c += arc_cost(inst, seq[i]);
    c += paths.cost(arc_head(inst, seq[i]),
                    arc_tail(inst, seq[(i + 1) % seq.size()]));
  }
  return c;
}

inline CoverageTour rebuild_from_services(const LineCoverageInstance& inst,
                                          const DeadheadPaths& paths,
                                          const std::vector<Arc>& seq,
                                          Cost lower_bound) {
  CoverageTour tour;
  tour.lower_bound = lower_bound;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    tour.steps.push_back(seq[i]);
    int from = arc_head(inst, seq[i]);
    int to = arc_tail(inst, seq[(i + 1) % seq.size()]);
    for (const Arc& a : paths.path(inst, from, to)) tour.steps.push_back(a);
  }
  tour.total_cost = total_cost(inst, ArcMultiset{tour.steps});
  return tour;
}

}  // namespace detail

// 2-change local search over the service sequence: reverse a segment of
// services, flipping each service direction, and rejoin with shortest
// deadhead paths. First improvement, deterministic scan; stops at a local
// optimum or after move_cap accepted moves. A segment of length one is a
// plain direction flip.
inline CoverageTour two_opt(const LineCoverageInstance& inst, const CoverageTour& tour,
                            const DeadheadPaths& paths, int move_cap) {
  std::vector<Arc> seq;
  for (const Arc& a : tour.steps)
    if (a.mode == TravelMode::Service) seq.push_back(a);
  if (seq.empty() || move_cap <= 0) return tour;

  const std::size_t k = seq.size();
  Cost cur = detail::service_sequence_cost(inst, paths, seq);
  // Elementary-operation budget keeps the total work cubic in the number of
  // services even if move_cap is generous.
  std::uint64_t budget = static_cast<std::uint64_t>(k) * k * k + 1000000;
  std::uint64_t ops = 0;
  int accepted = 0;
  bool improved = true;
  while (improved && accepted < move_cap && ops < budget) {
    improved = false;
    for (std::size_t i = 0; i < k && !improved; ++i) {
      for (std::size_t j = i; j < k && !improved; ++j) {
        ops += k + 4;
        if (ops >= budget) break;
        std::vector<Arc> cand = seq;
        for (std::size_t p = i; p <= j; ++p) {
          const Arc& src = seq[j - (p - i)];
          cand[p] = Arc{src.edge_id, !src.forward, TravelMode::Service};
        }
        Cost c = detail::service_sequence_cost(inst, paths, cand);
        if (c < cur - 1e-12) {
          seq = std::move(cand);
          cur = c;
          ++accepted;
          improved = true;
        }
      }
    }
  }

  CoverageTour out = detail::rebuild_from_services(inst, paths, seq, tour.lower_bound);
  // A degenerate input tour could already beat its own service-sequence
  // rebuild only if a deadhead run undercut the shortest path, which cannot
  // happen; keep the cheaper one regardless.
  return out.total_cost <= tour.total_cost ? out : tour;
}

}  // namespace linecover

#endif  // LINECOVER_IMPROVE_HPP
