#ifndef LINECOVER_ATSP_HPP
#define LINECOVER_ATSP_HPP

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "linecover/core.hpp"

namespace linecover {

class TooLarge : public SolverError {
 public:
  using SolverError::SolverError;
};

inline constexpr int kHeldKarpLimit = 18;

// Dense asymmetric TSP instance over representative vertices.
struct AtspInstance {
  int size = 0;
  std::vector<Cost> costs;      // size x size, row-major, zero diagonal
  std::vector<int> vertex_map;  // matrix index -> instance vertex

  Cost cost(int i, int j) const {
    return costs[static_cast<std::size_t>(i) * static_cast<std::size_t>(size) +
                 static_cast<std::size_t>(j)];
  }
  Cost& cost(int i, int j) {
    return costs[static_cast<std::size_t>(i) * static_cast<std::size_t>(size) +
                 static_cast<std::size_t>(j)];
  }
};

struct AtspTour {
  std::vector<int> order;  // matrix indices, starting at 0
  Cost cost = 0;
};

inline Cost atsp_tour_cost(const AtspInstance& m, const std::vector<int>& order) {
  Cost c = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    c += m.cost(order[i], order[(i + 1) % order.size()]);
  return c;
}

// Held-Karp bitmask dynamic program; optimal, O(n^2 2^n). City 0 is fixed as
// the start. Ties broken by lexicographically smallest predecessor.
inline AtspTour held_karp_atsp(const AtspInstance& m) {
  const int n = m.size;
  if (n < 3) throw TooLarge("ATSP instance must have at least 3 cities");
  if (n > kHeldKarpLimit)
    throw TooLarge("ATSP instance too large for exact DP: " + std::to_string(n));

  const std::uint32_t full = (1u << (n - 1)) - 1;  // subsets of cities 1..n-1
  const std::size_t rows = static_cast<std::size_t>(full) + 1;
  constexpr Cost kInf = std::numeric_limits<Cost>::infinity();
  std::vector<Cost> dp(rows * static_cast<std::size_t>(n - 1), kInf);
  std::vector<std::int8_t> parent(rows * static_cast<std::size_t>(n - 1), -1);
  auto at = [n](std::uint32_t mask, int last) {
    return static_cast<std::size_t>(mask) * static_cast<std::size_t>(n - 1) +
           static_cast<std::size_t>(last - 1);
  };

  for (int v = 1; v < n; ++v) dp[at(1u << (v - 1), v)] = m.cost(0, v);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    for (int last = 1; last < n; ++last) {
      if (!(mask & (1u << (last - 1)))) continue;
      Cost base = dp[at(mask, last)];
      if (base == kInf) continue;
      for (int next = 1; next < n; ++next) {
        if (mask & (1u << (next - 1))) continue;
        std::uint32_t nm = mask | (1u << (next - 1));
        Cost cand = base + m.cost(last, next);
        std::size_t idx = at(nm, next);
        if (cand < dp[idx]) {
          dp[idx] = cand;
          parent[idx] = static_cast<std::int8_t>(last);
        }
      }
    }
  }

  Cost best = kInf;
  int best_last = -1;
  for (int last = 1; last < n; ++last) {
    Cost cand = dp[at(full, last)] + m.cost(last, 0);
    if (cand < best) {
      best = cand;
      best_last = last;
    }
  }
  if (best_last < 0) throw SolverError("ATSP instance has no finite tour");

  AtspTour tour;
  tour.cost = best;
  std::uint32_t mask = full;
  int last = best_last;
  std::vector<int> rev;
  while (last > 0) {
    rev.push_back(last);
    int p = parent[at(mask, last)];
    mask &= ~(1u << (last - 1));
    last = p < 0 ? 0 : p;
  }
  tour.order.push_back(0);
  tour.order.insert(tour.order.end(), rev.rbegin(), rev.rend());
  return tour;
}

// Nearest-neighbor from every start, then 2-opt and single-city or-opt moves
// until a local optimum. Deterministic for a fixed seed.
inline AtspTour heuristic_atsp(const AtspInstance& m, std::uint64_t seed = 0) {
  const int n = m.size;
  if (n < 3) throw TooLarge("ATSP instance must have at least 3 cities");
  (void)seed;  // construction is already deterministic; kept for config plumbing

  AtspTour best;
  best.cost = std::numeric_limits<Cost>::infinity();
  for (int start = 0; start < n; ++start) {
    std::vector<int> order{start};
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    used[static_cast<std::size_t>(start)] = true;
    while (static_cast<int>(order.size()) < n) {
      int cur = order.back(), pick = -1;
      Cost pick_cost = std::numeric_limits<Cost>::infinity();
      for (int v = 0; v < n; ++v)
        if (!used[static_cast<std::size_t>(v)] && m.cost(cur, v) < pick_cost) {
          pick = v;
          pick_cost = m.cost(cur, v);
        }
      order.push_back(pick);
      used[static_cast<std::size_t>(pick)] = true;
    }
    Cost c = atsp_tour_cost(m, order);
    if (c < best.cost) {
      best.cost = c;
      best.order = std::move(order);
    }
  }

  // Local search: segment reversal (full asymmetric recost) and city moves.
  bool improved = true;
  while (improved) {
    improved = false;
    for (int i = 0; i < n && !improved; ++i)
      for (int j = i + 1; j < n && !improved; ++j) {
        std::vector<int> cand = best.order;
        std::reverse(cand.begin() + i, cand.begin() + j + 1);
        Cost c = atsp_tour_cost(m, cand);
        if (c < best.cost - 1e-12) {
          best.order = std::move(cand);
          best.cost = c;
          improved = true;
        }
      }
    for (int i = 0; i < n && !improved; ++i)
      for (int j = 0; j < n && !improved; ++j) {
        if (i == j) continue;
        std::vector<int> cand = best.order;
        int city = cand[static_cast<std::size_t>(i)];
        cand.erase(cand.begin() + i);
        cand.insert(cand.begin() + (j > i ? j - 1 : j), city);
        Cost c = atsp_tour_cost(m, cand);
        if (c < best.cost - 1e-12) {
          best.order = std::move(cand);
          best.cost = c;
          improved = true;
        }
      }
  }

  // Canonical rotation: start at matrix index 0.
  auto it = std::find(best.order.begin(), best.order.end(), 0);
  std::rotate(best.order.begin(), it, best.order.end());
  return best;
}

}  // namespace linecover

#endif  // LINECOVER_ATSP_HPP
