#ifndef LINECOVER_COST_MODEL_HPP
#define LINECOVER_COST_MODEL_HPP

#include <cmath>
#include <variant>

#include "linecover/core.hpp"

namespace linecover {

// Wind-dependent travel-time model. The wind vector points TOWARD
// wind_direction (radians from +x), so a travel vector aligned with it gets
// a tailwind.
struct WindModel {
  double service_speed = 7.0;    // m/s
  double deadhead_speed = 10.0;  // m/s
  double wind_speed = 0.0;       // m/s
  double wind_direction = 0.0;   // radians from +x axis
};

struct ExplicitCosts {};       // costs are already on the edges; validate only
struct EuclideanDistance {};   // cost = edge length in both modes/directions

using CostSpec = std::variant<ExplicitCosts, WindModel, EuclideanDistance>;

class WindTooStrong : public SolverError {
 public:
  WindTooStrong() : SolverError("wind speed must be below vehicle speed") {}
};

class MissingCoordinates : public SolverError {
 public:
  MissingCoordinates() : SolverError("cost model requires vertex coordinates") {}
};

class CostInvariantViolated : public SolverError {
 public:
  using SolverError::SolverError;
};

// Ground speed when flying at airspeed v with wind w at angle phi between
// the wind vector and the travel vector: w cos(phi) + sqrt(v^2 - w^2 sin^2 phi).
inline double effective_speed(double v, double w, double phi) {
  if (w >= v) throw WindTooStrong();
  double s = w * std::sin(phi);
  return w * std::cos(phi) + std::sqrt(v * v - s * s);
}

// Travel time from tail to head under the wind model. Zero-length edges cost 0.
inline Cost edge_travel_cost(const Point& tail, const Point& head,
                             const WindModel& model, TravelMode mode) {
  double dx = head.x - tail.x, dy = head.y - tail.y;
  double len = std::hypot(dx, dy);
  if (len == 0.0) return 0.0;
  double travel_angle = std::atan2(dy, dx);
  double phi = travel_angle - model.wind_direction;
  double v = mode == TravelMode::Service ? model.service_speed : model.deadhead_speed;
  return len / effective_speed(v, model.wind_speed, phi);
}

// Populate all four directional costs per edge from the given spec. With an
// explicit spec the edge costs are validated in place.
inline LineCoverageInstance build_costs(const LineCoverageInstance& input,
                                        const CostSpec& spec) {
  LineCoverageInstance inst = input;
  inst.required_edge_ids = derive_required_ids(inst.edges);

  if (std::holds_alternative<ExplicitCosts>(spec)) {
    for (const Edge& e : inst.edges) {
      if (e.deadhead_fwd < 0 || e.deadhead_rev < 0 ||
          !cost_is_finite(std::min(e.deadhead_fwd, e.deadhead_rev)) ||
          (e.required && (e.service_fwd < 0 || e.service_rev < 0)))
        throw CostInvariantViolated("edge " + std::to_string(e.id) +
                                    ": missing or negative cost");
      if (e.required) {
        if (cost_is_finite(e.service_fwd) && e.service_fwd < e.deadhead_fwd - kEps)
          throw CostInvariantViolated("edge " + std::to_string(e.id) +
                                      ": forward deadhead cost exceeds service cost");
        if (cost_is_finite(e.service_rev) && e.service_rev < e.deadhead_rev - kEps)
          throw CostInvariantViolated("edge " + std::to_string(e.id) +
                                      ": reverse deadhead cost exceeds service cost");
      }
    }
    return inst;
  }

  if (!inst.has_coordinates()) throw MissingCoordinates();

  if (const auto* wind = std::get_if<WindModel>(&spec)) {
    if (wind->service_speed <= 0 || wind->deadhead_speed <= 0 ||
        wind->wind_speed < 0 ||
        wind->wind_speed >= std::min(wind->service_speed, wind->deadhead_speed))
      throw WindTooStrong();
    for (Edge& e : inst.edges) {
      const Point& pu = inst.coordinates[static_cast<std::size_t>(e.u)];
      const Point& pv = inst.coordinates[static_cast<std::size_t>(e.v)];
      e.deadhead_fwd = edge_travel_cost(pu, pv, *wind, TravelMode::Deadhead);
      e.deadhead_rev = edge_travel_cost(pv, pu, *wind, TravelMode::Deadhead);
      if (e.required) {
        e.service_fwd = edge_travel_cost(pu, pv, *wind, TravelMode::Service);
        e.service_rev = edge_travel_cost(pv, pu, *wind, TravelMode::Service);
        // service_speed > deadhead_speed would flip the cost invariant
        if (e.service_fwd < e.deadhead_fwd - kEps || e.service_rev < e.deadhead_rev - kEps)
          throw CostInvariantViolated(
              "wind model produced service cost below deadhead cost; "
              "service speed must not exceed deadhead speed");
      } else {
        e.service_fwd = e.service_rev = kInfeasible;
      }
    }
    return inst;
  }

  // EuclideanDistance: both modes and directions cost the edge length.
  for (Edge& e : inst.edges) {
    const Point& pu = inst.coordinates[static_cast<std::size_t>(e.u)];
    const Point& pv = inst.coordinates[static_cast<std::size_t>(e.v)];
    double len = std::hypot(pv.x - pu.x, pv.y - pu.y);
    e.deadhead_fwd = e.deadhead_rev = len;
    if (e.required)
      e.service_fwd = e.service_rev = len;
    else
      e.service_fwd = e.service_rev = kInfeasible;
  }
  return inst;
}

}  // namespace linecover

#endif  // LINECOVER_COST_MODEL_HPP
