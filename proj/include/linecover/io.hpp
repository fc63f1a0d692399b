#ifndef LINECOVER_IO_HPP
#define LINECOVER_IO_HPP

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "linecover/approx.hpp"
#include "linecover/core.hpp"
#include "linecover/cost_model.hpp"

namespace linecover {

class SchemaError : public SolverError {
 public:
  using SolverError::SolverError;
};

namespace io_detail {

using nlohmann::json;

inline json require(const json& j, const char* key, const std::string& path) {
  if (!j.contains(key))
    throw SchemaError("missing field " + path + "/" + key);
  return j.at(key);
}

// 17 significant digits round-trip doubles exactly.
inline std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace io_detail

inline CostSpec parse_cost_spec(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("cost_model must be an object");
  std::string type = io_detail::require(j, "type", "/cost_model").get<std::string>();
  if (type == "explicit") return ExplicitCosts{};
  if (type == "euclidean") return EuclideanDistance{};
  if (type == "wind") {
    WindModel wind;
    if (j.contains("service_speed")) wind.service_speed = j.at("service_speed").get<double>();
    if (j.contains("deadhead_speed")) wind.deadhead_speed = j.at("deadhead_speed").get<double>();
    if (j.contains("wind_speed")) wind.wind_speed = j.at("wind_speed").get<double>();
    if (j.contains("wind_direction")) wind.wind_direction = j.at("wind_direction").get<double>();
    return wind;
  }
  throw SchemaError("unknown cost_model type '" + type + "'");
}

inline LineCoverageInstance instance_from_json(const nlohmann::json& doc) {
  using nlohmann::json;
  if (!doc.is_object()) throw SchemaError("instance document must be an object");
  const json vertices = io_detail::require(doc, "vertices", "");
  const json edges = io_detail::require(doc, "edges", "");
  if (!vertices.is_array() || vertices.empty())
    throw SchemaError("/vertices must be a non-empty array");
  if (!edges.is_array() || edges.empty())
    throw SchemaError("/edges must be a non-empty array");

  LineCoverageInstance inst;
  inst.vertex_count = static_cast<int>(vertices.size());
  // Vertex ids may be sparse in the file; remap to dense 0..n-1.
  std::vector<long long> file_ids;
  bool any_coords = false;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const json& v = vertices[i];
    std::string path = "/vertices/" + std::to_string(i);
    long long id = v.contains("id") ? v.at("id").get<long long>()
                                    : static_cast<long long>(i);
    file_ids.push_back(id);
    Point p;
    if (v.contains("x") && v.contains("y")) {
      p.x = v.at("x").get<double>();
      p.y = v.at("y").get<double>();
      any_coords = true;
    }
    inst.coordinates.push_back(p);
  }
  if (!any_coords) inst.coordinates.clear();
  std::set<long long> distinct(file_ids.begin(), file_ids.end());
  if (distinct.size() != file_ids.size())
    throw SchemaError("/vertices contains duplicate ids");
  auto dense = [&](long long id, const std::string& path) {
    for (std::size_t i = 0; i < file_ids.size(); ++i)
      if (file_ids[i] == id) return static_cast<int>(i);
    throw SchemaError("unknown vertex id " + std::to_string(id) + " at " + path);
  };

  for (std::size_t i = 0; i < edges.size(); ++i) {
    const json& ej = edges[i];
    std::string path = "/edges/" + std::to_string(i);
    Edge e;
    e.id = static_cast<int>(i);
    e.u = dense(io_detail::require(ej, "u", path).get<long long>(), path);
    e.v = dense(io_detail::require(ej, "v", path).get<long long>(), path);
    e.required = ej.contains("required") && ej.at("required").get<bool>();
    if (ej.contains("costs")) {
      const json& c = ej.at("costs");
      if (c.contains("df")) e.deadhead_fwd = c.at("df").get<double>();
      if (c.contains("dr")) e.deadhead_rev = c.at("dr").get<double>();
      if (c.contains("sf")) e.service_fwd = c.at("sf").get<double>();
      if (c.contains("sr")) e.service_rev = c.at("sr").get<double>();
    }
    inst.edges.push_back(e);
  }

  if (doc.value("complete_nonrequired", false)) {
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
          e.required = false;
          inst.edges.push_back(e);
        }
  }

  CostSpec spec = doc.contains("cost_model") ? parse_cost_spec(doc.at("cost_model"))
                                             : CostSpec{ExplicitCosts{}};
  inst = build_costs(inst, spec);
  check_instance(inst);
  return inst;
}

inline LineCoverageInstance parse_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open instance file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& ex) {
    throw SchemaError("invalid JSON in " + path + ": " + ex.what());
  }
  try {
    return instance_from_json(doc);
  } catch (const nlohmann::json::exception& ex) {
    throw SchemaError("schema error in " + path + ": " + ex.what());
  }
}

// Serializes with explicit costs so a round trip is exact regardless of the
// original cost model.
inline nlohmann::json instance_to_json(const LineCoverageInstance& inst) {
  nlohmann::json doc;
  doc["vertices"] = nlohmann::json::array();
  for (int i = 0; i < inst.vertex_count; ++i) {
    nlohmann::json v{{"id", i}};
    if (inst.has_coordinates()) {
      v["x"] = inst.coordinates[static_cast<std::size_t>(i)].x;
      v["y"] = inst.coordinates[static_cast<std::size_t>(i)].y;
    }
    doc["vertices"].push_back(v);
  }
  doc["edges"] = nlohmann::json::array();
  for (const Edge& e : inst.edges) {
    nlohmann::json ej{{"u", e.u}, {"v", e.v}, {"required", e.required}};
    nlohmann::json costs{{"df", e.deadhead_fwd}, {"dr", e.deadhead_rev}};
    if (e.required) {
      costs["sf"] = e.service_fwd;
      costs["sr"] = e.service_rev;
    }
    ej["costs"] = costs;
    doc["edges"].push_back(ej);
  }
  doc["cost_model"] = {{"type", "explicit"}};
  doc["complete_nonrequired"] = false;
  return doc;
}

inline void write_instance(const LineCoverageInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write instance file: " + path);
  out << instance_to_json(inst).dump(2) << '\n';
}

inline nlohmann::json tour_to_json(const LineCoverageInstance& inst,
                                   const CoverageTour& tour, const SolveReport* report,
                                   std::uint64_t seed) {
  nlohmann::json doc;
  doc["steps"] = nlohmann::json::array();
  for (const Arc& a : tour.steps) {
    doc["steps"].push_back({{"edge_id", a.edge_id},
                            {"from", arc_tail(inst, a)},
                            {"to", arc_head(inst, a)},
                            {"mode", a.mode == TravelMode::Service ? "service" : "deadhead"},
                            {"cost", arc_cost(inst, a)}});
  }
  doc["totals"] = {{"cost", tour.total_cost}, {"lower_bound", tour.lower_bound}};
  if (report) {
    doc["totals"]["ratio"] = report->ratio;
    doc["totals"]["components"] = report->components;
  }
  doc["seed"] = seed;
  return doc;
}

inline void write_tour(const LineCoverageInstance& inst, const CoverageTour& tour,
                       const SolveReport* report, std::uint64_t seed,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write tour file: " + path);
  out << tour_to_json(inst, tour, report, seed).dump(2) << '\n';
}

inline CoverageTour parse_tour(const LineCoverageInstance& inst, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open tour file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& ex) {
    throw SchemaError("invalid JSON in " + path + ": " + ex.what());
  }
  CoverageTour tour;
  try {
    for (const auto& sj : io_detail::require(doc, "steps", "")) {
      Arc a;
      a.edge_id = sj.at("edge_id").get<int>();
      if (a.edge_id < 0 || a.edge_id >= static_cast<int>(inst.edges.size()))
        throw SchemaError("tour references unknown edge id " + std::to_string(a.edge_id));
      a.mode = sj.at("mode").get<std::string>() == "service" ? TravelMode::Service
                                                             : TravelMode::Deadhead;
      int from = sj.at("from").get<int>();
      const Edge& e = inst.edge(a.edge_id);
      a.forward = from == e.u;
      tour.steps.push_back(a);
    }
    tour.total_cost = io_detail::require(doc, "totals", "").at("cost").get<double>();
    if (doc.at("totals").contains("lower_bound"))
      tour.lower_bound = doc.at("totals").at("lower_bound").get<double>();
  } catch (const nlohmann::json::exception& ex) {
    throw SchemaError(std::string("schema error in tour file: ") + ex.what());
  }
  return tour;
}

// FeatureCollection of one LineString per step with mode/step_index/cost
// properties, for quick visual inspection.
inline void export_geojson(const LineCoverageInstance& inst, const CoverageTour& tour,
                           const std::string& path) {
  if (!inst.has_coordinates()) throw MissingCoordinates();
  nlohmann::json doc;
  doc["type"] = "FeatureCollection";
  doc["features"] = nlohmann::json::array();
  for (std::size_t i = 0; i < tour.steps.size(); ++i) {
    const Arc& a = tour.steps[i];
    const Point& p = inst.coordinates[static_cast<std::size_t>(arc_tail(inst, a))];
    const Point& q = inst.coordinates[static_cast<std::size_t>(arc_head(inst, a))];
    doc["features"].push_back(
        {{"type", "Feature"},
         {"geometry",
          {{"type", "LineString"},
           {"coordinates", {{p.x, p.y}, {q.x, q.y}}}}},
         {"properties",
          {{"mode", a.mode == TravelMode::Service ? "service" : "deadhead"},
           {"step_index", i},
           {"cost", arc_cost(inst, a)}}}});
  }
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write geojson file: " + path);
  out << doc.dump(2) << '\n';
}

}  // namespace linecover

#endif  // LINECOVER_IO_HPP
