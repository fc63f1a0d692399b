#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "linecover/approx.hpp"
#include "linecover/io.hpp"
#include "test_support.hpp"

using namespace linecover;
using nlohmann::json;

namespace {

json minimal_doc() {
  return json::parse(R"({
    "vertices": [{"id": 0}, {"id": 1}],
    "edges": [
      {"u": 0, "v": 1, "required": true,
       "costs": {"sf": 5, "sr": 6, "df": 2, "dr": 3}}
    ],
    "cost_model": {"type": "explicit"}
  })");
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct TempFile {
  std::string path;
  explicit TempFile(const char* name) : path(std::string("/tmp/lc_io_") + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("minimal instance parses") {
  auto inst = instance_from_json(minimal_doc());
  CHECK(inst.vertex_count == 2);
  REQUIRE(inst.edges.size() == 1);
  CHECK(inst.edges[0].required);
  CHECK(inst.edges[0].service_fwd == 5);
  CHECK(inst.edges[0].deadhead_rev == 3);
  CHECK(inst.required_edge_ids == std::vector<int>{0});
}

TEST_CASE("sparse vertex ids are remapped densely") {
  auto doc = minimal_doc();
  doc["vertices"] = json::array({json{{"id", 10}}, json{{"id", 40}}});
  doc["edges"][0]["u"] = 40;
  doc["edges"][0]["v"] = 10;
  auto inst = instance_from_json(doc);
  CHECK(inst.edges[0].u == 1);
  CHECK(inst.edges[0].v == 0);
}

TEST_CASE("schema violations are reported as such") {
  CHECK_THROWS_AS(instance_from_json(json::parse("[]")), SchemaError);
  auto no_edges = minimal_doc();
  no_edges.erase("edges");
  CHECK_THROWS_AS(instance_from_json(no_edges), SchemaError);
  auto bad_vertex = minimal_doc();
  bad_vertex["edges"][0]["v"] = 7;
  CHECK_THROWS_AS(instance_from_json(bad_vertex), SchemaError);
  auto dup = minimal_doc();
  dup["vertices"][1]["id"] = 0;
  CHECK_THROWS_AS(instance_from_json(dup), SchemaError);
  auto bad_model = minimal_doc();
  bad_model["cost_model"]["type"] = "quadratic";
  CHECK_THROWS_AS(instance_from_json(bad_model), SchemaError);
}

TEST_CASE("service cheaper than deadheading is rejected on load") {
  auto doc = minimal_doc();
  doc["edges"][0]["costs"]["sf"] = 1;  // below df = 2
  CHECK_THROWS_AS(instance_from_json(doc), CostInvariantViolated);
}

TEST_CASE("wind cost model fills costs from coordinates") {
  auto doc = json::parse(R"({
    "vertices": [{"id": 0, "x": 0, "y": 0}, {"id": 1, "x": 100, "y": 0}],
    "edges": [{"u": 0, "v": 1, "required": true}],
    "cost_model": {"type": "wind", "service_speed": 7, "deadhead_speed": 10,
                   "wind_speed": 2, "wind_direction": 0}
  })");
  auto inst = instance_from_json(doc);
  CHECK(inst.edges[0].service_fwd == Catch::Approx(100.0 / 9.0));
  CHECK(inst.edges[0].deadhead_rev == Catch::Approx(100.0 / 8.0));
}

TEST_CASE("complete_nonrequired fills in the missing pairs") {
  auto doc = json::parse(R"({
    "vertices": [{"id": 0, "x": 0, "y": 0}, {"id": 1, "x": 3, "y": 0},
                 {"id": 2, "x": 0, "y": 4}],
    "edges": [{"u": 0, "v": 1, "required": true}],
    "cost_model": {"type": "euclidean"},
    "complete_nonrequired": true
  })");
  auto inst = instance_from_json(doc);
  CHECK(inst.edges.size() == 3);
  CHECK(inst.required_edge_ids.size() == 1);
  CHECK(inst.edges[2].deadhead_fwd == Catch::Approx(5.0));
}

TEST_CASE("instance write/read round-trip is stable") {
  auto inst = random_instance(lct::small_params(9, Profile::ConnectedRequired));
  TempFile f1("inst1.json"), f2("inst2.json");
  write_instance(inst, f1.path);
  auto again = parse_instance(f1.path);
  write_instance(again, f2.path);
  CHECK(slurp(f1.path) == slurp(f2.path));
  REQUIRE(again.edges.size() == inst.edges.size());
  for (std::size_t i = 0; i < inst.edges.size(); ++i) {
    CHECK(again.edges[i].u == inst.edges[i].u);
    CHECK(again.edges[i].service_fwd == inst.edges[i].service_fwd);
  }
}

TEST_CASE("tour serialization round-trips and validates") {
  auto inst = random_instance(lct::small_params(13, Profile::ConnectedRequired));
  auto tour = solve(inst, SolverConfig{});
  TempFile f("tour.json");
  write_tour(inst, tour, nullptr, 13, f.path);
  auto parsed = parse_tour(inst, f.path);
  REQUIRE(parsed.steps.size() == tour.steps.size());
  for (std::size_t i = 0; i < tour.steps.size(); ++i)
    CHECK(parsed.steps[i] == tour.steps[i]);
  CHECK(parsed.total_cost == Catch::Approx(tour.total_cost));
  CHECK(validate_tour(inst, parsed).ok());
}

TEST_CASE("geojson has one feature per step") {
  auto inst = random_instance(lct::small_params(17, Profile::ConnectedRequired));
  auto tour = solve(inst, SolverConfig{});
  TempFile f("tour.geojson");
  export_geojson(inst, tour, f.path);
  auto doc = json::parse(slurp(f.path));
  CHECK(doc["type"] == "FeatureCollection");
  REQUIRE(doc["features"].size() == tour.steps.size());
  CHECK(doc["features"][0]["geometry"]["type"] == "LineString");
  CHECK(doc["features"][0]["properties"].contains("mode"));
}

TEST_CASE("geojson needs coordinates") {
  auto inst = lct::make_instance(2, {lct::req(0, 1, 2, 2)});
  CoverageTour t;
  t.steps = {Arc{0, true, TravelMode::Service}, Arc{0, false, TravelMode::Deadhead}};
  CHECK_THROWS_AS(export_geojson(inst, t, "/tmp/lc_io_nocoords.geojson"),
                  MissingCoordinates);
}
