#include <catch2/catch_amalgamated.hpp>

#include "linecover/approx.hpp"
#include "linecover/improve.hpp"
#include "linecover/oracle.hpp"
#include "test_support.hpp"

using namespace linecover;
using lct::dead;
using lct::make_instance;
using lct::req;

namespace {

CoverageTour tour_of(const LineCoverageInstance& inst, std::vector<Arc> arcs) {
  CoverageTour t;
  t.steps = std::move(arcs);
  for (const Arc& a : t.steps) t.total_cost += arc_cost(inst, a);
  return t;
}

}  // namespace

TEST_CASE("a tour already using shortest connections is left alone") {
  auto inst = make_instance(2, {req(0, 1, 3, 3)});
  auto t = tour_of(inst, {Arc{0, true, TravelMode::Service},
                          Arc{0, false, TravelMode::Deadhead}});
  DeadheadPaths paths(inst);
  auto improved = short_circuit(inst, t, paths);
  CHECK(improved.total_cost == Catch::Approx(t.total_cost));
  CHECK(improved.steps.size() == t.steps.size());
}

TEST_CASE("a wasteful deadhead run is replaced by the shortest path") {
  // Return from 1 to 0 via vertex 2 costs 20; the direct edge costs 4.
  auto inst = make_instance(3, {req(0, 1, 5, 5), dead(0, 1, 4, 4),
                                dead(1, 2, 10, 10), dead(2, 0, 10, 10)});
  auto t = tour_of(inst, {Arc{0, true, TravelMode::Service},
                          Arc{2, true, TravelMode::Deadhead},
                          Arc{3, true, TravelMode::Deadhead}});
  DeadheadPaths paths(inst);
  auto improved = short_circuit(inst, t, paths);
  CHECK(improved.total_cost == Catch::Approx(9.0));
  CHECK(validate_tour(inst, improved).ok());
}

TEST_CASE("zero move budget returns the input tour unchanged") {
  auto inst = random_instance(lct::small_params(5, Profile::ConnectedRequired));
  SolverConfig cfg;
  cfg.short_circuit = false;
  cfg.two_opt = false;
  auto t = solve(inst, cfg);
  DeadheadPaths paths(inst);
  auto same = two_opt(inst, t, paths, 0);
  CHECK(same.total_cost == Catch::Approx(t.total_cost));
  CHECK(same.steps.size() == t.steps.size());
}

TEST_CASE("segment reversal rescues a badly ordered tour") {
  // Two required edges pointing away from each other; servicing 0->1 then
  // 2->0 forces a long hop 1->2. Flipping one service direction lets the
  // tour run 0->1, 1->0, 0->2, 2->0 using cheap direct deadheads.
  auto inst = make_instance(3, {lct::req4(0, 1, 2, 2, 1, 1),
                                lct::req4(2, 0, 2, 2, 1, 1), dead(1, 2, 50, 50)});
  auto bad = tour_of(inst, {Arc{0, true, TravelMode::Service},
                            Arc{2, true, TravelMode::Deadhead},
                            Arc{1, true, TravelMode::Service}});
  REQUIRE(validate_tour(inst, bad).ok());
  DeadheadPaths paths(inst);
  auto improved = two_opt(inst, bad, paths, 100);
  CHECK(improved.total_cost < bad.total_cost);
  CHECK(improved.total_cost == Catch::Approx(6.0));
  CHECK(validate_tour(inst, improved).ok());
}

TEST_CASE("improvements never hurt and never break validity") {
  for (std::uint64_t seed = 300; seed < 330; ++seed) {
    auto profile = seed % 2 == 0 ? Profile::ConnectedRequired : Profile::EulerianRequired;
    auto inst = random_instance(lct::small_params(seed, profile, 6));
    SolverConfig cfg;
    cfg.short_circuit = false;
    cfg.two_opt = false;
    auto base = solve(inst, cfg);
    DeadheadPaths paths(inst);

    auto sc = short_circuit(inst, base, paths);
    CHECK(sc.total_cost <= base.total_cost + 1e-9);
    CHECK(validate_tour(inst, sc).ok());

    auto to = two_opt(inst, sc, paths, 1000);
    CHECK(to.total_cost <= sc.total_cost + 1e-9);
    CHECK(validate_tour(inst, to).ok());
  }
}

TEST_CASE("single service flip counts as a move") {
  // One required edge with a much cheaper reverse service; the tour was
  // built forward. Reversing the one-element segment flips it.
  auto inst = make_instance(2, {lct::req4(0, 1, 50, 6, 5, 5)});
  auto bad = tour_of(inst, {Arc{0, true, TravelMode::Service},
                            Arc{0, false, TravelMode::Deadhead}});
  REQUIRE(validate_tour(inst, bad).ok());
  DeadheadPaths paths(inst);
  auto improved = two_opt(inst, bad, paths, 10);
  CHECK(improved.total_cost == Catch::Approx(11.0));
  CHECK(validate_tour(inst, improved).ok());
}
