#include <doctest.h>

#include "rnwave/config.hpp"
#include "support.hpp"

using namespace rnwave;

namespace {

std::string field_of(const std::string& text) {
  try {
    validate(parse_run_config(text));
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

RunConfig everything_changed() {
  RunConfig c;
  c.spacetime.charge = 0.5;
  c.grid = {30.0, 0.03, 0.02, 150.0, 1, "graded", 1e-3, 0.75};
  c.data = {0.0125, 3.1, 0.9, true, 0.6, 0.2, DataTransform::ExpNeg};
  c.nonlinearity = {NonlinearityKind::NonNullHorizon, AProfile::Sine, 0.3, 7, 3, 0.4};
  c.diagnostics = {0.25, 1.5, 0.05, 5.0, 1.9, 1.95};
  c.evolution = {3, 1e5, 1e4, 1e-6};
  c.horizon.method = TransverseMethod::Chain;
  c.horizon.npts = 5;
  c.horizon.floors = {2e-6, 3e-4, 4e-3};
  c.probes = {0.0, 0.1, 1.0 / 3.0, 150.0};
  c.points = {{1.0 / 7.0, 2.5}, {3.0, 4.0}};
  c.output_dir = "runs/a b";
  return c;
}

}  // namespace

TEST_CASE("tree grammar") {
  auto t = parse_config_tree(
      "# comment\n; another\n\n[grid]\nr_max = 30  # trailing\n[grid.gauge]\nmode=graded\n[probes]\ntaus = 1, 2\n");
  REQUIRE(t.entries.size() == 3);
  CHECK(*t.find("grid.r_max") == "30");
  CHECK(*t.find("grid.gauge.mode") == "graded");
  CHECK(*t.find("probes.taus") == "1, 2");
  CHECK(t.find("grid.du") == nullptr);
  CHECK_THROWS_AS(parse_config_tree("[grid\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_tree("[gr id]\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_tree("[grid.]\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_tree("[grid]\nr_max\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_tree("[grid]\nr max = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_tree("[grid]\ndu = 1\ndu = 2\n"), ConfigError);
}

TEST_CASE("round trip") {
  for (const auto& c : {RunConfig{}, everything_changed()}) {
    auto text = serialize(c);
    auto back = parse_run_config(text);
    CHECK(back == c);
    CHECK(serialize(back) == text);
  }
  CHECK_FALSE(RunConfig{} == everything_changed());
}

TEST_CASE("defaults and partial files") {
  auto c = parse_run_config("[data]\nepsilon = 0.1\n");
  CHECK(c.data.epsilon == 0.1);
  CHECK(c.grid.r_max == 40.0);
  CHECK(c.spacetime.charge == 1.0);
  CHECK(c.probes.size() == 21);
  CHECK(parse_run_config("").data.epsilon == 0.05);
  auto p = parse_run_config("[probes]\npoints = 1.5:2, 3:4.25\n");
  REQUIRE(p.points.size() == 2);
  CHECK(p.points[1].v == 4.25);
}

TEST_CASE("errors name the field") {
  CHECK(field_of("[grid]\ndu = -1\n") == "grid.du");
  CHECK(field_of("[grid]\ndu = fast\n") == "grid.du");
  CHECK(field_of("[grid]\nrefine = 1.5\n") == "grid.refine");
  CHECK(field_of("[grid]\ncells = 3\n") == "grid.cells");
  CHECK(field_of("[grid.gauge]\nmode = spiral\n") == "grid.gauge.mode");
  CHECK(field_of("[spacetime]\ncharge = 2\n") == "spacetime");
  CHECK(field_of("[nonlinearity]\nkind = cubic\n") == "nonlinearity.kind");
  CHECK(field_of("[data]\nhorizon_positive = maybe\n") == "data.horizon_positive");
  CHECK(field_of("[data]\ncenter = 39.5\n") == "data");
  CHECK(field_of("[diagnostics]\np = 3\n") == "diagnostics");
  CHECK(field_of("[diagnostics]\nR0 = 45\n") == "diagnostics");
  CHECK(field_of("[probes]\ntaus = 10, 5\n") == "probes.taus");
  CHECK(field_of("[probes]\ntaus = 0, 250\n") == "probes.taus");
  CHECK(field_of("[probes]\npoints = 1 2\n") == "probes.points");
  CHECK(field_of("[probes]\npoints = 1:900\n") == "probes.points");
  CHECK(field_of("[horizon]\nmethod = spline\n") == "horizon.method");
  CHECK(field_of("[horizon]\nnpts = 1\n") == "horizon.npts");
  CHECK(field_of("[evolution]\npsi_max = 0\n") == "evolution.psi_max");
  CHECK(field_of("[evolution]\npicard = 0\n") == "evolution.picard");
  CHECK(field_of("[data]\nepsilon = 0.1\n").empty());
  CHECK_THROWS_AS(load_run_config("/nonexistent/run.ini"), ConfigError);
}

TEST_CASE("number lists and formatting") {
  CHECK(parse_number_list("10, 20,50 ,100") == std::vector<double>{10, 20, 50, 100});
  CHECK(parse_number_list("").empty());
  CHECK_THROWS(parse_number_list("1, x"));
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 6.02e23, -0.0125})
    CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("grids from configs") {
  RunConfig c;
  auto g = grid_of(c);
  CHECK(g.V >= required_V(c));
  CHECK(required_V(c) == doctest::Approx(200.0 + (6.0 - 1.0) + 2.0));
  CHECK(g.nu == 1131);
  c.grid.refine = 1;
  auto f = grid_of(c);
  CHECK(f.nu == 2 * g.nu);
  CHECK(f.nv == 2 * g.nv);
  CHECK(f.U == g.U);
  c.grid.gauge = "affine";
  CHECK(gauge_of(c).affine());
  CHECK(grid_of(c).U == doctest::Approx(39.0));
  c.spacetime.charge = 0.5;
  c.grid.gauge = "auto";
  CHECK_FALSE(gauge_of(c).affine());
}

TEST_CASE("config keys group runs") {
  RunConfig a, b;
  b.data.epsilon = 0.1;
  b.output_dir = "elsewhere";
  CHECK(config_key(a, {"output.dir"}) != config_key(b, {"output.dir"}));
  CHECK(config_key(a, {"output.dir", "data.epsilon"}) == config_key(b, {"output.dir", "data.epsilon"}));
  b.grid.du = 0.02;
  b.grid.dv = 0.02;
  CHECK(config_key(a, {"output.", "data.", "grid."}) == config_key(b, {"output.", "data.", "grid."}));
  CHECK(config_value(b, "data.epsilon") == format_double(0.1));
  CHECK_THROWS(config_value(b, "data.colour"));
}
