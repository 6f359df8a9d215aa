#include <doctest.h>

#include <sstream>

#include "fgmplate/errors.hpp"
#include "fgmplate/pipeline.hpp"
#include "fgmplate/validate.hpp"

using namespace fgmplate;

namespace {

const char* kSmallConfig = R"(
# small smoke config
[geometry]
a = 1.0
b_over_a = 1.0
a_over_h = 10

[material]
ceramic = Si3N4
metal = SUS304
n = 1.0

[mesh]
nx = 8
ny = 8

[bc]
type = SS

[solver]
k_modes = 2

[crack]
anchor = center
d_over_a = 0.4
theta_deg = 0
)";

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("config parsing, defaults and errors") {
  const RunConfig cfg = parse_config_text(kSmallConfig);
  CHECK(cfg.k_modes == 2);
  CHECK(cfg.cracks.size() == 1);
  const ResolvedGeometry g = resolve_geometry(cfg);
  CHECK(g.h == doctest::Approx(0.1));
  CHECK(g.nx == 8);

  CHECK_THROWS_WITH_AS(parse_config_text("[geometry]\nbogus = 1\n"),
                       doctest::Contains("[geometry]"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[solver]\nk_modes = 25\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[bc]\ntype = AB\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[crack]\nanchor = middle\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("key_without_section = 1\n"), ConfigError);
  // phase names resolve lazily; bad ones surface at composition time
  const RunConfig bad = parse_config_text("[material]\nceramic = Unobtainium\n");
  CHECK_THROWS_AS(resolve_composition(bad), ConfigError);
}

TEST_CASE("geometry resolution rules") {
  RunConfig cfg;
  cfg.a = 2.0;
  cfg.b_over_a = 0.5;
  cfg.a_over_h = 200.0;  // b/h = 100
  const ResolvedGeometry g = resolve_geometry(cfg);
  CHECK(g.b == doctest::Approx(1.0));
  CHECK(g.h == doctest::Approx(0.01));
  CHECK(g.nx == 68);
  CHECK(g.ny == 34);
}

TEST_CASE("normalization constants per convention") {
  RunConfig cfg;
  cfg.ceramic = "Si3N4";
  cfg.metal = "SUS304";
  {
    auto [rho, E] = normalization_constants(cfg);
    CHECK(rho == 2370.0);
    CHECK(E == 348.43e9);
  }
  cfg.normalization_E = NormalizationE::AtT;
  {
    auto [rho, E] = normalization_constants(cfg);
    CHECK(E == doctest::Approx(348.43e9 * 0.92492458).epsilon(1e-9));
  }
}

TEST_CASE("crack spec resolution for all anchors") {
  RunConfig cfg;
  cfg.cracks.resize(1);
  const ResolvedGeometry g = resolve_geometry(cfg);
  auto& c = cfg.cracks[0];
  c.d_over_a = 0.5;
  c.theta_deg = 0.0;
  c.anchor = "center";
  c.cx_over_a = 0.5;
  c.cy_over_b = 0.5;
  {
    const CrackSet set = resolve_cracks(cfg, g);
    CHECK(set.cracks[0].tip_a().x() == doctest::Approx(0.25));
    CHECK(set.cracks[0].tip_b().x() == doctest::Approx(0.75));
  }
  c.anchor = "left";
  {
    const CrackSet set = resolve_cracks(cfg, g);
    CHECK_FALSE(set.cracks[0].tip_a_interior);
    CHECK(set.cracks[0].tip_a().x() == doctest::Approx(0.0));
    CHECK(set.cracks[0].tip_b().x() == doctest::Approx(0.5));
  }
  c.anchor = "right";
  c.theta_deg = 30.0;
  {
    const CrackSet set = resolve_cracks(cfg, g);
    CHECK_FALSE(set.cracks[0].tip_b_interior);
    CHECK(set.cracks[0].tip_b().x() == doctest::Approx(1.0));
    CHECK(set.cracks[0].tip_b().y() == doctest::Approx(0.5));
    // interior tip rotated about the mouth
    CHECK(set.cracks[0].tip_a().x() == doctest::Approx(1.0 - 0.5 * std::cos(M_PI / 6)));
    CHECK(set.cracks[0].tip_a().y() == doctest::Approx(0.5 - 0.5 * std::sin(M_PI / 6)));
  }
  c.anchor = "bottom";
  c.theta_deg = 90.0;
  c.cx_over_a = 0.3;
  {
    const CrackSet set = resolve_cracks(cfg, g);
    CHECK(set.cracks[0].tip_a().y() == doctest::Approx(0.0).scale(1.0));
    CHECK(set.cracks[0].tip_b().y() == doctest::Approx(0.5));
    CHECK(set.cracks[0].tip_b().x() == doctest::Approx(0.3));
  }
}

TEST_CASE("effective config round-trips to identical results") {
  const RunConfig cfg = parse_config_text(kSmallConfig);
  const std::string eff = effective_config(cfg);
  const RunConfig cfg2 = parse_config_text(eff, "<effective>");
  const RunOutcome r1 = run_single(cfg, false, 1);
  const RunOutcome r2 = run_single(cfg2, false, 1);
  REQUIRE(r1.modal.Omegas.size() == r2.modal.Omegas.size());
  for (size_t i = 0; i < r1.modal.Omegas.size(); ++i) {
    CHECK(r1.modal.Omegas[i] == r2.modal.Omegas[i]);  // bitwise
  }
}

TEST_CASE("identical config gives bitwise-identical csv") {
  RunConfig cfg = parse_config_text(kSmallConfig);
  cfg.sweep.axes["theta_deg"] = {"0", "90"};
  cfg.sweep.order = {"theta_deg"};
  const ResultTable t1 = run_sweep(cfg, 2);
  const ResultTable t2 = run_sweep(cfg, 1);
  std::ostringstream a, b;
  write_csv(t1, a);
  write_csv(t2, b);
  CHECK(a.str() == b.str());
}

TEST_CASE("sweep: empty axes is a single run, errors are recorded per cell") {
  RunConfig cfg = parse_config_text(kSmallConfig);
  {
    const ResultTable t = run_sweep(cfg, 1);
    CHECK(t.rows.size() == 1);
    CHECK(t.rows[0].error.empty());
    CHECK(t.rows[0].omegas.size() == 2);
    // ascending within the row
    CHECK(t.rows[0].omegas[0] <= t.rows[0].omegas[1]);
  }
  {
    RunConfig bad = cfg;
    bad.sweep.axes["d_over_a"] = {"0.4", "9.0"};  // second cell: crack outside
    bad.sweep.order = {"d_over_a"};
    const ResultTable t = run_sweep(bad, 1);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0].error.empty());
    CHECK_FALSE(t.rows[1].error.empty());
  }
}

TEST_CASE("theta sweep orders symmetric pairs adjacently") {
  RunConfig cfg = parse_config_text(kSmallConfig);
  cfg.k_modes = 1;
  cfg.nx = cfg.ny = 6;
  cfg.sweep.axes["theta_deg"] = {"0", "10", "20", "30", "40", "45", "50", "60", "70", "80", "90"};
  cfg.sweep.order = {"theta_deg"};
  const ResultTable t = run_sweep(cfg, 2);
  REQUIRE(t.rows.size() == 11);
  auto theta_of = [&](int row) {
    for (const auto& [k, v] : t.rows[row].inputs) {
      if (k == "crack1_theta_deg") return std::stod(v);
    }
    return -1.0;
  };
  CHECK(theta_of(0) == 0.0);
  CHECK(theta_of(1) == 90.0);
  CHECK(theta_of(2) == 10.0);
  CHECK(theta_of(3) == 80.0);
  CHECK(theta_of(10) == 45.0);
}

TEST_CASE("multi-crack sweep axes address each crack") {
  RunConfig cfg = parse_config_text(kSmallConfig);
  cfg.nx = cfg.ny = 8;
  cfg.k_modes = 1;
  CrackSpec c2 = cfg.cracks[0];
  cfg.cracks[0].cx_over_a = 0.3;
  cfg.cracks[0].cy_over_b = 0.45;
  cfg.cracks[0].d_over_a = 0.2;
  c2.cx_over_a = 0.7;
  c2.cy_over_b = 0.55;
  c2.d_over_a = 0.2;
  cfg.cracks.push_back(c2);
  cfg.sweep.axes["theta1_deg"] = {"0", "45"};
  cfg.sweep.axes["theta2_deg"] = {"0", "45"};
  cfg.sweep.order = {"theta1_deg", "theta2_deg"};
  const ResultTable t = run_sweep(cfg, 2);
  REQUIRE(t.rows.size() == 4);
  for (const auto& row : t.rows) CHECK(row.error.empty());
}

TEST_CASE("validation table registry") {
  CHECK(validation_table_ids().size() == 6);
  CHECK_THROWS_AS(validation_table("no-such-table"), ConfigError);
  const ValidationTable t = validation_table("ss-side-crack");
  CHECK(t.runs.size() == 5);
  CHECK(t.runs[0].reference.size() == 3);
  CHECK(t.tolerance == doctest::Approx(0.03));
}

}  // TEST_SUITE
