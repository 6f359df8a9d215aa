#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fgmplate/pipeline.hpp"
#include "fgmplate/post.hpp"

using namespace fgmplate;

namespace {

RunConfig small_config() {
  RunConfig cfg;
  cfg.nx = 8;
  cfg.ny = 8;
  cfg.k_modes = 2;
  cfg.ceramic = "Si3N4";
  cfg.metal = "SUS304";
  cfg.n = 1.0;
  return cfg;
}

}  // namespace

TEST_SUITE("post") {

TEST_CASE("uncracked mode field is continuous and normalized") {
  const RunOutcome r = run_single(small_config(), true, 1);
  REQUIRE(r.model != nullptr);
  const Eigen::VectorXd full = expand(*r.model, r.modal.vectors.col(0));
  const ModeShapeField f = sample_mode(*r.model, full, 41, 41);
  double wmax = 0.0;
  for (double w : f.w) wmax = std::max(wmax, std::abs(w));
  CHECK(wmax == doctest::Approx(1.0).epsilon(1e-12));
  // continuity: neighboring samples stay close for a smooth mode
  for (int j = 0; j < f.ny; ++j)
    for (int i = 0; i + 1 < f.nx; ++i) {
      CHECK(std::abs(f.w[f.idx(i + 1, j)] - f.w[f.idx(i, j)]) < 0.2);
    }
}

TEST_CASE("sampled w at grid nodes equals the nodal dof (uncracked)") {
  const RunOutcome r = run_single(small_config(), true, 1);
  const EnrichedModel& model = *r.model;
  Eigen::VectorXd full = expand(model, r.modal.vectors.col(0));
  // sample on the mesh-node grid itself
  const ModeShapeField f = sample_mode(model, full, model.mesh.nx + 1, model.mesh.ny + 1);
  // scale factor used by the normalization
  double wmax = 0.0;
  for (int n = 0; n < model.mesh.n_nodes(); ++n) wmax = std::max(wmax, std::abs(full[5 * n + 2]));
  for (int n = 0; n < model.mesh.n_nodes(); ++n) {
    const int i = n % (model.mesh.nx + 1), j = n / (model.mesh.nx + 1);
    CHECK(f.w[f.idx(i, j)] * wmax == doctest::Approx(full[5 * n + 2]).epsilon(1e-6).scale(wmax));
  }
}

TEST_CASE("cracked cantilever: first mode barely jumps, second mode jumps") {
  RunConfig cfg = small_config();
  cfg.nx = 16;
  cfg.ny = 16;
  cfg.n = 0.0;
  cfg.bc = BcType::CFFF;
  cfg.k_modes = 2;
  CrackSpec crack;
  crack.anchor = "right";
  crack.cy_over_b = 0.5;
  crack.d_over_a = 0.5;
  cfg.cracks = {crack};
  const RunOutcome r = run_single(cfg, true, 1);
  const EnrichedModel& model = *r.model;
  auto jump_at_crack = [&](int mode) {
    const Eigen::VectorXd full = expand(model, r.modal.vectors.col(mode));
    const ModeShapeField f = sample_mode(model, full, 81, 81);
    // max |w(x, 0.5+) - w(x, 0.5-)| along the cracked half (x > 0.5)
    double jump = 0.0;
    const int jmid = 40;  // y = 0.5
    for (int i = 41; i < 80; ++i) {
      jump = std::max(jump, std::abs(f.w[f.idx(i, jmid + 1)] - f.w[f.idx(i, jmid - 1)]));
    }
    return jump;
  };
  const double j1 = jump_at_crack(0);
  const double j2 = jump_at_crack(1);
  CHECK(j1 < 0.08);       // aligned with the first bending mode
  CHECK(j2 > 5.0 * j1);   // torsion mode opens the crack
}

TEST_CASE("vtk round-trip") {
  const RunOutcome r = run_single(small_config(), true, 1);
  const Eigen::VectorXd full = expand(*r.model, r.modal.vectors.col(0));
  const ModeShapeField f = sample_mode(*r.model, full, 21, 21);
  std::stringstream buf;
  write_vtk(f, "roundtrip", buf);
  const ModeShapeField g = read_vtk(buf);
  REQUIRE(g.nx == f.nx);
  REQUIRE(g.ny == f.ny);
  double wmax = 0.0;
  for (double w : g.w) wmax = std::max(wmax, std::abs(w));
  CHECK(wmax == doctest::Approx(1.0).epsilon(1e-12));  // still normalized
  for (int i = 0; i < f.nx * f.ny; ++i) {
    CHECK(g.w[i] == doctest::Approx(f.w[i]).epsilon(1e-12));
    CHECK(g.tx[i] == doctest::Approx(f.tx[i]).epsilon(1e-12));
  }
}

TEST_CASE("csv layout and determinism") {
  ResultTable t;
  t.input_columns = {"n", "theta_deg"};
  t.n_modes = 2;
  TableRow r1;
  r1.inputs = {{"n", "1"}, {"theta_deg", "0"}};
  r1.omegas = {3.33761234, 7.9363};
  TableRow r2;
  r2.inputs = {{"n", "1"}, {"theta_deg", "10"}};
  r2.error = "cell failed";
  t.rows = {r1, r2};
  std::ostringstream a, b;
  write_csv(t, a);
  write_csv(t, b);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("n,theta_deg,Omega_1,Omega_2,error\n") == 0);
  CHECK(a.str().find("3.3376") != std::string::npos);  // 4-decimal rounding
  CHECK(a.str().find("cell failed") != std::string::npos);
}

}  // TEST_SUITE
