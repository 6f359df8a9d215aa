#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fgmplate/errors.hpp"
#include "fgmplate/section.hpp"

using namespace fgmplate;

namespace {

FgmComposition homogeneous(double E, double nu, double rho) {
  MaterialPhase ph{"iso", {E}, nu, rho, 0.0, {}};
  FgmComposition comp;
  comp.ceramic = ph;
  comp.metal = ph;
  comp.n = 0.0;
  return comp;
}

FgmComposition si3n4_sus304(double n) {
  FgmComposition comp;
  comp.ceramic = *find_phase(builtin_phases(), "Si3N4");
  comp.metal = *find_phase(builtin_phases(), "SUS304");
  comp.n = n;
  return comp;
}

}  // namespace

TEST_SUITE("section") {

TEST_CASE("stiffness coefficients") {
  {
    const QbarCoeffs q = stiffness_coeffs(1.0, 0.0);
    CHECK(q.Q11 == 1.0);
    CHECK(q.Q12 == 0.0);
    CHECK(q.Q44 == 0.5);
  }
  {
    // direct arithmetic: 70e9/0.91, 0.3*70e9/0.91
    const QbarCoeffs q = stiffness_coeffs(70e9, 0.3);
    CHECK(q.Q11 == doctest::Approx(76.923076923e9).epsilon(1e-9));
    CHECK(q.Q12 == doctest::Approx(23.076923077e9).epsilon(1e-9));
    CHECK(q.Q22 == q.Q11);
    CHECK(q.Q44 == q.Q66);
  }
  for (double nu : {0.1, 0.28, 0.3, 0.45}) {
    const QbarCoeffs q = stiffness_coeffs(2.0e11, nu);
    CHECK(q.Q16 == 0.0);
    CHECK(q.Q26 == 0.0);
  }
}

TEST_CASE("homogeneous section closed forms") {
  const double E = 70e9, nu = 0.3, rho = 2702.0, h = 0.1;
  const SectionMatrices s = integrate_section(homogeneous(E, nu, rho), h);
  CHECK(s.A(0, 0) == doctest::Approx(E * h / (1 - nu * nu)).epsilon(1e-12));
  CHECK(s.Db(0, 0) == doctest::Approx(E * h * h * h / (12 * (1 - nu * nu))).epsilon(1e-12));
  CHECK(s.B.norm() <= 1e-10 * s.A.norm() * h);
  CHECK(s.I0 == doctest::Approx(rho * h).epsilon(1e-12));
  CHECK(s.I1 == doctest::Approx(rho * h * h * h / 12.0).epsilon(1e-12));
  CHECK(s.kappa == doctest::Approx(5.0 / 6.0));
  CHECK(s.Es(0, 0) == doctest::Approx(5.0 / 6.0 * E / (2 * (1 + nu)) * h).epsilon(1e-12));
  CHECK(s.Es(0, 1) == 0.0);
}

TEST_CASE("FGM inertias match the analytic power-law integrals") {
  const double h = 0.02;
  for (double n : {0.0, 0.2, 1.0, 5.0, 10.0}) {
    const auto comp = si3n4_sus304(n);
    const SectionMatrices s = integrate_section(comp, h);
    const double rho_c = 2370.0, rho_m = 8166.0;
    const double I0_exact = h * (rho_m + (rho_c - rho_m) / (n + 1.0));
    CHECK(s.I0 == doctest::Approx(I0_exact).epsilon(1e-10));
  }
}

TEST_CASE("n=0 FGM equals the pure-ceramic homogeneous section") {
  const double h = 0.05;
  const auto fgm = integrate_section(si3n4_sus304(0.0), h);
  const double Ec = property_at_temperature(*find_phase(builtin_phases(), "Si3N4"), 300.0);
  const auto iso = integrate_section(homogeneous(Ec, 0.28, 2370.0), h);
  CHECK(fgm.A(0, 0) == doctest::Approx(iso.A(0, 0)).epsilon(1e-12));
  CHECK(fgm.Db(2, 2) == doctest::Approx(iso.Db(2, 2)).epsilon(1e-12));
  CHECK(fgm.I1 == doctest::Approx(iso.I1).epsilon(1e-12));
}

TEST_CASE("quadrature order stability") {
  const double h = 0.1;
  for (double n : {0.0, 0.2, 1.0, 5.0, 10.0}) {
    SectionOptions o1;
    o1.gauss_order = 30;
    SectionOptions o2;
    o2.gauss_order = 60;
    const auto s1 = integrate_section(si3n4_sus304(n), h, o1);
    const auto s2 = integrate_section(si3n4_sus304(n), h, o2);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        CHECK(s1.A(i, j) == doctest::Approx(s2.A(i, j)).epsilon(1e-8).scale(s1.A.norm()));
        CHECK(s1.Db(i, j) == doctest::Approx(s2.Db(i, j)).epsilon(1e-8).scale(s1.Db.norm()));
      }
    CHECK(s1.I1 == doctest::Approx(s2.I1).epsilon(1e-10));
  }
}

TEST_CASE("A and Db are positive definite, B symmetric") {
  for (double n : {0.0, 1.0, 5.0}) {
    const SectionMatrices s = integrate_section(si3n4_sus304(n), 0.1);
    const Eigen::Vector3d evA = s.A.selfadjointView<Eigen::Lower>().eigenvalues();
    const Eigen::Vector3d evD = s.Db.selfadjointView<Eigen::Lower>().eigenvalues();
    CHECK(evA.minCoeff() > 0.0);
    CHECK(evD.minCoeff() > 0.0);
    CHECK((s.B - s.B.transpose()).norm() <= 1e-14 * (1.0 + s.B.norm()));
    CHECK(s.Es(1, 0) == 0.0);
  }
}

TEST_CASE("energy-equivalence kappa reproduces 5/6 for homogeneous sections") {
  const double k = energy_equivalence_kappa(homogeneous(200e9, 0.3, 7800.0), 0.07);
  CHECK(k == doctest::Approx(5.0 / 6.0).epsilon(1e-6));
  SectionOptions opts;
  opts.kappa_mode = KappaMode::EnergyEquivalence;
  const SectionMatrices s = integrate_section(si3n4_sus304(1.0), 0.1, opts);
  CHECK(s.kappa > 0.5);
  CHECK(s.kappa < 1.0);
}

TEST_CASE("input guards") {
  CHECK_THROWS_AS(integrate_section(si3n4_sus304(1.0), -0.1), ConfigError);
  SectionOptions opts;
  opts.gauss_order = 8;
  CHECK_THROWS_AS(integrate_section(si3n4_sus304(1.0), 0.1, opts), ConfigError);
}

TEST_CASE("csv dump is labeled") {
  std::ostringstream out;
  write_section_csv(integrate_section(si3n4_sus304(1.0), 0.1), out);
  const std::string text = out.str();
  CHECK(text.find("A11,") != std::string::npos);
  CHECK(text.find("kappa,") != std::string::npos);
}

}  // TEST_SUITE
