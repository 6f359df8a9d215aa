#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fgmplate/assembly.hpp"
#include "fgmplate/dense.hpp"
#include "fgmplate/errors.hpp"

using namespace fgmplate;

namespace {

ModelInputs small_inputs(int nx, int ny, BcType bc = BcType::SS) {
  ModelInputs in;
  in.a = 1.0;
  in.b = 1.0;
  in.h = 0.1;
  in.nx = nx;
  in.ny = ny;
  in.comp.ceramic = *find_phase(builtin_phases(), "Si3N4");
  in.comp.metal = *find_phase(builtin_phases(), "SUS304");
  in.comp.n = 1.0;
  in.bc = bc;
  return in;
}

double sym_error(const Eigen::SparseMatrix<double>& A) {
  const Eigen::SparseMatrix<double> D = Eigen::SparseMatrix<double>(A.transpose()) - A;
  double num = 0.0, den = 0.0;
  for (int k = 0; k < D.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(D, k); it; ++it)
      num = std::max(num, std::abs(it.value()));
  for (int k = 0; k < A.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, k); it; ++it)
      den = std::max(den, std::abs(it.value()));
  return num / den;
}

}  // namespace

TEST_SUITE("assembly") {

TEST_CASE("mesh generation counts and area") {
  const Mesh m1 = generate_mesh(1.0, 1.0, 34, 34);
  CHECK(m1.n_nodes() == 1225);
  CHECK(m1.n_elems() == 1156);
  const Mesh m2 = generate_mesh(1.3, 0.7, 5, 3);
  double area = 0.0;
  for (int e = 0; e < m2.n_elems(); ++e) area += m2.elem_rect(e).area();
  CHECK(area == doctest::Approx(1.3 * 0.7).epsilon(1e-12));
  // lexicographic numbering
  CHECK(m2.elem_nodes(0)[0] == 0);
  CHECK(m2.elem_nodes(0)[2] == 7);
  CHECK_THROWS_AS(generate_mesh(1.0, 1.0, 1, 5), ConfigError);
}

TEST_CASE("default division rule") {
  CHECK(default_divisions(1.0, 1.0) == std::pair<int, int>(34, 34));
  CHECK(default_divisions(2.0, 1.0) == std::pair<int, int>(68, 34));
  CHECK(default_divisions(1.0, 2.0) == std::pair<int, int>(34, 68));
  CHECK(default_divisions(0.5, 1.0) == std::pair<int, int>(34, 68));
}

TEST_CASE("uncracked dof count and mass identity") {
  ModelInputs in = small_inputs(8, 8);
  EnrichedModel model = build_model(in);
  CHECK(model.dofs.n_dof == 5 * model.mesh.n_nodes());
  // unconstrained mass identity: unit transverse translation
  Eigen::VectorXd v = Eigen::VectorXd::Zero(model.dofs.n_dof);
  for (int n = 0; n < model.mesh.n_nodes(); ++n) v[5 * n + 2] = 1.0;
  const double m = v.dot(model.M * v);
  CHECK(m == doctest::Approx(model.section.I0 * 1.0 * 1.0).epsilon(1e-8));
}

TEST_CASE("cracked dof count follows 5n + 5|Nc| + 20|Nf|") {
  ModelInputs in = small_inputs(12, 12);
  CrackSegment seg;
  seg.center = {0.5, 0.5};
  seg.length = 0.4;
  seg.theta = 0.0;
  in.cracks.cracks.push_back(seg);
  EnrichedModel model = build_model(in);
  const auto& c = model.cls.per_crack[0];
  CHECK(model.dofs.n_dof == 5 * model.mesh.n_nodes() + 5 * (int)c.heaviside_nodes.size() +
                                20 * (int)c.tip_nodes.size());
  CHECK(sym_error(model.K) <= 1e-10);
  CHECK(sym_error(model.M) <= 1e-10);
  // mass identity still exact with enriched dofs at zero
  Eigen::VectorXd v = Eigen::VectorXd::Zero(model.dofs.n_dof);
  for (int n = 0; n < model.mesh.n_nodes(); ++n) v[5 * n + 2] = 1.0;
  CHECK(v.dot(model.M * v) == doctest::Approx(model.section.I0).epsilon(1e-8));
}

TEST_CASE("boundary conditions per type") {
  ModelInputs in = small_inputs(6, 6);
  {
    EnrichedModel model = build_model(in);
    // SS corner node: all five constrained
    int corner = 0;  // node at (0,0)
    int cnt = 0;
    for (int c = 0; c < 5; ++c) {
      if (model.full_to_free[5 * corner + c] < 0) ++cnt;
    }
    CHECK(cnt == 5);
    // interior node: nothing constrained
    const int mid = 3 * 7 + 3;
    for (int c = 0; c < 5; ++c) CHECK(model.full_to_free[5 * mid + c] >= 0);
  }
  {
    ModelInputs cc = small_inputs(6, 6, BcType::CC);
    EnrichedModel model = build_model(cc);
    const int boundary_nodes = 4 * 6;  // perimeter of a 7x7 grid
    CHECK((int)model.constrained.size() == 5 * boundary_nodes);
  }
  {
    ModelInputs cf = small_inputs(6, 6, BcType::CFFF);
    EnrichedModel model = build_model(cf);
    CHECK((int)model.constrained.size() == 5 * 7);  // clamped edge only
    for (int j = 0; j < 7; ++j) {
      const int n = j * 7 + 6;  // x = a edge
      for (int c = 0; c < 5; ++c) CHECK(model.full_to_free[5 * n + c] >= 0);
    }
  }
  CHECK_THROWS_AS(parse_bc("XX"), ConfigError);
  CHECK(parse_bc("CFFF") == BcType::CFFF);
}

TEST_CASE("enriched dofs inherit the constraint mask of their node") {
  ModelInputs in = small_inputs(10, 10);
  CrackSegment seg;  // side crack from the left edge at mid height
  seg.center = {0.25, 0.55};
  seg.length = 0.5;
  seg.theta = 0.0;
  seg.tip_a_interior = false;
  in.cracks.cracks.push_back(seg);
  EnrichedModel model = build_model(in);
  const auto& c = model.cls.per_crack[0];
  bool exercised = false;
  for (int n : c.heaviside_nodes) {
    if (model.mesh.node(n).x() != 0.0) continue;
    exercised = true;
    const int base = model.dofs.heaviside_base.at({0, n});
    // SS on x=0 constrains u0, w0, ty -> components 0, 2, 4
    CHECK(model.full_to_free[base + 0] < 0);
    CHECK(model.full_to_free[base + 2] < 0);
    CHECK(model.full_to_free[base + 4] < 0);
    CHECK(model.full_to_free[base + 1] >= 0);
    CHECK(model.full_to_free[base + 3] >= 0);
  }
  CHECK(exercised);
}

TEST_CASE("zero-crack model equals plain FEM bit for bit") {
  ModelInputs in = small_inputs(8, 8);
  EnrichedModel model = build_model(in);
  ElementDofLayout plain;
  for (int a = 0; a < 4; ++a) plain.blocks.push_back({a, DofBlock::Kind::Std, -1, -1});
  // per element: identical layout, identical standard plan, bitwise-equal
  // matrices; identical-order scatters agree bitwise
  Eigen::MatrixXd Kx = Eigen::MatrixXd::Zero(model.dofs.n_dof, model.dofs.n_dof);
  Eigen::MatrixXd Kp = Eigen::MatrixXd::Zero(model.dofs.n_dof, model.dofs.n_dof);
  int mismatched_entries = 0;
  for (int e = 0; e < model.mesh.n_elems(); ++e) {
    const auto layout = model.element_layout(e);
    REQUIRE(layout.n_dof() == 20);
    const QuadraturePlan plan = quadrature_plan(model.mesh.elem_rect(e), nullptr, {});
    CHECK(plan.kind == PlanKind::Standard);
    const ElementGeometry geo = element_geometry(model.mesh.elem_rect(e));
    const Eigen::MatrixXd Ka = element_stiffness(geo, layout, model.cracks, model.section, plan);
    const Eigen::MatrixXd Kb = element_stiffness(geo, plain, CrackSet{}, model.section, plan);
    const auto gd = model.element_global_dofs(e);
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j) {
        if (Ka(i, j) != Kb(i, j)) ++mismatched_entries;
        Kx(gd[i], gd[j]) += Ka(i, j);
        Kp(gd[i], gd[j]) += Kb(i, j);
      }
  }
  CHECK(mismatched_entries == 0);
  for (int i = 0; i < Kx.rows(); ++i)
    for (int j = 0; j < Kx.cols(); ++j) {
      if (Kx(i, j) != Kp(i, j)) ++mismatched_entries;
    }
  CHECK(mismatched_entries == 0);
}

TEST_CASE("assembly order does not change the matrices") {
  ModelInputs in = small_inputs(7, 7);
  CrackSegment seg;
  seg.center = {0.5, 0.52};
  seg.length = 0.35;
  in.cracks.cracks.push_back(seg);
  EnrichedModel model = build_model(in);
  // reversed-order scatter of the same element matrices
  std::vector<Eigen::Triplet<double>> t;
  for (int e = model.mesh.n_elems() - 1; e >= 0; --e) {
    const auto layout = model.element_layout(e);
    const Rect rect = model.mesh.elem_rect(e);
    const CrackSegment* segp = nullptr;
    ElementCut cut;
    const auto& c = model.cls.per_crack[0];
    if (c.tip_elements.count(e) ||
        std::binary_search(c.cut_elements.begin(), c.cut_elements.end(), e)) {
      segp = &model.cracks.cracks[0];
      cut = intersect_element(*segp, rect);
    }
    const Eigen::MatrixXd Ke = element_stiffness(element_geometry(rect), layout, model.cracks,
                                                 model.section,
                                                 quadrature_plan(rect, segp, cut));
    const auto gd = model.element_global_dofs(e);
    for (size_t i = 0; i < gd.size(); ++i)
      for (size_t j = 0; j < gd.size(); ++j) t.emplace_back(gd[i], gd[j], Ke(i, j));
  }
  Eigen::SparseMatrix<double> Krev(model.dofs.n_dof, model.dofs.n_dof);
  Krev.setFromTriplets(t.begin(), t.end());
  double maxdiff = 0.0, scale = 0.0;
  const Eigen::MatrixXd A = Eigen::MatrixXd(model.K), B = Eigen::MatrixXd(Krev);
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) {
      maxdiff = std::max(maxdiff, std::abs(A(i, j) - B(i, j)));
      scale = std::max(scale, std::abs(A(i, j)));
    }
  CHECK(maxdiff <= 1e-14 * scale);
}

TEST_CASE("stiffness is positive definite after constraints for all bc types") {
  for (BcType bc : {BcType::SS, BcType::CC, BcType::CFFF}) {
    ModelInputs in = small_inputs(6, 6, bc);
    EnrichedModel model = build_model(in);
    const auto Kf = reduce(model.K, model.free_dofs);
    dense::Matrix Kd((int)model.free_dofs.size());
    for (int col = 0; col < Kf.outerSize(); ++col)
      for (Eigen::SparseMatrix<double>::InnerIterator it(Kf, col); it; ++it)
        if (it.row() >= col) Kd((int)it.row(), col) = it.value();
    // diagonal scaling, then Cholesky succeeds iff PD
    std::vector<double> s(Kd.n);
    for (int i = 0; i < Kd.n; ++i) s[i] = 1.0 / std::sqrt(Kd(i, i));
    for (int i = 0; i < Kd.n; ++i)
      for (int j = 0; j <= i; ++j) Kd(i, j) *= s[i] * s[j];
    CHECK_NOTHROW(dense::cholesky_lower(Kd, 1e-12, 1));
  }
}

TEST_CASE("multi-crack nodes can carry two enrichments") {
  ModelInputs in = small_inputs(10, 10);
  CrackSegment c1;
  c1.center = {0.5, 0.45};
  c1.length = 0.6;
  CrackSegment c2;
  c2.center = {0.5, 0.55};  // one element row above: shared supports in between
  c2.length = 0.6;
  in.cracks.cracks = {c1, c2};
  EnrichedModel model = build_model(in);
  // nodes between the cracks (on y=0.5 and 0.6 lines) see both
  int doubly = 0;
  for (int n = 0; n < model.mesh.n_nodes(); ++n) {
    const bool h0 = model.cls.per_crack[0].is_heaviside(n);
    const bool h1 = model.cls.per_crack[1].is_heaviside(n);
    if (h0 && h1) {
      ++doubly;
      CHECK(model.dofs.heaviside_base.count({0, n}) == 1);
      CHECK(model.dofs.heaviside_base.count({1, n}) == 1);
    }
  }
  CHECK(doubly > 0);
}

TEST_CASE("coordinate matrix dump") {
  ModelInputs in = small_inputs(3, 3);
  EnrichedModel model = build_model(in);
  std::ostringstream out;
  write_coordinate_matrix(model.K, out);
  const std::string text = out.str();
  CHECK(text.find("# rows 80 cols 80") == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == (long)model.K.nonZeros() + 1);
}

TEST_CASE("dof naming for diagnostics") {
  ModelInputs in = small_inputs(6, 6);
  CrackSegment seg;
  seg.center = {0.5, 0.52};
  seg.length = 0.4;
  in.cracks.cracks.push_back(seg);
  EnrichedModel model = build_model(in);
  CHECK(model.dofs.dof_name(2, model.mesh).find("w0 at node 0") == 0);
  const auto& c = model.cls.per_crack[0];
  REQUIRE(!c.heaviside_nodes.empty());
  const int base = model.dofs.heaviside_base.at({0, c.heaviside_nodes[0]});
  CHECK(model.dofs.dof_name(base + 2, model.mesh).find("H-w0") == 0);
}

}  // TEST_SUITE
