#include <doctest.h>

#include <cmath>

#include "fgmplate/crack.hpp"
#include "fgmplate/errors.hpp"

using namespace fgmplate;

namespace {

CrackSegment horizontal(double cx, double cy, double d) {
  CrackSegment s;
  s.center = {cx, cy};
  s.length = d;
  s.theta = 0.0;
  return s;
}

}  // namespace

TEST_SUITE("crack") {

TEST_CASE("signed distance conventions") {
  const CrackSegment s = horizontal(0.5, 0.5, 0.4);
  CHECK(signed_distance(s, {0.3, 0.5}) == doctest::Approx(0.0));
  CHECK(signed_distance(s, {0.3, 0.7}) == doctest::Approx(0.2));
  CHECK(signed_distance(s, {0.3, 0.2}) == doctest::Approx(-0.3));

  CrackSegment r;
  r.center = {0.0, 0.0};
  r.length = 1.0;
  r.theta = M_PI / 4.0;
  const Eigen::Vector2d left_normal(-std::sin(r.theta), std::cos(r.theta));
  CHECK(signed_distance(r, left_normal) == doctest::Approx(1.0));
}

TEST_CASE("heaviside sign and reflection antisymmetry") {
  const CrackSegment s = horizontal(0.5, 0.5, 0.4);
  CHECK(heaviside(s, {0.45, 0.9}) == 1.0);
  CHECK(heaviside(s, {0.45, 0.1}) == -1.0);
  for (double x : {0.31, 0.57, 0.69}) {
    for (double dy : {0.01, 0.17, 0.33}) {
      CHECK(heaviside(s, {x, 0.5 + dy}) == -heaviside(s, {x, 0.5 - dy}));
    }
  }
  CHECK_THROWS_AS(heaviside(s, {0.4, 0.5}), NumericalError);
}

TEST_CASE("tip-local polar frame") {
  const CrackSegment s = horizontal(0.5, 0.5, 0.4);  // tips at 0.3 and 0.7
  {
    auto [r, th] = tip_polar(s, 1, {0.8, 0.5});  // ahead of tip_b
    CHECK(r == doctest::Approx(0.1));
    CHECK(th == doctest::Approx(0.0));
  }
  {
    auto [r, th] = tip_polar(s, 1, {0.7, 0.6});  // directly above tip_b
    CHECK(r == doctest::Approx(0.1));
    CHECK(th == doctest::Approx(M_PI / 2));
  }
  {
    auto [r, th] = tip_polar(s, 1, {0.6, 0.5 + 1e-12});  // on the upper face
    CHECK(r == doctest::Approx(0.1));
    CHECK(th == doctest::Approx(M_PI).epsilon(1e-6));
  }
  {
    auto [r, th] = tip_polar(s, 0, {0.2, 0.5});  // ahead of tip_a
    CHECK(r == doctest::Approx(0.1));
    CHECK(th == doctest::Approx(0.0));
  }
  CHECK_THROWS_AS(tip_polar(s, 1, {0.7, 0.5}), NumericalError);
}

TEST_CASE("element intersection") {
  const Rect rect{0.0, 0.0, 1.0, 1.0};
  {
    const ElementCut cut = intersect_element(horizontal(0.5, 0.5, 4.0), rect);
    CHECK(cut.crossed);
    CHECK(cut.tip == -1);
    CHECK(cut.entry.x() == doctest::Approx(0.0));
    CHECK(cut.exit.x() == doctest::Approx(1.0));
  }
  {
    // tip_b strictly inside
    const ElementCut cut = intersect_element(horizontal(0.1, 0.5, 1.0), rect);
    CHECK(cut.tip == 1);
    CHECK_FALSE(cut.crossed);
    CHECK(cut.exit.x() == doctest::Approx(0.6));
    CHECK(cut.entry.x() == doctest::Approx(0.0));
  }
  {
    const ElementCut cut = intersect_element(horizontal(5.0, 0.5, 1.0), rect);
    CHECK_FALSE(cut.touched);
    CHECK(cut.tip == -1);
  }
}

TEST_CASE("cut areas are additive to machine precision") {
  const Rect rect{0.2, 0.3, 0.5, 0.6};
  CrackSegment s;
  s.center = {0.35, 0.45};
  s.length = 3.0;
  s.theta = 0.31;
  const auto [above, below] = split_areas(s, rect);
  CHECK(above + below == doctest::Approx(rect.area()).epsilon(1e-12));
  CHECK(above > 0.0);
  CHECK(below > 0.0);
}

TEST_CASE("classification of a center crack") {
  const Mesh mesh = generate_mesh(1.0, 1.0, 34, 34);
  CrackSet set;
  set.cracks.push_back(horizontal(0.5, 0.5, 0.4));
  const CrackSet eff = apply_mesh_perturbation(set, mesh);
  // c_y = 0.5 lies on a mesh line, so the perturbation must have shifted it
  CHECK(eff.cracks[0].center.y() != 0.5);
  const NodeClassification cls = classify_nodes(eff, mesh);
  const auto& c = cls.per_crack[0];
  CHECK(c.tip_elements.size() == 2);
  CHECK(c.tip_nodes.size() == 8);  // both tip elements' node sets
  for (const auto& [e, tip] : c.tip_elements) {
    for (int n : mesh.elem_nodes(e)) {
      CHECK(c.tip_nodes.count(n) == 1);
      CHECK((c.tip_nodes.at(n) == tip));
    }
  }
  CHECK(c.heaviside_nodes.size() > 0);
  // N^c and N^f are disjoint
  for (int n : c.heaviside_nodes) CHECK(c.tip_nodes.count(n) == 0);
  // every Heaviside node's support is fully cut: its sign cache is +-1
  for (int n : c.heaviside_nodes) CHECK(std::abs(c.node_sign.at(n)) == 1.0);
}

TEST_CASE("zero cracks degenerate to plain FEM sets") {
  const Mesh mesh = generate_mesh(1.0, 1.0, 8, 8);
  const NodeClassification cls = classify_nodes(CrackSet{}, mesh);
  CHECK(cls.per_crack.empty());
  CHECK(cls.n_heaviside() == 0);
  CHECK(cls.n_tip() == 0);
  for (int e = 0; e < mesh.n_elems(); ++e) CHECK_FALSE(cls.element_special(mesh, e));
}

TEST_CASE("area criterion rejects sliver supports") {
  // crack just above the first interior mesh line: nodes one row up have a
  // support cut with area ratio ~2.5e-5 < 1e-4
  const Mesh mesh = generate_mesh(1.0, 1.0, 10, 10);
  const double he = 0.1;
  CrackSet clean;
  CrackSegment s;
  s.center = {0.5, he * (1.0 + 5e-5)};
  s.length = 0.9;  // tips at 0.05 and 0.95, inside
  s.theta = 0.0;
  clean.cracks.push_back(s);
  const NodeClassification cls = classify_nodes(apply_mesh_perturbation(clean, mesh), mesh);
  const auto& c = cls.per_crack[0];
  // nodes on the line y = 2*he above the crack: supports are cut with a sliver
  for (int n : c.heaviside_nodes) {
    const double y = mesh.node(n).y();
    CHECK(std::abs(y - 2 * he) > 1e-9);  // excluded by the area criterion
  }
  // nodes on y = he (just below the crack) stay enriched
  int on_line = 0;
  for (int n : c.heaviside_nodes) {
    if (std::abs(mesh.node(n).y() - he) < 1e-9) ++on_line;
  }
  CHECK(on_line > 0);
}

TEST_CASE("classification shifts with a rigid one-element translation") {
  const Mesh mesh = generate_mesh(1.2, 1.2, 12, 12);
  CrackSet a, b;
  a.cracks.push_back(horizontal(0.55, 0.55, 0.3));
  b.cracks.push_back(horizontal(0.65, 0.65, 0.3));  // shifted by one element (0.1, 0.1)
  const auto ca = classify_nodes(apply_mesh_perturbation(a, mesh), mesh).per_crack[0];
  const auto cb = classify_nodes(apply_mesh_perturbation(b, mesh), mesh).per_crack[0];
  REQUIRE(ca.heaviside_nodes.size() == cb.heaviside_nodes.size());
  REQUIRE(ca.tip_nodes.size() == cb.tip_nodes.size());
  const int shift = 1 * (12 + 1) + 1;  // one node right, one node up
  for (size_t i = 0; i < ca.heaviside_nodes.size(); ++i) {
    CHECK(ca.heaviside_nodes[i] + shift == cb.heaviside_nodes[i]);
  }
}

TEST_CASE("crack outside the plate is a configuration error") {
  const Mesh mesh = generate_mesh(1.0, 1.0, 8, 8);
  CrackSet set;
  set.cracks.push_back(horizontal(5.0, 5.0, 0.4));
  CHECK_THROWS_AS(classify_nodes(set, mesh), ModelError);
}

TEST_CASE("side crack classifies boundary supports as fully cut") {
  const Mesh mesh = generate_mesh(1.0, 1.0, 10, 10);
  CrackSet set;
  CrackSegment s;
  s.length = 0.5;
  s.theta = 0.0;
  s.center = {0.25, 0.55};
  s.tip_a_interior = false;  // mouth on the left edge
  set.cracks.push_back(s);
  const auto eff = apply_mesh_perturbation(set, mesh);
  CHECK(eff.cracks[0].mouth_extension > 0.0);
  const auto c = classify_nodes(eff, mesh).per_crack[0];
  CHECK(c.tip_elements.size() == 1);
  // the left-edge node at the crack height has a fully cut support
  bool found_boundary = false;
  for (int n : c.heaviside_nodes) {
    if (mesh.node(n).x() == 0.0) found_boundary = true;
  }
  CHECK(found_boundary);
}

}  // TEST_SUITE
