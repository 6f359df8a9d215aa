#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "fgmplate/mesh.hpp"

namespace fgmplate {

/// Straight through crack. Heaviside sign is +1 on the left of the
/// tip_a -> tip_b direction. For side cracks the exterior end is extended by
/// `mouth_extension` past the boundary so edge elements register clean cuts.
struct CrackSegment {
  Eigen::Vector2d center{0.0, 0.0};
  double length = 0.0;
  double theta = 0.0;  // radians from the x axis
  bool tip_a_interior = true;
  bool tip_b_interior = true;
  double mouth_extension = 0.0;

  Eigen::Vector2d dir() const { return {std::cos(theta), std::sin(theta)}; }
  Eigen::Vector2d normal() const { return {-std::sin(theta), std::cos(theta)}; }
  Eigen::Vector2d tip_a() const { return center - 0.5 * length * dir(); }
  Eigen::Vector2d tip_b() const { return center + 0.5 * length * dir(); }
  /// Endpoints of the cutting segment, including any mouth extension.
  Eigen::Vector2d seg_a() const {
    return tip_a() - (tip_a_interior ? 0.0 : mouth_extension) * dir();
  }
  Eigen::Vector2d seg_b() const {
    return tip_b() + (tip_b_interior ? 0.0 : mouth_extension) * dir();
  }
  int n_interior_tips() const { return (tip_a_interior ? 1 : 0) + (tip_b_interior ? 1 : 0); }
  /// Position of interior tip k (k counts interior tips in a,b order).
  Eigen::Vector2d tip(int k) const;
  /// Unit direction pointing away from the crack body at interior tip k.
  Eigen::Vector2d tip_outward(int k) const;

  void validate() const;
};

struct CrackSet {
  std::vector<CrackSegment> cracks;
  bool empty() const { return cracks.empty(); }
};

/// Perpendicular signed distance to the crack line, positive left of a->b.
double signed_distance(const CrackSegment& seg, const Eigen::Vector2d& p);

/// Generalized Heaviside: sign of the signed distance. Exactly zero distance
/// is degenerate quadrature placement; throws NumericalError.
double heaviside(const CrackSegment& seg, const Eigen::Vector2d& p);

/// Polar coordinates in the local tip frame: r >= 0, theta in (-pi, pi]
/// measured from the outward crack direction (crack faces at theta = +-pi).
/// Throws NumericalError at r == 0.
std::pair<double, double> tip_polar(const CrackSegment& seg, int tip, const Eigen::Vector2d& p);

/// Cut of the crack segment through an axis-aligned element.
struct ElementCut {
  bool touched = false;   // segment intersects the closed rectangle
  bool crossed = false;   // passes through; entry and exit on the boundary
  int tip = -1;           // interior tip index inside the element, or -1
  Eigen::Vector2d entry{0.0, 0.0};  // first intersection along the segment
  Eigen::Vector2d exit{0.0, 0.0};   // second intersection, or the tip point
};
ElementCut intersect_element(const CrackSegment& seg, const Rect& rect);

/// Areas of the rectangle on the +/- sides of the crack line.
std::pair<double, double> split_areas(const CrackSegment& seg, const Rect& rect);

/// Node sets for one crack.
struct CrackClassification {
  std::vector<int> heaviside_nodes;             // N^c, ascending
  std::map<int, int> tip_nodes;                 // N^f: node -> interior tip index
  std::map<int, int> tip_elements;              // element -> interior tip index
  std::vector<int> cut_elements;                // fully crossed elements, ascending
  std::map<int, double> node_sign;              // H at the node position (cache)
  bool is_heaviside(int node) const {
    return std::binary_search(heaviside_nodes.begin(), heaviside_nodes.end(), node);
  }
};

struct NodeClassification {
  std::vector<CrackClassification> per_crack;
  int n_heaviside() const;
  int n_tip() const;
  bool element_special(const Mesh& mesh, int e) const;  // any enriched node or cut
};

/// Applies the mesh-degeneracy perturbation rule: a crack line passing within
/// 1e-9*elem_size of any node is shifted by 1e-6*elem_size along its normal.
/// Returns the effective crack set used by classification and integration.
CrackSet apply_mesh_perturbation(CrackSet cracks, const Mesh& mesh);

/// Classifies nodes into N^f (support contains an interior tip) and N^c
/// (support fully cut, area criterion with the given tolerance).
/// Throws ModelError if a crack lies entirely outside the domain.
NodeClassification classify_nodes(const CrackSet& cracks, const Mesh& mesh, double tol = 1e-4);

}  // namespace fgmplate
