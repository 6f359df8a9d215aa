#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "fgmplate/crack.hpp"
#include "fgmplate/mesh.hpp"
#include "fgmplate/section.hpp"

namespace fgmplate {

/// Bilinear Lagrange shape functions on the parent square [-1,1]^2,
/// node order (-1,-1), (1,-1), (1,1), (-1,1).
void shape_q4(double xi, double eta, std::array<double, 4>& N,
              Eigen::Matrix<double, 4, 2>& dN);

/// Crack-tip basis values with Cartesian derivatives in the local tip frame
/// (x1 along the outward crack direction, x2 along the left normal).
struct TipFuncs {
  std::array<double, 4> v;
  std::array<double, 4> d1;
  std::array<double, 4> d2;
};

/// Transverse-deflection tip basis r^{3/2}{sin(t/2), cos(t/2), sin(3t/2), cos(3t/2)}.
TipFuncs enrichment_G(double r, double theta);

/// Rotation tip basis sqrt(r){sin(t/2), cos(t/2), sin(t/2)sin(t), cos(t/2)sin(t)}.
TipFuncs enrichment_F(double r, double theta);

struct QuadPoint {
  double xi, eta, w;  // parent coordinates; weights sum to 4 per element
};

enum class PlanKind { Standard, Subdivided, TipFan };

struct QuadraturePlan {
  PlanKind kind = PlanKind::Standard;
  std::vector<QuadPoint> points;
  double weight_sum() const;
};

/// 2x2 Gauss for uncut elements; triangulated sub-polygons (7-pt rule) for cut
/// elements; a tip-centered fan (13-pt rule) for tip elements.
QuadraturePlan quadrature_plan(const Rect& rect, const CrackSegment* seg, const ElementCut& cut);

/// One dof block of an element: the standard 5 per node, a Heaviside 5-block,
/// or a 4x5 tip block.
struct DofBlock {
  enum class Kind { Std, Heaviside, Tip };
  int local_node = 0;
  Kind kind = Kind::Std;
  int crack = -1;
  int tip = -1;
  int width() const { return kind == Kind::Tip ? 20 : 5; }
};

struct ElementDofLayout {
  std::vector<DofBlock> blocks;
  int n_dof() const {
    int n = 0;
    for (const auto& b : blocks) n += b.width();
    return n;
  }
};

/// Assumed transverse shear operator: covariant strains sampled at the four
/// edge midpoints and interpolated linearly across the element.
class ShearSampler {
 public:
  explicit ShearSampler(const std::array<Eigen::Vector2d, 4>& X);

  /// Covariant coefficient (c_w, c_tx, c_ty) of local node `a` at sample `s`
  /// (s=0,1: gamma_xi at eta=-+1; s=2,3: gamma_eta at xi=-+1).
  const Eigen::Vector3d& sample(int s, int a) const { return rows_[s][a]; }

  /// Interpolated covariant rows at (xi, eta): out[0] = gamma_xi coefficients,
  /// out[1] = gamma_eta coefficients, each 4 nodes x (c_w, c_tx, c_ty).
  void interpolate(double xi, double eta, Eigen::Vector3d out[2][4]) const;

 private:
  Eigen::Vector3d rows_[4][4];
};

struct ElementGeometry {
  std::array<Eigen::Vector2d, 4> X;
};
ElementGeometry element_geometry(const Rect& rect);

/// Stiffness of one (possibly enriched) element over the given plan.
Eigen::MatrixXd element_stiffness(const ElementGeometry& geo, const ElementDofLayout& layout,
                                  const CrackSet& cracks, const SectionMatrices& sec,
                                  const QuadraturePlan& plan);

/// Consistent mass of one element, inertia diag(I0, I0, I0, I1, I1).
Eigen::MatrixXd element_mass(const ElementGeometry& geo, const ElementDofLayout& layout,
                             const CrackSet& cracks, const SectionMatrices& sec,
                             const QuadraturePlan& plan);

/// Full 5-row shape matrix (u,v,w,tx,ty) of the enriched approximation at one
/// parent point; used by mass assembly and mode-shape sampling.
void shape_rows(const ElementGeometry& geo, const ElementDofLayout& layout, const CrackSet& cracks,
                double xi, double eta, Eigen::MatrixXd& Nmat);

/// Strain-displacement matrix at one parent point: rows 0-2 membrane strains,
/// 3-5 bending strains, 6-7 transverse shear (assumed-strain treatment for
/// standard and Heaviside blocks, point-wise for tip blocks).
Eigen::MatrixXd strain_rows(const ElementGeometry& geo, const ElementDofLayout& layout,
                            const CrackSet& cracks, double xi, double eta);

}  // namespace fgmplate
