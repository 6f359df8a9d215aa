#include "fgmplate/element.hpp"

#include <cmath>

#include "fgmplate/errors.hpp"
#include "fgmplate/quadrature.hpp"

namespace fgmplate {

void shape_q4(double xi, double eta, std::array<double, 4>& N, Eigen::Matrix<double, 4, 2>& dN) {
  N[0] = 0.25 * (1 - xi) * (1 - eta);
  N[1] = 0.25 * (1 + xi) * (1 - eta);
  N[2] = 0.25 * (1 + xi) * (1 + eta);
  N[3] = 0.25 * (1 - xi) * (1 + eta);
  dN(0, 0) = -0.25 * (1 - eta);
  dN(0, 1) = -0.25 * (1 - xi);
  dN(1, 0) = 0.25 * (1 - eta);
  dN(1, 1) = -0.25 * (1 + xi);
  dN(2, 0) = 0.25 * (1 + eta);
  dN(2, 1) = 0.25 * (1 + xi);
  dN(3, 0) = -0.25 * (1 + eta);
  dN(3, 1) = 0.25 * (1 - xi);
}

namespace {

// f = r^p g(theta): d/dx1 = cos t f_r - sin t / r f_t, d/dx2 = sin t f_r + cos t / r f_t.
TipFuncs radial_basis(double r, double theta, double p, const std::array<double, 2> (&g)[4]) {
  // g[l] = {g(theta), g'(theta)} supplied by the caller
  TipFuncs out;
  const double c = std::cos(theta), s = std::sin(theta);
  const double rp = std::pow(r, p);
  const double rp1 = std::pow(r, p - 1.0);
  for (int l = 0; l < 4; ++l) {
    const double fr = p * rp1 * g[l][0];
    const double ft_r = rp1 * g[l][1];  // (1/r) df/dtheta
    out.v[l] = rp * g[l][0];
    out.d1[l] = c * fr - s * ft_r;
    out.d2[l] = s * fr + c * ft_r;
  }
  return out;
}

}  // namespace

TipFuncs enrichment_G(double r, double theta) {
  if (r <= 0.0) throw NumericalError("tip basis evaluated at r<=0");
  const double t2 = 0.5 * theta, t32 = 1.5 * theta;
  const std::array<double, 2> g[4] = {
      {std::sin(t2), 0.5 * std::cos(t2)},
      {std::cos(t2), -0.5 * std::sin(t2)},
      {std::sin(t32), 1.5 * std::cos(t32)},
      {std::cos(t32), -1.5 * std::sin(t32)},
  };
  return radial_basis(r, theta, 1.5, g);
}

TipFuncs enrichment_F(double r, double theta) {
  if (r <= 0.0) throw NumericalError("tip basis evaluated at r<=0");
  const double t2 = 0.5 * theta;
  const double st = std::sin(theta), ct = std::cos(theta);
  const double s2 = std::sin(t2), c2 = std::cos(t2);
  const std::array<double, 2> g[4] = {
      {s2, 0.5 * c2},
      {c2, -0.5 * s2},
      {s2 * st, 0.5 * c2 * st + s2 * ct},
      {c2 * st, -0.5 * s2 * st + c2 * ct},
  };
  return radial_basis(r, theta, 0.5, g);
}

double QuadraturePlan::weight_sum() const {
  double s = 0.0;
  for (const auto& p : points) s += p.w;
  return s;
}

namespace {

const std::array<QuadPoint, 4>& gauss22() {
  static const double g = 1.0 / std::sqrt(3.0);
  static const std::array<QuadPoint, 4> pts = {
      QuadPoint{-g, -g, 1.0}, QuadPoint{g, -g, 1.0}, QuadPoint{g, g, 1.0}, QuadPoint{-g, g, 1.0}};
  return pts;
}

using Poly = std::vector<Eigen::Vector2d>;

double poly_area(const Poly& p) {
  double s = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    const auto& P = p[i];
    const auto& Q = p[(i + 1) % p.size()];
    s += P.x() * Q.y() - Q.x() * P.y();
  }
  return 0.5 * std::abs(s);
}

Poly clip_halfplane(const Poly& poly, const Eigen::Vector2d& p0, const Eigen::Vector2d& n) {
  Poly out;
  for (size_t i = 0; i < poly.size(); ++i) {
    const Eigen::Vector2d& A = poly[i];
    const Eigen::Vector2d& B = poly[(i + 1) % poly.size()];
    const double da = n.dot(A - p0), db = n.dot(B - p0);
    if (da >= 0.0) out.push_back(A);
    if ((da > 0.0 && db < 0.0) || (da < 0.0 && db > 0.0)) {
      out.push_back(A + da / (da - db) * (B - A));
    }
  }
  return out;
}

// Appends a mapped triangle rule; weights are converted to parent measure.
template <size_t NP>
void add_triangle(std::vector<QuadPoint>& out, const Eigen::Vector2d& P0, const Eigen::Vector2d& P1,
                  const Eigen::Vector2d& P2, const Rect& rect, const std::array<TriPoint, NP>& rule) {
  Eigen::Matrix2d T;
  T.col(0) = P1 - P0;
  T.col(1) = P2 - P0;
  const double area2 = std::abs(T.determinant());
  if (area2 < 1e-14 * rect.area()) return;
  const double parent_jac = rect.area() / 4.0;
  for (const auto& tp : rule) {
    const Eigen::Vector2d p = tp.l1 * P0 + tp.l2 * P1 + tp.l3 * P2;
    const double xi = 2.0 * (p.x() - rect.x0) / rect.width() - 1.0;
    const double eta = 2.0 * (p.y() - rect.y0) / rect.height() - 1.0;
    out.push_back({xi, eta, tp.w * 0.5 * area2 / parent_jac});
  }
}

}  // namespace

QuadraturePlan quadrature_plan(const Rect& rect, const CrackSegment* seg, const ElementCut& cut) {
  QuadraturePlan plan;
  if (seg == nullptr || (!cut.crossed && cut.tip < 0)) {
    plan.kind = PlanKind::Standard;
    plan.points.assign(gauss22().begin(), gauss22().end());
    return plan;
  }
  const Poly rect_poly = {{rect.x0, rect.y0}, {rect.x1, rect.y0}, {rect.x1, rect.y1}, {rect.x0, rect.y1}};
  if (cut.tip >= 0) {
    plan.kind = PlanKind::TipFan;
    const Eigen::Vector2d tip = seg->tip(cut.tip);
    // boundary chain with the entry point spliced into its edge
    Poly chain;
    const double tol = 1e-9 * (rect.width() + rect.height());
    for (int i = 0; i < 4; ++i) {
      const Eigen::Vector2d A = rect_poly[i];
      const Eigen::Vector2d B = rect_poly[(i + 1) % 4];
      chain.push_back(A);
      const Eigen::Vector2d AB = B - A;
      const double t = AB.dot(cut.entry - A) / AB.squaredNorm();
      if (t > 1e-12 && t < 1.0 - 1e-12 && (A + t * AB - cut.entry).norm() < tol) {
        chain.push_back(cut.entry);
      }
    }
    for (size_t i = 0; i < chain.size(); ++i) {
      add_triangle(plan.points, tip, chain[i], chain[(i + 1) % chain.size()], rect, tri_rule_13());
    }
  } else {
    plan.kind = PlanKind::Subdivided;
    const Poly above = clip_halfplane(rect_poly, seg->tip_a(), seg->normal());
    const Poly below = clip_halfplane(rect_poly, seg->tip_a(), -seg->normal());
    for (const Poly* poly : {&above, &below}) {
      if (poly->size() < 3) continue;
      for (size_t i = 1; i + 1 < poly->size(); ++i) {
        add_triangle(plan.points, (*poly)[0], (*poly)[i], (*poly)[i + 1], rect, tri_rule_7());
      }
    }
  }
  if (plan.points.empty()) {
    throw ModelError("cut-element subdivision produced no quadrature points");
  }
  return plan;
}

ElementGeometry element_geometry(const Rect& rect) {
  return {{Eigen::Vector2d{rect.x0, rect.y0}, {rect.x1, rect.y0}, {rect.x1, rect.y1}, {rect.x0, rect.y1}}};
}

ShearSampler::ShearSampler(const std::array<Eigen::Vector2d, 4>& X) {
  static const double samp[4][2] = {{0.0, -1.0}, {0.0, 1.0}, {-1.0, 0.0}, {1.0, 0.0}};
  for (int s = 0; s < 4; ++s) {
    std::array<double, 4> N;
    Eigen::Matrix<double, 4, 2> dN;
    shape_q4(samp[s][0], samp[s][1], N, dN);
    Eigen::Matrix2d J = Eigen::Matrix2d::Zero();  // rows: d/dxi, d/deta of (x, y)
    for (int a = 0; a < 4; ++a) {
      J(0, 0) += dN(a, 0) * X[a].x();
      J(0, 1) += dN(a, 0) * X[a].y();
      J(1, 0) += dN(a, 1) * X[a].x();
      J(1, 1) += dN(a, 1) * X[a].y();
    }
    const int nat = s < 2 ? 0 : 1;  // covariant direction sampled here
    for (int a = 0; a < 4; ++a) {
      rows_[s][a] = {dN(a, nat), J(nat, 0) * N[a], J(nat, 1) * N[a]};
    }
  }
}

void ShearSampler::interpolate(double xi, double eta, Eigen::Vector3d out[2][4]) const {
  const double w0 = 0.5 * (1.0 - eta), w1 = 0.5 * (1.0 + eta);
  const double w2 = 0.5 * (1.0 - xi), w3 = 0.5 * (1.0 + xi);
  for (int a = 0; a < 4; ++a) {
    out[0][a] = w0 * rows_[0][a] + w1 * rows_[1][a];
    out[1][a] = w2 * rows_[2][a] + w3 * rows_[3][a];
  }
}

namespace {

struct PointKinematics {
  std::array<double, 4> N;
  Eigen::Matrix<double, 4, 2> dNxy;  // physical derivatives
  Eigen::Matrix2d J;                 // rows d/dxi, d/deta
  Eigen::Matrix2d Jinv;
  double detJ;
  Eigen::Vector2d p;
};

PointKinematics kinematics(const ElementGeometry& geo, double xi, double eta) {
  PointKinematics k;
  Eigen::Matrix<double, 4, 2> dN;
  shape_q4(xi, eta, k.N, dN);
  k.J = Eigen::Matrix2d::Zero();
  k.p = Eigen::Vector2d::Zero();
  for (int a = 0; a < 4; ++a) {
    k.J(0, 0) += dN(a, 0) * geo.X[a].x();
    k.J(0, 1) += dN(a, 0) * geo.X[a].y();
    k.J(1, 0) += dN(a, 1) * geo.X[a].x();
    k.J(1, 1) += dN(a, 1) * geo.X[a].y();
    k.p += k.N[a] * geo.X[a];
  }
  k.detJ = k.J.determinant();
  if (!(k.detJ > 0.0)) throw ModelError("invalid element: non-positive Jacobian");
  k.Jinv = k.J.inverse();
  for (int a = 0; a < 4; ++a) {
    // [d/dx; d/dy] = Jinv * [d/dxi; d/deta]
    k.dNxy(a, 0) = k.Jinv(0, 0) * dN(a, 0) + k.Jinv(0, 1) * dN(a, 1);
    k.dNxy(a, 1) = k.Jinv(1, 0) * dN(a, 0) + k.Jinv(1, 1) * dN(a, 1);
  }
  return k;
}

struct TipEval {
  TipFuncs G, F;
  std::array<double, 4> Gx, Gy, Fx, Fy;  // global derivatives
};

TipEval eval_tip(const CrackSegment& seg, int tip, const Eigen::Vector2d& p) {
  const auto [r, th] = tip_polar(seg, tip, p);
  TipEval out;
  out.G = enrichment_G(r, th);
  out.F = enrichment_F(r, th);
  const Eigen::Vector2d e1 = seg.tip_outward(tip);
  const Eigen::Vector2d e2(-e1.y(), e1.x());
  for (int l = 0; l < 4; ++l) {
    out.Gx[l] = out.G.d1[l] * e1.x() + out.G.d2[l] * e2.x();
    out.Gy[l] = out.G.d1[l] * e1.y() + out.G.d2[l] * e2.y();
    out.Fx[l] = out.F.d1[l] * e1.x() + out.F.d2[l] * e2.x();
    out.Fy[l] = out.F.d1[l] * e1.y() + out.F.d2[l] * e2.y();
  }
  return out;
}

// Strain-displacement matrix rows: 0-2 membrane, 3-5 bending, 6-7 transverse shear.
void build_B(const ElementGeometry& geo, const ElementDofLayout& layout, const CrackSet& cracks,
             const ShearSampler& sampler, double xi, double eta, Eigen::MatrixXd& B) {
  const PointKinematics k = kinematics(geo, xi, eta);
  B.setZero(8, layout.n_dof());

  Eigen::Vector3d cov[2][4];
  sampler.interpolate(xi, eta, cov);

  int col = 0;
  for (const DofBlock& blk : layout.blocks) {
    const int a = blk.local_node;
    switch (blk.kind) {
      case DofBlock::Kind::Std:
      case DofBlock::Kind::Heaviside: {
        double H = 1.0;
        if (blk.kind == DofBlock::Kind::Heaviside) {
          H = heaviside(cracks.cracks[blk.crack], k.p);
        }
        const double dx = H * k.dNxy(a, 0), dy = H * k.dNxy(a, 1);
        B(0, col + 0) = dx;
        B(1, col + 1) = dy;
        B(2, col + 0) = dy;
        B(2, col + 1) = dx;
        B(3, col + 3) = dx;
        B(4, col + 4) = dy;
        B(5, col + 3) = dy;
        B(5, col + 4) = dx;
        // assumed shear: interpolated covariant rows mapped through Jinv at this
        // point; Heaviside blocks reuse the standard rows scaled by H here.
        for (int d = 0; d < 2; ++d) {
          const double jx = k.Jinv(d, 0), jy = k.Jinv(d, 1);
          B(6 + d, col + 2) = H * (jx * cov[0][a][0] + jy * cov[1][a][0]);
          B(6 + d, col + 3) = H * (jx * cov[0][a][1] + jy * cov[1][a][1]);
          B(6 + d, col + 4) = H * (jx * cov[0][a][2] + jy * cov[1][a][2]);
        }
        col += 5;
        break;
      }
      case DofBlock::Kind::Tip: {
        const CrackSegment& seg = cracks.cracks[blk.crack];
        const TipEval t = eval_tip(seg, blk.tip, k.p);
        for (int l = 0; l < 4; ++l) {
          const int cb = col + 5 * l;
          const double phi = k.N[a];
          const double gx = k.dNxy(a, 0) * t.G.v[l] + phi * t.Gx[l];
          const double gy = k.dNxy(a, 1) * t.G.v[l] + phi * t.Gy[l];
          const double fx = k.dNxy(a, 0) * t.F.v[l] + phi * t.Fx[l];
          const double fy = k.dNxy(a, 1) * t.F.v[l] + phi * t.Fy[l];
          B(0, cb + 0) = gx;
          B(1, cb + 1) = gy;
          B(2, cb + 0) = gy;
          B(2, cb + 1) = gx;
          B(3, cb + 3) = fx;
          B(4, cb + 4) = fy;
          B(5, cb + 3) = fy;
          B(5, cb + 4) = fx;
          // tip shear is integrated point-wise (the singular basis carries the
          // jump; the two-point interpolation cannot represent it)
          B(6, cb + 2) = gx;
          B(6, cb + 3) = phi * t.F.v[l];
          B(7, cb + 2) = gy;
          B(7, cb + 4) = phi * t.F.v[l];
        }
        col += 20;
        break;
      }
    }
  }
}

}  // namespace

void shape_rows(const ElementGeometry& geo, const ElementDofLayout& layout, const CrackSet& cracks,
                double xi, double eta, Eigen::MatrixXd& Nmat) {
  const PointKinematics k = kinematics(geo, xi, eta);
  Nmat.setZero(5, layout.n_dof());
  int col = 0;
  for (const DofBlock& blk : layout.blocks) {
    const int a = blk.local_node;
    switch (blk.kind) {
      case DofBlock::Kind::Std:
      case DofBlock::Kind::Heaviside: {
        double H = 1.0;
        if (blk.kind == DofBlock::Kind::Heaviside) H = heaviside(cracks.cracks[blk.crack], k.p);
        for (int f = 0; f < 5; ++f) Nmat(f, col + f) = H * k.N[a];
        col += 5;
        break;
      }
      case DofBlock::Kind::Tip: {
        const TipEval t = eval_tip(cracks.cracks[blk.crack], blk.tip, k.p);
        for (int l = 0; l < 4; ++l) {
          const int cb = col + 5 * l;
          for (int f = 0; f < 3; ++f) Nmat(f, cb + f) = k.N[a] * t.G.v[l];
          Nmat(3, cb + 3) = k.N[a] * t.F.v[l];
          Nmat(4, cb + 4) = k.N[a] * t.F.v[l];
        }
        col += 20;
        break;
      }
    }
  }
}

Eigen::MatrixXd strain_rows(const ElementGeometry& geo, const ElementDofLayout& layout,
                            const CrackSet& cracks, double xi, double eta) {
  const ShearSampler sampler(geo.X);
  Eigen::MatrixXd B;
  build_B(geo, layout, cracks, sampler, xi, eta, B);
  return B;
}

Eigen::MatrixXd element_stiffness(const ElementGeometry& geo, const ElementDofLayout& layout,
                                  const CrackSet& cracks, const SectionMatrices& sec,
                                  const QuadraturePlan& plan) {
  const int ndof = layout.n_dof();
  Eigen::MatrixXd Ke = Eigen::MatrixXd::Zero(ndof, ndof);
  Eigen::Matrix<double, 8, 8> D = Eigen::Matrix<double, 8, 8>::Zero();
  D.block<3, 3>(0, 0) = sec.A;
  D.block<3, 3>(0, 3) = sec.B;
  D.block<3, 3>(3, 0) = sec.B;
  D.block<3, 3>(3, 3) = sec.Db;
  D.block<2, 2>(6, 6) = sec.Es;

  const ShearSampler sampler(geo.X);
  Eigen::MatrixXd B;
  for (const QuadPoint& q : plan.points) {
    build_B(geo, layout, cracks, sampler, q.xi, q.eta, B);
    const double detJ = kinematics(geo, q.xi, q.eta).detJ;
    Ke.noalias() += (q.w * detJ) * (B.transpose() * D * B);
  }
  if (!Ke.allFinite()) throw NumericalError("element stiffness has non-finite entries");
  return Ke;
}

Eigen::MatrixXd element_mass(const ElementGeometry& geo, const ElementDofLayout& layout,
                             const CrackSet& cracks, const SectionMatrices& sec,
                             const QuadraturePlan& plan) {
  const int ndof = layout.n_dof();
  Eigen::MatrixXd Me = Eigen::MatrixXd::Zero(ndof, ndof);
  Eigen::Matrix<double, 5, 1> inertia;
  inertia << sec.I0, sec.I0, sec.I0, sec.I1, sec.I1;
  Eigen::MatrixXd N;
  for (const QuadPoint& q : plan.points) {
    shape_rows(geo, layout, cracks, q.xi, q.eta, N);
    const double detJ = kinematics(geo, q.xi, q.eta).detJ;
    Me.noalias() += (q.w * detJ) * (N.transpose() * inertia.asDiagonal() * N);
  }
  if (!Me.allFinite()) throw NumericalError("element mass has non-finite entries");
  return Me;
}

}  // namespace fgmplate
