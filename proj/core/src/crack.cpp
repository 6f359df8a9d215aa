#include "fgmplate/crack.hpp"

#include <algorithm>
#include <cmath>

#include "fgmplate/errors.hpp"

namespace fgmplate {

void CrackSegment::validate() const {
  if (length <= 0.0) throw ConfigError("crack length must be positive");
  if (!tip_a_interior && !tip_b_interior)
    throw ConfigError("crack must have at least one interior tip");
}

Eigen::Vector2d CrackSegment::tip(int k) const {
  if (tip_a_interior && k == 0) return tip_a();
  return tip_b();
}

Eigen::Vector2d CrackSegment::tip_outward(int k) const {
  if (tip_a_interior && k == 0) return -dir();
  return dir();
}

double signed_distance(const CrackSegment& seg, const Eigen::Vector2d& p) {
  return seg.normal().dot(p - seg.tip_a());
}

double heaviside(const CrackSegment& seg, const Eigen::Vector2d& p) {
  const double d = signed_distance(seg, p);
  if (d == 0.0) {
    throw NumericalError("quadrature point exactly on the crack line; resample");
  }
  return d > 0.0 ? 1.0 : -1.0;
}

std::pair<double, double> tip_polar(const CrackSegment& seg, int tip, const Eigen::Vector2d& p) {
  const Eigen::Vector2d t = seg.tip(tip);
  const Eigen::Vector2d e1 = seg.tip_outward(tip);
  const Eigen::Vector2d e2(-e1.y(), e1.x());
  const Eigen::Vector2d d = p - t;
  const double x1 = e1.dot(d), x2 = e2.dot(d);
  const double r = std::hypot(x1, x2);
  if (r == 0.0) throw NumericalError("evaluation at the crack tip is singular");
  return {r, std::atan2(x2, x1)};
}

namespace {

// Liang-Barsky clip of segment AB to a rectangle; returns parameters or nullopt.
std::optional<std::pair<double, double>> clip_segment(const Eigen::Vector2d& A,
                                                      const Eigen::Vector2d& B, const Rect& r) {
  const Eigen::Vector2d d = B - A;
  double t0 = 0.0, t1 = 1.0;
  const double p[4] = {-d.x(), d.x(), -d.y(), d.y()};
  const double q[4] = {A.x() - r.x0, r.x1 - A.x(), A.y() - r.y0, r.y1 - A.y()};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return std::nullopt;
    } else {
      const double t = q[i] / p[i];
      if (p[i] < 0.0) {
        if (t > t0) t0 = t;
      } else {
        if (t < t1) t1 = t;
      }
    }
  }
  if (t0 >= t1) return std::nullopt;
  return std::make_pair(t0, t1);
}

bool on_rect_boundary(const Eigen::Vector2d& p, const Rect& r, double tol) {
  return std::abs(p.x() - r.x0) < tol || std::abs(p.x() - r.x1) < tol ||
         std::abs(p.y() - r.y0) < tol || std::abs(p.y() - r.y1) < tol;
}

// Area of the part of `rect` with side*signed_distance >= 0.
double clipped_area(const CrackSegment& seg, const Rect& rect, double side) {
  const Eigen::Vector2d n = side * seg.normal();
  const Eigen::Vector2d p0 = seg.tip_a();
  Eigen::Vector2d poly[8] = {{rect.x0, rect.y0}, {rect.x1, rect.y0}, {rect.x1, rect.y1}, {rect.x0, rect.y1}};
  int cnt = 4;
  Eigen::Vector2d out[8];
  int ocnt = 0;
  for (int i = 0; i < cnt; ++i) {
    const Eigen::Vector2d& A = poly[i];
    const Eigen::Vector2d& B = poly[(i + 1) % cnt];
    const double da = n.dot(A - p0), db = n.dot(B - p0);
    if (da >= 0.0) out[ocnt++] = A;
    if ((da > 0.0 && db < 0.0) || (da < 0.0 && db > 0.0)) {
      out[ocnt++] = A + da / (da - db) * (B - A);
    }
  }
  if (ocnt < 3) return 0.0;
  double s = 0.0;
  for (int i = 0; i < ocnt; ++i) {
    const auto& P = out[i];
    const auto& Q = out[(i + 1) % ocnt];
    s += P.x() * Q.y() - Q.x() * P.y();
  }
  return 0.5 * std::abs(s);
}

}  // namespace

std::pair<double, double> split_areas(const CrackSegment& seg, const Rect& rect) {
  return {clipped_area(seg, rect, +1.0), clipped_area(seg, rect, -1.0)};
}

ElementCut intersect_element(const CrackSegment& seg, const Rect& rect) {
  ElementCut cut;
  const Eigen::Vector2d A = seg.seg_a(), B = seg.seg_b();
  for (int k = 0; k < seg.n_interior_tips(); ++k) {
    if (rect.contains(seg.tip(k))) cut.tip = k;
  }
  const auto chord = clip_segment(A, B, rect);
  if (!chord) {
    return cut;  // far element (tip exactly inside without chord cannot happen)
  }
  const auto [t0, t1] = *chord;
  const double len = (B - A).norm();
  if ((t1 - t0) * len < 1e-14 * len) return cut;
  cut.touched = true;
  cut.entry = A + t0 * (B - A);
  cut.exit = A + t1 * (B - A);
  if (cut.tip >= 0) {
    // orient so `exit` is the tip end
    const Eigen::Vector2d tp = seg.tip(cut.tip);
    if ((cut.entry - tp).norm() < (cut.exit - tp).norm()) std::swap(cut.entry, cut.exit);
    cut.exit = tp;
    return cut;
  }
  const double tol = 1e-12 * (rect.width() + rect.height());
  cut.crossed = on_rect_boundary(cut.entry, rect, tol) && on_rect_boundary(cut.exit, rect, tol);
  return cut;
}

int NodeClassification::n_heaviside() const {
  int n = 0;
  for (const auto& c : per_crack) n += (int)c.heaviside_nodes.size();
  return n;
}

int NodeClassification::n_tip() const {
  int n = 0;
  for (const auto& c : per_crack) n += (int)c.tip_nodes.size();
  return n;
}

bool NodeClassification::element_special(const Mesh& mesh, int e) const {
  const auto nodes = mesh.elem_nodes(e);
  for (const auto& c : per_crack) {
    if (c.tip_elements.count(e)) return true;
    if (std::binary_search(c.cut_elements.begin(), c.cut_elements.end(), e)) return true;
    for (int n : nodes) {
      if (c.is_heaviside(n) || c.tip_nodes.count(n)) return true;
    }
  }
  return false;
}

CrackSet apply_mesh_perturbation(CrackSet cracks, const Mesh& mesh) {
  const double he = mesh.char_size();
  for (auto& c : cracks.cracks) {
    c.validate();
    // extend side-crack mouths well past the boundary
    if (!c.tip_a_interior || !c.tip_b_interior) {
      c.mouth_extension = std::max(c.mouth_extension, 2.0 * (mesh.hx() + mesh.hy()));
    }
    bool degenerate = false;
    for (int n = 0; n < mesh.n_nodes() && !degenerate; ++n) {
      if (std::abs(signed_distance(c, mesh.node(n))) < 1e-9 * he) degenerate = true;
    }
    if (degenerate) {
      c.center += 1e-6 * he * c.normal();
    }
    // interior tips must not sit on element edges: nudge along the crack
    auto on_gridline = [&](const Eigen::Vector2d& p) {
      const double rx = std::remainder(p.x(), mesh.hx());
      const double ry = std::remainder(p.y(), mesh.hy());
      return std::abs(rx) < 1e-9 * he || std::abs(ry) < 1e-9 * he;
    };
    for (int attempt = 0; attempt < 4; ++attempt) {
      bool tip_degenerate = false;
      for (int k = 0; k < c.n_interior_tips(); ++k) {
        if (on_gridline(c.tip(k))) tip_degenerate = true;
      }
      if (!tip_degenerate) break;
      c.center += 1e-6 * he * c.dir();
    }
  }
  return cracks;
}

NodeClassification classify_nodes(const CrackSet& cracks, const Mesh& mesh, double tol) {
  NodeClassification cls;
  cls.per_crack.resize(cracks.cracks.size());
  const Rect domain{0.0, 0.0, mesh.a, mesh.b};
  for (size_t ci = 0; ci < cracks.cracks.size(); ++ci) {
    const CrackSegment& seg = cracks.cracks[ci];
    CrackClassification& out = cls.per_crack[ci];

    if (!clip_segment(seg.tip_a(), seg.tip_b(), domain)) {
      throw ModelError("crack " + std::to_string(ci) + " lies entirely outside the plate");
    }
    for (int k = 0; k < seg.n_interior_tips(); ++k) {
      const Eigen::Vector2d tp = seg.tip(k);
      if (!(tp.x() > 0.0 && tp.x() < mesh.a && tp.y() > 0.0 && tp.y() < mesh.b)) {
        throw ModelError("interior crack tip outside the plate domain");
      }
    }

    for (int e = 0; e < mesh.n_elems(); ++e) {
      const ElementCut cut = intersect_element(seg, mesh.elem_rect(e));
      if (cut.tip >= 0) {
        out.tip_elements.emplace(e, cut.tip);
      } else if (cut.crossed) {
        out.cut_elements.push_back(e);
      }
    }
    for (const auto& [e, tipk] : out.tip_elements) {
      for (int n : mesh.elem_nodes(e)) out.tip_nodes[n] = tipk;
    }

    for (int n = 0; n < mesh.n_nodes(); ++n) {
      if (out.tip_nodes.count(n)) continue;
      const Rect sup = mesh.node_support(n);
      bool tip_in_support = false;
      for (int k = 0; k < seg.n_interior_tips(); ++k) {
        if (sup.contains(seg.tip(k))) tip_in_support = true;
      }
      if (tip_in_support) continue;
      const auto chord = clip_segment(seg.seg_a(), seg.seg_b(), sup);
      if (!chord) continue;
      const auto [t0, t1] = *chord;
      const Eigen::Vector2d A = seg.seg_a(), B = seg.seg_b();
      if ((t1 - t0) * (B - A).norm() < 1e-12) continue;
      const double tol_b = 1e-12 * (sup.width() + sup.height());
      const Eigen::Vector2d P0 = A + t0 * (B - A), P1 = A + t1 * (B - A);
      if (!on_rect_boundary(P0, sup, tol_b) || !on_rect_boundary(P1, sup, tol_b)) continue;

      double above = 0.0, below = 0.0;
      for (int e : mesh.adjacent_elems(n)) {
        const auto [ab, be] = split_areas(seg, mesh.elem_rect(e));
        above += ab;
        below += be;
      }
      const double total = above + below;
      if (std::min(above, below) / total < tol) continue;  // area criterion
      out.heaviside_nodes.push_back(n);
    }
    std::sort(out.heaviside_nodes.begin(), out.heaviside_nodes.end());
    std::sort(out.cut_elements.begin(), out.cut_elements.end());
    for (int n : out.heaviside_nodes) {
      const double d = signed_distance(seg, mesh.node(n));
      out.node_sign[n] = d >= 0.0 ? 1.0 : -1.0;
    }
  }
  return cls;
}

}  // namespace fgmplate
