#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace fgmplate {

struct Rect {
  double x0, y0, x1, y1;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  bool contains(const Eigen::Vector2d& p) const {
    return p.x() > x0 && p.x() < x1 && p.y() > y0 && p.y() < y1;
  }
};

/// Structured nx-by-ny quad mesh of the rectangle [0,a] x [0,b].
/// Nodes and elements numbered lexicographically, x fastest.
struct Mesh {
  double a = 0.0, b = 0.0;
  int nx = 0, ny = 0;

  int n_nodes() const { return (nx + 1) * (ny + 1); }
  int n_elems() const { return nx * ny; }
  double hx() const { return a / nx; }
  double hy() const { return b / ny; }
  double char_size() const { return std::min(hx(), hy()); }

  Eigen::Vector2d node(int id) const {
    const int i = id % (nx + 1), j = id / (nx + 1);
    return {i * hx(), j * hy()};
  }
  std::array<int, 4> elem_nodes(int e) const {
    const int i = e % nx, j = e / nx;
    const int n0 = j * (nx + 1) + i;
    return {n0, n0 + 1, n0 + nx + 2, n0 + nx + 1};
  }
  Rect elem_rect(int e) const {
    const int i = e % nx, j = e / nx;
    return {i * hx(), j * hy(), (i + 1) * hx(), (j + 1) * hy()};
  }
  /// Support of the nodal shape function (union of adjacent elements).
  Rect node_support(int id) const {
    const int i = id % (nx + 1), j = id / (nx + 1);
    return {std::max(0, i - 1) * hx(), std::max(0, j - 1) * hy(),
            std::min(nx, i + 1) * hx(), std::min(ny, j + 1) * hy()};
  }
  std::vector<int> adjacent_elems(int id) const {
    const int i = id % (nx + 1), j = id / (nx + 1);
    std::vector<int> out;
    out.reserve(4);
    for (int jj = j - 1; jj <= j; ++jj)
      for (int ii = i - 1; ii <= i; ++ii)
        if (ii >= 0 && ii < nx && jj >= 0 && jj < ny) out.push_back(jj * nx + ii);
    return out;
  }
};

/// nx, ny >= 2 required.
Mesh generate_mesh(double a, double b, int nx, int ny);

/// Default division rule: 34 on the shorter side, the longer side scaled
/// proportionally and rounded.
std::pair<int, int> default_divisions(double a, double b);

}  // namespace fgmplate
