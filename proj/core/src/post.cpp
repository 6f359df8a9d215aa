#include "fgmplate/post.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "fgmplate/errors.hpp"

namespace fgmplate {

namespace {

Eigen::Vector2d nudge_off_crack(const EnrichedModel& model, Eigen::Vector2d p) {
  const double he = model.mesh.char_size();
  for (const auto& seg : model.cracks.cracks) {
    for (int k = 0; k < seg.n_interior_tips(); ++k) {
      if ((p - seg.tip(k)).norm() < 1e-9 * he) {
        p += 1e-9 * he * seg.tip_outward(k);  // radial nudge off the tip
      }
    }
    if (std::abs(signed_distance(seg, p)) < 1e-9 * he) {
      p += 1e-9 * he * seg.normal();  // nudge to the +normal side
    }
  }
  return p;
}

}  // namespace

ModeShapeField sample_mode(const EnrichedModel& model, const Eigen::VectorXd& full_vector,
                           int grid_nx, int grid_ny) {
  if (full_vector.size() != model.dofs.n_dof) {
    throw ModelError("sample_mode: vector size does not match the model");
  }
  ModeShapeField f;
  f.nx = grid_nx;
  f.ny = grid_ny;
  f.a = model.mesh.a;
  f.b = model.mesh.b;
  const int np = grid_nx * grid_ny;
  f.u.assign(np, 0.0);
  f.v.assign(np, 0.0);
  f.w.assign(np, 0.0);
  f.tx.assign(np, 0.0);
  f.ty.assign(np, 0.0);

  Eigen::MatrixXd Nmat;
  for (int j = 0; j < grid_ny; ++j) {
    for (int i = 0; i < grid_nx; ++i) {
      Eigen::Vector2d p(model.mesh.a * i / (grid_nx - 1.0), model.mesh.b * j / (grid_ny - 1.0));
      p = nudge_off_crack(model, p);
      // containing element (clamped to the domain)
      const int ei = std::clamp((int)(p.x() / model.mesh.hx()), 0, model.mesh.nx - 1);
      const int ej = std::clamp((int)(p.y() / model.mesh.hy()), 0, model.mesh.ny - 1);
      const int e = ej * model.mesh.nx + ei;
      const Rect rect = model.mesh.elem_rect(e);
      const double xi = 2.0 * (p.x() - rect.x0) / rect.width() - 1.0;
      const double eta = 2.0 * (p.y() - rect.y0) / rect.height() - 1.0;
      const auto layout = model.element_layout(e);
      shape_rows(element_geometry(rect), layout, model.cracks, xi, eta, Nmat);
      const auto gdofs = model.element_global_dofs(e);
      Eigen::VectorXd local(gdofs.size());
      for (size_t k = 0; k < gdofs.size(); ++k) local[k] = full_vector[gdofs[k]];
      const Eigen::Matrix<double, 5, 1> vals = Nmat * local;
      const int id = f.idx(i, j);
      f.u[id] = vals[0];
      f.v[id] = vals[1];
      f.w[id] = vals[2];
      f.tx[id] = vals[3];
      f.ty[id] = vals[4];
    }
  }
  double wmax = 0.0;
  for (double w : f.w) wmax = std::max(wmax, std::abs(w));
  if (wmax > 0.0) {
    const double s = 1.0 / wmax;
    for (auto* arr : {&f.u, &f.v, &f.w, &f.tx, &f.ty}) {
      for (double& x : *arr) x *= s;
    }
  }
  return f;
}

void write_vtk(const ModeShapeField& f, const std::string& title, std::ostream& out) {
  out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET STRUCTURED_GRID\n";
  out << "DIMENSIONS " << f.nx << " " << f.ny << " 1\n";
  out << "POINTS " << f.nx * f.ny << " double\n";
  out << std::setprecision(17);
  for (int j = 0; j < f.ny; ++j)
    for (int i = 0; i < f.nx; ++i) {
      out << f.a * i / (f.nx - 1.0) << " " << f.b * j / (f.ny - 1.0) << " 0\n";
    }
  out << "POINT_DATA " << f.nx * f.ny << "\n";
  out << "SCALARS w double 1\nLOOKUP_TABLE default\n";
  for (int j = 0; j < f.ny; ++j)
    for (int i = 0; i < f.nx; ++i) out << f.w[f.idx(i, j)] << "\n";
  out << "VECTORS rotation double\n";
  for (int j = 0; j < f.ny; ++j)
    for (int i = 0; i < f.nx; ++i) {
      out << f.tx[f.idx(i, j)] << " " << f.ty[f.idx(i, j)] << " 0\n";
    }
}

ModeShapeField read_vtk(std::istream& in) {
  ModeShapeField f;
  std::string line;
  int np = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (tok == "DIMENSIONS") {
      int nz = 0;
      ls >> f.nx >> f.ny >> nz;
    } else if (tok == "POINTS") {
      ls >> np;
      double x, y, z;
      double xmax = 0.0, ymax = 0.0;
      for (int i = 0; i < np; ++i) {
        in >> x >> y >> z;
        xmax = std::max(xmax, x);
        ymax = std::max(ymax, y);
      }
      f.a = xmax;
      f.b = ymax;
    } else if (tok == "SCALARS") {
      std::getline(in, line);  // LOOKUP_TABLE
      f.w.resize(np);
      for (int i = 0; i < np; ++i) in >> f.w[i];
    } else if (tok == "VECTORS") {
      f.tx.resize(np);
      f.ty.resize(np);
      double z;
      for (int i = 0; i < np; ++i) in >> f.tx[i] >> f.ty[i] >> z;
    }
  }
  if (f.nx * f.ny != np || np == 0) throw ConfigError("malformed VTK mode-shape file");
  f.u.assign(np, 0.0);
  f.v.assign(np, 0.0);
  return f;
}

void write_csv(const ResultTable& table, std::ostream& out) {
  for (const auto& c : table.input_columns) out << c << ",";
  for (int k = 1; k <= table.n_modes; ++k) {
    out << "Omega_" << k << (k < table.n_modes ? "," : "");
  }
  out << ",error\n";
  out << std::fixed << std::setprecision(4);
  for (const auto& row : table.rows) {
    for (const auto& [name, value] : row.inputs) {
      (void)name;
      out << value << ",";
    }
    for (int k = 0; k < table.n_modes; ++k) {
      if (k < (int)row.omegas.size()) out << row.omegas[k];
      out << (k + 1 < table.n_modes ? "," : "");
    }
    out << "," << row.error << "\n";
  }
}

}  // namespace fgmplate
