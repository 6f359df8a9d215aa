#include "fgmplate/assembly.hpp"

#include <algorithm>
#include <ostream>

#include "fgmplate/errors.hpp"

namespace fgmplate {

BcType parse_bc(const std::string& label) {
  if (label == "SS") return BcType::SS;
  if (label == "CC") return BcType::CC;
  if (label == "CFFF") return BcType::CFFF;
  throw ConfigError("unknown boundary condition '" + label + "' (expected SS, CC or CFFF)");
}

std::string bc_label(BcType bc) {
  switch (bc) {
    case BcType::SS: return "SS";
    case BcType::CC: return "CC";
    default: return "CFFF";
  }
}

DofMap build_dof_map(const Mesh& mesh, const NodeClassification& cls) {
  DofMap map;
  map.n_nodes = mesh.n_nodes();
  int next = 5 * map.n_nodes;
  for (size_t ci = 0; ci < cls.per_crack.size(); ++ci) {
    const auto& c = cls.per_crack[ci];
    for (int n : c.heaviside_nodes) {
      map.heaviside_base[{(int)ci, n}] = next;
      next += 5;
    }
    for (const auto& [n, tip] : c.tip_nodes) {
      (void)tip;
      map.tip_base[{(int)ci, n}] = next;
      next += 20;
    }
  }
  map.n_dof = next;
  return map;
}

namespace {

const char* kComp[5] = {"u0", "v0", "w0", "tx", "ty"};

}  // namespace

std::string DofMap::dof_name(int dof, const Mesh& mesh) const {
  if (dof < 5 * n_nodes) {
    const int node = dof / 5, c = dof % 5;
    const auto p = mesh.node(node);
    return std::string(kComp[c]) + " at node " + std::to_string(node) + " (" +
           std::to_string(p.x()) + ", " + std::to_string(p.y()) + ")";
  }
  for (const auto& [key, base] : heaviside_base) {
    if (dof >= base && dof < base + 5) {
      return std::string("H-") + kComp[dof - base] + " of node " + std::to_string(key.second) +
             " (crack " + std::to_string(key.first) + ")";
    }
  }
  for (const auto& [key, base] : tip_base) {
    if (dof >= base && dof < base + 20) {
      const int off = dof - base;
      return std::string("tip-") + kComp[off % 5] + "[" + std::to_string(off / 5) + "] of node " +
             std::to_string(key.second) + " (crack " + std::to_string(key.first) + ")";
    }
  }
  return "dof " + std::to_string(dof);
}

ElementDofLayout EnrichedModel::element_layout(int e) const {
  ElementDofLayout layout;
  const auto nodes = mesh.elem_nodes(e);
  for (int a = 0; a < 4; ++a) layout.blocks.push_back({a, DofBlock::Kind::Std, -1, -1});
  for (size_t ci = 0; ci < cls.per_crack.size(); ++ci) {
    const auto& c = cls.per_crack[ci];
    for (int a = 0; a < 4; ++a) {
      if (c.is_heaviside(nodes[a])) {
        layout.blocks.push_back({a, DofBlock::Kind::Heaviside, (int)ci, -1});
      }
      auto it = c.tip_nodes.find(nodes[a]);
      if (it != c.tip_nodes.end()) {
        layout.blocks.push_back({a, DofBlock::Kind::Tip, (int)ci, it->second});
      }
    }
  }
  return layout;
}

std::vector<int> EnrichedModel::element_global_dofs(int e) const {
  const auto nodes = mesh.elem_nodes(e);
  const auto layout = element_layout(e);
  std::vector<int> gdofs;
  gdofs.reserve(layout.n_dof());
  for (const auto& blk : layout.blocks) {
    const int node = nodes[blk.local_node];
    int base = 0;
    switch (blk.kind) {
      case DofBlock::Kind::Std: base = dofs.std_base(node); break;
      case DofBlock::Kind::Heaviside: base = dofs.heaviside_base.at({blk.crack, node}); break;
      case DofBlock::Kind::Tip: base = dofs.tip_base.at({blk.crack, node}); break;
    }
    for (int c = 0; c < blk.width(); ++c) gdofs.push_back(base + c);
  }
  return gdofs;
}

namespace {

// Plan for an element: which crack cuts it (at most one) and how.
struct ElementPlanInfo {
  const CrackSegment* seg = nullptr;
  ElementCut cut;
};

ElementPlanInfo element_cut_info(const EnrichedModel& model, int e) {
  ElementPlanInfo info;
  const Rect rect = model.mesh.elem_rect(e);
  for (size_t ci = 0; ci < model.cls.per_crack.size(); ++ci) {
    const auto& c = model.cls.per_crack[ci];
    const bool is_tip = c.tip_elements.count(e) > 0;
    const bool is_cut = std::binary_search(c.cut_elements.begin(), c.cut_elements.end(), e);
    if (!is_tip && !is_cut) continue;
    if (info.seg != nullptr) {
      throw ModelError("element " + std::to_string(e) + " is cut by more than one crack");
    }
    info.seg = &model.cracks.cracks[ci];
    info.cut = intersect_element(*info.seg, rect);
  }
  return info;
}

}  // namespace

void assemble(EnrichedModel& model) {
  const int ne = model.mesh.n_elems();
  std::vector<Eigen::Triplet<double>> tk, tm;
  tk.reserve(static_cast<size_t>(ne) * 400);
  tm.reserve(static_cast<size_t>(ne) * 400);

  // the structured mesh is uniform, so every plain element shares one pair of
  // matrices
  Eigen::MatrixXd Ke0, Me0;
  {
    const ElementGeometry geo = element_geometry(model.mesh.elem_rect(0));
    ElementDofLayout std_layout;
    for (int a = 0; a < 4; ++a) std_layout.blocks.push_back({a, DofBlock::Kind::Std, -1, -1});
    const QuadraturePlan plan = quadrature_plan(model.mesh.elem_rect(0), nullptr, {});
    Ke0 = element_stiffness(geo, std_layout, model.cracks, model.section, plan);
    Me0 = element_mass(geo, std_layout, model.cracks, model.section, plan);
  }

  for (int e = 0; e < ne; ++e) {
    const bool special = model.cls.element_special(model.mesh, e);
    const auto gdofs = model.element_global_dofs(e);
    const Eigen::MatrixXd* Ke = &Ke0;
    const Eigen::MatrixXd* Me = &Me0;
    Eigen::MatrixXd Ke_s, Me_s;
    if (special) {
      const ElementGeometry geo = element_geometry(model.mesh.elem_rect(e));
      const auto layout = model.element_layout(e);
      const auto info = element_cut_info(model, e);
      const QuadraturePlan plan = quadrature_plan(model.mesh.elem_rect(e), info.seg, info.cut);
      Ke_s = element_stiffness(geo, layout, model.cracks, model.section, plan);
      Me_s = element_mass(geo, layout, model.cracks, model.section, plan);
      Ke = &Ke_s;
      Me = &Me_s;
    }
    const int nd = static_cast<int>(gdofs.size());
    for (int i = 0; i < nd; ++i) {
      for (int j = 0; j < nd; ++j) {
        tk.emplace_back(gdofs[i], gdofs[j], (*Ke)(i, j));
        tm.emplace_back(gdofs[i], gdofs[j], (*Me)(i, j));
      }
    }
  }
  model.K.resize(model.dofs.n_dof, model.dofs.n_dof);
  model.M.resize(model.dofs.n_dof, model.dofs.n_dof);
  model.K.setFromTriplets(tk.begin(), tk.end());
  model.M.setFromTriplets(tm.begin(), tm.end());
}

void apply_bcs(EnrichedModel& model, BcType bc) {
  const Mesh& mesh = model.mesh;
  const double tol = 1e-12 * std::max(mesh.a, mesh.b);
  std::vector<char> fixed(model.dofs.n_dof, 0);

  auto constrain_node = [&](int node, std::initializer_list<int> comps) {
    for (int c : comps) fixed[model.dofs.std_base(node) + c] = 1;
    for (size_t ci = 0; ci < model.cls.per_crack.size(); ++ci) {
      auto ith = model.dofs.heaviside_base.find({(int)ci, node});
      if (ith != model.dofs.heaviside_base.end()) {
        for (int c : comps) fixed[ith->second + c] = 1;
      }
      auto itt = model.dofs.tip_base.find({(int)ci, node});
      if (itt != model.dofs.tip_base.end()) {
        for (int l = 0; l < 4; ++l)
          for (int c : comps) fixed[itt->second + 5 * l + c] = 1;
      }
    }
  };

  for (int n = 0; n < mesh.n_nodes(); ++n) {
    const auto p = mesh.node(n);
    const bool x0 = std::abs(p.x()) < tol, x1 = std::abs(p.x() - mesh.a) < tol;
    const bool y0 = std::abs(p.y()) < tol, y1 = std::abs(p.y() - mesh.b) < tol;
    switch (bc) {
      case BcType::SS:
        if (x0 || x1) constrain_node(n, {0, 2, 4});  // u0 = w0 = ty = 0
        if (y0 || y1) constrain_node(n, {1, 2, 3});  // v0 = w0 = tx = 0
        break;
      case BcType::CC:
        if (x0 || x1 || y0 || y1) constrain_node(n, {0, 1, 2, 3, 4});
        break;
      case BcType::CFFF:
        if (x0) constrain_node(n, {0, 1, 2, 3, 4});
        break;
    }
  }

  model.constrained.clear();
  model.free_dofs.clear();
  model.full_to_free.assign(model.dofs.n_dof, -1);
  for (int i = 0; i < model.dofs.n_dof; ++i) {
    if (fixed[i]) {
      model.constrained.push_back(i);
    } else {
      model.full_to_free[i] = static_cast<int>(model.free_dofs.size());
      model.free_dofs.push_back(i);
    }
  }
}

Eigen::SparseMatrix<double> reduce(const Eigen::SparseMatrix<double>& A,
                                   const std::vector<int>& free_dofs) {
  std::vector<int> map(A.rows(), -1);
  for (size_t i = 0; i < free_dofs.size(); ++i) map[free_dofs[i]] = static_cast<int>(i);
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(A.nonZeros());
  for (int col = 0; col < A.outerSize(); ++col) {
    if (map[col] < 0) continue;
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, col); it; ++it) {
      const int r = map[static_cast<int>(it.row())];
      if (r >= 0) t.emplace_back(r, map[col], it.value());
    }
  }
  Eigen::SparseMatrix<double> out(free_dofs.size(), free_dofs.size());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

Eigen::VectorXd expand(const EnrichedModel& model, const Eigen::VectorXd& reduced) {
  Eigen::VectorXd full = Eigen::VectorXd::Zero(model.dofs.n_dof);
  for (size_t i = 0; i < model.free_dofs.size(); ++i) full[model.free_dofs[i]] = reduced[i];
  return full;
}

void write_coordinate_matrix(const Eigen::SparseMatrix<double>& A, std::ostream& out) {
  out << "# rows " << A.rows() << " cols " << A.cols() << " nnz " << A.nonZeros() << "\n";
  for (int col = 0; col < A.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, col); it; ++it) {
      out << it.row() << " " << it.col() << " " << it.value() << "\n";
    }
  }
}

EnrichedModel build_model(const ModelInputs& in) {
  EnrichedModel model;
  model.mesh = generate_mesh(in.a, in.b, in.nx, in.ny);
  model.cracks = apply_mesh_perturbation(in.cracks, model.mesh);
  model.cls = classify_nodes(model.cracks, model.mesh);
  model.section = integrate_section(in.comp, in.h, in.section_opts);
  model.dofs = build_dof_map(model.mesh, model.cls);
  assemble(model);
  apply_bcs(model, in.bc);
  return model;
}

}  // namespace fgmplate
