#pragma once

#include <Eigen/Sparse>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fgmplate/crack.hpp"
#include "fgmplate/element.hpp"
#include "fgmplate/mesh.hpp"
#include "fgmplate/section.hpp"

namespace fgmplate {

enum class BcType { SS, CC, CFFF };
BcType parse_bc(const std::string& label);
std::string bc_label(BcType bc);

/// Global dof map: 5 standard dofs per node (u0, v0, w0, tx, ty), then per
/// crack a 5-block per Heaviside node and a 20-block per tip node.
struct DofMap {
  int n_nodes = 0;
  int n_dof = 0;
  // (crack, node) -> base index
  std::map<std::pair<int, int>, int> heaviside_base;
  std::map<std::pair<int, int>, int> tip_base;

  int std_base(int node) const { return 5 * node; }
  std::string dof_name(int dof, const Mesh& mesh) const;
};

DofMap build_dof_map(const Mesh& mesh, const NodeClassification& cls);

/// Assembled model: geometry, classification, dof map, global matrices and the
/// constraint bookkeeping.
struct EnrichedModel {
  Mesh mesh;
  CrackSet cracks;  // effective (perturbed) cracks
  NodeClassification cls;
  SectionMatrices section;
  DofMap dofs;
  Eigen::SparseMatrix<double> K;  // full symmetric storage
  Eigen::SparseMatrix<double> M;
  std::vector<int> constrained;   // ascending full-dof ids
  std::vector<int> free_dofs;     // ascending full-dof ids
  std::vector<int> full_to_free;  // -1 when constrained

  ElementDofLayout element_layout(int e) const;
  std::vector<int> element_global_dofs(int e) const;
};

/// Builds element layouts, assembles K and M (scatter-add, deterministic
/// element order).
void assemble(EnrichedModel& model);

/// Applies the boundary conditions by marking constrained dofs; enriched dofs
/// of a constrained node are constrained with the same component mask.
void apply_bcs(EnrichedModel& model, BcType bc);

/// Reduced (free-dof) matrices after constraint elimination.
Eigen::SparseMatrix<double> reduce(const Eigen::SparseMatrix<double>& A,
                                   const std::vector<int>& free_dofs);

/// Expands a free-dof vector to full size with zeros in constrained slots.
Eigen::VectorXd expand(const EnrichedModel& model, const Eigen::VectorXd& reduced);

/// Coordinate text dump: "row col value" per line.
void write_coordinate_matrix(const Eigen::SparseMatrix<double>& A, std::ostream& out);

struct ModelInputs {
  double a = 1.0, b = 1.0, h = 0.1;
  int nx = 34, ny = 34;
  FgmComposition comp;
  SectionOptions section_opts;
  CrackSet cracks;
  BcType bc = BcType::SS;
};

/// Full model construction: mesh, perturbation, classification, section,
/// dof map, assembly, constraints.
EnrichedModel build_model(const ModelInputs& in);

}  // namespace fgmplate
