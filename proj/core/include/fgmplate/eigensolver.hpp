#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>
#include <string>
#include <vector>

namespace fgmplate {

struct ModalResult {
  std::vector<double> omegas;     // natural frequencies [rad/s], ascending
  std::vector<double> Omegas;     // nondimensional, filled by the caller
  Eigen::MatrixXd vectors;        // free-dof mode shapes, M-orthonormal columns
  std::vector<double> residuals;  // ||K v - w^2 M v|| / ||K v|| per mode
};

struct EigenOptions {
  int k_modes = 5;
  bool want_vectors = false;
  int threads = 1;
  /// Optional reduced-dof describer used in error messages.
  std::function<std::string(int)> dof_name;
};

using SparseSym = Eigen::SparseMatrix<double>;

/// Dense generalized symmetric solve: Cholesky of M, congruence transform,
/// Householder tridiagonalization, implicit-shift QL, inverse-iteration
/// eigenvectors back-transformed and M-normalized.
ModalResult solve_generalized(const SparseSym& K, const SparseSym& M, const EigenOptions& opts);

/// Omega = omega * (b^2/h) * sqrt(rho_c / E_c).
double nondimensionalize(double omega, double b, double h, double rho_c, double E_c);

}  // namespace fgmplate
