#pragma once

#include <vector>

#include "fgmplate/errors.hpp"

namespace fgmplate::dense {

/// Row-major square matrix. Symmetric routines treat the lower triangle as
/// authoritative and never read the upper one.
struct Matrix {
  int n = 0;
  std::vector<double> a;

  Matrix() = default;
  explicit Matrix(int n_) : n(n_), a(static_cast<size_t>(n_) * n_, 0.0) {}
  double* row(int i) { return a.data() + static_cast<size_t>(i) * n; }
  const double* row(int i) const { return a.data() + static_cast<size_t>(i) * n; }
  double& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  double operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

/// Failed factorization pivot; index refers to the matrix row.
class PivotError : public NumericalError {
 public:
  PivotError(int index, double value)
      : NumericalError("non-positive pivot " + std::to_string(value) + " at row " +
                       std::to_string(index)),
        index(index),
        value(value) {}
  int index;
  double value;
};

/// C[0:m, 0:n] += alpha * A[0:m, 0:k] * B[0:k, 0:n]; all row-major with leading
/// dimensions. Deterministic for any thread count.
void gemm_nn(int m, int n, int k, double alpha, const double* A, int lda, const double* B,
             int ldb, double* C, int ldc, int threads);

/// y[0:m] = (symmetric A, lower stored) * x, A given by its top-left corner and
/// leading dimension.
void symv_lower(int m, const double* A, int lda, const double* x, double* y, int threads);

/// In-place lower Cholesky A = L L^T. Throws PivotError when a pivot falls at
/// or below pivot_floor.
void cholesky_lower(Matrix& A, double pivot_floor, int threads);

/// In-place A := inv(L) * A * inv(L)^T for symmetric A (lower), L lower
/// Cholesky factor of the metric.
void sygst_lower(Matrix& A, const Matrix& L, int threads);

/// In-place Householder tridiagonalization of symmetric A (lower):
/// A = Q T Q^T. Diagonal in d (size n), subdiagonal in e (size n-1), reflector
/// scalars in tau (size n-1); reflector vectors remain in A below the first
/// subdiagonal.
void tridiagonalize_lower(Matrix& A, std::vector<double>& d, std::vector<double>& e,
                          std::vector<double>& tau, int threads);

/// Implicit-shift QL on a symmetric tridiagonal; eigenvalues replace d
/// (unsorted). Throws NumericalError when an eigenvalue fails to converge.
void tql_eigenvalues(std::vector<double>& d, std::vector<double>& e);

/// Inverse-iteration eigenvectors of the tridiagonal (d, e) for the given
/// eigenvalues (ascending); vectors are orthonormalized within clusters.
std::vector<std::vector<double>> tridiag_eigenvectors(const std::vector<double>& d,
                                                      const std::vector<double>& e,
                                                      const std::vector<double>& lambdas);

/// y := Q y with Q from tridiagonalize_lower's reflectors.
void apply_q_lower(const Matrix& A, const std::vector<double>& tau,
                   std::vector<std::vector<double>>& ys);

/// x := inv(L)^T x.
void trsv_lt(const Matrix& L, std::vector<double>& x);

}  // namespace fgmplate::dense
