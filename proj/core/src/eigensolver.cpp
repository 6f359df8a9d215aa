#include "fgmplate/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fgmplate/dense.hpp"
#include "fgmplate/errors.hpp"

namespace fgmplate {

namespace {

// Lower triangle of a full-stored symmetric sparse matrix into dense storage.
void densify_lower(const SparseSym& S, dense::Matrix& out) {
  for (int col = 0; col < S.outerSize(); ++col) {
    for (SparseSym::InnerIterator it(S, col); it; ++it) {
      if (it.row() >= col) out(static_cast<int>(it.row()), col) = it.value();
    }
  }
}

std::string describe(const EigenOptions& opts, int reduced_dof) {
  if (opts.dof_name) return opts.dof_name(reduced_dof);
  return "reduced dof " + std::to_string(reduced_dof);
}

}  // namespace

ModalResult solve_generalized(const SparseSym& K, const SparseSym& M, const EigenOptions& opts) {
  const int n = static_cast<int>(K.rows());
  if (K.rows() != K.cols() || M.rows() != M.cols() || K.rows() != M.rows()) {
    throw NumericalError("eigensolver: dimension mismatch");
  }
  if (n == 0) throw ModelError("eigensolver: empty system (all dofs constrained?)");
  const int k = std::min(opts.k_modes, n);
  const int threads = std::max(1, opts.threads);

  dense::Matrix Kd(n), Md(n);
  densify_lower(K, Kd);
  densify_lower(M, Md);

  // diagonal equilibration keeps the mass Cholesky well scaled across the
  // translation/rotation/enriched dof mix
  std::vector<double> s(n);
  for (int i = 0; i < n; ++i) {
    const double mii = Md(i, i);
    if (!(mii > 0.0)) {
      throw ModelError("mass matrix has non-positive diagonal at " + describe(opts, i) +
                       " (enrichment degeneracy)");
    }
    s[i] = 1.0 / std::sqrt(mii);
  }
  for (int i = 0; i < n; ++i) {
    double* kr = Kd.row(i);
    double* mr = Md.row(i);
    for (int j = 0; j <= i; ++j) {
      const double f = s[i] * s[j];
      kr[j] *= f;
      mr[j] *= f;
    }
  }

  // M = L L^T; pivot floor eps * trace/n (trace = n after equilibration)
  const double pivot_floor = 100.0 * std::numeric_limits<double>::epsilon();
  try {
    dense::cholesky_lower(Md, pivot_floor, threads);
  } catch (const dense::PivotError& pe) {
    throw ModelError("near-singular mass matrix: pivot " + std::to_string(pe.value) + " at " +
                     describe(opts, pe.index) + " (enrichment degeneracy)");
  }
  dense::sygst_lower(Kd, Md, threads);

  std::vector<double> d, e, tau;
  dense::tridiagonalize_lower(Kd, d, e, tau, threads);

  std::vector<double> evals(d);
  {
    std::vector<double> esub(e);
    dense::tql_eigenvalues(evals, esub);
  }
  std::sort(evals.begin(), evals.end());

  ModalResult res;
  res.omegas.resize(k);
  const double lam_scale = std::max(std::abs(evals.front()), std::abs(evals.back()));
  for (int i = 0; i < k; ++i) {
    double lam = evals[i];
    if (lam < 0.0) {
      if (lam < -1e-8 * lam_scale) {
        throw NumericalError("negative eigenvalue " + std::to_string(lam) +
                             " (indefinite stiffness?)");
      }
      lam = 0.0;
    }
    res.omegas[i] = std::sqrt(lam);
  }

  if (opts.want_vectors) {
    std::vector<double> lambdas(evals.begin(), evals.begin() + k);
    auto ys = dense::tridiag_eigenvectors(d, e, lambdas);
    dense::apply_q_lower(Kd, tau, ys);
    res.vectors.resize(n, k);
    res.residuals.resize(k);
    Eigen::VectorXd v(n);
    for (int i = 0; i < k; ++i) {
      dense::trsv_lt(Md, ys[i]);
      for (int r = 0; r < n; ++r) v[r] = ys[i][r] * s[r];
      // M-normalize and fix the sign deterministically
      const double mn = std::sqrt(v.dot(M * v));
      v /= mn;
      int imax = 0;
      for (int r = 1; r < n; ++r)
        if (std::abs(v[r]) > std::abs(v[imax])) imax = r;
      if (v[imax] < 0.0) v = -v;
      res.vectors.col(i) = v;
      const Eigen::VectorXd Kv = K * v;
      const Eigen::VectorXd r =
          Kv - (res.omegas[i] * res.omegas[i]) * (M * v);
      res.residuals[i] = r.norm() / Kv.norm();
    }
  }
  return res;
}

double nondimensionalize(double omega, double b, double h, double rho_c, double E_c) {
  if (b <= 0.0 || h <= 0.0 || rho_c <= 0.0 || E_c <= 0.0) {
    throw ConfigError("nondimensionalize: all parameters must be positive");
  }
  return omega * (b * b / h) * std::sqrt(rho_c / E_c);
}

}  // namespace fgmplate
