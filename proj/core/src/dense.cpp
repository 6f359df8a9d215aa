#include "fgmplate/dense.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>

#ifdef FGMPLATE_HAVE_OPENMP
#include <omp.h>
#endif

namespace fgmplate::dense {

namespace {

constexpr int kPanel = 64;      // factorization panel width
constexpr int kLatrdPanel = 32; // tridiagonalization panel width
constexpr int kColTile = 512;   // gemm j-tile kept hot in cache
constexpr int kRowBlock = 256;  // row partition for parallel loops

inline void axpy(int n, double a, const double* __restrict x, double* __restrict y) {
  for (int i = 0; i < n; ++i) y[i] += a * x[i];
}

inline double dot(int n, const double* __restrict x, const double* __restrict y) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  int i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += x[i] * y[i];
    s1 += x[i + 1] * y[i + 1];
    s2 += x[i + 2] * y[i + 2];
    s3 += x[i + 3] * y[i + 3];
  }
  for (; i < n; ++i) s0 += x[i] * y[i];
  return (s0 + s1) + (s2 + s3);
}

// C rows [i0,i1), one j-tile of C += alpha*A*B; 4 rows x 2 k-steps per pass so
// each loaded B row feeds four accumulating C rows.
void gemm_tile(int i0, int i1, int j0, int jn, int k, double alpha, const double* A, int lda,
               const double* B, int ldb, double* C, int ldc) {
  int i = i0;
  for (; i + 4 <= i1; i += 4) {
    const double* A0 = A + static_cast<size_t>(i) * lda;
    const double* A1 = A0 + lda;
    const double* A2 = A1 + lda;
    const double* A3 = A2 + lda;
    double* __restrict C0 = C + static_cast<size_t>(i) * ldc + j0;
    double* __restrict C1 = C0 + ldc;
    double* __restrict C2 = C1 + ldc;
    double* __restrict C3 = C2 + ldc;
    int kk = 0;
    for (; kk + 2 <= k; kk += 2) {
      const double a00 = alpha * A0[kk], a01 = alpha * A0[kk + 1];
      const double a10 = alpha * A1[kk], a11 = alpha * A1[kk + 1];
      const double a20 = alpha * A2[kk], a21 = alpha * A2[kk + 1];
      const double a30 = alpha * A3[kk], a31 = alpha * A3[kk + 1];
      const double* __restrict B0 = B + static_cast<size_t>(kk) * ldb + j0;
      const double* __restrict B1 = B0 + ldb;
      for (int j = 0; j < jn; ++j) {
        const double b0 = B0[j], b1 = B1[j];
        C0[j] += a00 * b0 + a01 * b1;
        C1[j] += a10 * b0 + a11 * b1;
        C2[j] += a20 * b0 + a21 * b1;
        C3[j] += a30 * b0 + a31 * b1;
      }
    }
    for (; kk < k; ++kk) {
      const double* __restrict B0 = B + static_cast<size_t>(kk) * ldb + j0;
      const double a0 = alpha * A0[kk], a1 = alpha * A1[kk];
      const double a2 = alpha * A2[kk], a3 = alpha * A3[kk];
      for (int j = 0; j < jn; ++j) {
        const double b = B0[j];
        C0[j] += a0 * b;
        C1[j] += a1 * b;
        C2[j] += a2 * b;
        C3[j] += a3 * b;
      }
    }
  }
  for (; i < i1; ++i) {
    const double* Ai = A + static_cast<size_t>(i) * lda;
    double* __restrict Ci = C + static_cast<size_t>(i) * ldc + j0;
    int kk = 0;
    for (; kk + 4 <= k; kk += 4) {
      const double a0 = alpha * Ai[kk];
      const double a1 = alpha * Ai[kk + 1];
      const double a2 = alpha * Ai[kk + 2];
      const double a3 = alpha * Ai[kk + 3];
      const double* __restrict B0 = B + static_cast<size_t>(kk) * ldb + j0;
      const double* __restrict B1 = B0 + ldb;
      const double* __restrict B2 = B1 + ldb;
      const double* __restrict B3 = B2 + ldb;
      for (int j = 0; j < jn; ++j) {
        Ci[j] += a0 * B0[j] + a1 * B1[j] + a2 * B2[j] + a3 * B3[j];
      }
    }
    for (; kk < k; ++kk) {
      axpy(jn, alpha * Ai[kk], B + static_cast<size_t>(kk) * ldb + j0, Ci);
    }
  }
}

void pack_transpose(int m, int kb, const double* A, int lda, double* At, int ldt) {
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < kb; ++j)
      At[static_cast<size_t>(j) * ldt + i] = A[static_cast<size_t>(i) * lda + j];
}

// Trailing symmetric update C(lower) -= A*Bt + B*At restricted to the lower
// triangle, all operands m rows; Bt/At packed (k x m).
void rank2k_update_lower(int m, int k, const double* A, int lda, const double* B, int ldb,
                         const double* Bt, const double* At, int ldt, double* C, int ldc,
                         int threads) {
#ifdef FGMPLATE_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, threads)) if (threads > 1 && m > 64)
#endif
  for (int r0 = 0; r0 < m; r0 += kRowBlock) {
    const int rb = std::min(kRowBlock, m - r0);
    const int ncols = std::min(m, r0 + rb);
    for (int j0 = 0; j0 < ncols; j0 += kColTile) {
      const int jn = std::min(ncols - j0, kColTile);
      gemm_tile(0, rb, j0, jn, k, -1.0, A + static_cast<size_t>(r0) * lda, lda, Bt, ldt,
                C + static_cast<size_t>(r0) * ldc, ldc);
      gemm_tile(0, rb, j0, jn, k, -1.0, B + static_cast<size_t>(r0) * ldb, ldb, At, ldt,
                C + static_cast<size_t>(r0) * ldc, ldc);
    }
  }
}

}  // namespace

void gemm_nn(int m, int n, int k, double alpha, const double* A, int lda, const double* B,
             int ldb, double* C, int ldc, int threads) {
  if (m <= 0 || n <= 0 || k <= 0) return;
  constexpr int kKTile = 128;  // keeps the B tile resident in L2
#ifdef FGMPLATE_HAVE_OPENMP
#pragma omp parallel for schedule(static) num_threads(std::max(1, threads)) if (threads > 1 && m > 8)
#endif
  for (int i0 = 0; i0 < m; i0 += kRowBlock) {
    const int i1 = std::min(m, i0 + kRowBlock);
    for (int j0 = 0; j0 < n; j0 += kColTile) {
      const int jn = std::min(n - j0, kColTile);
      for (int k0 = 0; k0 < k; k0 += kKTile) {
        const int kn = std::min(k - k0, kKTile);
        gemm_tile(i0, i1, j0, jn, kn, alpha, A + k0, lda,
                  B + static_cast<size_t>(k0) * ldb, ldb, C, ldc);
      }
    }
  }
}

void symv_lower(int m, const double* A, int lda, const double* x, double* y, int threads) {
  const int nblocks = (m + kRowBlock - 1) / kRowBlock;
  // block-indexed partials keep the reduction order independent of the thread
  // count; workspace reused across calls on the calling thread
  static thread_local std::vector<double> workspace;
  workspace.resize(static_cast<size_t>(nblocks) * m);
  double* const partial = workspace.data();
#ifdef FGMPLATE_HAVE_OPENMP
#pragma omp parallel for schedule(static) num_threads(std::max(1, threads)) if (threads > 1 && m > 512)
#endif
  for (int b = 0; b < nblocks; ++b) {
    double* part = partial + static_cast<size_t>(b) * m;
    const int i0 = b * kRowBlock, i1 = std::min(m, i0 + kRowBlock);
    std::memset(part, 0, sizeof(double) * i1);
    for (int i = i0; i < i1; ++i) {
      const double* Ai = A + static_cast<size_t>(i) * lda;
      part[i] += dot(i, Ai, x) + Ai[i] * x[i];  // row pass (diagonal included)
      axpy(i, x[i], Ai, part);                  // transposed contribution
    }
  }
  std::memset(y, 0, sizeof(double) * m);
  for (int b = 0; b < nblocks; ++b) {
    const double* part = partial + static_cast<size_t>(b) * m;
    const int top = std::min(m, (b + 1) * kRowBlock);
    axpy(top, 1.0, part, y);
  }
}

namespace {

// X[0:m, :] := X * inv(Ld)^T, Ld the kb x kb lower block at (d0, d0) of L.
void trsm_right_lt_panel(int m, double* X, int ldx, const Matrix& L, int d0, int kb, int threads) {
#ifdef FGMPLATE_HAVE_OPENMP
#pragma omp parallel for schedule(static) num_threads(std::max(1, threads)) if (threads > 1 && m > 64)
#endif
  for (int i = 0; i < m; ++i) {
    double* xi = X + static_cast<size_t>(i) * ldx;
    for (int c = 0; c < kb; ++c) {
      const double* Lc = L.row(d0 + c) + d0;
      xi[c] = (xi[c] - dot(c, Lc, xi)) / Lc[c];
    }
  }
}

// B[0:m, 0:kb] := inv(Lt) * B, Lt the m x m lower block at (t0, t0) of L.
void trsm_left_ln_panel(int m, int kb, double* B, int ldb, const Matrix& L, int t0, int threads) {
  constexpr int ib = 128;
  for (int r0 = 0; r0 < m; r0 += ib) {
    const int rb = std::min(ib, m - r0);
    if (r0 > 0) {
      gemm_nn(rb, kb, r0, -1.0, L.row(t0 + r0) + t0, L.n, B, ldb,
              B + static_cast<size_t>(r0) * ldb, ldb, threads);
    }
    for (int r = 0; r < rb; ++r) {
      const double* Lr = L.row(t0 + r0 + r) + t0 + r0;
      double* Br = B + static_cast<size_t>(r0 + r) * ldb;
      for (int s = 0; s < r; ++s) axpy(kb, -Lr[s], B + static_cast<size_t>(r0 + s) * ldb, Br);
      const double inv = 1.0 / Lr[r];
      for (int j = 0; j < kb; ++j) Br[j] *= inv;
    }
  }
}

}  // namespace

void cholesky_lower(Matrix& A, double pivot_floor, int threads) {
  const int n = A.n;
  std::vector<double> Pt;
  for (int k0 = 0; k0 < n; k0 += kPanel) {
    const int kb = std::min(kPanel, n - k0);
    for (int j = k0; j < k0 + kb; ++j) {
      double* Aj = A.row(j);
      const double s = A(j, j) - dot(j - k0, Aj + k0, Aj + k0);
      if (s <= pivot_floor) throw PivotError(j, s);
      const double ljj = std::sqrt(s);
      A(j, j) = ljj;
      const double inv = 1.0 / ljj;
      for (int i = j + 1; i < k0 + kb; ++i) {
        double* Ai = A.row(i);
        Ai[j] = (Ai[j] - dot(j - k0, Ai + k0, Aj + k0)) * inv;
      }
    }
    const int m = n - k0 - kb;
    if (m <= 0) continue;
    double* P = A.row(k0 + kb) + k0;
    trsm_right_lt_panel(m, P, n, A, k0, kb, threads);
    Pt.resize(static_cast<size_t>(kb) * m);
    pack_transpose(m, kb, P, n, Pt.data(), m);
#ifdef FGMPLATE_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, threads)) if (threads > 1 && m > 64)
#endif
    for (int r0 = 0; r0 < m; r0 += kRowBlock) {
      const int rb = std::min(kRowBlock, m - r0);
      const int ncols = std::min(m, r0 + rb);
      for (int j0 = 0; j0 < ncols; j0 += kColTile) {
        const int jn = std::min(ncols - j0, kColTile);
        gemm_tile(0, rb, j0, jn, kb, -1.0, P + static_cast<size_t>(r0) * n, n, Pt.data(), m,
                  A.row(k0 + kb + r0) + k0 + kb, n);
      }
    }
  }
}

namespace {

// Unblocked two-sided transform of the kb x kb diagonal block.
void sygs2_lower(Matrix& A, const Matrix& L, int d0, int kb) {
  for (int k = 0; k < kb; ++k) {
    const int g = d0 + k;
    const double lkk = L(g, g);
    const double akk = A(g, g) / (lkk * lkk);
    A(g, g) = akk;
    const int m = kb - k - 1;
    if (m <= 0) continue;
    for (int i = 1; i <= m; ++i) A(g + i, g) /= lkk;
    for (int i = 1; i <= m; ++i) A(g + i, g) -= 0.5 * akk * L(g + i, g);
    for (int i = 1; i <= m; ++i) {
      const double ai = A(g + i, g), li = L(g + i, g);
      double* Ar = A.row(g + i);
      for (int j = 1; j <= i; ++j) Ar[g + j] -= ai * L(g + j, g) + li * A(g + j, g);
    }
    for (int i = 1; i <= m; ++i) A(g + i, g) -= 0.5 * akk * L(g + i, g);
    for (int i = 1; i <= m; ++i) {
      double s = A(g + i, g);
      for (int j = 1; j < i; ++j) s -= L(g + i, g + j) * A(g + j, g);
      A(g + i, g) = s / L(g + i, g + i);
    }
  }
}

}  // namespace

void sygst_lower(Matrix& A, const Matrix& L, int threads) {
  const int n = A.n;
  std::vector<double> mirror, Lt, At;
  for (int k0 = 0; k0 < n; k0 += kPanel) {
    const int kb = std::min(kPanel, n - k0);
    sygs2_lower(A, L, k0, kb);
    const int m = n - k0 - kb;
    if (m <= 0) continue;
    double* A21 = A.row(k0 + kb) + k0;
    const double* L21 = L.row(k0 + kb) + k0;
    trsm_right_lt_panel(m, A21, n, L, k0, kb, threads);
    mirror.assign(static_cast<size_t>(kb) * kb, 0.0);
    for (int i = 0; i < kb; ++i)
      for (int j = 0; j <= i; ++j) {
        mirror[static_cast<size_t>(i) * kb + j] = A(k0 + i, k0 + j);
        mirror[static_cast<size_t>(j) * kb + i] = A(k0 + i, k0 + j);
      }
    gemm_nn(m, kb, kb, -0.5, L21, n, mirror.data(), kb, A21, n, threads);
    Lt.resize(static_cast<size_t>(kb) * m);
    At.resize(static_cast<size_t>(kb) * m);
    pack_transpose(m, kb, L21, n, Lt.data(), m);
    pack_transpose(m, kb, A21, n, At.data(), m);
    rank2k_update_lower(m, kb, A21, n, L21, n, Lt.data(), At.data(), m,
                        A.row(k0 + kb) + k0 + kb, n, threads);
    gemm_nn(m, kb, kb, -0.5, L21, n, mirror.data(), kb, A21, n, threads);
    trsm_left_ln_panel(m, kb, A21, n, L, k0 + kb, threads);
  }
}

namespace {

// Householder vector for x (length m): H x = beta e1, v[0] = 1 on return in x.
double larfg(int m, double* x, double& beta) {
  if (m <= 0) {
    beta = 0.0;
    return 0.0;
  }
  const double alpha = x[0];
  double xnorm = 0.0;
  for (int i = 1; i < m; ++i) xnorm = std::hypot(xnorm, x[i]);
  if (xnorm == 0.0) {
    beta = alpha;
    x[0] = 1.0;
    return 0.0;
  }
  beta = -std::copysign(std::hypot(alpha, xnorm), alpha);
  const double tau = (beta - alpha) / beta;
  const double scale = 1.0 / (alpha - beta);
  for (int i = 1; i < m; ++i) x[i] *= scale;
  x[0] = 1.0;
  return tau;
}

}  // namespace

void tridiagonalize_lower(Matrix& A, std::vector<double>& d, std::vector<double>& e,
                          std::vector<double>& tau, int threads) {
  const int n = A.n;
  d.assign(n, 0.0);
  e.assign(std::max(0, n - 1), 0.0);
  tau.assign(std::max(0, n - 1), 0.0);
  if (n == 1) {
    d[0] = A(0, 0);
    return;
  }
  const int nb = kLatrdPanel;
  std::vector<double> V(static_cast<size_t>(n) * nb), W(static_cast<size_t>(n) * nb);
  std::vector<double> vcol(n), wcol(n), t1(nb), t2(nb), Vt, Wt;

  for (int k0 = 0; k0 < n - 1; k0 += nb) {
    const int kb = std::min(nb, n - 1 - k0);
    std::fill(V.begin(), V.end(), 0.0);
    std::fill(W.begin(), W.end(), 0.0);
    for (int ii = 0; ii < kb; ++ii) {
      const int j = k0 + ii;
      const int m = n - j - 1;
      if (ii > 0) {
        const double* Vj = V.data() + static_cast<size_t>(j) * nb;
        const double* Wj = W.data() + static_cast<size_t>(j) * nb;
        for (int r = j; r < n; ++r) {
          const double* Vr = V.data() + static_cast<size_t>(r) * nb;
          const double* Wr = W.data() + static_cast<size_t>(r) * nb;
          A(r, j) -= dot(ii, Vr, Wj) + dot(ii, Wr, Vj);
        }
      }
      d[j] = A(j, j);
      for (int r = 0; r < m; ++r) vcol[r] = A(j + 1 + r, j);
      double beta = 0.0;
      const double tj = larfg(m, vcol.data(), beta);
      e[j] = beta;
      tau[j] = tj;
      for (int r = 0; r < m; ++r) A(j + 1 + r, j) = vcol[r];
      if (tj == 0.0) continue;
      symv_lower(m, A.row(j + 1) + (j + 1), n, vcol.data(), wcol.data(), threads);
      for (int r = 0; r < m; ++r) wcol[r] *= tj;
      if (ii > 0) {
        std::fill(t1.begin(), t1.begin() + ii, 0.0);
        std::fill(t2.begin(), t2.begin() + ii, 0.0);
        for (int r = 0; r < m; ++r) {
          const double* Wr = W.data() + static_cast<size_t>(j + 1 + r) * nb;
          const double* Vr = V.data() + static_cast<size_t>(j + 1 + r) * nb;
          axpy(ii, vcol[r], Wr, t1.data());
          axpy(ii, vcol[r], Vr, t2.data());
        }
        for (int r = 0; r < m; ++r) {
          const double* Vr = V.data() + static_cast<size_t>(j + 1 + r) * nb;
          const double* Wr = W.data() + static_cast<size_t>(j + 1 + r) * nb;
          wcol[r] -= tj * (dot(ii, Vr, t1.data()) + dot(ii, Wr, t2.data()));
        }
      }
      const double half = -0.5 * tj * dot(m, wcol.data(), vcol.data());
      axpy(m, half, vcol.data(), wcol.data());
      for (int r = 0; r < m; ++r) {
        V[static_cast<size_t>(j + 1 + r) * nb + ii] = vcol[r];
        W[static_cast<size_t>(j + 1 + r) * nb + ii] = wcol[r];
      }
    }
    const int t0 = k0 + kb;  // first untouched column; its rows joined the panel below
    const int m = n - t0;
    if (m > 0) {
      Vt.resize(static_cast<size_t>(nb) * m);
      Wt.resize(static_cast<size_t>(nb) * m);
      pack_transpose(m, nb, V.data() + static_cast<size_t>(t0) * nb, nb, Vt.data(), m);
      pack_transpose(m, nb, W.data() + static_cast<size_t>(t0) * nb, nb, Wt.data(), m);
      rank2k_update_lower(m, nb, V.data() + static_cast<size_t>(t0) * nb, nb,
                          W.data() + static_cast<size_t>(t0) * nb, nb, Wt.data(), Vt.data(), m,
                          A.row(t0) + t0, n, threads);
    }
  }
  d[n - 1] = A(n - 1, n - 1);
}

void tql_eigenvalues(std::vector<double>& d, std::vector<double>& e) {
  const int n = static_cast<int>(d.size());
  if (n <= 1) return;
  std::vector<double> ee(n, 0.0);
  std::copy(e.begin(), e.end(), ee.begin());
  const double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    while (true) {
      int m = l;
      for (; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(ee[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++iter > 50) throw NumericalError("tridiagonal QL failed to converge");
      double g = (d[l + 1] - d[l]) / (2.0 * ee[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + ee[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (int i = m - 1; i >= l; --i) {
        double f = s * ee[i];
        const double b = c * ee[i];
        r = std::hypot(f, g);
        ee[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          ee[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (underflow) continue;
      d[l] -= p;
      ee[l] = g;
      ee[m] = 0.0;
    }
  }
}

namespace {

double hashed_unit(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  x = x ^ (x >> 31);
  return 2.0 * (static_cast<double>(x >> 11) * 0x1.0p-53) - 1.0;
}

// Partial-pivot LU of (T - lambda I); layout after dgttrf: dl multipliers,
// dd diagonal, du first super, du2 second super, piv swap flags.
struct TridiagLU {
  std::vector<double> dl, dd, du, du2;
  std::vector<char> piv;

  TridiagLU(const std::vector<double>& d, const std::vector<double>& e, double lambda,
            double pivot_floor) {
    const int n = static_cast<int>(d.size());
    dl.assign(std::max(0, n - 1), 0.0);
    dd.assign(n, 0.0);
    du.assign(std::max(0, n - 1), 0.0);
    du2.assign(std::max(0, n - 2), 0.0);
    piv.assign(std::max(0, n - 1), 0);
    for (int i = 0; i < n; ++i) dd[i] = d[i] - lambda;
    for (int i = 0; i + 1 < n; ++i) {
      dl[i] = e[i];
      du[i] = e[i];
    }
    auto floor_pivot = [&](double v) {
      return std::abs(v) >= pivot_floor ? v : std::copysign(pivot_floor, v == 0.0 ? 1.0 : v);
    };
    for (int i = 0; i + 1 < n; ++i) {
      if (std::abs(dd[i]) >= std::abs(dl[i])) {
        dd[i] = floor_pivot(dd[i]);
        const double fact = dl[i] / dd[i];
        dl[i] = fact;
        dd[i + 1] -= fact * du[i];
      } else {
        const double fact = dd[i] / dl[i];
        dd[i] = dl[i];
        dl[i] = fact;
        const double temp = du[i];
        du[i] = dd[i + 1];
        dd[i + 1] = temp - fact * dd[i + 1];
        if (i + 2 < n) {
          du2[i] = du[i + 1];
          du[i + 1] = -fact * du[i + 1];
        }
        piv[i] = 1;
      }
    }
    dd[n - 1] = floor_pivot(dd[n - 1]);
  }

  void solve(std::vector<double>& b) const {
    const int n = static_cast<int>(dd.size());
    for (int i = 0; i + 1 < n; ++i) {
      if (piv[i]) std::swap(b[i], b[i + 1]);
      b[i + 1] -= dl[i] * b[i];
    }
    b[n - 1] /= dd[n - 1];
    if (n >= 2) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / dd[n - 2];
    for (int i = n - 3; i >= 0; --i) {
      b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / dd[i];
    }
  }
};

void normalize(std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  s = 1.0 / std::sqrt(s);
  for (double& v : x) v *= s;
}

}  // namespace

std::vector<std::vector<double>> tridiag_eigenvectors(const std::vector<double>& d,
                                                      const std::vector<double>& e,
                                                      const std::vector<double>& lambdas) {
  const int n = static_cast<int>(d.size());
  double anorm = 0.0;
  for (int i = 0; i < n; ++i) anorm = std::max(anorm, std::abs(d[i]));
  for (int i = 0; i + 1 < n; ++i) anorm = std::max(anorm, std::abs(e[i]));
  anorm = std::max(anorm, 1e-300);
  const double eps = std::numeric_limits<double>::epsilon();
  const double pivot_floor = anorm * eps * 1e-2;
  const double cluster_tol = 1e3 * eps * anorm;

  std::vector<std::vector<double>> out;
  out.reserve(lambdas.size());
  size_t cluster_start = 0;
  double last_used = 0.0;
  for (size_t k = 0; k < lambdas.size(); ++k) {
    double lam = lambdas[k];
    if (k > 0 && std::abs(lambdas[k] - lambdas[k - 1]) <= cluster_tol) {
      lam = std::max(lam, last_used + 10.0 * eps * anorm);
    } else {
      cluster_start = k;
    }
    last_used = lam;
    const TridiagLU lu(d, e, lam, pivot_floor);
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = hashed_unit(static_cast<uint64_t>(i) + 1);
    normalize(x);
    for (int it = 0; it < 4; ++it) {
      lu.solve(x);
      for (size_t j = cluster_start; j < k; ++j) {
        const double c = dot(n, x.data(), out[j].data());
        axpy(n, -c, out[j].data(), x.data());
      }
      normalize(x);
    }
    out.push_back(std::move(x));
  }
  return out;
}

void apply_q_lower(const Matrix& A, const std::vector<double>& tau,
                   std::vector<std::vector<double>>& ys) {
  const int n = A.n;
  std::vector<double> v(n);
  for (int j = n - 3; j >= 0; --j) {
    if (j >= static_cast<int>(tau.size()) || tau[j] == 0.0) continue;
    const int m = n - j - 1;
    v[0] = 1.0;
    for (int r = 1; r < m; ++r) v[r] = A(j + 1 + r, j);
    for (auto& y : ys) {
      double* yj = y.data() + j + 1;
      const double s = tau[j] * dot(m, v.data(), yj);
      axpy(m, -s, v.data(), yj);
    }
  }
}

void trsv_lt(const Matrix& L, std::vector<double>& x) {
  const int n = L.n;
  for (int i = n - 1; i >= 0; --i) {
    x[i] /= L(i, i);
    axpy(i, -x[i], L.row(i), x.data());
  }
}

}  // namespace fgmplate::dense
