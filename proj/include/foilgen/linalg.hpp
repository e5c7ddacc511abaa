// Small dense linear algebra: LU solve, QR least squares, Cholesky.
// Double precision, fixed operation order, no threading.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "foilgen/common.hpp"

namespace foilgen::linalg {

// Row-major dense matrix, just enough for the solvers below.
struct Matrix {
  int rows = 0, cols = 0;
  std::vector<double> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}
  double& operator()(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  double operator()(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

// Solves A x = b in place via LU with partial pivoting.
inline std::vector<double> lu_solve(Matrix A, std::vector<double> b) {
  const int n = A.rows;
  if (A.cols != n || static_cast<int>(b.size()) != n)
    throw std::invalid_argument("lu_solve: dimension mismatch");
  std::vector<int> piv(n);
  for (int i = 0; i < n; ++i) piv[i] = i;
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::fabs(A(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double v = std::fabs(A(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best == 0.0 || !std::isfinite(best))
      throw SolverError("lu_solve: singular matrix at pivot " + std::to_string(k));
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(A(k, j), A(p, j));
      std::swap(b[k], b[p]);
    }
    const double inv = 1.0 / A(k, k);
    for (int i = k + 1; i < n; ++i) {
      const double f = A(i, k) * inv;
      if (f == 0.0) continue;
      A(i, k) = f;
      for (int j = k + 1; j < n; ++j) A(i, j) -= f * A(k, j);
      b[i] -= f * b[k];
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= A(i, j) * b[j];
    b[i] = s / A(i, i);
  }
  return b;
}

// Least squares min ||A x - b|| via Householder QR. Throws FitError when the
// matrix is numerically rank deficient.
inline std::vector<double> qr_least_squares(Matrix A, std::vector<double> b,
                                            double rcond = 1e-12) {
  const int m = A.rows, n = A.cols;
  if (m < n) throw std::invalid_argument("qr_least_squares: underdetermined");
  if (static_cast<int>(b.size()) != m)
    throw std::invalid_argument("qr_least_squares: rhs size mismatch");
  for (int k = 0; k < n; ++k) {
    double norm = 0.0;
    for (int i = k; i < m; ++i) norm += A(i, k) * A(i, k);
    norm = std::sqrt(norm);
    if (!(norm > 0.0) || !std::isfinite(norm))
      throw FitError("qr_least_squares: rank-deficient design matrix (column " +
                     std::to_string(k) + ")");
    const double alpha = A(k, k) >= 0.0 ? -norm : norm;
    // Householder vector v stored in-place below the diagonal.
    const double vk = A(k, k) - alpha;
    A(k, k) = alpha;
    std::vector<double> v(static_cast<size_t>(m - k));
    v[0] = vk;
    for (int i = k + 1; i < m; ++i) v[i - k] = A(i, k);
    double vtv = 0.0;
    for (double x : v) vtv += x * x;
    if (vtv == 0.0) throw FitError("qr_least_squares: degenerate reflector");
    for (int j = k + 1; j < n; ++j) {
      double dot = 0.0;
      dot += v[0] * A(k, j);
      for (int i = k + 1; i < m; ++i) dot += v[i - k] * A(i, j);
      const double f = 2.0 * dot / vtv;
      A(k, j) -= f * v[0];
      for (int i = k + 1; i < m; ++i) A(i, j) -= f * v[i - k];
    }
    double dotb = v[0] * b[k];
    for (int i = k + 1; i < m; ++i) dotb += v[i - k] * b[i];
    const double fb = 2.0 * dotb / vtv;
    b[k] -= fb * v[0];
    for (int i = k + 1; i < m; ++i) b[i] -= fb * v[i - k];
    for (int i = k + 1; i < m; ++i) A(i, k) = 0.0;
  }
  double dmax = 0.0;
  for (int k = 0; k < n; ++k) dmax = std::max(dmax, std::fabs(A(k, k)));
  std::vector<double> x(static_cast<size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    if (std::fabs(A(i, i)) < rcond * dmax)
      throw FitError("qr_least_squares: rank-deficient design matrix");
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= A(i, j) * x[j];
    x[i] = s / A(i, i);
  }
  return x;
}

// Cholesky factorization A = L L^T (lower triangular, in place).
// Returns false when A is not positive definite.
inline bool cholesky(Matrix& A) {
  const int n = A.rows;
  for (int j = 0; j < n; ++j) {
    double d = A(j, j);
    for (int k = 0; k < j; ++k) d -= A(j, k) * A(j, k);
    if (!(d > 0.0)) return false;
    const double l = std::sqrt(d);
    A(j, j) = l;
    const double inv = 1.0 / l;
    for (int i = j + 1; i < n; ++i) {
      double s = A(i, j);
      for (int k = 0; k < j; ++k) s -= A(i, k) * A(j, k);
      A(i, j) = s * inv;
    }
    for (int k = j + 1; k < n; ++k) A(j, k) = 0.0;
  }
  return true;
}

// Solves L L^T x = b given the Cholesky factor L.
inline std::vector<double> cholesky_solve(const Matrix& L, std::vector<double> b) {
  const int n = L.rows;
  for (int i = 0; i < n; ++i) {
    double s = b[i];
    for (int j = 0; j < i; ++j) s -= L(i, j) * b[j];
    b[i] = s / L(i, i);
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= L(j, i) * b[j];
    b[i] = s / L(i, i);
  }
  return b;
}

}  // namespace foilgen::linalg
