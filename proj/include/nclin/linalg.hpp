#pragma once

#include <cmath>
#include <vector>

#include "nclin/common.hpp"
#include "nclin/rng.hpp"

namespace nclin {

// Dense row-major complex matrix.
struct Mat {
  int n = 0, m = 0;
  std::vector<cd> a;

  Mat() = default;
  Mat(int rows, int cols) : n(rows), m(cols), a(static_cast<size_t>(rows) * cols) {}
  static Mat identity(int d) {
    Mat I(d, d);
    for (int i = 0; i < d; ++i) I(i, i) = 1.0;
    return I;
  }
  cd& operator()(int i, int j) { return a[static_cast<size_t>(i) * m + j]; }
  const cd& operator()(int i, int j) const { return a[static_cast<size_t>(i) * m + j]; }
};

// Dense row-major real matrix (SDP solver works in real arithmetic).
struct RMat {
  int n = 0, m = 0;
  std::vector<double> a;

  RMat() = default;
  RMat(int rows, int cols) : n(rows), m(cols), a(static_cast<size_t>(rows) * cols) {}
  static RMat identity(int d) {
    RMat I(d, d);
    for (int i = 0; i < d; ++i) I(i, i) = 1.0;
    return I;
  }
  double& operator()(int i, int j) { return a[static_cast<size_t>(i) * m + j]; }
  const double& operator()(int i, int j) const { return a[static_cast<size_t>(i) * m + j]; }
};

Mat operator*(const Mat& A, const Mat& B);
Mat operator+(const Mat& A, const Mat& B);
Mat operator-(const Mat& A, const Mat& B);
Mat operator*(cd s, const Mat& A);
Mat adjoint(const Mat& A);
cd trace(const Mat& A);             // plain trace
cd ntrace(const Mat& A);            // dimension-normalized trace
double fro_norm(const Mat& A);      // Frobenius
double little_fro_norm(const Mat& A);  // sqrt(ntrace(A* A))
Mat mat_pow(const Mat& A, int p);   // p >= 0
// <A,B> = ntrace(A* B)
cd hs_inner(const Mat& A, const Mat& B);

RMat operator*(const RMat& A, const RMat& B);
RMat transpose(const RMat& A);
double fro_norm(const RMat& A);

// ||U* U - I||_F / sqrt(d)
double unitarity_residual(const Mat& U);

Mat kron(const Mat& A, const Mat& B);

// LU with partial pivoting; solve A X = B (A square complex).
Mat lu_solve(Mat A, Mat B);
Mat inverse(const Mat& A);

// Cholesky A = L L^T for symmetric positive definite; returns false on failure.
bool cholesky(const RMat& A, RMat& L);
// Solve L L^T x = b given Cholesky factor.
std::vector<double> cholesky_solve(const RMat& L, std::vector<double> b);

// Symmetric real eigendecomposition, eigenvalues ascending: A = V diag(w) V^T.
void eig_sym(const RMat& A, std::vector<double>& w, RMat& V);

// Hermitian complex eigendecomposition, eigenvalues ascending: A = V diag(w) V*.
void eig_herm(const Mat& A, std::vector<double>& w, Mat& V);

// Haar-distributed unitary via complex Ginibre + QR with phase-fixed R diagonal.
Mat haar_unitary(int d, Rng& rng);

}  // namespace nclin
