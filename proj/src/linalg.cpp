#include "nclin/linalg.hpp"

#include <algorithm>
#include <cstdlib>

namespace nclin {

Mat operator*(const Mat& A, const Mat& B) {
  Mat C(A.n, B.m);
  for (int i = 0; i < A.n; ++i) {
    for (int k = 0; k < A.m; ++k) {
      cd aik = A(i, k);
      if (aik == cd{}) continue;
      const cd* brow = &B.a[static_cast<size_t>(k) * B.m];
      cd* crow = &C.a[static_cast<size_t>(i) * C.m];
      for (int j = 0; j < B.m; ++j) crow[j] += aik * brow[j];
    }
  }
  return C;
}

Mat operator+(const Mat& A, const Mat& B) {
  Mat C = A;
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] += B.a[i];
  return C;
}

Mat operator-(const Mat& A, const Mat& B) {
  Mat C = A;
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] -= B.a[i];
  return C;
}

Mat operator*(cd s, const Mat& A) {
  Mat C = A;
  for (auto& x : C.a) x *= s;
  return C;
}

Mat adjoint(const Mat& A) {
  Mat C(A.m, A.n);
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.m; ++j) C(j, i) = std::conj(A(i, j));
  return C;
}

cd trace(const Mat& A) {
  cd t = 0;
  for (int i = 0; i < std::min(A.n, A.m); ++i) t += A(i, i);
  return t;
}

cd ntrace(const Mat& A) { return trace(A) / static_cast<double>(A.n); }

double fro_norm(const Mat& A) {
  double s = 0;
  for (const auto& x : A.a) s += std::norm(x);
  return std::sqrt(s);
}

double little_fro_norm(const Mat& A) { return fro_norm(A) / std::sqrt(static_cast<double>(A.n)); }

Mat mat_pow(const Mat& A, int p) {
  Mat R = Mat::identity(A.n);
  Mat B = A;
  while (p > 0) {
    if (p & 1) R = R * B;
    p >>= 1;
    if (p) B = B * B;
  }
  return R;
}

cd hs_inner(const Mat& A, const Mat& B) {
  cd s = 0;
  for (size_t i = 0; i < A.a.size(); ++i) s += std::conj(A.a[i]) * B.a[i];
  return s / static_cast<double>(A.n);
}

RMat operator*(const RMat& A, const RMat& B) {
  RMat C(A.n, B.m);
  for (int i = 0; i < A.n; ++i)
    for (int k = 0; k < A.m; ++k) {
      double aik = A(i, k);
      if (aik == 0.0) continue;
      const double* brow = &B.a[static_cast<size_t>(k) * B.m];
      double* crow = &C.a[static_cast<size_t>(i) * C.m];
      for (int j = 0; j < B.m; ++j) crow[j] += aik * brow[j];
    }
  return C;
}

RMat transpose(const RMat& A) {
  RMat C(A.m, A.n);
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.m; ++j) C(j, i) = A(i, j);
  return C;
}

double fro_norm(const RMat& A) {
  double s = 0;
  for (double x : A.a) s += x * x;
  return std::sqrt(s);
}

double unitarity_residual(const Mat& U) {
  Mat G = adjoint(U) * U;
  for (int i = 0; i < G.n; ++i) G(i, i) -= 1.0;
  return fro_norm(G) / std::sqrt(static_cast<double>(U.n));
}

Mat kron(const Mat& A, const Mat& B) {
  Mat C(A.n * B.n, A.m * B.m);
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.m; ++j) {
      cd a = A(i, j);
      if (a == cd{}) continue;
      for (int p = 0; p < B.n; ++p)
        for (int q = 0; q < B.m; ++q) C(i * B.n + p, j * B.m + q) = a * B(p, q);
    }
  return C;
}

Mat lu_solve(Mat A, Mat B) {
  int n = A.n;
  std::vector<int> piv(n);
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::abs(A(k, k));
    for (int i = k + 1; i < n; ++i) {
      double v = std::abs(A(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best == 0.0) throw numeric_error("lu_solve: singular matrix");
    piv[k] = p;
    if (p != k)
      for (int j = 0; j < n; ++j) std::swap(A(k, j), A(p, j));
    cd inv = 1.0 / A(k, k);
    for (int i = k + 1; i < n; ++i) {
      cd f = A(i, k) * inv;
      A(i, k) = f;
      if (f == cd{}) continue;
      for (int j = k + 1; j < n; ++j) A(i, j) -= f * A(k, j);
    }
  }
  // forward/back substitution on each column of B
  for (int k = 0; k < n; ++k)
    if (piv[k] != k)
      for (int j = 0; j < B.m; ++j) std::swap(B(k, j), B(piv[k], j));
  for (int k = 0; k < n; ++k)
    for (int i = k + 1; i < n; ++i) {
      cd f = A(i, k);
      if (f == cd{}) continue;
      for (int j = 0; j < B.m; ++j) B(i, j) -= f * B(k, j);
    }
  for (int k = n - 1; k >= 0; --k) {
    cd inv = 1.0 / A(k, k);
    for (int j = 0; j < B.m; ++j) B(k, j) *= inv;
    for (int i = 0; i < k; ++i) {
      cd f = A(i, k);
      if (f == cd{}) continue;
      for (int j = 0; j < B.m; ++j) B(i, j) -= f * B(k, j);
    }
  }
  return B;
}

Mat inverse(const Mat& A) { return lu_solve(A, Mat::identity(A.n)); }

bool cholesky(const RMat& A, RMat& L) {
  int n = A.n;
  L = RMat(n, n);
  for (int j = 0; j < n; ++j) {
    double d = A(j, j);
    for (int k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
    if (d <= 0.0 || !std::isfinite(d)) return false;
    L(j, j) = std::sqrt(d);
    double inv = 1.0 / L(j, j);
    for (int i = j + 1; i < n; ++i) {
      double s = A(i, j);
      for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      L(i, j) = s * inv;
    }
  }
  return true;
}

std::vector<double> cholesky_solve(const RMat& L, std::vector<double> b) {
  int n = L.n;
  for (int i = 0; i < n; ++i) {
    double s = b[i];
    for (int k = 0; k < i; ++k) s -= L(i, k) * b[k];
    b[i] = s / L(i, i);
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int k = i + 1; k < n; ++k) s -= L(k, i) * b[k];
    b[i] = s / L(i, i);
  }
  return b;
}

namespace {

// Implicit-shift QL on a real symmetric tridiagonal (d, e); e[i] couples i,i+1.
// apply_rot(i, c, s) must rotate accumulated eigenvector columns i and i+1.
template <typename Rot>
void tridiag_ql(std::vector<double>& d, std::vector<double>& e, Rot apply_rot) {
  int n = static_cast<int>(d.size());
  if (n == 0) return;
  e.resize(n, 0.0);
  e[n - 1] = 0.0;
  const double eps = 2.3e-16;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 64) throw numeric_error("tridiag_ql: too many iterations");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0 ? std::abs(r) : -std::abs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          apply_rot(i, c, s);
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

template <typename MatT>
void sort_eigs(std::vector<double>& w, MatT& V) {
  int n = static_cast<int>(w.size());
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return w[a] < w[b]; });
  std::vector<double> w2(n);
  MatT V2(n, n);
  for (int j = 0; j < n; ++j) {
    w2[j] = w[idx[j]];
    for (int i = 0; i < n; ++i) V2(i, j) = V(i, idx[j]);
  }
  w = std::move(w2);
  V = std::move(V2);
}

}  // namespace

void eig_sym(const RMat& A0, std::vector<double>& w, RMat& V) {
  int n = A0.n;
  RMat A = A0;
  V = RMat::identity(n);
  // Householder tridiagonalization
  std::vector<double> d(n), e(n, 0.0), v(n), p(n);
  for (int k = 0; k < n - 2; ++k) {
    double scale = 0.0;
    for (int i = k + 1; i < n; ++i) scale += std::abs(A(i, k));
    if (scale == 0.0) continue;
    double nrm2 = 0.0;
    for (int i = k + 1; i < n; ++i) {
      v[i] = A(i, k);
      nrm2 += v[i] * v[i];
    }
    double alpha = (v[k + 1] >= 0 ? -1.0 : 1.0) * std::sqrt(nrm2);
    v[k + 1] -= alpha;
    double vn2 = 0.0;
    for (int i = k + 1; i < n; ++i) vn2 += v[i] * v[i];
    if (vn2 == 0.0) continue;
    double inv = 1.0 / std::sqrt(vn2);
    for (int i = k + 1; i < n; ++i) v[i] *= inv;
    // p = A v (restricted), K = v.p, w = p - K v ; A <- A - 2 v w^T - 2 w v^T
    double K = 0.0;
    for (int i = k + 1; i < n; ++i) {
      double s = 0.0;
      for (int j = k + 1; j < n; ++j) s += A(i, j) * v[j];
      p[i] = s;
    }
    for (int i = k + 1; i < n; ++i) K += v[i] * p[i];
    for (int i = k + 1; i < n; ++i) p[i] -= K * v[i];
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) A(i, j) -= 2.0 * (v[i] * p[j] + p[i] * v[j]);
    A(k + 1, k) = alpha;
    A(k, k + 1) = alpha;
    for (int i = k + 2; i < n; ++i) {
      A(i, k) = 0.0;
      A(k, i) = 0.0;
    }
    // accumulate V <- V (I - 2 v v^T)
    for (int r = 0; r < n; ++r) {
      double s = 0.0;
      for (int i = k + 1; i < n; ++i) s += V(r, i) * v[i];
      s *= 2.0;
      for (int i = k + 1; i < n; ++i) V(r, i) -= s * v[i];
    }
  }
  for (int i = 0; i < n; ++i) d[i] = A(i, i);
  for (int i = 0; i < n - 1; ++i) e[i] = A(i + 1, i);
  tridiag_ql(d, e, [&](int i, double c, double s) {
    for (int r = 0; r < n; ++r) {
      double f = V(r, i + 1);
      V(r, i + 1) = s * V(r, i) + c * f;
      V(r, i) = c * V(r, i) - s * f;
    }
  });
  w = std::move(d);
  sort_eigs(w, V);
}

void eig_herm(const Mat& A0, std::vector<double>& w, Mat& V) {
  int n = A0.n;
  Mat A = A0;
  V = Mat::identity(n);
  std::vector<cd> v(n), p(n);
  for (int k = 0; k < n - 2; ++k) {
    double scale = 0.0;
    for (int i = k + 1; i < n; ++i) scale += std::abs(A(i, k));
    if (scale == 0.0) continue;
    double nrm2 = 0.0;
    for (int i = k + 1; i < n; ++i) {
      v[i] = A(i, k);
      nrm2 += std::norm(v[i]);
    }
    cd x0 = v[k + 1];
    cd phase = (std::abs(x0) == 0.0) ? cd{1.0, 0.0} : x0 / std::abs(x0);
    cd alpha = -phase * std::sqrt(nrm2);
    v[k + 1] -= alpha;
    double vn2 = 0.0;
    for (int i = k + 1; i < n; ++i) vn2 += std::norm(v[i]);
    if (vn2 == 0.0) continue;
    double inv = 1.0 / std::sqrt(vn2);
    for (int i = k + 1; i < n; ++i) v[i] *= inv;
    // Hermitian rank-2 update A <- A - 2 v w* - 2 w v*
    cd K = 0.0;
    for (int i = k + 1; i < n; ++i) {
      cd s = 0.0;
      for (int j = k + 1; j < n; ++j) s += A(i, j) * v[j];
      p[i] = s;
    }
    for (int i = k + 1; i < n; ++i) K += std::conj(v[i]) * p[i];
    for (int i = k + 1; i < n; ++i) p[i] -= K * v[i];
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        A(i, j) -= 2.0 * (v[i] * std::conj(p[j]) + p[i] * std::conj(v[j]));
    A(k + 1, k) = alpha;
    A(k, k + 1) = std::conj(alpha);
    for (int i = k + 2; i < n; ++i) {
      A(i, k) = 0.0;
      A(k, i) = 0.0;
    }
    // V <- V (I - 2 v v*)
    for (int r = 0; r < n; ++r) {
      cd s = 0.0;
      for (int i = k + 1; i < n; ++i) s += V(r, i) * v[i];
      s *= 2.0;
      for (int i = k + 1; i < n; ++i) V(r, i) -= s * std::conj(v[i]);
    }
  }
  // Phase-normalize subdiagonal to make the tridiagonal real.
  std::vector<double> d(n), e(n, 0.0);
  std::vector<cd> ph(n, cd{1.0, 0.0});
  for (int i = 0; i < n - 1; ++i) {
    cd ec = A(i + 1, i);
    double m = std::abs(ec);
    e[i] = m;
    ph[i + 1] = (m == 0.0) ? ph[i] : ph[i] * (ec / m);
  }
  for (int i = 0; i < n; ++i) d[i] = A(i, i).real();
  for (int j = 0; j < n; ++j)
    for (int r = 0; r < n; ++r) V(r, j) *= ph[j];
  tridiag_ql(d, e, [&](int i, double c, double s) {
    for (int r = 0; r < n; ++r) {
      cd f = V(r, i + 1);
      V(r, i + 1) = s * V(r, i) + c * f;
      V(r, i) = c * V(r, i) - s * f;
    }
  });
  w = std::move(d);
  sort_eigs(w, V);
}

Mat haar_unitary(int d, Rng& rng) {
  // Ginibre + Householder QR; R diagonal phases folded into Q.
  Mat A(d, d);
  for (auto& x : A.a) x = rng.gauss_complex() * std::sqrt(0.5);
  Mat Q = Mat::identity(d);
  std::vector<cd> v(d);
  for (int k = 0; k < d; ++k) {
    double nrm2 = 0.0;
    for (int i = k; i < d; ++i) {
      v[i] = A(i, k);
      nrm2 += std::norm(v[i]);
    }
    if (nrm2 == 0.0) continue;
    cd x0 = v[k];
    cd phase = (std::abs(x0) == 0.0) ? cd{1.0, 0.0} : x0 / std::abs(x0);
    cd alpha = -phase * std::sqrt(nrm2);
    v[k] -= alpha;
    double vn2 = 0.0;
    for (int i = k; i < d; ++i) vn2 += std::norm(v[i]);
    if (vn2 == 0.0) continue;
    double inv = 1.0 / std::sqrt(vn2);
    for (int i = k; i < d; ++i) v[i] *= inv;
    for (int j = k; j < d; ++j) {
      cd s = 0.0;
      for (int i = k; i < d; ++i) s += std::conj(v[i]) * A(i, j);
      s *= 2.0;
      for (int i = k; i < d; ++i) A(i, j) -= s * v[i];
    }
    for (int j = 0; j < d; ++j) {
      cd s = 0.0;
      for (int i = k; i < d; ++i) s += std::conj(v[i]) * Q(i, j);
      s *= 2.0;
      for (int i = k; i < d; ++i) Q(i, j) -= s * v[i];
    }
  }
  // A now holds R; Q holds the product of reflectors applied to I, i.e. Q* of QR.
  // Unitary sample is Q* with columns rescaled so that R_kk / |R_kk| = 1.
  Mat U(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) U(i, j) = std::conj(Q(j, i));
  for (int j = 0; j < d; ++j) {
    cd r = A(j, j);
    cd ph = (std::abs(r) == 0.0) ? cd{1.0, 0.0} : r / std::abs(r);
    for (int i = 0; i < d; ++i) U(i, j) *= ph;
  }
  return U;
}

}  // namespace nclin
