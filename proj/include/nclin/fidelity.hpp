#pragma once

#include <vector>

#include "nclin/common.hpp"

namespace nclin {

// Dilogarithm Li2(z) = sum z^n/n^2 on the closed unit disk, abs error <= 1e-12.
cd dilog(cd z);

// Diagonal *-polynomial P(x,y) = sum_t c[t] (x*)^t y^t, indices mod k.
// Off-diagonal coefficients of a general polynomial are annihilated by the
// phase average, so only the diagonal is stored.
struct DiagonalPolynomial {
  int k = 2;
  std::vector<cd> c;  // size k, c[t] = c_{t,t}

  static DiagonalPolynomial cut(int k);     // c_t = 1/k (Max-k-Cut indicator)
  static DiagonalPolynomial smooth(int k);  // x*y + xy*: c_1 = c_{k-1} = 1
  // Keep the diagonal of a full coefficient matrix C[s][t].
  static DiagonalPolynomial from_full(int k, const std::vector<std::vector<cd>>& C);
  cd coeff(long long t) const {  // c_{t,t} with t taken mod k
    long long r = t % k;
    if (r < 0) r += k;
    return c[static_cast<size_t>(r)];
  }
};

// Index of the k-th root of unity nearest to e^{i*angle}; ties at midpoints
// resolve counterclockwise (upward).
int nearest_root_index(int k, double angle);

// fid_P(theta) = sum_t c_t w^{t*floor(k theta/2pi)} (1 + (w^t - 1) frac).
cd fid_closed_form(const DiagonalPolynomial& P, double theta);

// Direct definition of the fidelity as a phase average, for a full coefficient
// matrix C[s][t]: (1/2pi) int rho(e^{i phi})^{-s} rho(e^{i(phi+theta)})^t dphi,
// evaluated by exact piecewise-constant integration over breakpoint intervals.
cd fid_numeric_oracle(int k, const std::vector<std::vector<cd>>& C, double theta);
cd fid_numeric_oracle(const DiagonalPolynomial& P, double theta);

// int fid_P dDelta_lambda = c_0 + (k^2/pi^2) sum_n sin^2(pi n/k)/n^2
// (c_{-n} lambda^n + c_n conj(lambda)^n); series with tail bound, dilogarithm
// closed form near |lambda| = 1.
cd cauchy_integral(const DiagonalPolynomial& P, cd lambda);

// Cut-polynomial specialization, real for real lambda:
// 1/k + (k/pi^2) Re[Li2(lambda) - Li2(lambda w)] on the real axis.
double cut_cauchy_integral(int k, cd lambda);

// int fid^S dDelta_lambda for the smooth polynomial; both the n = +-1 (mod k)
// series and the dilogarithm cross-form are computed and must agree to 1e-9.
double smooth_integral(int k, cd lambda);

// Closed-form Max-k-Cut ratio at the endpoint lambda = -1/(k-1).
double ratio_maxkcut(int k);

// Per-lambda ratio branches. The first two live on real lambda in
// [-1/(k-1), 1); the smooth pair on Omega_k.
enum class RatioKind { MaxKCutInequation, HomEquation, SmoothEquation, SmoothInequation };

struct RatioFunction {
  RatioKind kind = RatioKind::MaxKCutInequation;
  int k = 3;

  bool in_domain(cd lambda, double tol = 1e-9) const;
  // rounded-over-relaxed objective ratio at this lambda; +inf at excluded
  // denominator zeros (with the numerator sign asserted nonnegative there)
  double operator()(cd lambda) const;
};

struct RatioResult {
  double ratio = 0.0;
  cd argmin = 0.0;
  double maxcut_branch = 0.0;    // inequation endpoint branch
  double equation_branch = 0.0;  // minimized equation branch
};

// Homogeneous Lin-2-k ratio: min of the Max-k-Cut endpoint branch and the
// equation branch minimized over [-1/(k-1), 1) by grid + golden section.
RatioResult ratio_homogeneous(int k, int grid_points = 10000, double refine_tol = 1e-10);

// Smooth ratio: min over Omega_k (convex hull of k-th roots) of the two
// branches, by barycentric grid over the triangle fan + Nelder-Mead.
RatioResult ratio_smooth(int k, int simplex_grid_budget = 200, double refine_tol = 1e-10);

// Is lambda in the convex hull of the k-th roots of unity (within tol)?
bool in_omega_k(int k, cd lambda, double tol = 1e-9);
cd project_to_omega_k(int k, cd lambda);

struct MonotonicityReport {
  bool monotone = false;
  double worst_step = 0.0;       // most negative g(l_{i+1}) - g(l_i)
  double f_at_one = 0.0;         // should be 1
  double min_second_diff = 0.0;  // convexity proxy, should be >= -1e-8
  bool passed() const;
};

// g(l) = (1 - f(l))/(1 - l) non-decreasing on a grid of [-1, 1-1e-6]
// with f the cut-polynomial Cauchy integral; plus f(1) = 1 and convexity.
MonotonicityReport monotonicity_check(int k, int grid_points = 10000);

}  // namespace nclin
