#pragma once

#include <functional>
#include <vector>

#include "nclin/gwb.hpp"
#include "nclin/unitary.hpp"

namespace nclin {

// Wrapped Cauchy with peak theta0 and scale gamma; gamma = 0 encodes the
// Dirac branch (|lambda| = 1), gamma = +inf the uniform branch (lambda = 0).
struct WrappedCauchy {
  double theta0 = 0.0;
  double gamma = 0.0;

  bool dirac() const { return gamma == 0.0; }
  bool uniform() const { return std::isinf(gamma); }
  double pdf(double theta) const;
  cd chi(int n) const;  // e^{-|n| gamma + i n theta0}
};

// Delta_lambda = W(arg lambda, -ln|lambda|); Dirac at |lambda| = 1, uniform at 0.
WrappedCauchy delta_lambda(cd lambda);

struct AngularHistogram {
  int bins = 256;
  std::vector<double> mass;  // normalized to total 1 over [0, 2pi)
  long long samples = 0;

  explicit AngularHistogram(int b = 256) : bins(b), mass(b, 0.0) {}
  void add(double theta, double m);
  double total() const;
  // 0.5 sum_b |hist_b - int_bin pdf| with per-bin Gauss-Legendre quadrature
  double tv_distance(const std::function<double(double)>& pdf) const;
};

struct RelDistEstimate {
  AngularHistogram hist{256};
  std::vector<cd> chi_hat;       // n = 0..n_max
  std::vector<double> chi_se;    // standard error per n
  long long samples = 0;
};

// Haar average of weight_measure(UA, UB): empirical histogram and moments.
// Sample i always draws from stream (seed, i) and partial sums are combined
// in fixed chunk order, so results are independent of the worker count.
RelDistEstimate estimate_relative_distribution(const Mat& A, const Mat& B, int samples,
                                               std::uint64_t seed, int n_max = 5,
                                               int bins = 256, int threads = 1);

// Third characteristic moment of the relative distribution at finite d,
// D = diagonal of the unitary A*B. chi3_formula carries the term 2 tr(D^2)/d;
// the Haar integral actually evaluates with 2 tr(D) tr(D^2) in that slot
// (chi3_formula_fixed). The two differ in general; the Monte-Carlo and
// quadrature oracles arbitrate, and the fixed variant is the one they match.
cd chi3_formula(const std::vector<cd>& diag);
cd chi3_formula_fixed(const std::vector<cd>& diag);

// Deterministic oracle at d = 2: E_U tr[U^{-n} (UD)^n] by Euler-angle
// quadrature over SU(2) (the U(1) phase cancels).
cd chi_n_quadrature_d2(const std::vector<cd>& diag, int n, int grid = 48);

// Monte-Carlo moment E_U tr[U^{-n}(UD)^n] at any d.
struct MomentEstimate {
  cd value;
  double se = 0.0;
};
MomentEstimate chi_n_mc(const Mat& D, int n, int samples, std::uint64_t seed);

struct CauchyLawRow {
  int m = 0;
  int n = 0;
  cd chi_hat;
  cd chi_theory;
  double stderr_ = 0.0;
  double deviation = 0.0;
};

// Relative distribution of (A (x) I_m, B (x) I_m) vs Delta_lambda moments.
std::vector<CauchyLawRow> cauchy_law_convergence_report(const Mat& A, const Mat& B,
                                                        const std::vector<int>& tensor_factors,
                                                        int samples, std::uint64_t seed,
                                                        int n_max = 5);

// |tr(U_x^n U_y^{-n}) - <x,y>^{|n|}| for n = 0..k-1 (strong isometry in
// characteristic-function form).
std::vector<double> algebraic_relative_check(const GwbRep& rep, const std::vector<double>& x,
                                             const std::vector<double>& y);

}  // namespace nclin
