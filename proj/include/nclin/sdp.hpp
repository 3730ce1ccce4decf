#pragma once

#include <vector>

#include "nclin/instance.hpp"
#include "nclin/linalg.hpp"

namespace nclin {

// Canonical SDP relaxation of a homogeneous instance:
//   max sum_E (w/k)(1 + (k-1) X_ij) + sum_I w (k-1)/k (1 - X_ij)
//   s.t. X psd, X_ii = 1, X_ij >= -1/(k-1)
// In strict mode every off-diagonal pair carries the lower bound; otherwise
// only pairs that appear in some constraint do.
struct CanonicalSdp {
  int k = 2;
  int N = 0;
  bool strict_bounds = true;
  double constant = 0.0;                    // objective constant term
  std::vector<std::pair<int, int>> pairs;   // bounded pairs (0-based, i < j)
  std::vector<double> pair_coeff;           // objective coefficient per bounded pair
  double bound() const { return -1.0 / (k - 1); }
};

struct GramSolution {
  RMat X;                          // primal PSD matrix
  std::vector<std::vector<double>> vectors;  // unit rows with <x_i,x_j> ~ X_ij
  double sdp_value = 0.0;          // objective value of the max problem
  double dual_value = 0.0;
  double duality_gap = 0.0;        // |primal - dual| relative
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double min_eigenvalue = 0.0;
  bool converged = false;
  int iterations = 0;

  double lambda(int i, int j) const { return X(i, j); }
};

CanonicalSdp build_sdp(const CspInstance& inst, bool strict_bounds = true);

GramSolution solve_sdp(const CanonicalSdp& sdp, double tol = 1e-7, int max_iter = 200);

struct SdpCertificate {
  double objective_from_X = 0.0;
  double reported_value = 0.0;
  double objective_agreement = 0.0;  // |objective_from_X - reported|
  double max_diag_residual = 0.0;    // max |X_ii - 1|
  double max_bound_violation = 0.0;  // max(0, -(X_ij + 1/(k-1)))
  double min_eigenvalue = 0.0;
};

SdpCertificate sdp_value_certificate(const GramSolution& sol, const CanonicalSdp& sdp);
SdpCertificate sdp_value_certificate(const RMat& X, double reported, const CanonicalSdp& sdp);

}  // namespace nclin
