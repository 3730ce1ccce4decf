#pragma once

#include <vector>

#include "nclin/instance.hpp"
#include "nclin/linalg.hpp"
#include "nclin/reldist.hpp"

namespace nclin {

// Density of the vector relative distribution for |lambda| < 1:
// (1-|l|^2) / (2pi (1-|l|^2 cos^2 u)) [ |l| cos u / sqrt(1-|l|^2 cos^2 u)
//   * arccos(-|l| cos u) + 1 ],  u = theta - arg(lambda).
double vector_rel_pdf(cd lambda, double theta);

struct VectorRelEstimate {
  AngularHistogram hist{256};
  cd first_moment;
  double first_moment_se = 0.0;
  long long samples = 0;
};

// theta = arg(<r,a>* <r,b>) with r a standard complex Gaussian vector.
VectorRelEstimate vector_rel_mc(const std::vector<cd>& a, const std::vector<cd>& b, int samples,
                                std::uint64_t seed, int bins = 256);

struct ClassicalExtraction {
  double mean_value = 0.0;       // mean classical objective of rounded assignments
  double stderr_ = 0.0;
  double operator_value = 0.0;   // tracial objective of the operator solution
  double ratio = 0.0;            // mean_value / operator_value
  std::vector<int> last_assignment;
};

// Rounds an order-k operator solution to classical assignments:
// x_i = argmax_t sum_s w^{-ts} tr(R^{-s} X_i^s) with R = V diag(uniform k-th
// roots) V*, V Haar (modeling choice for "uniform order-k unitary"); argmax
// ties break toward the smallest exponent.
ClassicalExtraction classical_extraction_mc(const std::vector<Mat>& operators,
                                            const CspInstance& inst, int samples,
                                            std::uint64_t seed);

// Tracial objective of an operator solution (Eq. with inner products).
double operator_objective(const CspInstance& inst, const std::vector<Mat>& operators);

}  // namespace nclin
