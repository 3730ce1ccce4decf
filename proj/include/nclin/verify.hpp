#pragma once

#include <string>
#include <vector>

#include "nclin/common.hpp"

namespace nclin {

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string note;
};

struct CheckSuite {
  std::vector<CheckResult> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  void add(const std::string& name, bool pass, double measured, double threshold,
           const std::string& note = "") {
    checks.push_back({name, pass, measured, threshold, note});
  }
};

// Group orders, relators, representation residuals, strong isometry.
CheckSuite verify_gwb(int n, int k, int isometry_pairs = 100, std::uint64_t seed = 1);

// Closed-form fidelity vs piecewise-integration oracle and Fourier law.
CheckSuite verify_fidelity(int kmax = 7, int trials = 1000, std::uint64_t seed = 1);

// Cauchy-law moments and histogram TV for a d = 2 pair with prescribed
// lambda, tensored by I_m.
CheckSuite verify_cauchy(cd lambda, int m, int samples, std::uint64_t seed = 1, int d = 2,
                         int threads = 1);

// chi(1), chi(2) exactness and the finite-d chi(3) formula vs oracles.
CheckSuite verify_chi3(int samples = 4000, std::uint64_t seed = 1);

// Vector relative distribution: normalization, TV, first moment.
CheckSuite verify_vector(cd lambda, int samples = 100000, std::uint64_t seed = 1);

// d = 2 unitary pair (I, diag) with normalized trace lambda.
void lambda_pair_d2(cd lambda, std::vector<cd>& diag);

}  // namespace nclin
