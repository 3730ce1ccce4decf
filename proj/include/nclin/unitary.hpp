#pragma once

#include <vector>

#include "nclin/linalg.hpp"

namespace nclin {

// Unitary with cached spectral decomposition. Columns of V are orthonormal
// eigenvectors sorted by ascending phase; cluster c spans columns
// [cluster_start[c], cluster_start[c+1]) and carries one representative phase.
struct SpectralUnitary {
  int d = 0;
  Mat V;                           // d x d eigenvector matrix
  std::vector<double> phases;      // one per cluster, ascending in [0, 2pi)
  std::vector<int> cluster_start;  // size clusters+1

  int clusters() const { return static_cast<int>(phases.size()); }
  int cluster_size(int c) const { return cluster_start[c + 1] - cluster_start[c]; }
  Mat projection(int c) const;  // Pi_c = V[:,range] V[:,range]*
  Mat reconstruct() const;      // sum_c e^{i phi_c} Pi_c
  // Spectral data of e^{i phi} U: same eigenvectors, shifted phases.
  SpectralUnitary phase_shifted(double phi) const;
};

SpectralUnitary spectral_decompose(const Mat& U, double cluster_tol = 1e-8);

// Nearest order-k unitary: round every eigenphase to the nearest k-th root
// of unity (ties resolve counterclockwise).
Mat round_to_order_k(const SpectralUnitary& S, int k);

struct WeightAtom {
  double theta = 0.0;
  double mass = 0.0;
};

// Atomic distribution of relative eigenphases psi_t - phi_s with masses
// <Pi_{A,s}, Pi_{B,t}>.
struct WeightMeasure {
  std::vector<WeightAtom> atoms;  // sorted by theta, coinciding angles merged

  double total_mass() const;
  cd chi(int n) const;  // sum mass * e^{i n theta}
};

WeightMeasure weight_measure(const SpectralUnitary& A, const SpectralUnitary& B,
                             double merge_tol = 1e-9);

}  // namespace nclin
