#include "nclin/unitary.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "nclin/fidelity.hpp"

namespace nclin {

Mat SpectralUnitary::projection(int c) const {
  Mat P(d, d);
  for (int col = cluster_start[c]; col < cluster_start[c + 1]; ++col)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) P(i, j) += V(i, col) * std::conj(V(j, col));
  return P;
}

Mat SpectralUnitary::reconstruct() const {
  // V diag(e^{i phi}) V*
  Mat W = V;
  for (int c = 0; c < clusters(); ++c) {
    cd z{std::cos(phases[c]), std::sin(phases[c])};
    for (int col = cluster_start[c]; col < cluster_start[c + 1]; ++col)
      for (int i = 0; i < d; ++i) W(i, col) *= z;
  }
  return W * adjoint(V);
}

SpectralUnitary SpectralUnitary::phase_shifted(double phi) const {
  SpectralUnitary out = *this;
  for (auto& p : out.phases) p = wrap_angle(p + phi);
  // keep phases ascending
  std::vector<int> idx(out.clusters());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return out.phases[a] < out.phases[b]; });
  SpectralUnitary sorted;
  sorted.d = d;
  sorted.V = Mat(d, d);
  sorted.cluster_start = {0};
  for (int c : idx) {
    sorted.phases.push_back(out.phases[c]);
    int base = sorted.cluster_start.back();
    int width = cluster_size(c);
    for (int off = 0; off < width; ++off)
      for (int i = 0; i < d; ++i) sorted.V(i, base + off) = V(i, cluster_start[c] + off);
    sorted.cluster_start.push_back(base + width);
  }
  return sorted;
}

namespace {

// Candidate pole phases for the Cayley transform, spread by the golden ratio
// so no k-th root of unity ladder can hit all of them.
double pole_phase(int j) {
  double x = 0.3819660112501051 + j * 0.6180339887498949;
  return two_pi * (x - std::floor(x));
}

SpectralUnitary assemble(double psi, const std::vector<double>& lam, const Mat& V,
                         double cluster_tol) {
  int d = V.n;
  std::vector<double> phi(d);
  for (int i = 0; i < d; ++i) phi[i] = wrap_angle(psi + 2.0 * std::atan(lam[i]));
  std::vector<int> idx(d);
  for (int i = 0; i < d; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return phi[a] < phi[b]; });

  // circular clustering: cut at the largest gap
  int cut = 0;
  double biggest = -1.0;
  for (int i = 0; i < d; ++i) {
    double next = phi[idx[(i + 1) % d]] + (i + 1 == d ? two_pi : 0.0);
    double gap = next - phi[idx[i]];
    if (gap > biggest) {
      biggest = gap;
      cut = (i + 1) % d;
    }
  }
  SpectralUnitary S;
  S.d = d;
  S.V = Mat(d, d);
  S.cluster_start = {0};
  std::vector<double> cluster_vals;
  int placed = 0;
  auto flush = [&](std::vector<int>& members) {
    if (members.empty()) return;
    double mean = 0.0;
    double base = phi[members.front()];
    for (int c : members) {
      double v = phi[c];
      if (v < base - pi) v += two_pi;  // unwrapped relative to first member
      mean += v;
    }
    mean = wrap_angle(mean / members.size());
    S.phases.push_back(mean);
    for (int c : members) {
      for (int i = 0; i < d; ++i) S.V(i, placed) = V(i, c);
      ++placed;
    }
    S.cluster_start.push_back(placed);
    members.clear();
  };
  std::vector<int> current;
  double prev = 0.0;
  for (int t = 0; t < d; ++t) {
    int col = idx[(cut + t) % d];
    double v = phi[col];
    if (t > 0) {
      double delta = v - prev;
      if (delta < 0) delta += two_pi;
      if (delta > cluster_tol) flush(current);
    }
    current.push_back(col);
    prev = v;
  }
  flush(current);
  // rotate clusters so representative phases are ascending
  std::vector<int> order(S.clusters());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return S.phases[a] < S.phases[b]; });
  SpectralUnitary out;
  out.d = d;
  out.V = Mat(d, d);
  out.cluster_start = {0};
  for (int c : order) {
    out.phases.push_back(S.phases[c]);
    int base = out.cluster_start.back();
    for (int col = S.cluster_start[c]; col < S.cluster_start[c + 1]; ++col, ++base)
      for (int i = 0; i < d; ++i) out.V(i, base) = S.V(i, col);
    out.cluster_start.push_back(base);
  }
  return out;
}

}  // namespace

SpectralUnitary spectral_decompose(const Mat& U0, double cluster_tol) {
  int d = U0.n;
  if (d != U0.m) throw input_error("spectral_decompose: matrix not square");
  Mat U = U0;
  double res = unitarity_residual(U);
  if (res > 1e-8) throw numeric_error("spectral_decompose: NotUnitary");
  // Polar projection (Newton) when the input is only approximately unitary.
  for (int it = 0; it < 3 && res > 1e-13; ++it) {
    Mat Uinv_adj = adjoint(inverse(U));
    for (size_t z = 0; z < U.a.size(); ++z) U.a[z] = 0.5 * (U.a[z] + Uinv_adj.a[z]);
    res = unitarity_residual(U);
  }

  double best_norm = 1e300;
  Mat best_B;
  double best_psi = 0.0;
  for (int j = 0; j < 16; ++j) {
    double psi = pole_phase(j);
    cd ph{std::cos(psi), std::sin(psi)};
    Mat Uh = U;
    for (auto& z : Uh.a) z /= ph;
    Mat A = Uh;  // I + Uh
    Mat R = Uh;  // I - Uh
    for (auto& z : R.a) z = -z;
    for (int i = 0; i < d; ++i) {
      A(i, i) += 1.0;
      R(i, i) += 1.0;
    }
    Mat B;
    try {
      B = lu_solve(A, R);
    } catch (const numeric_error&) {
      continue;
    }
    for (auto& z : B.a) z *= cd{0.0, 1.0};
    // hermitize
    for (int i = 0; i < d; ++i)
      for (int j2 = i; j2 < d; ++j2) {
        cd v = 0.5 * (B(i, j2) + std::conj(B(j2, i)));
        B(i, j2) = v;
        B(j2, i) = std::conj(v);
      }
    double nb = fro_norm(B);
    if (nb < best_norm) {
      best_norm = nb;
      best_B = B;
      best_psi = psi;
    }
    if (nb <= 32.0 * d) break;
  }
  if (best_B.n == 0) throw numeric_error("spectral_decompose: no usable Cayley pole");
  std::vector<double> lam;
  Mat V;
  eig_herm(best_B, lam, V);
  SpectralUnitary S = assemble(best_psi, lam, V, cluster_tol);
  // contract check
  Mat rec = S.reconstruct();
  double err = 0.0;
  for (size_t z = 0; z < rec.a.size(); ++z) err += std::norm(rec.a[z] - U0.a[z]);
  err = std::sqrt(err) / std::sqrt(static_cast<double>(d));
  if (err > 1e-7) throw numeric_error("spectral_decompose: reconstruction residual too large");
  return S;
}

Mat round_to_order_k(const SpectralUnitary& S, int k) {
  Mat W = S.V;
  for (int c = 0; c < S.clusters(); ++c) {
    cd z = root_of_unity(k, nearest_root_index(k, S.phases[c]));
    for (int col = S.cluster_start[c]; col < S.cluster_start[c + 1]; ++col)
      for (int i = 0; i < S.d; ++i) W(i, col) *= z;
  }
  return W * adjoint(S.V);
}

double WeightMeasure::total_mass() const {
  double s = 0;
  for (const auto& a : atoms) s += a.mass;
  return s;
}

cd WeightMeasure::chi(int n) const {
  cd s = 0;
  for (const auto& a : atoms) s += a.mass * cd{std::cos(n * a.theta), std::sin(n * a.theta)};
  return s;
}

WeightMeasure weight_measure(const SpectralUnitary& A, const SpectralUnitary& B,
                             double merge_tol) {
  if (A.d != B.d) throw input_error("weight_measure: dimension mismatch");
  int d = A.d;
  Mat M = adjoint(A.V) * B.V;
  std::vector<WeightAtom> raw;
  raw.reserve(static_cast<size_t>(A.clusters()) * B.clusters());
  for (int s = 0; s < A.clusters(); ++s)
    for (int t = 0; t < B.clusters(); ++t) {
      double mass = 0.0;
      for (int a = A.cluster_start[s]; a < A.cluster_start[s + 1]; ++a)
        for (int b = B.cluster_start[t]; b < B.cluster_start[t + 1]; ++b)
          mass += std::norm(M(a, b));
      mass /= d;
      if (mass == 0.0) continue;
      raw.push_back({wrap_angle(B.phases[t] - A.phases[s]), mass});
    }
  std::sort(raw.begin(), raw.end(),
            [](const WeightAtom& x, const WeightAtom& y) { return x.theta < y.theta; });
  WeightMeasure wm;
  for (const auto& at : raw) {
    if (!wm.atoms.empty() && at.theta - wm.atoms.back().theta <= merge_tol) {
      // mass-weighted angle merge
      auto& last = wm.atoms.back();
      double tot = last.mass + at.mass;
      last.theta = (last.theta * last.mass + at.theta * at.mass) / tot;
      last.mass = tot;
    } else {
      wm.atoms.push_back(at);
    }
  }
  // wraparound merge (0 vs 2pi)
  if (wm.atoms.size() > 1) {
    auto& first = wm.atoms.front();
    auto& last = wm.atoms.back();
    if (first.theta + two_pi - last.theta <= merge_tol) {
      double tot = first.mass + last.mass;
      first.theta = wrap_angle((first.theta * first.mass + (last.theta - two_pi) * last.mass) / tot);
      first.mass = tot;
      wm.atoms.pop_back();
    }
  }
  return wm;
}

}  // namespace nclin
