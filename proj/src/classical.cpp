#include "nclin/classical.hpp"

#include <algorithm>
#include <cmath>

namespace nclin {

double vector_rel_pdf(cd lambda, double theta) {
  double r = std::abs(lambda);
  if (r >= 1.0) throw input_error("vector_rel_pdf: |lambda| < 1 required (Dirac branch otherwise)");
  double u = theta - angle_of(lambda);
  double c = r * std::cos(u);
  double s2 = 1.0 - c * c;  // 1 - |l|^2 cos^2 u
  double pref = (1.0 - r * r) / (two_pi * s2);
  return pref * (c / std::sqrt(s2) * std::acos(-c) + 1.0);
}

VectorRelEstimate vector_rel_mc(const std::vector<cd>& a, const std::vector<cd>& b, int samples,
                                std::uint64_t seed, int bins) {
  if (a.size() != b.size()) throw input_error("vector_rel_mc: dimension mismatch");
  VectorRelEstimate est;
  est.hist = AngularHistogram(bins);
  est.samples = samples;
  cd sum{};
  double sum2 = 0;
  for (int sidx = 0; sidx < samples; ++sidx) {
    Rng rng(seed, sidx);
    cd ra{}, rb{};
    for (size_t i = 0; i < a.size(); ++i) {
      cd r = rng.gauss_complex();
      ra += std::conj(r) * a[i];
      rb += std::conj(r) * b[i];
    }
    double theta = angle_of(std::conj(ra) * rb);
    est.hist.add(theta, 1.0 / samples);
    cd e{std::cos(theta), std::sin(theta)};
    sum += e;
    sum2 += 1.0;  // |e|^2
  }
  est.first_moment = sum / static_cast<double>(samples);
  double var = sum2 / samples - std::norm(est.first_moment);
  est.first_moment_se = std::sqrt(std::max(var, 0.0) / samples);
  return est;
}

double operator_objective(const CspInstance& inst, const std::vector<Mat>& operators) {
  int k = inst.k;
  double val = 0;
  for (const auto& con : inst.constraints) {
    const Mat& Xi = operators[con.i - 1];
    const Mat& Xj = operators[con.j - 1];
    cd ind = 0;
    Mat Pi = Mat::identity(Xi.n), Pj = Mat::identity(Xj.n);
    for (int s = 0; s < k; ++s) {
      ind += root_of_unity(k, -static_cast<long long>(con.c) * s) * hs_inner(Pi, Pj);
      Pi = Pi * Xi;
      Pj = Pj * Xj;
    }
    ind /= static_cast<double>(k);
    if (con.kind == ConstraintKind::Equation)
      val += con.w * ind.real();
    else
      val += con.w * (1.0 - ind.real());
  }
  return val;
}

ClassicalExtraction classical_extraction_mc(const std::vector<Mat>& operators,
                                            const CspInstance& inst, int samples,
                                            std::uint64_t seed) {
  if (static_cast<int>(operators.size()) != inst.num_vars)
    throw input_error("classical_extraction_mc: operator count mismatch");
  int k = inst.k;
  int d = operators[0].n;
  if (d > 512) throw budget_error("classical_extraction_mc: dimension > 512");
  for (const auto& X : operators) {
    Mat P = mat_pow(X, k);
    for (int i = 0; i < P.n; ++i) P(i, i) -= 1.0;
    if (fro_norm(P) / std::sqrt(static_cast<double>(d)) > 1e-8)
      throw input_error("classical_extraction_mc: operators must satisfy X^k = 1");
  }
  ClassicalExtraction out;
  out.operator_value = operator_objective(inst, operators);

  // powers X_i^s cached
  std::vector<std::vector<Mat>> pow(inst.num_vars);
  for (int i = 0; i < inst.num_vars; ++i) {
    pow[i].push_back(Mat::identity(d));
    for (int s = 1; s < k; ++s) pow[i].push_back(pow[i].back() * operators[i]);
  }

  double sum = 0, sum2 = 0;
  std::vector<int> assignment(inst.num_vars, 0);
  for (int sidx = 0; sidx < samples; ++sidx) {
    Rng rng(seed, sidx);
    Mat V = haar_unitary(d, rng);
    std::vector<cd> diag(d);
    for (int i = 0; i < d; ++i) diag[i] = root_of_unity(k, rng.uniform_int(k));
    // R^{-s} = V diag^{-s} V*; tr(R^{-s} X^s) = sum_a diag_a^{-s} (V* X^s V)_{aa}
    for (int v = 0; v < inst.num_vars; ++v) {
      std::vector<cd> scores(k, cd{});
      for (int s = 0; s < k; ++s) {
        // diag of V* X^s V
        cd tr{};
        for (int aa = 0; aa < d; ++aa) {
          cd acc{};
          for (int r = 0; r < d; ++r) {
            cd inner{};
            const Mat& Xs = pow[v][s];
            for (int c2 = 0; c2 < d; ++c2) inner += Xs(r, c2) * V(c2, aa);
            acc += std::conj(V(r, aa)) * inner;
          }
          cd dpow = std::pow(diag[aa], -s);
          tr += dpow * acc;
        }
        tr /= static_cast<double>(d);
        for (int t = 0; t < k; ++t)
          scores[t] += root_of_unity(k, -static_cast<long long>(t) * s) * tr;
      }
      int best = 0;
      double bestv = scores[0].real();
      for (int t = 1; t < k; ++t)
        if (scores[t].real() > bestv + 1e-15) {  // ties toward smallest t
          bestv = scores[t].real();
          best = t;
        }
      assignment[v] = best;
    }
    double val = objective_of_assignment(inst, assignment);
    sum += val;
    sum2 += val * val;
  }
  out.mean_value = sum / samples;
  double var = sum2 / samples - out.mean_value * out.mean_value;
  out.stderr_ = std::sqrt(std::max(var, 0.0) / samples);
  out.ratio = (out.operator_value != 0.0) ? out.mean_value / out.operator_value : 1.0;
  out.last_assignment = assignment;
  return out;
}

}  // namespace nclin
