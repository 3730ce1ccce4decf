#include "nclin/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "nclin/rng.hpp"

namespace nclin {

namespace {

cd clamp_disk(cd z) {
  double r = std::abs(z);
  return (r > 1.0) ? z / r : z;
}

}  // namespace

RoundingRun expected_value_analytic(const CspInstance& inst, const GramSolution& gram) {
  if (!inst.homogeneous())
    throw input_error("expected_value_analytic: homogeneous instance required");
  RoundingRun run;
  run.method = RoundingMethod::AnalyticHaar;
  int k = inst.k;
  for (const auto& con : inst.constraints) {
    if (std::abs(gram.lambda(con.i - 1, con.i - 1) - 1.0) > 1e-6 ||
        std::abs(gram.lambda(con.j - 1, con.j - 1) - 1.0) > 1e-6)
      throw input_error("expected_value_analytic: infeasible gram (diagonal off unity)");
    double lam = gram.lambda(con.i - 1, con.j - 1);
    if (!std::isfinite(lam) || std::abs(lam) > 1.0 + 1e-6)
      throw input_error("expected_value_analytic: infeasible gram (entry outside [-1,1])");
    cd lamc = clamp_disk(cd{lam, 0.0});
    double fint = cut_cauchy_integral(k, lamc);
    double v = (con.kind == ConstraintKind::Equation) ? con.w * fint : con.w * (1.0 - fint);
    run.per_constraint.push_back(v);
    run.lambda_per_constraint.push_back(lamc);
    run.expected_value += v;
  }
  return run;
}

namespace {

struct PairData {
  // weight-measure masses between eigenphase clusters of U_{x_i}, U_{x_j}
  std::vector<double> phi_a, psi_b;
  std::vector<std::vector<double>> mass;  // [a][b], normalized to sum 1
};

PairData pair_weights(const SpectralUnitary& Si, const SpectralUnitary& Sj) {
  PairData pd;
  pd.phi_a = Si.phases;
  pd.psi_b = Sj.phases;
  Mat M = adjoint(Si.V) * Sj.V;
  pd.mass.assign(Si.clusters(), std::vector<double>(Sj.clusters(), 0.0));
  for (int a = 0; a < Si.clusters(); ++a)
    for (int b = 0; b < Sj.clusters(); ++b) {
      double m = 0;
      for (int p = Si.cluster_start[a]; p < Si.cluster_start[a + 1]; ++p)
        for (int q = Sj.cluster_start[b]; q < Sj.cluster_start[b + 1]; ++q)
          m += std::norm(M(p, q));
      pd.mass[a][b] = m / Si.d;
    }
  return pd;
}

}  // namespace

RoundingRun expected_value_gwb_exact(const CspInstance& inst, const GramSolution& gram,
                                     const GwbRep& rep) {
  if (!inst.homogeneous())
    throw input_error("expected_value_gwb_exact: homogeneous instance required");
  if (rep.n != inst.num_vars)
    throw input_error("expected_value_gwb_exact: representation size must match variable count");
  RoundingRun run;
  run.method = RoundingMethod::GwbPhase;
  int k = inst.k;
  DiagonalPolynomial Pk = DiagonalPolynomial::cut(k);
  std::vector<SpectralUnitary> spec(inst.num_vars);
  for (int i = 0; i < inst.num_vars; ++i)
    spec[i] = spectral_decompose(vector_to_unitary(rep, gram.vectors[i]));
  std::map<std::pair<int, int>, WeightMeasure> wm_cache;
  for (const auto& con : inst.constraints) {
    auto key = std::make_pair(con.i - 1, con.j - 1);
    auto it = wm_cache.find(key);
    if (it == wm_cache.end())
      it = wm_cache.emplace(key, weight_measure(spec[key.first], spec[key.second])).first;
    const WeightMeasure& wm = it->second;
    double fint = 0.0;
    for (const auto& at : wm.atoms) fint += at.mass * fid_closed_form(Pk, at.theta).real();
    double v = (con.kind == ConstraintKind::Equation) ? con.w * fint : con.w * (1.0 - fint);
    run.per_constraint.push_back(v);
    double lam = 0;
    for (size_t t = 0; t < gram.vectors[key.first].size(); ++t)
      lam += gram.vectors[key.first][t] * gram.vectors[key.second][t];
    run.lambda_per_constraint.push_back(cd{lam, 0.0});
    run.expected_value += v;
  }
  return run;
}

RoundingRun expected_value_gwb_mc(const CspInstance& inst, const GramSolution& gram,
                                  const GwbRep& rep, int samples, std::uint64_t seed) {
  if (!inst.homogeneous())
    throw input_error("expected_value_gwb_mc: homogeneous instance required");
  if (rep.n != inst.num_vars)
    throw input_error("expected_value_gwb_mc: representation size must match variable count");
  if (samples < 1) throw input_error("expected_value_gwb_mc: samples >= 1 required");
  RoundingRun run;
  run.method = RoundingMethod::GwbPhaseMC;
  int k = inst.k;
  std::vector<SpectralUnitary> spec(inst.num_vars);
  for (int i = 0; i < inst.num_vars; ++i)
    spec[i] = spectral_decompose(vector_to_unitary(rep, gram.vectors[i]));
  std::map<std::pair<int, int>, PairData> pd_cache;
  for (const auto& con : inst.constraints) {
    auto key = std::make_pair(con.i - 1, con.j - 1);
    if (!pd_cache.count(key)) pd_cache.emplace(key, pair_weights(spec[key.first], spec[key.second]));
  }
  run.per_constraint.assign(inst.constraints.size(), 0.0);
  std::vector<double> objs;
  objs.reserve(samples);
  for (int sidx = 0; sidx < samples; ++sidx) {
    Rng rng(seed, sidx);
    double zeta = rng.uniform(0.0, two_pi);
    // per-variable rounded root indices of zeta U_{x_i}
    std::vector<std::vector<int>> rounded(inst.num_vars);
    for (int i = 0; i < inst.num_vars; ++i) {
      rounded[i].resize(spec[i].clusters());
      for (int c = 0; c < spec[i].clusters(); ++c)
        rounded[i][c] = nearest_root_index(k, spec[i].phases[c] + zeta);
    }
    // tracial objective of the rounded order-k pair: P_k evaluates to the
    // indicator that both eigenvalues round to the same root
    double obj = 0;
    size_t ci = 0;
    for (const auto& con : inst.constraints) {
      const PairData& pd = pd_cache.at({con.i - 1, con.j - 1});
      const auto& ri = rounded[con.i - 1];
      const auto& rj = rounded[con.j - 1];
      double agree = 0;
      for (size_t a = 0; a < pd.phi_a.size(); ++a)
        for (size_t b = 0; b < pd.psi_b.size(); ++b)
          if (ri[a] == rj[b]) agree += pd.mass[a][b];
      double v = (con.kind == ConstraintKind::Equation) ? con.w * agree : con.w * (1.0 - agree);
      run.per_constraint[ci++] += v / samples;
      obj += v;
    }
    objs.push_back(obj);
  }
  double sum = 0;
  for (double v : objs) sum += v;
  run.expected_value = sum / samples;
  double var = 0;
  for (double v : objs) var += (v - run.expected_value) * (v - run.expected_value);
  run.stderr_ = std::sqrt(var / samples / samples);
  for (const auto& con : inst.constraints) {
    double lam = 0;
    for (size_t t = 0; t < gram.vectors[con.i - 1].size(); ++t)
      lam += gram.vectors[con.i - 1][t] * gram.vectors[con.j - 1][t];
    run.lambda_per_constraint.push_back(cd{lam, 0.0});
  }
  return run;
}

RoundingRun expected_value_smooth(const CspInstance& inst,
                                  const std::vector<std::vector<cd>>& lambda_matrix) {
  RoundingRun run;
  run.method = RoundingMethod::AnalyticHaar;
  int k = inst.k;
  double ak = smooth_constant(k);
  for (const auto& con : inst.constraints) {
    cd lam = lambda_matrix[con.i - 1][con.j - 1];
    cd mu = root_of_unity(k, -con.c) * lam;  // shift reduction c -> 0
    if (!in_omega_k(k, mu, 1e-9))
      throw input_error("expected_value_smooth: lambda outside Omega_k");
    mu = clamp_disk(mu);
    double I = smooth_integral(k, mu);
    double v = (con.kind == ConstraintKind::Equation)
                   ? con.w * (1.0 - 2.0 / ak + I / ak)
                   : con.w * (2.0 / ak - I / ak);
    run.per_constraint.push_back(v);
    run.lambda_per_constraint.push_back(mu);
    run.expected_value += v;
  }
  return run;
}

RoundingRun expected_value_smooth(const CspInstance& inst, const std::vector<Mat>& operators) {
  std::vector<std::vector<cd>> lam(inst.num_vars, std::vector<cd>(inst.num_vars, cd{}));
  for (int i = 0; i < inst.num_vars; ++i)
    for (int j = 0; j < inst.num_vars; ++j) lam[i][j] = hs_inner(operators[i], operators[j]);
  return expected_value_smooth(inst, lam);
}

}  // namespace nclin
