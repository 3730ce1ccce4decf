#include "nclin/cli.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "nclin/classical.hpp"
#include "nclin/fidelity.hpp"
#include "nclin/gwb.hpp"
#include "nclin/instance.hpp"
#include "nclin/pipeline.hpp"
#include "nclin/reldist.hpp"
#include "nclin/sdp.hpp"
#include "nclin/verify.hpp"

namespace nclin {

namespace {

constexpr const char* kVersion = "nclin 0.1.0";

std::string fmt12(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

struct RunContext {
  std::string command;
  std::vector<std::string> args;
  std::uint64_t seed = 0;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  std::vector<std::pair<std::string, std::string>> outputs;  // path, digest

  nlohmann::json manifest() const {
    nlohmann::json m;
    m["command"] = command;
    m["args"] = args;
    m["seed"] = seed;
    m["version"] = kVersion;
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    m["wall_time_s"] = secs;
    auto& out = m["outputs"] = nlohmann::json::array();
    for (const auto& [path, digest] : outputs)
      out.push_back({{"path", path}, {"digest_fnv1a64", digest}});
    return m;
  }
};

// write payload to --out or stdout; track digest in the manifest
void emit(RunContext& ctx, const std::string& out_path, const std::string& payload,
          bool manifest_sidecar) {
  if (out_path.empty()) {
    std::cout << payload;
    if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
    return;
  }
  {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw input_error("cannot write output file: " + out_path);
    f << payload;
  }
  ctx.outputs.emplace_back(out_path, hex64(fnv1a64(payload)));
  if (manifest_sidecar) {
    std::ofstream mf(out_path + ".manifest.json");
    mf << ctx.manifest().dump(2) << "\n";
  }
}

nlohmann::json rounding_run_json(const RoundingRun& run) {
  nlohmann::json j;
  j["expected_value"] = run.expected_value;
  if (run.method == RoundingMethod::GwbPhaseMC) j["stderr"] = run.stderr_;
  j["method"] = run.method == RoundingMethod::AnalyticHaar  ? "analytic"
                : run.method == RoundingMethod::GwbPhase    ? "gwb"
                                                            : "gwb-mc";
  auto& pc = j["per_constraint"] = nlohmann::json::array();
  for (size_t i = 0; i < run.per_constraint.size(); ++i) {
    nlohmann::json e;
    e["value"] = run.per_constraint[i];
    e["lambda_re"] = run.lambda_per_constraint[i].real();
    e["lambda_im"] = run.lambda_per_constraint[i].imag();
    pc.push_back(e);
  }
  return j;
}

int cmd_solve(RunContext& ctx, const std::string& path, const std::string& problem, double sdp_tol,
              bool strict, const std::string& out_path) {
  if (problem != "homlin")
    throw input_error("solve: only --problem homlin is supported");
  CspInstance inst = load_instance(path);
  nlohmann::json j;
  j["instance"] = nlohmann::json::parse(instance_to_json(inst));
  if (inst.constraints.empty()) {
    j["sdp_value"] = 0.0;
    j["expected_value"] = 0.0;
    j["ratio"] = 1.0;  // vacuous instance, by convention
    j["lambda"] = nlohmann::json::array();
    emit(ctx, out_path, j.dump(2), true);
    return 0;
  }
  CanonicalSdp sdp = build_sdp(inst, strict);
  GramSolution sol = solve_sdp(sdp, sdp_tol);
  if (!sol.converged) throw numeric_error("solve: SDP did not converge to tolerance");
  RoundingRun run = expected_value_analytic(inst, sol);
  j["sdp_value"] = sol.sdp_value;
  j["sdp_iterations"] = sol.iterations;
  j["duality_gap"] = sol.duality_gap;
  j["primal_residual"] = sol.primal_residual;
  j["dual_residual"] = sol.dual_residual;
  auto& lam = j["lambda"] = nlohmann::json::array();
  for (int i = 0; i < inst.num_vars; ++i) {
    auto row = nlohmann::json::array();
    for (int jj = 0; jj < inst.num_vars; ++jj) row.push_back(sol.X(i, jj));
    lam.push_back(row);
  }
  j["expected_value"] = run.expected_value;
  j["ratio"] = (sol.sdp_value > 0) ? run.expected_value / sol.sdp_value : 1.0;
  j["rounding"] = rounding_run_json(run);
  emit(ctx, out_path, j.dump(2), true);
  return 0;
}

int cmd_round(RunContext& ctx, const std::string& path, const std::string& method, int samples,
              std::uint64_t seed, double sdp_tol, bool strict, const std::string& out_path) {
  CspInstance inst = load_instance(path);
  CanonicalSdp sdp = build_sdp(inst, strict);
  GramSolution sol = solve_sdp(sdp, sdp_tol);
  if (!sol.converged) throw numeric_error("round: SDP did not converge to tolerance");
  RoundingRun run;
  if (method == "analytic") {
    run = expected_value_analytic(inst, sol);
  } else if (method == "gwb" || method == "gwb-mc") {
    GwbRep rep = build_representation(inst.num_vars, inst.k);
    run = (method == "gwb") ? expected_value_gwb_exact(inst, sol, rep)
                            : expected_value_gwb_mc(inst, sol, rep, samples, seed);
  } else {
    throw input_error("round: method must be analytic|gwb|gwb-mc");
  }
  nlohmann::json j;
  j["sdp_value"] = sol.sdp_value;
  j["expected_value"] = run.expected_value;
  j["ratio_vs_sdp"] = (sol.sdp_value > 0) ? run.expected_value / sol.sdp_value : 1.0;
  j["rounding"] = rounding_run_json(run);
  emit(ctx, out_path, j.dump(2), true);
  return 0;
}

int cmd_ratio(RunContext& ctx, int k, const std::string& problem, const std::string& out_path) {
  std::ostringstream os;
  if (problem == "maxkcut") {
    double r = ratio_maxkcut(k);
    os << "problem maxkcut k " << k << " ratio " << fmt12(r) << " argmin_lambda "
       << fmt12(-1.0 / (k - 1)) << "\n";
  } else if (problem == "homlin") {
    RatioResult r = ratio_homogeneous(k);
    os << "problem homlin k " << k << " ratio " << fmt12(r.ratio) << " argmin_lambda "
       << fmt12(r.argmin.real()) << " maxcut_branch " << fmt12(r.maxcut_branch)
       << " equation_branch " << fmt12(r.equation_branch) << "\n";
  } else if (problem == "smooth") {
    RatioResult r = ratio_smooth(k);
    os << "problem smooth k " << k << " ratio " << fmt12(r.ratio) << " argmin_lambda_re "
       << fmt12(r.argmin.real()) << " argmin_lambda_im " << fmt12(r.argmin.imag()) << "\n";
  } else {
    throw input_error("ratio: problem must be maxkcut|homlin|smooth");
  }
  emit(ctx, out_path, os.str(), true);
  return 0;
}

int cmd_ratio_table(RunContext& ctx, const std::vector<int>& ks, const std::string& problem,
                    const std::string& out_path) {
  std::ostringstream os;
  os << "k,problem,ratio\n";
  for (int k : ks) {
    if (k < 3 || k > 50) throw input_error("ratio-table: k must be in [3, 50]");
    double r = 0;
    if (problem == "maxkcut")
      r = ratio_maxkcut(k);
    else if (problem == "homlin")
      r = ratio_homogeneous(k).ratio;
    else if (problem == "smooth")
      r = ratio_smooth(k).ratio;
    else
      throw input_error("ratio-table: problem must be maxkcut|homlin|smooth");
    os << k << "," << problem << "," << fmt12(r) << "\n";
  }
  emit(ctx, out_path, os.str(), true);
  return 0;
}

int cmd_ratio_curve(RunContext& ctx, int k, const std::string& problem, int points,
                    const std::string& out_path) {
  std::ostringstream os;
  if (problem == "maxkcut" || problem == "homlin") {
    os << "lambda,ratio_inequation,ratio_equation\n";
    RatioFunction ineq{RatioKind::MaxKCutInequation, k};
    RatioFunction eq{RatioKind::HomEquation, k};
    double lo = -1.0 / (k - 1);
    for (int g = 0; g <= points; ++g) {
      double lam = lo + (1.0 - 1e-6 - lo) * g / points;
      os << fmt12(lam) << "," << fmt12(ineq(cd{lam, 0})) << "," << fmt12(eq(cd{lam, 0}))
         << "\n";
    }
  } else if (problem == "smooth") {
    os << "lambda_re,lambda_im,ratio_inequation,ratio_equation\n";
    RatioFunction ineq{RatioKind::SmoothInequation, k};
    RatioFunction eq{RatioKind::SmoothEquation, k};
    int g = std::max(8, static_cast<int>(std::sqrt(static_cast<double>(points))));
    for (int a = -g; a <= g; ++a)
      for (int b = -g; b <= g; ++b) {
        cd lam{static_cast<double>(a) / g, static_cast<double>(b) / g};
        if (!in_omega_k(k, lam, 0.0)) continue;
        os << fmt12(lam.real()) << "," << fmt12(lam.imag()) << "," << fmt12(ineq(lam)) << ","
           << fmt12(eq(lam)) << "\n";
      }
  } else {
    throw input_error("ratio-curve: problem must be maxkcut|homlin|smooth");
  }
  emit(ctx, out_path, os.str(), true);
  return 0;
}

int cmd_curve_fid(RunContext& ctx, int k, int points, const std::string& out_path) {
  std::ostringstream os;
  os << "theta,fid,two_minus_two_cos\n";
  DiagonalPolynomial P = DiagonalPolynomial::cut(k);
  for (int g = 0; g <= points; ++g) {
    double th = two_pi * g / points;
    os << fmt12(th) << "," << fmt12(fid_closed_form(P, th).real()) << ","
       << fmt12(2.0 - 2.0 * std::cos(th)) << "\n";
  }
  emit(ctx, out_path, os.str(), true);
  return 0;
}

int cmd_curve_cauchy(RunContext& ctx, double lam_re, double lam_im, int points,
                     const std::string& out_path) {
  WrappedCauchy wc = delta_lambda(cd{lam_re, lam_im});
  if (wc.dirac()) throw input_error("curve cauchy: |lambda| = 1 has no density");
  std::ostringstream os;
  os << "theta,pdf\n";
  for (int g = 0; g <= points; ++g) {
    double th = two_pi * g / points;
    os << fmt12(th) << "," << fmt12(wc.pdf(th)) << "\n";
  }
  emit(ctx, out_path, os.str(), true);
  return 0;
}

int cmd_gwb(RunContext& ctx, int n, int k, bool do_verify, const std::string& dump_path,
            const std::string& out_path) {
  std::ostringstream os;
  GwbGroup G(n, k);
  os << "n " << n << " k " << k << "\n";
  os << "group_order " << G.order() << "\n";
  os << "quotient_order " << G.quotient_order() << "\n";
  os << "dimension " << G.quotient_order() / 2 << "\n";
  if (do_verify) {
    CheckSuite suite = verify_gwb(n, k);
    for (const auto& c : suite.checks)
      os << (c.pass ? "[pass] " : "[FAIL] ") << c.name << " measured " << fmt12(c.measured)
         << " threshold " << fmt12(c.threshold) << "\n";
    if (!suite.all_pass()) {
      emit(ctx, out_path, os.str(), false);
      throw numeric_error("gwb verification failed");
    }
  }
  if (!dump_path.empty()) {
    GwbRep rep = build_representation(n, k);
    nlohmann::json j;
    j["n"] = n;
    j["k"] = k;
    j["dim"] = rep.dim;
    auto& sig = j["sigma"] = nlohmann::json::array();
    for (const auto& M : rep.sigma) {
      auto rows = nlohmann::json::array();
      for (int i = 0; i < M.n; ++i) {
        auto row = nlohmann::json::array();
        for (int jj = 0; jj < M.m; ++jj) {
          row.push_back(M(i, jj).real());
          row.push_back(M(i, jj).imag());
        }
        rows.push_back(row);
      }
      sig.push_back(rows);
    }
    j["layout"] = "row-major interleaved re,im pairs";
    std::ofstream f(dump_path);
    if (!f) throw input_error("cannot write dump file: " + dump_path);
    std::string payload = j.dump();
    f << payload;
    ctx.outputs.emplace_back(dump_path, hex64(fnv1a64(payload)));
  }
  emit(ctx, out_path, os.str(), true);
  return 0;
}

int cmd_verify(RunContext& ctx, const std::string& suite_name_raw, int n, int k, int d, int m,
               int samples, double lam_re, double lam_im, std::uint64_t seed, int threads,
               const std::string& out_path, const std::string& hist_path) {
  // "vector-cauchy" is an accepted alias for the vector suite
  std::string suite_name = (suite_name_raw == "vector-cauchy") ? "vector" : suite_name_raw;
  std::ostringstream os;
  bool ok = true;
  auto print = [&](const std::string& title, const CheckSuite& s) {
    for (const auto& c : s.checks) {
      os << (c.pass ? "[pass] " : "[FAIL] ") << title << ": " << c.name << " measured "
         << fmt12(c.measured) << " threshold " << fmt12(c.threshold);
      if (!c.note.empty()) os << " (" << c.note << ")";
      os << "\n";
    }
    ok = ok && s.all_pass();
  };
  cd lambda{lam_re, lam_im};
  if (suite_name == "gwb" || suite_name == "all") print("gwb", verify_gwb(n, k, 100, seed));
  if (suite_name == "fidelity" || suite_name == "all")
    print("fidelity", verify_fidelity(7, 1000, seed));
  if (suite_name == "cauchy" || suite_name == "all") {
    print("cauchy", verify_cauchy(lambda, m, samples, seed, d, threads));
    print("chi3", verify_chi3(std::max(2000, samples), seed));
    // CSV of moment rows and optional histogram from one estimation pass
    std::vector<cd> diag;
    lambda_pair_d2(lambda, diag);
    Mat A = Mat::identity(2), B(2, 2);
    B(0, 0) = diag[0];
    B(1, 1) = diag[1];
    Mat Im = Mat::identity(m);
    RelDistEstimate est =
        estimate_relative_distribution(kron(A, Im), kron(B, Im), samples, seed, 5, 64, threads);
    WrappedCauchy wc = delta_lambda(hs_inner(A, B));
    std::ostringstream csv;
    csv << "m,n,empirical_re,empirical_im,theoretical_re,theoretical_im,stderr\n";
    for (int n = 1; n <= 5; ++n)
      csv << m << "," << n << "," << fmt12(est.chi_hat[n].real()) << ","
          << fmt12(est.chi_hat[n].imag()) << "," << fmt12(wc.chi(n).real()) << ","
          << fmt12(wc.chi(n).imag()) << "," << fmt12(est.chi_se[n]) << "\n";
    os << csv.str();
    if (!hist_path.empty()) {
      std::ostringstream hs;
      hs << "bin_center,mass,wrapped_cauchy_pdf\n";
      for (int b2 = 0; b2 < est.hist.bins; ++b2) {
        double c = two_pi * (b2 + 0.5) / est.hist.bins;
        hs << fmt12(c) << "," << fmt12(est.hist.mass[b2]) << ","
           << fmt12(wc.dirac() ? 0.0 : wc.pdf(c)) << "\n";
      }
      std::ofstream hf(hist_path);
      if (!hf) throw input_error("cannot write histogram file: " + hist_path);
      std::string payload = hs.str();
      hf << payload;
      ctx.outputs.emplace_back(hist_path, hex64(fnv1a64(payload)));
    }
  }
  if (suite_name == "vector" || suite_name == "all") {
    cd vlam = (lambda.real() == 0 && lambda.imag() == 0) ? cd{0.5, 0.0} : lambda;
    print("vector", verify_vector(vlam, samples, seed));
    if (!hist_path.empty() && suite_name == "vector") {
      double r = std::abs(vlam);
      std::vector<cd> a = {cd{1, 0}, cd{0, 0}};
      std::vector<cd> b = {vlam, std::sqrt(std::max(0.0, 1.0 - r * r))};
      VectorRelEstimate est = vector_rel_mc(a, b, samples, seed, 64);
      std::ostringstream hs;
      hs << "bin_center,mass,pdf\n";
      for (int b2 = 0; b2 < est.hist.bins; ++b2) {
        double c = two_pi * (b2 + 0.5) / est.hist.bins;
        hs << fmt12(c) << "," << fmt12(est.hist.mass[b2]) << ","
           << fmt12(vector_rel_pdf(vlam, c)) << "\n";
      }
      std::ofstream hf(hist_path);
      if (!hf) throw input_error("cannot write histogram file: " + hist_path);
      std::string payload = hs.str();
      hf << payload;
      ctx.outputs.emplace_back(hist_path, hex64(fnv1a64(payload)));
    }
  }
  if (suite_name != "gwb" && suite_name != "fidelity" && suite_name != "cauchy" &&
      suite_name != "vector" && suite_name != "all")
    throw input_error("verify: suite must be gwb|cauchy|fidelity|vector|all");
  emit(ctx, out_path, os.str(), true);
  if (!ok) throw numeric_error("verification suite failed");
  return 0;
}

int cmd_classical_round(RunContext& ctx, const std::string& path, int expected_k, int samples,
                        std::uint64_t seed, const std::string& out_path) {
  CspInstance inst = load_instance(path);
  if (expected_k != 0 && expected_k != inst.k)
    throw input_error("classical-round: --k disagrees with the instance header");
  if (!inst.homogeneous())
    throw input_error("classical-round: homogeneous instance required");
  CanonicalSdp sdp = build_sdp(inst, true);
  GramSolution sol = solve_sdp(sdp, 1e-7);
  if (!sol.converged) throw numeric_error("classical-round: SDP did not converge");
  GwbRep rep = build_representation(inst.num_vars, inst.k);
  std::vector<Mat> ops;
  std::vector<SpectralUnitary> spec;
  for (int i = 0; i < inst.num_vars; ++i) {
    Mat U = vector_to_unitary(rep, sol.vectors[i]);
    // operators must be order-k: round the construction once (zeta = 1)
    ops.push_back(round_to_order_k(spectral_decompose(U), inst.k));
  }
  ClassicalExtraction ext = classical_extraction_mc(ops, inst, samples, seed);
  nlohmann::json j;
  j["note"] = "R modeled as V diag(uniform k-th roots) V*, V Haar";
  j["sdp_value"] = sol.sdp_value;
  j["operator_value"] = ext.operator_value;
  j["mean_classical_value"] = ext.mean_value;
  j["stderr"] = ext.stderr_;
  j["ratio"] = ext.ratio;
  emit(ctx, out_path, j.dump(2), true);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"noncommutative Lin-2-k toolkit"};
  app.set_version_flag("--version", kVersion);
  app.fallthrough();  // global flags (--seed, --threads) usable after subcommands

  RunContext ctx;
  for (int i = 0; i < argc; ++i) ctx.args.push_back(argv[i]);
  ctx.command = (argc > 1) ? argv[1] : "";

  std::uint64_t seed = 1;
  int threads = 1;
  std::string out_path;
  double sdp_tol = 1e-7;
  bool strict = true;
  int samples = 2000;
  int k = 3;
  int m = 32;
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--threads", threads, "worker count (results are worker-count independent)");

  auto* solve = app.add_subcommand("solve", "solve the canonical SDP and round analytically");
  std::string solve_path, solve_problem = "homlin";
  solve->add_option("instance", solve_path)->required();
  solve->add_option("--problem", solve_problem);
  solve->add_option("--sdp-tol", sdp_tol);
  solve->add_flag("--sdp-strict-bounds,!--no-sdp-strict-bounds", strict);
  solve->add_option("--out", out_path);

  auto* round = app.add_subcommand("round", "SDP -> vectors -> rounding, selected method");
  std::string round_path, round_method = "analytic";
  round->add_option("instance", round_path)->required();
  round->add_option("--method", round_method);
  round->add_option("--samples", samples);
  round->add_option("--sdp-tol", sdp_tol);
  round->add_flag("--sdp-strict-bounds,!--no-sdp-strict-bounds", strict);
  round->add_option("--out", out_path);

  auto* ratio = app.add_subcommand("ratio", "closed-form approximation ratio");
  std::string ratio_problem = "maxkcut";
  ratio->add_option("--k", k)->required();
  ratio->add_option("--problem", ratio_problem);
  ratio->add_option("--out", out_path);

  auto* rtable = app.add_subcommand("ratio-table", "CSV of ratios over a k range");
  std::string rt_problem = "maxkcut";
  std::string ks_csv = "3,4,5,10";
  rtable->add_option("--problem", rt_problem);
  rtable->add_option("--ks", ks_csv, "comma-separated k values");
  rtable->add_option("--out", out_path);

  auto* rcurve = app.add_subcommand("ratio-curve", "CSV of per-lambda ratio branches");
  std::string rc_problem = "maxkcut";
  int points = 400;
  rcurve->add_option("--k", k)->required();
  rcurve->add_option("--problem", rc_problem);
  rcurve->add_option("--points", points);
  rcurve->add_option("--out", out_path);

  auto* curve = app.add_subcommand("curve", "fidelity / wrapped-Cauchy data for plots");
  std::string curve_kind;
  double lam_re = -0.5, lam_im = 0.0;
  curve->add_option("kind", curve_kind, "fid|cauchy")->required();
  curve->add_option("--k", k);
  curve->add_option("--points", points);
  curve->add_option("--lambda-re", lam_re);
  curve->add_option("--lambda-im", lam_im);
  curve->add_option("--out", out_path);

  auto* gwb = app.add_subcommand("gwb", "generalised Weyl-Brauer group and representation");
  int gn = 2;
  bool gwb_verify = false;
  std::string dump_path;
  gwb->add_option("--n", gn)->required();
  gwb->add_option("--k", k)->required();
  gwb->add_flag("--verify", gwb_verify);
  gwb->add_option("--dump", dump_path, "write sigma matrices as JSON");
  gwb->add_option("--out", out_path);

  auto* verify = app.add_subcommand("verify", "verification suites with measured residuals");
  std::string suite_name;
  int vd = 2;
  std::string hist_path;
  verify->add_option("suite", suite_name, "gwb|cauchy|fidelity|vector|all")->required();
  verify->add_option("--n", gn);
  verify->add_option("--k", k);
  verify->add_option("--d", vd);
  verify->add_option("--m", m);
  verify->add_option("--samples", samples);
  verify->add_option("--lambda-re", lam_re);
  verify->add_option("--lambda-im", lam_im);
  verify->add_option("--hist-out", hist_path);
  verify->add_option("--out", out_path);

  auto* cround = app.add_subcommand("classical-round", "tracial -> classical rounding experiment");
  std::string cr_path;
  int cr_k = 0;
  cround->add_option("instance", cr_path)->required();
  cround->add_option("--k", cr_k, "expected modulus; must match the instance header");
  cround->add_option("--samples", samples);
  cround->add_option("--out", out_path);

  try {
    app.parse(argc, const_cast<char**>(argv));
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  ctx.seed = seed;
  try {
    if (solve->parsed()) return cmd_solve(ctx, solve_path, solve_problem, sdp_tol, strict, out_path);
    if (round->parsed())
      return cmd_round(ctx, round_path, round_method, samples, seed, sdp_tol, strict, out_path);
    if (ratio->parsed()) return cmd_ratio(ctx, k, ratio_problem, out_path);
    if (rtable->parsed()) {
      std::vector<int> ks;
      std::stringstream ss(ks_csv);
      std::string tok;
      while (std::getline(ss, tok, ',')) ks.push_back(std::stoi(tok));
      return cmd_ratio_table(ctx, ks, rt_problem, out_path);
    }
    if (rcurve->parsed()) return cmd_ratio_curve(ctx, k, rc_problem, points, out_path);
    if (curve->parsed()) {
      if (curve_kind == "fid") return cmd_curve_fid(ctx, k, points, out_path);
      if (curve_kind == "cauchy") return cmd_curve_cauchy(ctx, lam_re, lam_im, points, out_path);
      throw input_error("curve: kind must be fid|cauchy");
    }
    if (gwb->parsed()) return cmd_gwb(ctx, gn, k, gwb_verify, dump_path, out_path);
    if (verify->parsed())
      return cmd_verify(ctx, suite_name, gn, k, vd, m, samples, lam_re, lam_im, seed, threads,
                        out_path, hist_path);
    if (cround->parsed()) return cmd_classical_round(ctx, cr_path, cr_k, samples, seed, out_path);
    std::cout << app.help();
    return 0;
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const numeric_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const budget_error& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace nclin
