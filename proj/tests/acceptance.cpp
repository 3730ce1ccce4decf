// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "nclin/classical.hpp"
#include "nclin/fidelity.hpp"
#include "nclin/gwb.hpp"
#include "nclin/instance.hpp"
#include "nclin/pipeline.hpp"
#include "nclin/reldist.hpp"
#include "nclin/sdp.hpp"
#include "nclin/verify.hpp"

using namespace nclin;

namespace {

int failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double secs() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void report(int idx, const std::string& name, bool pass, const std::string& detail,
            double secs) {
  std::printf("[%s] criterion %2d: %s  (%s; %.2fs)\n", pass ? "PASS" : "FAIL", idx, name.c_str(),
              detail.c_str(), secs);
  if (!pass) ++failures;
}

CspInstance triangle(int k) {
  CspInstance inst;
  inst.k = k;
  inst.num_vars = 3;
  for (auto [i, j] : {std::pair{1, 2}, {2, 3}, {1, 3}})
    inst.constraints.push_back({i, j, 1.0, 0, ConstraintKind::Inequation});
  return inst;
}

CspInstance random_homogeneous(int k, int n, int edges, Rng& rng) {
  CspInstance inst;
  inst.k = k;
  inst.num_vars = n;
  for (int e = 0; e < edges; ++e) {
    int i = 1 + rng.uniform_int(n), j = 1 + rng.uniform_int(n);
    if (i == j) continue;
    if (i > j) std::swap(i, j);
    inst.constraints.push_back({i, j, rng.uniform(0.1, 2.0), 0,
                                rng.uniform() < 0.4 ? ConstraintKind::Equation
                                                    : ConstraintKind::Inequation});
  }
  if (inst.constraints.empty())
    inst.constraints.push_back({1, 2, 1.0, 0, ConstraintKind::Inequation});
  return inst;
}

void criterion1() {
  Timer t;
  struct Row {
    int k;
    double expect;
  };
  bool pass = true;
  std::string detail;
  for (Row r : {Row{3, 0.8649}, Row{4, 0.8642}, Row{5, 0.8746}, Row{10, 0.9195}}) {
    double v = ratio_maxkcut(r.k);
    bool ok = std::abs(v - r.expect) <= 5e-4;
    pass = pass && ok;
    detail += "k=" + std::to_string(r.k) + ":" + std::to_string(v).substr(0, 6) + " ";
  }
  pass = pass && t.secs() < 1.0;
  report(1, "Table-1 Max-k-Cut ratios within 5e-4, < 1 s", pass, detail, t.secs());
}

void criterion2() {
  Timer t;
  struct Row {
    int k;
    double expect;
  };
  bool pass = true;
  std::string detail;
  for (Row r : {Row{3, 0.864}, Row{4, 0.813}, Row{5, 0.738}, Row{10, 0.475}}) {
    double v = ratio_homogeneous(r.k).ratio;
    bool ok = std::abs(v - r.expect) <= 1e-3;
    pass = pass && ok;
    detail += "k=" + std::to_string(r.k) + ":" + std::to_string(v).substr(0, 6) + " ";
  }
  pass = pass && t.secs() < 30.0;
  report(2, "Table-2 homogeneous ratios within 1e-3, < 30 s", pass, detail, t.secs());
}

void criterion3() {
  Timer t;
  struct Row {
    int k;
    double expect;
  };
  bool pass = true;
  std::string detail;
  for (Row r : {Row{3, 0.862}, Row{4, 0.919}, Row{5, 0.928}, Row{6, 0.951}, Row{7, 0.959}}) {
    double v = ratio_smooth(r.k).ratio;
    bool ok = std::abs(v - r.expect) <= 2e-3;
    pass = pass && ok;
    detail += "k=" + std::to_string(r.k) + ":" + std::to_string(v).substr(0, 6) + " ";
  }
  pass = pass && t.secs() < 120.0;
  report(3, "smooth ratios k=3..7 within 2e-3, < 2 min", pass, detail, t.secs());
}

void criterion4() {
  Timer t;
  bool pass = true;
  std::string detail;
  for (auto [n, k] :
       std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {4, 2}}) {
    GroupVerification gv = enumerate_group(n, k);
    bool ok = gv.ok();
    pass = pass && ok;
    detail += "(" + std::to_string(n) + "," + std::to_string(k) + "):|GWB|=" +
              std::to_string(gv.order_quotient) + " ";
  }
  pass = pass && t.secs() < 60.0;
  report(4, "group orders, relators, centrality by enumeration", pass, detail, t.secs());
}

void criterion5() {
  Timer t;
  bool pass = true;
  std::string detail;
  double worst = 0;
  for (auto [n, k] : std::vector<std::pair<int, int>>{{2, 3}, {3, 3}, {2, 4}, {4, 3}}) {
    GwbRep rep = build_representation(n, k);
    Rng rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> x(n), y(n);
      double nx = 0, ny = 0;
      for (int i = 0; i < n; ++i) {
        x[i] = rng.gauss();
        y[i] = rng.gauss();
        nx += x[i] * x[i];
        ny += y[i] * y[i];
      }
      for (int i = 0; i < n; ++i) {
        x[i] /= std::sqrt(nx);
        y[i] /= std::sqrt(ny);
      }
      for (double r : strong_isometry_check(rep, x, y)) worst = std::max(worst, r);
    }
  }
  pass = worst <= 1e-9 && t.secs() < 60.0;
  detail = "worst residual " + std::to_string(worst);
  report(5, "strong isometry over 100 random pairs, 1e-9", pass, detail, t.secs());
}

void criterion6() {
  Timer t;
  CheckSuite s = verify_fidelity(7, 1000, 6);
  double worst_oracle = s.checks[0].measured, worst_fourier = s.checks[1].measured;
  bool pass = s.all_pass();
  report(6, "fidelity closed form vs oracle 1e-10; Fourier law 1e-7", pass,
         "oracle " + std::to_string(worst_oracle) + ", fourier " + std::to_string(worst_fourier),
         t.secs());
}

void criterion7() {
  Timer t;
  bool pass = true;
  std::string detail;
  for (double lam : {0.0, -0.5, 0.8}) {
    CheckSuite s = verify_cauchy(cd{lam, 0.0}, 32, 2000, 7);
    pass = pass && s.all_pass();
    for (const auto& c : s.checks)
      if (c.name.rfind("histogram", 0) == 0)
        detail += "TV(" + std::to_string(lam).substr(0, 4) + ")=" +
                  std::to_string(c.measured).substr(0, 6) + " ";
  }
  pass = pass && t.secs() < 300.0;
  report(7, "Cauchy law: moments in 3sigma+8/(pi d m), TV <= 0.05, < 5 min", pass, detail,
         t.secs());
}

void criterion8() {
  Timer t;
  CheckSuite s = verify_chi3(4000, 8);
  bool pass = s.all_pass();
  bool flagged = false;
  for (const auto& c : s.checks)
    if (c.note.find("DISAGREES") != std::string::npos) flagged = true;
  std::string detail = flagged
                           ? "chi3 closed form with the 2tr(D^2)/d term disagrees with the "
                             "MC/quadrature oracle; oracle authoritative, trace-weighted "
                             "variant verified"
                           : "chi3 closed form agrees with the oracle";
  report(8, "chi(1),chi(2) exact; chi(3) formula vs MC oracle", pass, detail, t.secs());
}

void criterion9() {
  Timer t;
  CspInstance tri = triangle(3);
  GramSolution sol = solve_sdp(build_sdp(tri), 1e-9);
  RoundingRun run = expected_value_analytic(tri, sol);
  double brute = classical_value_bruteforce(tri);
  bool pass = sol.converged && std::abs(sol.sdp_value - 3.0) <= 1e-5 &&
              std::abs(run.expected_value - 2.5947) <= 2e-3 &&
              run.expected_value / sol.sdp_value >= 0.864 && sol.sdp_value >= brute - 1e-9 &&
              std::abs(brute - 3.0) <= 1e-12 && t.secs() < 5.0;
  report(9, "end-to-end triangle: SDP 3.0, rounded 2.5947, ratio >= 0.864", pass,
         "sdp " + std::to_string(sol.sdp_value) + ", rounded " +
             std::to_string(run.expected_value),
         t.secs());
}

void criterion10() {
  Timer t;
  CspInstance tri = triangle(3);
  GramSolution sol = solve_sdp(build_sdp(tri), 1e-9);
  GwbRep rep = build_representation(3, 3);
  RoundingRun exact = expected_value_gwb_exact(tri, sol, rep);
  RoundingRun analytic = expected_value_analytic(tri, sol);
  bool pass = rep.dim == 48;
  double worst_edge = 0;
  for (size_t c = 0; c < exact.per_constraint.size(); ++c)
    worst_edge = std::max(worst_edge,
                          std::abs(exact.per_constraint[c] - analytic.per_constraint[c]));
  pass = pass && worst_edge < 0.05;
  // weight-measure moments equal lambda^{|n|} for |n| <= 2 to 1e-9
  double worst_mom = 0;
  std::vector<SpectralUnitary> spec;
  for (int i = 0; i < 3; ++i)
    spec.push_back(spectral_decompose(vector_to_unitary(rep, sol.vectors[i])));
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      WeightMeasure wm = weight_measure(spec[i], spec[j]);
      double lam = 0;
      for (int q = 0; q < 3; ++q) lam += sol.vectors[i][q] * sol.vectors[j][q];
      for (int n = 0; n <= 2; ++n)
        worst_mom = std::max(worst_mom, std::abs(wm.chi(n) - cd{std::pow(lam, n), 0}));
    }
  pass = pass && worst_mom <= 1e-9;
  RoundingRun mc = expected_value_gwb_mc(tri, sol, rep, 2000, 10);
  pass = pass && std::abs(mc.expected_value - exact.expected_value) <= 3 * mc.stderr_ + 1e-9;
  report(10, "dimension-efficient path: exact vs analytic < 0.05, moments 1e-9, MC 3sigma", pass,
         "edge dev " + std::to_string(worst_edge) + ", moment dev " + std::to_string(worst_mom) +
             ", |MC-exact| " + std::to_string(std::abs(mc.expected_value - exact.expected_value)),
         t.secs());
}

void criterion11() {
  Timer t;
  bool pass = true;
  std::string detail;
  for (int k = 3; k <= 10; ++k) {
    MonotonicityReport rep = monotonicity_check(k, 10000);
    pass = pass && rep.passed();
    if (k == 3 || k == 10)
      detail += "k=" + std::to_string(k) + ": worst step " + std::to_string(rep.worst_step) +
                ", f(1)-1 " + std::to_string(rep.f_at_one - 1.0) + " ";
  }
  report(11, "monotone ratio numerator on 1e4 grid, f(1)=1, convexity, k=3..10", pass, detail,
         t.secs());
}

void criterion12() {
  Timer t;
  bool pass = true;
  std::string detail;
  for (double lam : {0.0, 0.5, 0.9}) {
    if (lam == 0.0) {
      // uniform branch: pdf is 1/2pi; normalization exact
      double total = adaptive_simpson(
          [&](double th) { return vector_rel_pdf(cd{0, 0}, th); }, 0.0, two_pi, 1e-10);
      pass = pass && std::abs(total - 1.0) <= 1e-8;
      std::vector<cd> a = {cd{1, 0}, cd{0, 0}};
      std::vector<cd> b = {cd{0, 0}, cd{1, 0}};
      VectorRelEstimate est = vector_rel_mc(a, b, 100000, 12, 64);
      double tv = est.hist.tv_distance([&](double th) { return vector_rel_pdf(cd{0, 0}, th); });
      pass = pass && tv <= 0.02;
      detail += "TV(0)=" + std::to_string(tv).substr(0, 6) + " ";
    } else {
      CheckSuite s = verify_vector(cd{lam, 0.0}, 100000, 12);
      pass = pass && s.all_pass();
      for (const auto& c : s.checks)
        if (c.name.rfind("vector MC", 0) == 0)
          detail += "TV(" + std::to_string(lam).substr(0, 3) + ")=" +
                    std::to_string(c.measured).substr(0, 6) + " ";
    }
  }
  pass = pass && t.secs() < 60.0;
  report(12, "vector relative distribution: pdf mass 1e-8, MC TV <= 0.02, < 1 min", pass, detail,
         t.secs());
}

void criterion13() {
  Timer t;
  Rng rng(13);
  bool pass = true;
  double rho3 = ratio_homogeneous(3).ratio;
  double rho4 = ratio_homogeneous(4).ratio;
  int tested = 0;
  for (int trial = 0; trial < 50; ++trial) {
    int k = 3 + rng.uniform_int(2);
    int n = 3 + rng.uniform_int(4);  // N <= 6
    CspInstance inst = random_homogeneous(k, n, 8, rng);
    GramSolution sol = solve_sdp(build_sdp(inst), 1e-8);
    if (!sol.converged) {
      pass = false;
      continue;
    }
    RoundingRun run = expected_value_analytic(inst, sol);
    double rho = (k == 3) ? rho3 : rho4;
    bool upper = run.expected_value <= sol.sdp_value + 1e-6;
    bool lower = run.expected_value >= rho * sol.sdp_value - 1e-6;
    pass = pass && upper && lower;
    ++tested;
  }
  report(13, "sandwich on 50 random instances: rounded <= SDP and >= ratio*SDP", pass,
         std::to_string(tested) + " instances tested", t.secs());
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  criterion12();
  criterion13();
  if (failures == 0)
    std::printf("acceptance: all 13 criteria passed\n");
  else
    std::printf("acceptance: %d criterion(s) FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
