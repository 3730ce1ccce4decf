#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nclin/classical.hpp"
#include "nclin/gwb.hpp"
#include "nclin/pipeline.hpp"
#include "nclin/verify.hpp"

using namespace nclin;

TEST_CASE("vector pdf: uniform at lambda = 0 and symmetry") {
  for (double th : {0.0, 1.0, 3.0, 5.0})
    CHECK(vector_rel_pdf(cd{0, 0}, th) == doctest::Approx(1.0 / two_pi));
  cd lam{0.5, 0.2};
  double t0 = angle_of(lam);
  for (double u : {0.3, 1.1, 2.0})
    CHECK(vector_rel_pdf(lam, t0 + u) == doctest::Approx(vector_rel_pdf(lam, t0 - u)).epsilon(1e-12));
  CHECK_THROWS_AS(vector_rel_pdf(cd{1, 0}, 0.1), input_error);
}

TEST_CASE("vector pdf matches the hand-evaluated point at lambda = 1/2") {
  // theta = theta0: (1-l^2)/(2pi(1-l^2)) [ l/sqrt(1-l^2) acos(-l) + 1 ]
  double l = 0.5;
  double expect = (1 - l * l) / (two_pi * (1 - l * l)) *
                  (l / std::sqrt(1 - l * l) * std::acos(-l) + 1.0);
  CHECK(vector_rel_pdf(cd{l, 0}, 0.0) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("vector pdf integrates to 1") {
  for (cd lam : {cd{0, 0}, cd{0.3, 0}, cd{0.5, 0.2}, cd{0.9, 0}}) {
    double total =
        adaptive_simpson([&](double t) { return vector_rel_pdf(lam, t); }, 0.0, two_pi, 1e-10);
    CHECK(std::abs(total - 1.0) <= 1e-8);
  }
}

TEST_CASE("vector MC: a = b collapses to zero angle") {
  std::vector<cd> a = {cd{0.6, 0}, cd{0.0, 0.8}};
  VectorRelEstimate est = vector_rel_mc(a, a, 500, 3, 64);
  CHECK(est.hist.mass[0] + est.hist.mass[63] == doctest::Approx(1.0));
  CHECK(std::abs(est.first_moment - cd{1, 0}) < 1e-9);
}

TEST_CASE("vector MC histogram matches the pdf at lambda = 0.5") {
  std::vector<cd> a = {cd{1, 0}, cd{0, 0}};
  std::vector<cd> b = {cd{0.5, 0}, cd{std::sqrt(0.75), 0}};
  VectorRelEstimate est = vector_rel_mc(a, b, 100000, 11, 64);
  double tv = est.hist.tv_distance([&](double t) { return vector_rel_pdf(cd{0.5, 0}, t); });
  CHECK(tv <= 0.02);
  // first moment vs quadrature within 3 sigma
  double m1 = adaptive_simpson(
      [&](double t) { return std::cos(t) * vector_rel_pdf(cd{0.5, 0}, t); }, 0.0, two_pi, 1e-10);
  CHECK(std::abs(est.first_moment.real() - m1) <= 3 * est.first_moment_se + 1e-6);
}

TEST_CASE("verify_vector suite") {
  for (cd lam : {cd{0.5, 0}, cd{0.9, 0}}) {
    CheckSuite s = verify_vector(lam, 100000, 19);
    for (const auto& c : s.checks) {
      INFO(c.name, " measured ", c.measured, " thr ", c.threshold);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("operator objective on scalar solutions equals the classical value") {
  CspInstance inst = parse_instance(std::string("lin2k 3 3\nI 1 2 1 0\nI 2 3 1 0\nI 1 3 1 0\n"));
  // scalars as 1x1 matrices, assignment (0,1,2)
  std::vector<Mat> ops;
  for (int t : {0, 1, 2}) {
    Mat m(1, 1);
    m(0, 0) = root_of_unity(3, t);
    ops.push_back(m);
  }
  CHECK(operator_objective(inst, ops) ==
        doctest::Approx(objective_of_assignment(inst, {0, 1, 2})).epsilon(1e-12));
}

TEST_CASE("scalar extraction recovers the assignment statistically") {
  // one-dimensional solution: rounded assignment should match the scalars
  // far more often than chance
  CspInstance inst = parse_instance(std::string("lin2k 3 2\nE 1 2 1 0\n"));
  std::vector<Mat> ops;
  for (int t : {1, 1}) {
    Mat m(1, 1);
    m(0, 0) = root_of_unity(3, t);
    ops.push_back(m);
  }
  ClassicalExtraction ext = classical_extraction_mc(ops, inst, 3000, 29);
  // the equation x2 - x1 = 0 is satisfied whenever both round the same way
  CHECK(ext.operator_value == doctest::Approx(1.0));
  CHECK(ext.mean_value > 0.9);
}

TEST_CASE("extraction rejects non-order-k input") {
  CspInstance inst = parse_instance(std::string("lin2k 3 2\nE 1 2 1 0\n"));
  Mat bad(2, 2);
  bad(0, 0) = cd{std::cos(0.3), std::sin(0.3)};
  bad(1, 1) = cd{std::cos(1.0), std::sin(1.0)};
  std::vector<Mat> ops = {bad, bad};
  CHECK_THROWS_AS(classical_extraction_mc(ops, inst, 10, 1), input_error);
}

TEST_CASE("k=2 triangle extraction reaches the Goemans-Williamson regime") {
  CspInstance tri = parse_instance(std::string("lin2k 2 3\nI 1 2 1 0\nI 2 3 1 0\nI 1 3 1 0\n"));
  GramSolution sol = solve_sdp(build_sdp(tri), 1e-9);
  GwbRep rep = build_representation(3, 2);
  CHECK(rep.dim == 8);
  std::vector<Mat> ops;
  for (int i = 0; i < 3; ++i) {
    Mat U = vector_to_unitary(rep, sol.vectors[i]);
    // order-2 already (k = 2 linear combinations stay order 2)
    Mat P = U * U;
    for (int q = 0; q < rep.dim; ++q) P(q, q) -= 1.0;
    REQUIRE(fro_norm(P) < 1e-9);
    ops.push_back(U);
  }
  ClassicalExtraction ext = classical_extraction_mc(ops, tri, 10000, 37);
  // operator value equals the SDP value 2.25 (strong isometry at k = 2)
  CHECK(ext.operator_value == doctest::Approx(2.25).epsilon(1e-6));
  CHECK(ext.ratio >= 0.87);
  CHECK(ext.ratio <= 1.0 + 3 * ext.stderr_ / ext.operator_value);
}
