#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nclin/gwb.hpp"
#include "nclin/rng.hpp"
#include "nclin/unitary.hpp"
#include "nclin/verify.hpp"

using namespace nclin;

TEST_CASE("f table cases and symmetry") {
  CHECK(f_value(1, 2, 0, 3) == 1);
  CHECK(f_value(1, 1, 0, 3) == 0);
  // i >= j, t = -1: at k = 2 the shift -1 coincides with 1
  CHECK(f_value(2, 1, 1, 2) == 1);  // = f_{1,2,-1} via symmetry
  CHECK(f_value(1, 2, 1, 3) == 1);
  CHECK(f_value(2, 1, 2, 3) == 1);  // t = -1 mod 3, i >= j
  CHECK(f_value(2, 1, 1, 3) == 0);
  CHECK(f_value(1, 1, 1, 2) == 0);  // overlapping cases cancel at k = 2
  for (int k : {2, 3, 4, 5})
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j)
        for (int t = 0; t < k; ++t) CHECK(f_value(i, j, t, k) == f_value(j, i, -t, k));
  for (int k : {2, 3, 4})
    for (int i = 1; i <= 3; ++i) CHECK(f_value(i, i, 0, k) == 0);
}

TEST_CASE("normal form action basics") {
  GwbGroup G(2, 3);
  // pi_J(e) = J
  NormalForm e;
  CHECK(G.apply_j(e) == NormalForm{1, 0, 0});
  // pi_{p_1}(e) = p^{E_{1,0}}
  NormalForm p = G.apply_p(1, e);
  CHECK(p == NormalForm{0, 0, G.alpha_bit(1, 0)});
  // pi_{p_1}(p^{E_{1,0}}) = J (p_1^2 = J)
  CHECK(G.apply_p(1, p) == NormalForm{1, 0, 0});
}

TEST_CASE("word evaluation reproduces normal forms") {
  // the element J^b c^s p^alpha evaluated through the action on e equals itself
  for (auto [n, k] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 3}, {3, 2}}) {
    GwbGroup G(n, k);
    for (const auto& g : G.elements()) CHECK(G.mul(g, G.identity()) == g);
  }
}

TEST_CASE("group orders and verification for the budgeted pairs") {
  // (n,k): orders from 2k 2^{k(n-1)} and 2k 2^{(k-1)(n-1)}
  struct Row {
    int n, k;
    long long g, q;
  };
  for (Row r : {Row{2, 3, 48, 24}, Row{2, 2, 16, 8}, Row{3, 3, 384, 96}, Row{2, 4, 128, 64},
                Row{3, 2, 64, 16}, Row{4, 2, 256, 32}}) {
    GroupVerification gv = enumerate_group(r.n, r.k);
    CHECK(gv.order_g == r.g);
    CHECK(gv.order_quotient == r.q);
    CHECK(gv.generators_reach_all);
    CHECK(gv.relators_identity);
    CHECK(gv.r_central);
    CHECK(gv.r_order_two);
    CHECK(gv.ok());
  }
}

TEST_CASE("group multiplication is associative and inverses work") {
  GwbGroup G(3, 3);
  Rng rng(3);
  auto elems = G.elements();
  for (int trial = 0; trial < 200; ++trial) {
    const auto& a = elems[rng.uniform_int(static_cast<int>(elems.size()))];
    const auto& b = elems[rng.uniform_int(static_cast<int>(elems.size()))];
    const auto& c = elems[rng.uniform_int(static_cast<int>(elems.size()))];
    CHECK(G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c)));
    CHECK(G.mul(a, G.inv(a)) == G.identity());
    CHECK(G.mul(G.inv(a), a) == G.identity());
  }
}

TEST_CASE("admissible p^alpha words avoid e and J in the quotient") {
  GwbGroup G(3, 3);
  for (std::uint64_t packed = 1; packed < (1u << 4); ++packed) {
    NormalForm g;
    for (int i = 1; i <= 2; ++i)
      for (int t = 0; t < 2; ++t)
        if ((packed >> ((i - 1) * 2 + t)) & 1) g.alpha |= G.alpha_bit(i, t);
    NormalForm red = G.reduce(g);
    CHECK(red == g);  // already admissible
    CHECK(!(red == NormalForm{0, 0, 0}));
    CHECK(!(red == NormalForm{1, 0, 0}));
  }
}

TEST_CASE("representation dimensions and defining relations") {
  struct Row {
    int n, k, dim;
  };
  for (Row r : {Row{2, 2, 4}, Row{2, 3, 12}, Row{3, 3, 48}}) {
    GwbRep rep = build_representation(r.n, r.k);
    CHECK(rep.dim == r.dim);
    for (int i = 0; i < r.n; ++i) {
      CHECK(unitarity_residual(rep.sigma[i]) < 1e-12);
      Mat P = mat_pow(rep.sigma[i], r.k);
      for (int z = 0; z < rep.dim; ++z) P(z, z) -= 1.0;
      CHECK(fro_norm(P) < 1e-10);
    }
    for (int i = 0; i < r.n; ++i)
      for (int j2 = i + 1; j2 < r.n; ++j2) {
        Mat anti = adjoint(rep.sigma[i]) * rep.sigma[j2] + adjoint(rep.sigma[j2]) * rep.sigma[i];
        CHECK(fro_norm(anti) < 1e-10);
      }
  }
  CHECK_THROWS_AS(build_representation(8, 8), budget_error);
}

TEST_CASE("every relator maps to the identity matrix") {
  int n = 3, k = 3;
  GwbRep rep = build_representation(n, k);
  GwbGroup G(n, k);
  // pi(g) pi(h) = pi(gh) spot check over random normal forms
  Rng rng(5);
  auto elems = G.quotient_elements();
  for (int trial = 0; trial < 10; ++trial) {
    const auto& a = elems[rng.uniform_int(static_cast<int>(elems.size()))];
    const auto& b = elems[rng.uniform_int(static_cast<int>(elems.size()))];
    Mat lhs = rep.represent(a) * rep.represent(b);
    Mat rhs = rep.represent(G.reduce(G.mul(a, b)));
    double err = 0;
    for (size_t z = 0; z < lhs.a.size(); ++z) err = std::max(err, std::abs(lhs.a[z] - rhs.a[z]));
    CHECK(err < 1e-12);
  }
  // J represents as -1
  NormalForm J{1, 0, 0};
  Mat mj = rep.represent(J);
  Mat mI = Mat::identity(rep.dim);
  double err = 0;
  for (size_t z = 0; z < mj.a.size(); ++z) err = std::max(err, std::abs(mj.a[z] + mI.a[z]));
  CHECK(err == 0.0);
}

TEST_CASE("trace of p^alpha vanishes for admissible nonzero alpha") {
  GwbGroup G(3, 3);
  for (std::uint64_t packed = 1; packed < (1u << 4); ++packed) {
    NormalForm g;
    for (int i = 1; i <= 2; ++i)
      for (int t = 0; t < 2; ++t)
        if ((packed >> ((i - 1) * 2 + t)) & 1) g.alpha |= G.alpha_bit(i, t);
    CHECK(std::abs(rep_trace(G, g)) < 1e-15);
  }
  CHECK(rep_trace(G, NormalForm{0, 0, 0}) == doctest::Approx(1.0));
  CHECK(rep_trace(G, NormalForm{1, 0, 0}) == doctest::Approx(-1.0));
}

TEST_CASE("vector-to-unitary construction") {
  GwbRep rep = build_representation(2, 3);
  // basis vector: U = sigma_1, order k
  Mat U1 = vector_to_unitary(rep, {1.0, 0.0});
  double err = 0;
  for (size_t z = 0; z < U1.a.size(); ++z) err = std::max(err, std::abs(U1.a[z] - rep.sigma[0].a[z]));
  CHECK(err == 0.0);
  // generic combination: unitary, but not order-k for k >= 3
  double s = std::sqrt(0.5);
  Mat U = vector_to_unitary(rep, {s, s});
  CHECK(unitarity_residual(U) < 1e-9);
  Mat P = mat_pow(U, 3);
  for (int z = 0; z < rep.dim; ++z) P(z, z) -= 1.0;
  CHECK(fro_norm(P) > 0.1);
  CHECK_THROWS_AS(vector_to_unitary(rep, {1.0, 1.0}), input_error);
}

TEST_CASE("strong isometry") {
  Rng rng(7);
  for (auto [n, k] : std::vector<std::pair<int, int>>{{2, 3}, {3, 3}, {2, 4}}) {
    GwbRep rep = build_representation(n, k);
    for (int trial = 0; trial < 20; ++trial) {
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
      auto res = strong_isometry_check(rep, x, y);
      for (double r : res) CHECK(r <= 1e-9);
    }
    // x = y: all residuals 0
    std::vector<double> e1(n, 0.0);
    e1[0] = 1.0;
    auto res = strong_isometry_check(rep, e1, e1);
    for (double r : res) CHECK(r <= 1e-12);
  }
  // <x,y> = -1/2, k=3, s=2: tr = 1/4
  GwbRep rep = build_representation(2, 3);
  std::vector<double> x = {1.0, 0.0};
  std::vector<double> y = {-0.5, std::sqrt(3.0) / 2.0};
  Mat Ux = vector_to_unitary(rep, x);
  Mat Uy = vector_to_unitary(rep, y);
  cd tr = hs_inner(Ux * Ux, Uy * Uy);
  CHECK(tr.real() == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(std::abs(tr.imag()) < 1e-9);
}

TEST_CASE("verify_gwb suite passes for (2,3)") {
  CheckSuite s = verify_gwb(2, 3, 25);
  for (const auto& c : s.checks) {
    INFO(c.name, " measured ", c.measured, " thr ", c.threshold);
    CHECK(c.pass);
  }
}
