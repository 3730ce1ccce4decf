#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "nclin/instance.hpp"
#include "nclin/rng.hpp"

using namespace nclin;

namespace {

const char* kTriangle3 = "lin2k 3 3\nI 1 2 1 0\nI 2 3 1 0\nI 1 3 1 0\n";

CspInstance random_instance(int k, int n, int edges, Rng& rng, bool homogeneous) {
  CspInstance inst;
  inst.k = k;
  inst.num_vars = n;
  for (int e = 0; e < edges; ++e) {
    int i = 1 + rng.uniform_int(n);
    int j = 1 + rng.uniform_int(n);
    if (i == j) continue;
    if (i > j) std::swap(i, j);
    Constraint c;
    c.i = i;
    c.j = j;
    c.w = rng.uniform(0.1, 2.0);
    c.c = homogeneous ? 0 : rng.uniform_int(k);
    c.kind = rng.uniform() < 0.5 ? ConstraintKind::Equation : ConstraintKind::Inequation;
    inst.constraints.push_back(c);
  }
  return inst;
}

}  // namespace

TEST_CASE("parse triangle instance") {
  CspInstance inst = parse_instance(std::string(kTriangle3));
  CHECK(inst.k == 3);
  CHECK(inst.num_vars == 3);
  CHECK(inst.constraints.size() == 3);
  for (const auto& c : inst.constraints) {
    CHECK(c.kind == ConstraintKind::Inequation);
    CHECK(c.w == 1.0);
    CHECK(c.c == 0);
    CHECK(c.i < c.j);
  }
  CHECK(inst.homogeneous());
}

TEST_CASE("parse single equation") {
  CspInstance inst = parse_instance(std::string("lin2k 2 2\nE 1 2 5 0\n"));
  CHECK(inst.constraints.size() == 1);
  CHECK(inst.constraints[0].kind == ConstraintKind::Equation);
  CHECK(inst.constraints[0].w == 5.0);
}

TEST_CASE("normalization applies the symmetry rule c_ij = -c_ji") {
  CspInstance inst = parse_instance(std::string("lin2k 3 2\nI 2 1 1 1\n"));
  REQUIRE(inst.constraints.size() == 1);
  const auto& c = inst.constraints[0];
  CHECK(c.i == 1);
  CHECK(c.j == 2);
  CHECK(c.c == 2);  // -1 mod 3
  CHECK(c.kind == ConstraintKind::Inequation);
}

TEST_CASE("duplicate constraints are weight-summed, distinct shifts kept") {
  CspInstance inst =
      parse_instance(std::string("lin2k 3 2\nE 1 2 1 1\nE 1 2 2 1\nE 1 2 1 2\n"));
  CHECK(inst.constraints.size() == 2);
  double w1 = 0;
  for (const auto& c : inst.constraints)
    if (c.c == 1) w1 = c.w;
  CHECK(w1 == 3.0);
}

TEST_CASE("parser reports malformed input with line numbers") {
  CHECK_THROWS_AS(parse_instance(std::string("lin2k 3\n")), input_error);
  CHECK_THROWS_AS(parse_instance(std::string("lin2k 3 2\nI 1 5 1 0\n")), input_error);
  CHECK_THROWS_AS(parse_instance(std::string("lin2k 3 2\nI 1 2 -1 0\n")), input_error);
  CHECK_THROWS_AS(parse_instance(std::string("lin2k 3 2\nI 1 2 1 3\n")), input_error);
  CHECK_THROWS_AS(parse_instance(std::string("lin2k 3 2\nI 1 1 1 0\n")), input_error);
  CHECK_THROWS_AS(parse_instance(std::string("")), input_error);
  try {
    parse_instance(std::string("lin2k 3 2\nI 1 2 1 7\n"));
  } catch (const input_error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("smooth constant") {
  CHECK(smooth_constant(3) == doctest::Approx(3.0));
  CHECK(smooth_constant(4) == doctest::Approx(4.0));
  CHECK(smooth_constant(6) == doctest::Approx(4.0));
  CHECK(smooth_constant(2) == doctest::Approx(4.0));
  CHECK(smooth_constant(5) > 3.0);
  CHECK(smooth_constant(5) < 4.0);
}

TEST_CASE("brute force on the triangle and single-edge examples") {
  CHECK(classical_value_bruteforce(parse_instance(std::string(kTriangle3))) ==
        doctest::Approx(3.0));
  CspInstance tri2 = parse_instance(std::string("lin2k 2 3\nI 1 2 1 0\nI 2 3 1 0\nI 1 3 1 0\n"));
  CHECK(classical_value_bruteforce(tri2) == doctest::Approx(2.0));
  CspInstance eq = parse_instance(std::string("lin2k 2 2\nE 1 2 5 0\n"));
  CHECK(classical_value_bruteforce(eq) == doctest::Approx(5.0));
}

TEST_CASE("objective examples") {
  CspInstance tri = parse_instance(std::string(kTriangle3));
  CHECK(objective_of_assignment(tri, {0, 1, 2}) == doctest::Approx(3.0));
  CspInstance one = parse_instance(std::string("lin2k 3 2\nI 1 2 1 0\n"));
  CHECK(objective_of_assignment(one, {0, 0}, true) == doctest::Approx(0.0));
  CHECK(objective_of_assignment(one, {0, 1}, true) == doctest::Approx(1.0));
  CHECK_THROWS_AS(objective_of_assignment(one, {0}), input_error);
}

TEST_CASE("indicator-sum identity matches integer evaluation") {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    int k = 2 + rng.uniform_int(4);
    int n = 2 + rng.uniform_int(4);
    CspInstance inst = random_instance(k, n, 6, rng, false);
    std::vector<int> a(n);
    for (auto& v : a) v = rng.uniform_int(k);
    CHECK(objective_of_assignment(inst, a) ==
          doctest::Approx(objective_via_indicator_sum(inst, a)).epsilon(1e-12));
  }
}

TEST_CASE("standard and smooth objectives agree for k in {2,3}") {
  Rng rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    int k = 2 + rng.uniform_int(2);
    int n = 2 + rng.uniform_int(3);
    CspInstance inst = random_instance(k, n, 5, rng, false);
    std::vector<int> a(n);
    for (auto& v : a) v = rng.uniform_int(k);
    CHECK(objective_of_assignment(inst, a, false) ==
          doctest::Approx(objective_of_assignment(inst, a, true)).epsilon(1e-12));
  }
}

TEST_CASE("all-equal assignment scores zero on pure c=0 inequations") {
  CspInstance tri = parse_instance(std::string(kTriangle3));
  CHECK(objective_of_assignment(tri, {1, 1, 1}) == doctest::Approx(0.0));
}

TEST_CASE("brute force is invariant under variable relabeling") {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    int k = 2 + rng.uniform_int(2);
    int n = 4;
    CspInstance inst = random_instance(k, n, 6, rng, true);
    double v0 = classical_value_bruteforce(inst);
    // relabel by a rotation
    CspInstance perm = inst;
    for (auto& c : perm.constraints) {
      int ni = c.i % n + 1, nj = c.j % n + 1;
      c.i = std::min(ni, nj);
      c.j = std::max(ni, nj);
      // homogeneous: shift stays 0 under swap
    }
    CHECK(classical_value_bruteforce(perm) == doctest::Approx(v0).epsilon(1e-12));
  }
}

TEST_CASE("brute force budget guard") {
  CspInstance big;
  big.k = 10;
  big.num_vars = 10;
  CHECK_THROWS_AS(classical_value_bruteforce(big), budget_error);
}

TEST_CASE("json export carries all fields") {
  CspInstance inst = parse_instance(std::string(kTriangle3));
  std::string j = instance_to_json(inst);
  CHECK(j.find("\"k\": 3") != std::string::npos);
  CHECK(j.find("\"num_vars\": 3") != std::string::npos);
  CHECK(j.find("\"I\"") != std::string::npos);
}
