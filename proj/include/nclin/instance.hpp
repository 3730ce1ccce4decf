#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nclin/common.hpp"

namespace nclin {

enum class ConstraintKind { Equation, Inequation };

struct Constraint {
  int i = 0;  // 1-based, i < j after normalization
  int j = 0;
  double w = 0.0;
  int c = 0;  // shift in Z_k
  ConstraintKind kind = ConstraintKind::Inequation;
};

// Weighted system of two-variable equations/inequations over Z_k.
// Stored normalized: i < j, shifts in {0..k-1}; the symmetric partner
// (j,i,w,-c mod k) is implied and never stored.
struct CspInstance {
  int k = 2;
  int num_vars = 0;
  std::vector<Constraint> constraints;

  bool homogeneous() const {
    for (const auto& c : constraints)
      if (c.c != 0) return false;
    return true;
  }
  double total_weight() const {
    double s = 0;
    for (const auto& c : constraints) s += c.w;
    return s;
  }
};

// Squared simplex diameter a_k = |1 - omega^floor(k/2)|^2 (a_3 = 3, a_k = 4 for even k).
double smooth_constant(int k);

// Line-oriented text format: header "lin2k <k> <N>", then "<E|I> <i> <j> <w> <c>",
// '#' starts a comment. Duplicate (i,j,c,kind) constraints are weight-summed.
CspInstance parse_instance(std::istream& in);
CspInstance parse_instance(const std::string& text);
CspInstance load_instance(const std::string& path);
std::string instance_to_json(const CspInstance& inst);

// Exact evaluation of the classical objective (standard or smooth) on an
// assignment of Z_k values.
double objective_of_assignment(const CspInstance& inst, const std::vector<int>& assignment,
                               bool smooth = false);

// Same value via the root-of-unity indicator sum (1/k) sum_s w^{-cs} x^-s y^s;
// used as a cross-check of the integer evaluation.
double objective_via_indicator_sum(const CspInstance& inst, const std::vector<int>& assignment);

// Exact optimum by enumeration of all k^N assignments; guarded at k^N <= 1e7.
double classical_value_bruteforce(const CspInstance& inst);

}  // namespace nclin
