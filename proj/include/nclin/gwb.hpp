#pragma once

#include <cstdint>
#include <vector>

#include "nclin/linalg.hpp"

namespace nclin {

// Normal form J^b c^s p^alpha of an element of G_{n,f}^k; alpha packs the
// Z_2 exponents of p_{i,t} = c^{-t} p_i c^t at bit (i-1)*k + t.
struct NormalForm {
  int b = 0;  // exponent of the central involution J
  int s = 0;  // exponent of c in Z_k
  std::uint64_t alpha = 0;

  bool operator==(const NormalForm&) const = default;
};

// f_{i,j,t} in Z_2 with f_{i,i,0} = 0 and f_{i,j,t} = f_{j,i,-t}:
// 1 when (i != j, t = 0), (i <= j, t = 1) or (i >= j, t = -1), else 0.
int f_value(int i, int j, int t, int k);

// The group G_{n,f}^k presented by J^2, c^k, J p_i^2, [p_i, J], [c, J],
// J^{f_{i,j,t}} [p_i, c^{-t} p_j c^t]; multiplication is realized through the
// left action on normal forms, never by free-word rewriting. The order-k
// generalised Weyl-Brauer group is the quotient by H = <r_1..r_{n-1}>,
// realized by coset representatives with alpha_{i,k-1} = 0.
class GwbGroup {
 public:
  GwbGroup(int n, int k);

  int n() const { return n_; }
  int k() const { return k_; }
  int f(int i, int j, int t) const { return f_value(i, j, t, k_); }

  long long order() const;           // 2k * 2^{k(n-1)}
  long long quotient_order() const;  // 2k * 2^{(k-1)(n-1)}

  NormalForm identity() const { return {}; }
  // left multiplication by generators
  NormalForm apply_j(NormalForm x) const;
  NormalForm apply_c(NormalForm x, int times = 1) const;
  NormalForm apply_p(int i, NormalForm x) const;          // i in [1, n-1]
  NormalForm apply_p_it(int i, int t, NormalForm x) const;  // p_{i,t}

  NormalForm mul(const NormalForm& g, NormalForm x) const;  // g * x
  NormalForm inv(const NormalForm& g) const;

  NormalForm r_element(int i) const;  // r_i = J^k p_{i,0} ... p_{i,k-1}
  // coset representative with alpha_{i,k-1} = 0 for all i
  NormalForm reduce(NormalForm x) const;

  // generators sigma_1 = c, sigma_{i+1} = c p_i
  NormalForm sigma(int i) const;

  std::uint64_t alpha_bit(int i, int t) const {
    return std::uint64_t{1} << ((i - 1) * k_ + t);
  }

  std::vector<NormalForm> elements() const;            // all of G_{n,f}^k
  std::vector<NormalForm> quotient_elements() const;   // admissible reps, b included

 private:
  int n_, k_;
};

struct GroupVerification {
  long long order_g = 0, expected_order_g = 0;
  long long order_quotient = 0, expected_order_quotient = 0;
  bool generators_reach_all = false;  // BFS over generator action covers G
  bool relators_identity = false;     // every relator acts as identity on G
  bool r_central = false;
  bool r_order_two = false;
  bool ok() const {
    return order_g == expected_order_g && order_quotient == expected_order_quotient &&
           generators_reach_all && relators_identity && r_central && r_order_two;
  }
};

// Full enumeration + relator/centrality verification; guarded at 1e6 elements.
GroupVerification enumerate_group(int n, int k);

// Left-regular representation of GWB_n^k compressed to the -1 eigenspace of J:
// signed permutation matrices over the admissible (s, alpha) basis.
struct GwbRep {
  int n = 0, k = 0, dim = 0;
  std::vector<Mat> sigma;  // n generator images, each dim x dim

  Mat represent(const NormalForm& g) const;  // via the stored group
  GwbGroup group() const { return GwbGroup(n, k); }
};

GwbRep build_representation(int n, int k, int dim_budget = 4096);

// Normalized trace of the representative of g, computed through the group
// action (no matrix needed).
double rep_trace(const GwbGroup& G, const NormalForm& g);

// U_x = sum_i x_i sigma_i; requires ||x|| = 1 within 1e-10.
Mat vector_to_unitary(const GwbRep& rep, const std::vector<double>& x);

// |tr((U_x^s)* U_y^s) - <x,y>^s| for s = 0..k-1.
std::vector<double> strong_isometry_check(const GwbRep& rep, const std::vector<double>& x,
                                          const std::vector<double>& y);

}  // namespace nclin
