#include "nclin/gwb.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

namespace nclin {

int f_value(int i, int j, int t, int k) {
  // Sum of the firing cases mod 2. For k >= 3 the t = 1 and t = -1 cases are
  // disjoint; at k = 2 they coincide and must cancel on i = j, otherwise
  // r_i^2 = J instead of e.
  t = ((t % k) + k) % k;
  int f = 0;
  if (i != j && t == 0) f ^= 1;
  if (i <= j && t == 1) f ^= 1;
  if (i >= j && t == (k - 1) % k) f ^= 1;
  return f;
}

GwbGroup::GwbGroup(int n, int k) : n_(n), k_(k) {
  if (n < 2 || k < 2) throw input_error("GwbGroup: need n >= 2 and k >= 2");
  if ((n - 1) * k > 62) throw budget_error("GwbGroup: alpha exceeds 64-bit packing");
}

long long GwbGroup::order() const {
  return 2LL * k_ * (1LL << (static_cast<long long>(k_) * (n_ - 1)));
}

long long GwbGroup::quotient_order() const {
  return 2LL * k_ * (1LL << (static_cast<long long>(k_ - 1) * (n_ - 1)));
}

NormalForm GwbGroup::apply_j(NormalForm x) const {
  x.b ^= 1;
  return x;
}

NormalForm GwbGroup::apply_c(NormalForm x, int times) const {
  x.s = ((x.s + times) % k_ + k_) % k_;
  return x;
}

NormalForm GwbGroup::apply_p(int i, NormalForm x) const {
  // pi_{p_i}(J^b c^s p^alpha) = J^{b + alpha_{i,s} + sum_{(j,t)<=(i,s)} alpha_{j,t} f_{i,j,t-s}}
  //                             c^s p^{alpha + E_{i,s}}
  int s = x.s;
  int par = (x.alpha >> ((i - 1) * k_ + s)) & 1;  // alpha_{i,s}
  for (int j = 1; j <= i; ++j) {
    int tmax = (j < i) ? k_ - 1 : s;  // lexicographic (j,t) <= (i,s), i major
    for (int t = 0; t <= tmax; ++t) {
      if ((x.alpha >> ((j - 1) * k_ + t)) & 1) par ^= f(i, j, t - s);
    }
  }
  x.b ^= par & 1;
  x.alpha ^= alpha_bit(i, s);
  return x;
}

NormalForm GwbGroup::apply_p_it(int i, int t, NormalForm x) const {
  x = apply_c(x, t);
  x = apply_p(i, x);
  x = apply_c(x, -t);
  return x;
}

NormalForm GwbGroup::mul(const NormalForm& g, NormalForm x) const {
  // left-multiply by the word J^b c^s p^alpha: rightmost factor acts first
  for (int i = n_ - 1; i >= 1; --i)
    for (int t = k_ - 1; t >= 0; --t)
      if ((g.alpha >> ((i - 1) * k_ + t)) & 1) x = apply_p_it(i, t, x);
  x = apply_c(x, g.s);
  if (g.b) x = apply_j(x);
  return x;
}

NormalForm GwbGroup::inv(const NormalForm& g) const {
  // (J^b c^s A_1...A_L)^{-1} = A_L^{-1}...A_1^{-1} c^{-s} J^b with
  // A^{-1} = J A for each A = p_{i,t}
  NormalForm x = identity();
  if (g.b) x = apply_j(x);
  x = apply_c(x, -g.s);
  for (int i = 1; i <= n_ - 1; ++i)
    for (int t = 0; t < k_; ++t)
      if ((g.alpha >> ((i - 1) * k_ + t)) & 1) {
        x = apply_p_it(i, t, x);
        x = apply_j(x);
      }
  return x;
}

NormalForm GwbGroup::r_element(int i) const {
  NormalForm r;
  r.b = k_ % 2;
  r.s = 0;
  for (int t = 0; t < k_; ++t) r.alpha |= alpha_bit(i, t);
  return r;
}

NormalForm GwbGroup::reduce(NormalForm x) const {
  for (int i = 1; i <= n_ - 1; ++i)
    if ((x.alpha >> ((i - 1) * k_ + (k_ - 1))) & 1) x = mul(r_element(i), x);
  return x;
}

NormalForm GwbGroup::sigma(int i) const {
  if (i < 1 || i > n_) throw input_error("sigma index out of range");
  NormalForm g;
  g.s = 1;
  if (i >= 2) g.alpha = alpha_bit(i - 1, 0);  // c * p_{i-1}
  return g;
}

std::vector<NormalForm> GwbGroup::elements() const {
  std::vector<NormalForm> out;
  long long bits = static_cast<long long>(k_) * (n_ - 1);
  out.reserve(static_cast<size_t>(order()));
  for (int b = 0; b < 2; ++b)
    for (int s = 0; s < k_; ++s)
      for (std::uint64_t a = 0; a < (std::uint64_t{1} << bits); ++a)
        out.push_back({b, s, a});
  return out;
}

std::vector<NormalForm> GwbGroup::quotient_elements() const {
  std::vector<NormalForm> out;
  out.reserve(static_cast<size_t>(quotient_order()));
  for (const auto& g : elements()) {
    bool admissible = true;
    for (int i = 1; i <= n_ - 1 && admissible; ++i)
      if ((g.alpha >> ((i - 1) * k_ + (k_ - 1))) & 1) admissible = false;
    if (admissible) out.push_back(g);
  }
  return out;
}

namespace {

std::uint64_t nf_key(const NormalForm& g, int n, int k) {
  return (static_cast<std::uint64_t>(g.b) << 62) |
         (static_cast<std::uint64_t>(g.s) << 56) | g.alpha;
  (void)n;
  (void)k;
}

}  // namespace

GroupVerification enumerate_group(int n, int k) {
  GwbGroup G(n, k);
  GroupVerification rep;
  rep.expected_order_g = G.order();
  rep.expected_order_quotient = G.quotient_order();
  if (rep.expected_order_g > 1000000) throw budget_error("enumerate_group: order exceeds 1e6");

  auto elems = G.elements();
  rep.order_g = static_cast<long long>(elems.size());

  // generators reach every normal form (left Cayley graph BFS)
  {
    std::set<std::uint64_t> seen;
    std::queue<NormalForm> q;
    q.push(G.identity());
    seen.insert(nf_key(G.identity(), n, k));
    while (!q.empty()) {
      NormalForm x = q.front();
      q.pop();
      std::vector<NormalForm> nb;
      nb.push_back(G.apply_j(x));
      nb.push_back(G.apply_c(x));
      for (int i = 1; i <= n - 1; ++i) nb.push_back(G.apply_p(i, x));
      for (const auto& y : nb)
        if (seen.insert(nf_key(y, n, k)).second) q.push(y);
    }
    rep.generators_reach_all = (static_cast<long long>(seen.size()) == rep.order_g);
  }

  // every relator acts as the identity map on the full normal-form set
  {
    auto check_all = [&](auto&& word_action) {
      for (const auto& x : elems)
        if (!(word_action(x) == x)) return false;
      return true;
    };
    bool ok = true;
    ok = ok && check_all([&](NormalForm x) { return G.apply_j(G.apply_j(x)); });
    ok = ok && check_all([&](NormalForm x) { return G.apply_c(x, k); });
    for (int i = 1; i <= n - 1 && ok; ++i) {
      ok = ok && check_all([&](NormalForm x) {
        return G.apply_j(G.apply_p(i, G.apply_p(i, x)));  // J p_i^2
      });
      ok = ok && check_all([&](NormalForm x) {
        // [p_i, J] = p_i J p_i^{-1} J^{-1}; use p^{-1} = J p
        NormalForm y = G.apply_j(x);
        y = G.apply_p(i, G.apply_j(y));
        y = G.apply_j(y);
        return G.apply_p(i, y);
      });
    }
    ok = ok && check_all([&](NormalForm x) {
      // [c, J]
      NormalForm y = G.apply_j(x);
      y = G.apply_c(y, -1);
      y = G.apply_j(y);
      return G.apply_c(y);
    });
    for (int i = 1; i <= n - 1 && ok; ++i)
      for (int j = 1; j <= n - 1 && ok; ++j)
        for (int t = 0; t < k && ok; ++t) {
          // J^{f_{i,j,t}} [p_i, p_{j,t}] with x^{-1} = J x for x = p_i, p_{j,t}
          ok = check_all([&](NormalForm x) {
            NormalForm y = G.apply_j(G.apply_p_it(j, t, x));
            y = G.apply_j(G.apply_p(i, y));
            y = G.apply_p_it(j, t, y);
            y = G.apply_p(i, y);
            if (G.f(i, j, t)) y = G.apply_j(y);
            return y;
          });
        }
    rep.relators_identity = ok;
  }

  // r_i central of order 2
  {
    bool central = true, order2 = true;
    for (int i = 1; i <= n - 1; ++i) {
      NormalForm r = G.r_element(i);
      if (!(G.mul(r, r) == G.identity())) order2 = false;
      // conjugation by each generator fixes r
      std::vector<NormalForm> gens = {NormalForm{1, 0, 0}, NormalForm{0, 1, 0}};
      for (int p = 1; p <= n - 1; ++p) gens.push_back({0, 0, G.alpha_bit(p, 0)});
      for (const auto& g : gens) {
        NormalForm lhs = G.mul(g, r);
        NormalForm rhs = G.mul(r, g);
        if (!(lhs == rhs)) central = false;
      }
    }
    rep.r_central = central;
    rep.r_order_two = order2;
  }

  // quotient order by explicit reduction
  {
    std::set<std::uint64_t> reps;
    for (const auto& g : elems) reps.insert(nf_key(G.reduce(g), n, k));
    rep.order_quotient = static_cast<long long>(reps.size());
  }
  return rep;
}

GwbRep build_representation(int n, int k, int dim_budget) {
  GwbGroup G(n, k);
  long long dim = G.quotient_order() / 2;
  if (dim > dim_budget) throw budget_error("build_representation: dimension exceeds budget");
  GwbRep rep;
  rep.n = n;
  rep.k = k;
  rep.dim = static_cast<int>(dim);

  // admissible basis (b = 0): index = s * 2^{(k-1)(n-1)} + packed alpha
  auto pack = [&](const NormalForm& g) {
    std::uint64_t packed = 0;
    for (int i = 1; i <= n - 1; ++i)
      for (int t = 0; t < k - 1; ++t)
        if ((g.alpha >> ((i - 1) * k + t)) & 1) packed |= std::uint64_t{1} << ((i - 1) * (k - 1) + t);
    return static_cast<int>(g.s * (1LL << ((k - 1) * (n - 1))) + packed);
  };
  auto unpack = [&](int idx) {
    NormalForm g;
    long long block = 1LL << ((k - 1) * (n - 1));
    g.s = static_cast<int>(idx / block);
    std::uint64_t packed = static_cast<std::uint64_t>(idx % block);
    for (int i = 1; i <= n - 1; ++i)
      for (int t = 0; t < k - 1; ++t)
        if ((packed >> ((i - 1) * (k - 1) + t)) & 1) g.alpha |= G.alpha_bit(i, t);
    return g;
  };

  auto gen_matrix = [&](const NormalForm& g) {
    Mat M(rep.dim, rep.dim);
    for (int col = 0; col < rep.dim; ++col) {
      NormalForm y = unpack(col);
      NormalForm z = G.reduce(G.mul(g, y));
      int row = pack(z);
      M(row, col) = (z.b ? -1.0 : 1.0);
    }
    return M;
  };

  for (int i = 1; i <= n; ++i) rep.sigma.push_back(gen_matrix(G.sigma(i)));
  return rep;
}

Mat GwbRep::represent(const NormalForm& g) const {
  GwbGroup G(n, k);
  auto pack = [&](const NormalForm& x) {
    std::uint64_t packed = 0;
    for (int i = 1; i <= n - 1; ++i)
      for (int t = 0; t < k - 1; ++t)
        if ((x.alpha >> ((i - 1) * k + t)) & 1) packed |= std::uint64_t{1} << ((i - 1) * (k - 1) + t);
    return static_cast<int>(x.s * (1LL << ((k - 1) * (n - 1))) + packed);
  };
  Mat M(dim, dim);
  long long block = 1LL << ((k - 1) * (n - 1));
  for (int col = 0; col < dim; ++col) {
    NormalForm y;
    y.s = static_cast<int>(col / block);
    std::uint64_t packed = static_cast<std::uint64_t>(col % block);
    for (int i = 1; i <= n - 1; ++i)
      for (int t = 0; t < k - 1; ++t)
        if ((packed >> ((i - 1) * (k - 1) + t)) & 1) y.alpha |= G.alpha_bit(i, t);
    NormalForm z = G.reduce(G.mul(g, y));
    M(pack(z), col) = (z.b ? -1.0 : 1.0);
  }
  return M;
}

double rep_trace(const GwbGroup& G, const NormalForm& g) {
  // tr over the admissible b = 0 basis; diagonal entry is (-1)^b when g*y ~ y
  auto quot = G.quotient_elements();
  double tr = 0.0;
  long long dim = G.quotient_order() / 2;
  for (const auto& y : quot) {
    if (y.b != 0) continue;
    NormalForm z = G.reduce(G.mul(g, y));
    if (z.s == y.s && z.alpha == y.alpha) tr += (z.b ? -1.0 : 1.0);
  }
  return tr / static_cast<double>(dim);
}

Mat vector_to_unitary(const GwbRep& rep, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != rep.n)
    throw input_error("vector_to_unitary: vector length must equal generator count");
  double nrm = 0;
  for (double v : x) nrm += v * v;
  if (std::abs(nrm - 1.0) > 1e-10)
    throw input_error("vector_to_unitary: input vector must be unit norm");
  Mat U(rep.dim, rep.dim);
  for (int i = 0; i < rep.n; ++i)
    for (size_t z = 0; z < U.a.size(); ++z) U.a[z] += x[i] * rep.sigma[i].a[z];
  return U;
}

std::vector<double> strong_isometry_check(const GwbRep& rep, const std::vector<double>& x,
                                          const std::vector<double>& y) {
  Mat Ux = vector_to_unitary(rep, x);
  Mat Uy = vector_to_unitary(rep, y);
  double ip = 0;
  for (size_t i = 0; i < x.size(); ++i) ip += x[i] * y[i];
  std::vector<double> res;
  Mat Px = Mat::identity(rep.dim), Py = Mat::identity(rep.dim);
  double ips = 1.0;
  for (int s = 0; s < rep.k; ++s) {
    cd tr = hs_inner(Px, Py);  // tr((U_x^s)* U_y^s)
    res.push_back(std::abs(tr - cd{ips, 0.0}));
    Px = Px * Ux;
    Py = Py * Uy;
    ips *= ip;
  }
  return res;
}

}  // namespace nclin
