#include "nclin/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace nclin {

CanonicalSdp build_sdp(const CspInstance& inst, bool strict_bounds) {
  if (!inst.homogeneous())
    throw input_error("build_sdp: NonHomogeneousInstance (all shifts c must be 0)");
  CanonicalSdp sdp;
  sdp.k = inst.k;
  sdp.N = inst.num_vars;
  sdp.strict_bounds = strict_bounds;
  int N = sdp.N, k = sdp.k;
  std::map<std::pair<int, int>, double> coeff;
  for (const auto& con : inst.constraints) {
    std::pair<int, int> key{con.i - 1, con.j - 1};
    if (con.kind == ConstraintKind::Equation) {
      // (w/k)(1 + (k-1) X_ij)
      sdp.constant += con.w / k;
      coeff[key] += con.w * (k - 1.0) / k;
    } else {
      // w (k-1)/k (1 - X_ij)
      sdp.constant += con.w * (k - 1.0) / k;
      coeff[key] -= con.w * (k - 1.0) / k;
    }
  }
  if (strict_bounds) {
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) {
        sdp.pairs.emplace_back(i, j);
        auto it = coeff.find({i, j});
        sdp.pair_coeff.push_back(it == coeff.end() ? 0.0 : it->second);
      }
  } else {
    for (const auto& [key, c] : coeff) {
      sdp.pairs.push_back(key);
      sdp.pair_coeff.push_back(c);
    }
  }
  return sdp;
}

namespace {

// smallest eigenvalue of L^{-1} M L^{-T} for the cone step length
double min_gen_eig(const RMat& L, const RMat& M) {
  int n = L.n;
  // T = L^{-1} M L^{-T} via triangular solves
  RMat T = M;
  // solve L Y = M  (column-wise forward substitution on rows)
  for (int c = 0; c < n; ++c) {
    for (int i = 0; i < n; ++i) {
      double s = T(i, c);
      for (int k2 = 0; k2 < i; ++k2) s -= L(i, k2) * T(k2, c);
      T(i, c) = s / L(i, i);
    }
  }
  // solve Z L^T = Y -> rows: L z_i = y_i
  for (int r = 0; r < n; ++r) {
    for (int j = 0; j < n; ++j) {
      double s = T(r, j);
      for (int k2 = 0; k2 < j; ++k2) s -= L(j, k2) * T(r, k2);
      T(r, j) = s / L(j, j);
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double v = 0.5 * (T(i, j) + T(j, i));
      T(i, j) = v;
      T(j, i) = v;
    }
  std::vector<double> w;
  RMat V;
  eig_sym(T, w, V);
  return w.front();
}

struct Scaling {
  RMat W;                  // NT scaling for the PSD block
  std::vector<double> w2;  // u_q / s_q for the LP block
};

}  // namespace

GramSolution solve_sdp(const CanonicalSdp& sdp, double tol, int max_iter) {
  const int N = sdp.N;
  const int m = static_cast<int>(sdp.pairs.size());
  const int rows = N + m;
  const double beta = (sdp.k > 1) ? 1.0 / (sdp.k - 1) : 1.0;

  // min <C,X> with C = -objective coefficients
  RMat C(N, N);
  for (int q = 0; q < m; ++q) {
    auto [i, j] = sdp.pairs[q];
    C(i, j) -= 0.5 * sdp.pair_coeff[q];
    C(j, i) -= 0.5 * sdp.pair_coeff[q];
  }
  std::vector<double> b(rows);
  for (int i = 0; i < N; ++i) b[i] = 1.0;
  for (int q = 0; q < m; ++q) b[N + q] = -beta;

  double cnorm = 1.0 + fro_norm(C);
  double bnorm = 1.0;
  for (double v : b) bnorm += v * v;
  bnorm = std::sqrt(bnorm);

  RMat X = RMat::identity(N);
  std::vector<double> u(m, 1.0);
  std::vector<double> y(rows, 0.0);
  double rho = 1.0 + fro_norm(C);
  RMat S(N, N);
  for (int i = 0; i < N; ++i) S(i, i) = rho;
  std::vector<double> s(m, rho);

  GramSolution out;

  auto primal_obj = [&]() {
    double v = 0;
    for (int q = 0; q < m; ++q) {
      auto [i, j] = sdp.pairs[q];
      v += 2.0 * C(i, j) * X(i, j);
    }
    return v;
  };
  auto dual_obj = [&]() {
    double v = 0;
    for (int l = 0; l < rows; ++l) v += b[l] * y[l];
    return v;
  };

  double mu = 0.0;
  RMat Lx, Ls;
  int it = 0;
  for (it = 0; it < max_iter; ++it) {
    // residuals
    std::vector<double> rp(rows);
    for (int i = 0; i < N; ++i) rp[i] = 1.0 - X(i, i);
    for (int q = 0; q < m; ++q) {
      auto [i, j] = sdp.pairs[q];
      rp[N + q] = -beta - (X(i, j) - u[q]);
    }
    RMat Rd = C;
    for (int i = 0; i < N; ++i) Rd(i, i) -= y[i] + S(i, i);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        if (i != j) Rd(i, j) -= S(i, j);
    for (int q = 0; q < m; ++q) {
      auto [i, j] = sdp.pairs[q];
      Rd(i, j) -= 0.5 * y[N + q];
      Rd(j, i) -= 0.5 * y[N + q];
    }
    std::vector<double> rd_u(m);
    for (int q = 0; q < m; ++q) rd_u[q] = y[N + q] - s[q];  // 0 - s - (-y)

    double trXS = 0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) trXS += X(i, j) * S(j, i);
    double us = 0;
    for (int q = 0; q < m; ++q) us += u[q] * s[q];
    mu = (trXS + us) / (N + m);

    double pobj = primal_obj(), dobj = dual_obj();
    double rp_norm = 0;
    for (double v : rp) rp_norm += v * v;
    rp_norm = std::sqrt(rp_norm);
    double rd_norm2 = 0;
    for (double v : Rd.a) rd_norm2 += v * v;
    for (double v : rd_u) rd_norm2 += v * v;
    double rd_norm = std::sqrt(rd_norm2);
    double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    out.primal_residual = rp_norm / bnorm;
    out.dual_residual = rd_norm / cnorm;
    out.duality_gap = gap;
    if (out.primal_residual <= tol && out.dual_residual <= tol && gap <= tol) {
      out.converged = true;
      break;
    }

    // NT scaling
    if (!cholesky(X, Lx)) throw numeric_error("solve_sdp: primal iterate lost definiteness");
    RMat M(N, N);
    {
      // M = Lx^T S Lx
      RMat SL = S * Lx;
      RMat LxT = transpose(Lx);
      M = LxT * SL;
      for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) {
          double v = 0.5 * (M(i, j) + M(j, i));
          M(i, j) = v;
          M(j, i) = v;
        }
    }
    std::vector<double> dM;
    RMat Q;
    eig_sym(M, dM, Q);
    if (dM.front() <= 0) throw numeric_error("solve_sdp: scaling eigenvalue <= 0");
    RMat Wnt(N, N);
    {
      RMat LQ = Lx * Q;  // W = Lx Q diag(dM^{-1/2}) Q^T Lx^T
      RMat T(N, N);
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) T(i, j) = LQ(i, j) / std::sqrt(std::sqrt(dM[j]) * std::sqrt(dM[j]));
      // T = LQ diag(dM^{-1/2}); Wnt = T LQ^T... build explicitly below
      Wnt = T * transpose(LQ);
      for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) {
          double v = 0.5 * (Wnt(i, j) + Wnt(j, i));
          Wnt(i, j) = v;
          Wnt(j, i) = v;
        }
    }
    std::vector<double> w2(m);
    for (int q = 0; q < m; ++q) w2[q] = u[q] / s[q];

    // Schur complement H_{l,l'} = <A_l, W A_l' W> over E_ii and symmetrized
    // E_pr rows; the LP scaling lands on the bound-row diagonal.
    RMat H(rows, rows);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) H(i, j) = Wnt(i, j) * Wnt(i, j);
    for (int i = 0; i < N; ++i)
      for (int q = 0; q < m; ++q) {
        auto [p, r] = sdp.pairs[q];
        double v = Wnt(i, p) * Wnt(i, r);
        H(i, N + q) = v;
        H(N + q, i) = v;
      }
    for (int q = 0; q < m; ++q) {
      auto [p, r] = sdp.pairs[q];
      for (int q2 = 0; q2 < m; ++q2) {
        auto [p2, r2] = sdp.pairs[q2];
        H(N + q, N + q2) = 0.5 * (Wnt(p, p2) * Wnt(r, r2) + Wnt(p, r2) * Wnt(r, p2));
      }
      H(N + q, N + q) += w2[q];
    }

    RMat Hfac;
    {
      RMat Hr = H;
      double ridge = 0.0;
      int tries = 0;
      while (!cholesky(Hr, Hfac)) {
        ridge = (ridge == 0.0) ? 1e-12 : ridge * 100.0;
        if (++tries > 6) throw numeric_error("solve_sdp: Schur factorization breakdown");
        Hr = H;
        for (int l = 0; l < rows; ++l) Hr(l, l) += ridge;
      }
    }

    // One direction solve for a given sigma, returning step data.
    RMat iS;  // S^{-1} via Cholesky of S
    if (!cholesky(S, Ls)) throw numeric_error("solve_sdp: dual iterate lost definiteness");
    {
      // invert S from its Cholesky factor
      RMat I = RMat::identity(N);
      iS = RMat(N, N);
      for (int c = 0; c < N; ++c) {
        std::vector<double> col(N);
        for (int i = 0; i < N; ++i) col[i] = I(i, c);
        col = cholesky_solve(Ls, col);
        for (int i = 0; i < N; ++i) iS(i, c) = col[i];
      }
    }

    auto direction = [&](double sigma, RMat& dX, RMat& dS, std::vector<double>& du,
                         std::vector<double>& ds, std::vector<double>& dy) {
      RMat RcX = iS;
      for (auto& v : RcX.a) v *= sigma * mu;
      for (size_t z = 0; z < RcX.a.size(); ++z) RcX.a[z] -= X.a[z];
      std::vector<double> rc_u(m);
      for (int q = 0; q < m; ++q) rc_u[q] = sigma * mu / s[q] - u[q];

      // G1 = RcX - W Rd W ; g1 = rc_u - w2 .* rd_u
      RMat WRdW = Wnt * Rd * Wnt;
      RMat G1 = RcX;
      for (size_t z = 0; z < G1.a.size(); ++z) G1.a[z] -= WRdW.a[z];
      std::vector<double> g1(m);
      for (int q = 0; q < m; ++q) g1[q] = rc_u[q] - w2[q] * rd_u[q];

      std::vector<double> rhs(rows);
      for (int i = 0; i < N; ++i) rhs[i] = rp[i] - G1(i, i);
      for (int q = 0; q < m; ++q) {
        auto [i, j] = sdp.pairs[q];
        rhs[N + q] = rp[N + q] - (G1(i, j) - g1[q]);
      }
      dy = cholesky_solve(Hfac, rhs);

      dS = Rd;
      for (int i = 0; i < N; ++i) dS(i, i) -= dy[i];
      for (int q = 0; q < m; ++q) {
        auto [i, j] = sdp.pairs[q];
        dS(i, j) -= 0.5 * dy[N + q];
        dS(j, i) -= 0.5 * dy[N + q];
      }
      ds.assign(m, 0.0);
      for (int q = 0; q < m; ++q) ds[q] = rd_u[q] + dy[N + q];

      RMat WdSW = Wnt * dS * Wnt;
      dX = RcX;
      for (size_t z = 0; z < dX.a.size(); ++z) dX.a[z] -= WdSW.a[z];
      for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) {
          double v = 0.5 * (dX(i, j) + dX(j, i));
          dX(i, j) = v;
          dX(j, i) = v;
        }
      du.assign(m, 0.0);
      for (int q = 0; q < m; ++q) du[q] = rc_u[q] - w2[q] * ds[q];
    };

    auto max_step = [&](const RMat& Lfac, const RMat& dM2, const std::vector<double>& v,
                        const std::vector<double>& dv) {
      double alpha = 1e30;
      double lmin = min_gen_eig(Lfac, dM2);
      if (lmin < 0) alpha = std::min(alpha, -1.0 / lmin);
      for (size_t q = 0; q < v.size(); ++q)
        if (dv[q] < 0) alpha = std::min(alpha, -v[q] / dv[q]);
      return alpha;
    };

    RMat dX, dS;
    std::vector<double> du, ds, dy;
    direction(0.0, dX, dS, du, ds, dy);
    double ap = max_step(Lx, dX, u, du);
    double ad = max_step(Ls, dS, s, ds);
    ap = std::min(1.0, 0.99 * ap);
    ad = std::min(1.0, 0.99 * ad);
    // Mehrotra sigma heuristic from the affine probe
    double tr_aff = 0, us_aff = 0;
    {
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
          tr_aff += (X(i, j) + ap * dX(i, j)) * (S(j, i) + ad * dS(j, i));
      for (int q = 0; q < m; ++q) us_aff += (u[q] + ap * du[q]) * (s[q] + ad * ds[q]);
    }
    double mu_aff = (tr_aff + us_aff) / (N + m);
    double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 1e-6, 0.99);

    direction(sigma, dX, dS, du, ds, dy);
    ap = std::min(1.0, 0.95 * max_step(Lx, dX, u, du));
    ad = std::min(1.0, 0.95 * max_step(Ls, dS, s, ds));

    for (size_t z = 0; z < X.a.size(); ++z) X.a[z] += ap * dX.a[z];
    for (int q = 0; q < m; ++q) u[q] += ap * du[q];
    for (size_t z = 0; z < S.a.size(); ++z) S.a[z] += ad * dS.a[z];
    for (int q = 0; q < m; ++q) s[q] += ad * ds[q];
    for (int l = 0; l < rows; ++l) y[l] += ad * dy[l];
  }

  out.iterations = it;
  out.X = X;
  out.sdp_value = sdp.constant + [&]() {
    double v = 0;
    for (int q = 0; q < m; ++q) {
      auto [i, j] = sdp.pairs[q];
      v += sdp.pair_coeff[q] * X(i, j);
    }
    return v;
  }();
  out.dual_value = sdp.constant - dual_obj();

  // Gram vectors from the eigendecomposition, clipped and row-normalized.
  std::vector<double> w;
  RMat V;
  eig_sym(X, w, V);
  out.min_eigenvalue = w.front();
  out.vectors.assign(N, std::vector<double>(N, 0.0));
  for (int i = 0; i < N; ++i) {
    double nrm2 = 0;
    for (int j = 0; j < N; ++j) {
      double lam = std::max(w[j], 0.0);
      out.vectors[i][j] = V(i, j) * std::sqrt(lam);
      nrm2 += out.vectors[i][j] * out.vectors[i][j];
    }
    if (nrm2 > 0) {
      double inv = 1.0 / std::sqrt(nrm2);
      for (int j = 0; j < N; ++j) out.vectors[i][j] *= inv;
    } else {
      out.vectors[i][i] = 1.0;
    }
  }
  return out;
}

SdpCertificate sdp_value_certificate(const RMat& X, double reported, const CanonicalSdp& sdp) {
  SdpCertificate cert;
  cert.reported_value = reported;
  cert.objective_from_X = sdp.constant;
  for (size_t q = 0; q < sdp.pairs.size(); ++q) {
    auto [i, j] = sdp.pairs[q];
    cert.objective_from_X += sdp.pair_coeff[q] * X(i, j);
  }
  cert.objective_agreement = std::abs(cert.objective_from_X - reported);
  for (int i = 0; i < sdp.N; ++i)
    cert.max_diag_residual = std::max(cert.max_diag_residual, std::abs(X(i, i) - 1.0));
  for (auto [i, j] : sdp.pairs) {
    double viol = -(X(i, j) - sdp.bound());
    cert.max_bound_violation = std::max(cert.max_bound_violation, std::max(0.0, viol));
  }
  std::vector<double> w;
  RMat V;
  eig_sym(X, w, V);
  cert.min_eigenvalue = w.front();
  return cert;
}

SdpCertificate sdp_value_certificate(const GramSolution& sol, const CanonicalSdp& sdp) {
  return sdp_value_certificate(sol.X, sol.sdp_value, sdp);
}

}  // namespace nclin
