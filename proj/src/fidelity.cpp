#include "nclin/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace nclin {

namespace {

// Direct series, for |z| <= 0.55.
cd dilog_series(cd z) {
  cd term = z, sum = z;
  for (int n = 2; n < 200; ++n) {
    term *= z;
    cd add = term / static_cast<double>(n * n);
    sum += add;
    if (std::abs(add) < 1e-17 * (1.0 + std::abs(sum))) break;
  }
  return sum;
}

// Backward finite differences of f(n) = 1/n^2.
double fdiff(int depth, long long n) {
  // sum_{i=0..depth} (-1)^i C(depth,i) / (n-i)^2
  double s = 0.0;
  double binom = 1.0;
  for (int i = 0; i <= depth; ++i) {
    double nn = static_cast<double>(n - i);
    s += ((i & 1) ? -binom : binom) / (nn * nn);
    binom = binom * (depth - i) / (i + 1);
  }
  return s;
}

// Partial series + Abel-summed tail; for 0.55 < |z| <= 1 with |1-z| > 0.5.
// T_j = sum_{n >= M+j} z^n f_j(n) with f_0 = 1/n^2, f_{j+1} the backward
// difference of f_j, satisfies T_j = (z^{M+j} f_j(M+j) + T_{j+1}) / (1-z).
cd dilog_accelerated(cd z) {
  const int M = 128;
  const int depth = 6;
  cd sum = 0.0;
  cd zp = 1.0;
  for (int n = 1; n < M; ++n) {
    zp *= z;
    sum += zp / static_cast<double>(n) / static_cast<double>(n);
  }
  cd inv = 1.0 / (1.0 - z);
  // deepest tail by direct summation (terms ~ n^{-(depth+2)})
  cd tail = 0.0;
  cd zp2 = zp;
  for (int n = M; n < M + depth; ++n) zp2 *= z;  // z^{M+depth-1}
  {
    cd zr = zp2 * z;  // z^{M+depth}
    for (long long n = M + depth; n < M + depth + 600; ++n) {
      tail += zr * fdiff(depth, n);
      zr *= z;
    }
  }
  for (int j = depth - 1; j >= 0; --j) {
    long long n0 = M + j;
    tail = (zp2 * fdiff(j, n0) + tail) * inv;
    zp2 /= z;
  }
  return sum + tail;
}

}  // namespace

cd dilog(cd z) {
  double r = std::abs(z);
  if (r > 1.0 + 1e-9) throw input_error("dilog: |z| > 1");
  if (r > 1.0) z /= r;
  if (r <= 0.55) return dilog_series(z);
  if (std::abs(1.0 - z) <= 0.5) {
    // Li2(z) = pi^2/6 - ln(z) ln(1-z) - Li2(1-z)
    cd one_minus = 1.0 - z;
    cd corr = (std::abs(one_minus) == 0.0) ? cd{0.0, 0.0} : std::log(z) * std::log(one_minus);
    return pi * pi / 6.0 - corr - dilog_series(one_minus);
  }
  return dilog_accelerated(z);
}

DiagonalPolynomial DiagonalPolynomial::cut(int k) {
  DiagonalPolynomial P;
  P.k = k;
  P.c.assign(k, cd{1.0 / k, 0.0});
  return P;
}

DiagonalPolynomial DiagonalPolynomial::smooth(int k) {
  DiagonalPolynomial P;
  P.k = k;
  P.c.assign(k, cd{0.0, 0.0});
  P.c[1] += 1.0;
  P.c[(k - 1) % k] += 1.0;  // k = 2: both land on c_1
  return P;
}

DiagonalPolynomial DiagonalPolynomial::from_full(int k, const std::vector<std::vector<cd>>& C) {
  DiagonalPolynomial P;
  P.k = k;
  P.c.assign(k, cd{0.0, 0.0});
  for (int t = 0; t < k; ++t) P.c[t] = C[t][t];
  return P;
}

int nearest_root_index(int k, double angle) {
  double x = k * wrap_angle(angle) / two_pi + 0.5;
  long long r = static_cast<long long>(std::floor(x));
  return static_cast<int>(r % k);
}

cd fid_closed_form(const DiagonalPolynomial& P, double theta) {
  int k = P.k;
  double x = k * wrap_angle(theta) / two_pi;
  double fl = std::floor(x);
  if (fl >= k) fl = k - 1;  // guard against x == k from rounding
  double frac = x - fl;
  cd sum = 0.0;
  for (int t = 0; t < k; ++t) {
    cd wt = root_of_unity(k, t);
    sum += P.c[t] * root_of_unity(k, static_cast<long long>(t) * static_cast<long long>(fl)) *
           (1.0 + (wt - 1.0) * frac);
  }
  return sum;
}

cd fid_numeric_oracle(int k, const std::vector<std::vector<cd>>& C, double theta) {
  theta = wrap_angle(theta);
  // Breakpoints of phi -> rho(e^{i phi}) and phi -> rho(e^{i(phi+theta)}).
  std::vector<double> bp;
  for (int r = 0; r < k; ++r) {
    bp.push_back(wrap_angle(pi / k + two_pi * r / k));
    bp.push_back(wrap_angle(pi / k + two_pi * r / k - theta));
  }
  bp.push_back(0.0);
  bp.push_back(two_pi);
  std::sort(bp.begin(), bp.end());
  cd total = 0.0;
  for (size_t q = 0; q + 1 < bp.size(); ++q) {
    double len = bp[q + 1] - bp[q];
    if (len <= 0.0) continue;
    double mid = 0.5 * (bp[q] + bp[q + 1]);
    int r1 = nearest_root_index(k, mid);
    int r2 = nearest_root_index(k, mid + theta);
    cd val = 0.0;
    for (int s = 0; s < k; ++s)
      for (int t = 0; t < k; ++t) {
        if (C[s][t] == cd{}) continue;
        val += C[s][t] * root_of_unity(k, -static_cast<long long>(s) * r1) *
               root_of_unity(k, static_cast<long long>(t) * r2);
      }
    total += val * len;
  }
  return total / two_pi;
}

cd fid_numeric_oracle(const DiagonalPolynomial& P, double theta) {
  std::vector<std::vector<cd>> C(P.k, std::vector<cd>(P.k, cd{}));
  for (int t = 0; t < P.k; ++t) C[t][t] = P.c[t];
  return fid_numeric_oracle(P.k, C, theta);
}

namespace {

// G2(z) = sum_{n>=1} sin^2(pi n/k) z^n / n^2 via dilogarithms.
cd g2_dilog(int k, cd z) {
  cd w = root_of_unity(k, 1);
  return 0.5 * dilog(z) - 0.25 * dilog(z * w) - 0.25 * dilog(z * std::conj(w));
}

cd cauchy_integral_dilog(const DiagonalPolynomial& P, cd lambda) {
  int k = P.k;
  // DFT of the diagonal coefficients: c_t = sum_s chat_s w^{st}
  std::vector<cd> chat(k, cd{});
  for (int s = 0; s < k; ++s) {
    cd acc = 0.0;
    for (int t = 0; t < k; ++t)
      acc += P.c[t] * root_of_unity(k, -static_cast<long long>(s) * t);
    chat[s] = acc / static_cast<double>(k);
  }
  cd sum = 0.0;
  for (int s = 0; s < k; ++s) {
    if (chat[s] == cd{}) continue;
    sum += chat[s] * (g2_dilog(k, lambda * root_of_unity(k, -s)) +
                      g2_dilog(k, std::conj(lambda) * root_of_unity(k, s)));
  }
  return P.coeff(0) + (k * k / (pi * pi)) * sum;
}

}  // namespace

cd cauchy_integral(const DiagonalPolynomial& P, cd lambda) {
  double r = std::abs(lambda);
  if (r > 1.0 + 1e-12) throw input_error("cauchy_integral: |lambda| > 1");
  if (r > 1.0) {
    lambda /= r;
    r = 1.0;
  }
  int k = P.k;
  // Near the unit circle the series tail bound fails; use the dilogarithm form.
  if (r > 1.0 - 1e-3) return cauchy_integral_dilog(P, lambda);
  std::vector<double> sin2(k);
  for (int t = 0; t < k; ++t) {
    double s = std::sin(pi * t / k);
    sin2[t] = s * s;
  }
  cd sum = 0.0;
  cd lp = 1.0, lcp = 1.0;
  cd lc = std::conj(lambda);
  double rp = 1.0;
  const double cutoff = 1e-13 * (1.0 - r);
  for (long long n = 1; n <= 1000000; ++n) {
    lp *= lambda;
    lcp *= lc;
    rp *= r;
    double f = sin2[n % k] / static_cast<double>(n) / static_cast<double>(n);
    if (f != 0.0) sum += f * (P.coeff(-n) * lp + P.coeff(n) * lcp);
    if (rp / static_cast<double>(n) / static_cast<double>(n) < cutoff) break;
  }
  return P.coeff(0) + (k * k / (pi * pi)) * sum;
}

double cut_cauchy_integral(int k, cd lambda) {
  cd v = cauchy_integral(DiagonalPolynomial::cut(k), lambda);
  return v.real();
}

double smooth_integral(int k, cd lambda) {
  double r = std::abs(lambda);
  if (r > 1.0 + 1e-12) throw input_error("smooth_integral: |lambda| > 1");
  if (r > 1.0) lambda /= r;
  double s1 = std::sin(pi / k);
  // dilogarithm cross-form
  double dsum = 0.0;
  for (int s = 0; s < k; ++s)
    dsum += std::cos(two_pi * s / k) * dilog(lambda * root_of_unity(k, s)).real();
  double dval = (4.0 * k / (pi * pi)) * s1 * s1 * dsum;
  if (r > 1.0 - 1e-3) return dval;
  // series over n = +-1 (mod k)
  double ssum = 0.0;
  cd lp = 1.0;
  double rp = 1.0;
  const double cutoff = 1e-13 * (1.0 - r);
  for (long long n = 1; n <= 1000000; ++n) {
    lp *= lambda;
    rp *= r;
    long long m = n % k;
    if (m == 1 || m == k - 1)
      ssum += lp.real() / static_cast<double>(n) / static_cast<double>(n);
    if (rp / static_cast<double>(n) / static_cast<double>(n) < cutoff) break;
  }
  double sval = (2.0 * k * k / (pi * pi)) * s1 * s1 * ssum;
  if (std::abs(sval - dval) > 1e-9)
    throw numeric_error("smooth_integral: series and dilogarithm forms disagree");
  return sval;
}

double ratio_maxkcut(int k) {
  if (k < 3) throw input_error("ratio_maxkcut: k >= 3 required");
  double lam = -1.0 / (k - 1);
  cd w = root_of_unity(k, 1);
  double li = (dilog(cd{lam, 0.0}) - dilog(lam * w)).real();
  double val = 1.0 - 1.0 / k - (k / (pi * pi)) * li;
  return val * k / ((k - 1) * (1.0 + 1.0 / (k - 1)));
}

bool RatioFunction::in_domain(cd lambda, double tol) const {
  switch (kind) {
    case RatioKind::MaxKCutInequation:
    case RatioKind::HomEquation:
      return std::abs(lambda.imag()) <= tol && lambda.real() >= -1.0 / (k - 1) - tol &&
             lambda.real() < 1.0;
    case RatioKind::SmoothEquation:
    case RatioKind::SmoothInequation:
      return in_omega_k(k, lambda, tol);
  }
  return false;
}

double RatioFunction::operator()(cd lambda) const {
  if (!in_domain(lambda)) throw input_error("RatioFunction: lambda outside the branch domain");
  double num = 0, den = 0;
  switch (kind) {
    case RatioKind::MaxKCutInequation:
      num = (k / (k - 1.0)) * (1.0 - cut_cauchy_integral(k, lambda));
      den = 1.0 - lambda.real();
      break;
    case RatioKind::HomEquation:
      num = k * cut_cauchy_integral(k, lambda);
      den = 1.0 + (k - 1.0) * lambda.real();
      break;
    case RatioKind::SmoothInequation:
      num = 1.0 - smooth_integral(k, lambda) / 2.0;
      den = 1.0 - lambda.real();
      break;
    case RatioKind::SmoothEquation: {
      double ak = std::norm(1.0 - root_of_unity(k, k / 2));
      num = ak / 2.0 - 1.0 + smooth_integral(k, lambda) / 2.0;
      den = ak / 2.0 - 1.0 + lambda.real();
      break;
    }
  }
  if (std::abs(den) < 1e-9) {
    if (num < -1e-9) throw numeric_error("RatioFunction: negative numerator at denominator zero");
    return std::numeric_limits<double>::infinity();
  }
  return num / den;
}

namespace {

double golden_min(const std::function<double(double)>& f, double a, double b, double tol) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  return f(0.5 * (a + b));
}

}  // namespace

RatioResult ratio_homogeneous(int k, int grid_points, double refine_tol) {
  if (k < 3) throw input_error("ratio_homogeneous: k >= 3 required");
  RatioResult res;
  res.maxcut_branch = ratio_maxkcut(k);
  double lo = -1.0 / (k - 1), hi = 1.0;
  auto eq_branch = [&](double lam) {
    double den = 1.0 + (k - 1) * lam;
    double num = k * cut_cauchy_integral(k, cd{lam, 0.0});
    if (std::abs(den) < 1e-9) {
      if (num < 0)
        throw numeric_error("ratio_homogeneous: negative numerator at denominator zero");
      return 1e18;  // excluded neighborhood
    }
    return num / den;
  };
  int best = 0;
  double bestv = 1e18;
  for (int g = 0; g <= grid_points; ++g) {
    double lam = lo + (hi - 1e-9 - lo) * g / grid_points;
    double v = eq_branch(lam);
    if (v < bestv) {
      bestv = v;
      best = g;
    }
  }
  double step = (hi - 1e-9 - lo) / grid_points;
  double la = std::max(lo + 1e-9, lo + (best - 1) * step);
  double lb = std::min(hi - 1e-9, lo + (best + 1) * step);
  res.equation_branch = golden_min(eq_branch, la, lb, refine_tol);
  double lam_star = 0.5 * (la + lb);  // refined below
  {
    // recover argmin by a short scan at refine_tol resolution
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = la, b = lb, c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = eq_branch(c), fd = eq_branch(d);
    while (b - a > refine_tol) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - gr * (b - a);
        fc = eq_branch(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + gr * (b - a);
        fd = eq_branch(d);
      }
    }
    lam_star = 0.5 * (a + b);
  }
  if (res.maxcut_branch <= res.equation_branch) {
    res.ratio = res.maxcut_branch;
    res.argmin = cd{lo, 0.0};
  } else {
    res.ratio = res.equation_branch;
    res.argmin = cd{lam_star, 0.0};
  }
  return res;
}

bool in_omega_k(int k, cd lambda, double tol) {
  // inside iff on the left of every directed edge v_j -> v_{j+1}
  for (int j = 0; j < k; ++j) {
    cd a = root_of_unity(k, j), b = root_of_unity(k, j + 1);
    cd e = b - a, p = lambda - a;
    double cross = e.real() * p.imag() - e.imag() * p.real();
    if (cross < -tol) return false;
  }
  return true;
}

cd project_to_omega_k(int k, cd lambda) {
  if (in_omega_k(k, lambda, 0.0)) return lambda;
  double bestd = 1e300;
  cd best = root_of_unity(k, 0);
  for (int j = 0; j < k; ++j) {
    cd a = root_of_unity(k, j), b = root_of_unity(k, j + 1);
    cd e = b - a;
    double t = ((lambda - a).real() * e.real() + (lambda - a).imag() * e.imag()) / std::norm(e);
    t = std::clamp(t, 0.0, 1.0);
    cd q = a + t * e;
    double d2 = std::norm(lambda - q);
    if (d2 < bestd) {
      bestd = d2;
      best = q;
    }
  }
  return best;
}

namespace {

double nelder_mead_2d(const std::function<double(double, double)>& f, double x0, double y0,
                      double scale, double tol, int max_iter = 400) {
  struct Pt {
    double x, y, v;
  };
  std::vector<Pt> s = {{x0, y0, f(x0, y0)},
                       {x0 + scale, y0, f(x0 + scale, y0)},
                       {x0, y0 + scale, f(x0, y0 + scale)}};
  auto by_v = [](const Pt& a, const Pt& b) { return a.v < b.v; };
  for (int it = 0; it < max_iter; ++it) {
    std::sort(s.begin(), s.end(), by_v);
    double spread = std::hypot(s[2].x - s[0].x, s[2].y - s[0].y);
    if (spread < tol) break;
    double cx = 0.5 * (s[0].x + s[1].x), cy = 0.5 * (s[0].y + s[1].y);
    double rx = cx + (cx - s[2].x), ry = cy + (cy - s[2].y);
    double rv = f(rx, ry);
    if (rv < s[0].v) {
      double ex = cx + 2.0 * (cx - s[2].x), ey = cy + 2.0 * (cy - s[2].y);
      double ev = f(ex, ey);
      s[2] = (ev < rv) ? Pt{ex, ey, ev} : Pt{rx, ry, rv};
    } else if (rv < s[1].v) {
      s[2] = {rx, ry, rv};
    } else {
      double kx = cx + 0.5 * (s[2].x - cx), ky = cy + 0.5 * (s[2].y - cy);
      double kv = f(kx, ky);
      if (kv < s[2].v) {
        s[2] = {kx, ky, kv};
      } else {  // shrink
        for (int i = 1; i < 3; ++i) {
          s[i].x = s[0].x + 0.5 * (s[i].x - s[0].x);
          s[i].y = s[0].y + 0.5 * (s[i].y - s[0].y);
          s[i].v = f(s[i].x, s[i].y);
        }
      }
    }
  }
  std::sort(s.begin(), s.end(), by_v);
  return s[0].v;
}

}  // namespace

RatioResult ratio_smooth(int k, int simplex_grid_budget, double refine_tol) {
  if (k < 3) throw input_error("ratio_smooth: k >= 3 required");
  double ak = 0.0;
  {
    cd w = root_of_unity(k, k / 2);
    ak = std::norm(1.0 - w);
  }
  auto branch = [&](cd lam, bool equation) {
    double I = smooth_integral(k, lam);
    double num, den;
    if (equation) {
      num = ak / 2.0 - 1.0 + I / 2.0;
      den = ak / 2.0 - 1.0 + lam.real();
    } else {
      num = 1.0 - I / 2.0;
      den = 1.0 - lam.real();
    }
    if (std::abs(den) < 1e-9) {
      if (num < -1e-9) throw numeric_error("ratio_smooth: negative numerator at singular point");
      return 1e18;
    }
    return num / den;
  };
  // per-triangle barycentric grid with ~budget^2 points over the fan
  int g = std::max(24, static_cast<int>(std::sqrt(2.0 * simplex_grid_budget *
                                                  simplex_grid_budget / k)));
  RatioResult res;
  double best[2] = {1e18, 1e18};
  cd bestl[2] = {0.0, 0.0};
  for (int j = 0; j < k; ++j) {
    cd va = root_of_unity(k, j), vb = root_of_unity(k, j + 1);
    for (int p = 0; p <= g; ++p)
      for (int q = 0; p + q <= g; ++q) {
        cd lam = (static_cast<double>(p) / g) * va + (static_cast<double>(q) / g) * vb;
        for (int eq = 0; eq < 2; ++eq) {
          double v = branch(lam, eq == 1);
          if (v < best[eq]) {
            best[eq] = v;
            bestl[eq] = lam;
          }
        }
      }
  }
  double refined[2];
  cd refined_arg[2];
  for (int eq = 0; eq < 2; ++eq) {
    cd l0 = bestl[eq];
    auto f = [&](double x, double y) { return branch(project_to_omega_k(k, cd{x, y}), eq == 1); };
    refined[eq] = nelder_mead_2d(f, l0.real(), l0.imag(), 2.0 / g, refine_tol);
    refined[eq] = std::min(refined[eq], best[eq]);
    refined_arg[eq] = l0;
  }
  res.equation_branch = refined[1];
  res.maxcut_branch = refined[0];  // inequation branch
  if (refined[0] <= refined[1]) {
    res.ratio = refined[0];
    res.argmin = refined_arg[0];
  } else {
    res.ratio = refined[1];
    res.argmin = refined_arg[1];
  }
  return res;
}

bool MonotonicityReport::passed() const {
  return monotone && std::abs(f_at_one - 1.0) <= 1e-9 && min_second_diff >= -1e-8;
}

MonotonicityReport monotonicity_check(int k, int grid_points) {
  MonotonicityReport rep;
  auto f = [&](double lam) { return cut_cauchy_integral(k, cd{lam, 0.0}); };
  double lo = -1.0, hi = 1.0 - 1e-6;
  double prev_g = 0.0;
  rep.worst_step = 1e300;
  rep.min_second_diff = 1e300;
  const double h = 1e-2;
  for (int i = 0; i <= grid_points; ++i) {
    double lam = lo + (hi - lo) * i / grid_points;
    double g = (1.0 - f(lam)) / (1.0 - lam);
    if (i > 0) rep.worst_step = std::min(rep.worst_step, g - prev_g);
    prev_g = g;
    if (lam - h >= -1.0 && lam + h <= 1.0 && (i % 25 == 0)) {
      double dd = (f(lam + h) - 2.0 * f(lam) + f(lam - h)) / (h * h);
      rep.min_second_diff = std::min(rep.min_second_diff, dd);
    }
  }
  rep.monotone = rep.worst_step >= -1e-9;
  // endpoint through the dilogarithm closed form at lambda = 1
  rep.f_at_one = cut_cauchy_integral(k, cd{1.0, 0.0});
  return rep;
}

}  // namespace nclin
