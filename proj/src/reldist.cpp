#include "nclin/reldist.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace nclin {

double WrappedCauchy::pdf(double theta) const {
  if (uniform()) return 1.0 / two_pi;
  if (dirac()) throw numeric_error("WrappedCauchy::pdf: Dirac branch has no density");
  return std::sinh(gamma) / (two_pi * (std::cosh(gamma) - std::cos(theta - theta0)));
}

cd WrappedCauchy::chi(int n) const {
  if (n == 0) return 1.0;
  if (uniform()) return 0.0;
  double decay = dirac() ? 1.0 : std::exp(-std::abs(n) * gamma);
  return decay * cd{std::cos(n * theta0), std::sin(n * theta0)};
}

WrappedCauchy delta_lambda(cd lambda) {
  double r = std::abs(lambda);
  if (r > 1.0 + 1e-12) throw input_error("delta_lambda: |lambda| > 1");
  WrappedCauchy w;
  if (r == 0.0) {
    w.theta0 = 0.0;
    w.gamma = std::numeric_limits<double>::infinity();
    return w;
  }
  w.theta0 = angle_of(lambda);
  w.gamma = (r >= 1.0) ? 0.0 : -std::log(r);
  return w;
}

void AngularHistogram::add(double theta, double m) {
  int b = static_cast<int>(wrap_angle(theta) / two_pi * bins);
  if (b >= bins) b = bins - 1;
  mass[b] += m;
}

double AngularHistogram::total() const {
  double s = 0;
  for (double v : mass) s += v;
  return s;
}

double AngularHistogram::tv_distance(const std::function<double(double)>& pdf) const {
  // 16-point Gauss-Legendre nodes on [-1,1]
  static const double xs[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                               0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                               0.9445750230732326, 0.9894009349916499};
  static const double ws[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                               0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                               0.0622535239386479, 0.0271524594117541};
  double tv = 0.0;
  for (int b = 0; b < bins; ++b) {
    double a = two_pi * b / bins, c = two_pi * (b + 1) / bins;
    double mid = 0.5 * (a + c), half = 0.5 * (c - a);
    double p = 0.0;
    for (int i = 0; i < 8; ++i)
      p += ws[i] * (pdf(mid + half * xs[i]) + pdf(mid - half * xs[i]));
    p *= half;
    tv += std::abs(mass[b] - p);
  }
  return 0.5 * tv;
}

namespace {

struct EstChunk {
  AngularHistogram hist{256};
  std::vector<cd> sum;
  std::vector<double> sum2;
};

}  // namespace

RelDistEstimate estimate_relative_distribution(const Mat& A, const Mat& B, int samples,
                                               std::uint64_t seed, int n_max, int bins,
                                               int threads) {
  if (A.n != B.n) throw input_error("estimate_relative_distribution: dimension mismatch");
  if (samples < 1) throw input_error("estimate_relative_distribution: samples >= 1 required");
  int d = A.n;
  const int chunk_size = 64;  // fixed partition, independent of worker count
  int chunks = (samples + chunk_size - 1) / chunk_size;
  std::vector<EstChunk> parts(chunks);
  auto run_chunk = [&](int c) {
    EstChunk& part = parts[c];
    part.hist = AngularHistogram(bins);
    part.sum.assign(n_max + 1, cd{});
    part.sum2.assign(n_max + 1, 0.0);
    int lo = c * chunk_size, hi = std::min(samples, lo + chunk_size);
    for (int sidx = lo; sidx < hi; ++sidx) {
      Rng rng(seed, sidx);
      Mat U = haar_unitary(d, rng);
      SpectralUnitary SA = spectral_decompose(U * A);
      SpectralUnitary SB = spectral_decompose(U * B);
      WeightMeasure wm = weight_measure(SA, SB);
      for (const auto& at : wm.atoms) part.hist.add(at.theta, at.mass / samples);
      for (int n = 0; n <= n_max; ++n) {
        cd v = wm.chi(n);
        part.sum[n] += v;
        part.sum2[n] += std::norm(v);
      }
    }
  };
  threads = std::max(1, std::min(threads, chunks));
  if (threads == 1) {
    for (int c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&] {
        for (int c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) run_chunk(c);
      });
    for (auto& t : pool) t.join();
  }
  RelDistEstimate est;
  est.hist = AngularHistogram(bins);
  est.samples = samples;
  est.chi_hat.assign(n_max + 1, cd{});
  est.chi_se.assign(n_max + 1, 0.0);
  std::vector<cd> sum(n_max + 1, cd{});
  std::vector<double> sum2(n_max + 1, 0.0);
  for (int c = 0; c < chunks; ++c) {  // fixed reduction order
    for (int b = 0; b < bins; ++b) est.hist.mass[b] += parts[c].hist.mass[b];
    for (int n = 0; n <= n_max; ++n) {
      sum[n] += parts[c].sum[n];
      sum2[n] += parts[c].sum2[n];
    }
  }
  for (int n = 0; n <= n_max; ++n) {
    est.chi_hat[n] = sum[n] / static_cast<double>(samples);
    double var = sum2[n] / samples - std::norm(est.chi_hat[n]);
    est.chi_se[n] = std::sqrt(std::max(var, 0.0) / samples);
  }
  return est;
}

cd chi3_formula(const std::vector<cd>& diag) {
  int d = static_cast<int>(diag.size());
  cd lam{}, d2{}, d3{};
  for (cd z : diag) {
    lam += z;
    d2 += z * z;
    d3 += z * z * z;
  }
  lam /= d;
  d2 /= d;
  d3 /= d;
  cd l3 = lam * lam * lam;
  return l3 + (d3 + l3 - 2.0 * d2 / static_cast<double>(d)) / (static_cast<double>(d) * d - 1.0);
}

cd chi3_formula_fixed(const std::vector<cd>& diag) {
  int d = static_cast<int>(diag.size());
  cd lam{}, d2{}, d3{};
  for (cd z : diag) {
    lam += z;
    d2 += z * z;
    d3 += z * z * z;
  }
  lam /= d;
  d2 /= d;
  d3 /= d;
  cd l3 = lam * lam * lam;
  return l3 + (d3 + l3 - 2.0 * lam * d2) / (static_cast<double>(d) * d - 1.0);
}

cd chi_n_quadrature_d2(const std::vector<cd>& diag, int n, int grid) {
  if (diag.size() != 2) throw input_error("chi_n_quadrature_d2: d = 2 only");
  Mat D(2, 2);
  D(0, 0) = diag[0];
  D(1, 1) = diag[1];
  cd acc = 0;
  double wsum = 0;
  for (int it = 0; it < grid; ++it) {
    double t = pi * (it + 0.5) / grid;
    double wt = 0.5 * std::sin(t) * (pi / grid);
    for (int i1 = 0; i1 < grid; ++i1) {
      double p1 = two_pi * (i1 + 0.5) / grid;
      for (int i2 = 0; i2 < grid; ++i2) {
        double p2 = two_pi * (i2 + 0.5) / grid;
        cd a = std::cos(t / 2) * cd{std::cos(p1), std::sin(p1)};
        cd b = std::sin(t / 2) * cd{std::cos(p2), std::sin(p2)};
        Mat V(2, 2);
        V(0, 0) = a;
        V(0, 1) = b;
        V(1, 0) = -std::conj(b);
        V(1, 1) = std::conj(a);
        Mat VD = V * D;
        cd tr = ntrace(mat_pow(adjoint(V), n) * mat_pow(VD, n));
        double w = wt / grid / grid;
        acc += tr * w;
        wsum += w;
      }
    }
  }
  return acc / wsum;
}

MomentEstimate chi_n_mc(const Mat& D, int n, int samples, std::uint64_t seed) {
  int d = D.n;
  cd sum{};
  double sum2 = 0;
  for (int s = 0; s < samples; ++s) {
    Rng rng(seed, s);
    Mat U = haar_unitary(d, rng);
    cd v = ntrace(mat_pow(adjoint(U), n) * mat_pow(U * D, n));
    sum += v;
    sum2 += std::norm(v);
  }
  MomentEstimate est;
  est.value = sum / static_cast<double>(samples);
  double var = sum2 / samples - std::norm(est.value);
  est.se = std::sqrt(std::max(var, 0.0) / samples);
  return est;
}

std::vector<CauchyLawRow> cauchy_law_convergence_report(const Mat& A, const Mat& B,
                                                        const std::vector<int>& tensor_factors,
                                                        int samples, std::uint64_t seed,
                                                        int n_max) {
  cd lambda = hs_inner(A, B);
  WrappedCauchy wc = delta_lambda(lambda);
  std::vector<CauchyLawRow> rows;
  for (int m : tensor_factors) {
    if (A.n * m > 512) throw budget_error("cauchy_law_convergence_report: d*m > 512");
    Mat Im = Mat::identity(m);
    Mat Am = kron(A, Im), Bm = kron(B, Im);
    RelDistEstimate est = estimate_relative_distribution(Am, Bm, samples, seed, n_max);
    for (int n = 1; n <= n_max; ++n) {
      CauchyLawRow row;
      row.m = m;
      row.n = n;
      row.chi_hat = est.chi_hat[n];
      row.chi_theory = wc.chi(n);
      row.stderr_ = est.chi_se[n];
      row.deviation = std::abs(row.chi_hat - row.chi_theory);
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<double> algebraic_relative_check(const GwbRep& rep, const std::vector<double>& x,
                                             const std::vector<double>& y) {
  Mat Ux = vector_to_unitary(rep, x);
  Mat Uy = vector_to_unitary(rep, y);
  double ip = 0;
  for (size_t i = 0; i < x.size(); ++i) ip += x[i] * y[i];
  std::vector<double> res;
  Mat Px = Mat::identity(rep.dim), Py = Mat::identity(rep.dim);
  double ipn = 1.0;
  for (int n = 0; n < rep.k; ++n) {
    // tr(U_x^n U_y^{-n}) with U_y^{-n} = (U_y^n)*
    cd tr = ntrace(Px * adjoint(Py));
    res.push_back(std::abs(tr - cd{ipn, 0.0}));
    Px = Px * Ux;
    Py = Py * Uy;
    ipn *= ip;
  }
  return res;
}

}  // namespace nclin
