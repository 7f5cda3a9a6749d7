#include "dcsbm/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

#include "dcsbm/errors.hpp"
#include "dcsbm/io.hpp"

namespace dcsbm::spectra {

namespace {

constexpr double kSymTol = 1e-10;
constexpr int kMaxSweeps = 50;

// Householder reduction of a symmetric matrix to tridiagonal form,
// eigenvalues-only variant. Operates on the lower triangle in place and
// keeps the inner loops streaming over contiguous rows. On return d holds
// the diagonal and e[1..n-1] the subdiagonal (e[0] = 0).
void tridiagonalize(Matrix& a, std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = a.n();
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  if (n == 1) {
    d[0] = a(0, 0);
    return;
  }
  std::vector<double> p(n, 0.0);
  for (std::size_t i = n - 1; i >= 1; --i) {
    const std::size_t l = i - 1;
    double* ai = a.row(i);
    if (l > 0) {
      double scl = 0.0;
      for (std::size_t k = 0; k <= l; ++k) scl += std::abs(ai[k]);
      if (scl == 0.0) {
        e[i] = ai[l];
        continue;
      }
      double h = 0.0;
      for (std::size_t k = 0; k <= l; ++k) {
        ai[k] /= scl;
        h += ai[k] * ai[k];
      }
      double f = ai[l];
      const double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
      e[i] = scl * g;
      h -= f * g;  // h = |v|^2 / 2 for the stored Householder vector v
      ai[l] = f - g;

      // p = A v, symmetric product using only the lower triangle.
      std::fill(p.begin(), p.begin() + l + 1, 0.0);
      for (std::size_t k = 0; k <= l; ++k) {
        const double* ak = a.row(k);
        const double vk = ai[k];
        double s = ak[k] * vk;
        for (std::size_t m = 0; m < k; ++m) {
          s += ak[m] * ai[m];
          p[m] += ak[m] * vk;
        }
        p[k] += s;
      }
      f = 0.0;
      for (std::size_t j = 0; j <= l; ++j) {
        p[j] /= h;
        f += p[j] * ai[j];
      }
      const double hh = f / (h + h);
      for (std::size_t j = 0; j <= l; ++j) p[j] -= hh * ai[j];

      // Rank-2 update A <- A - v q^T - q v^T on the lower triangle.
      for (std::size_t j = 0; j <= l; ++j) {
        const double vj = ai[j];
        const double qj = p[j];
        double* aj = a.row(j);
        for (std::size_t k = 0; k <= j; ++k) aj[k] -= vj * p[k] + qj * ai[k];
      }
    } else {
      e[i] = ai[l];
    }
  }
  for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i);
  e[0] = 0.0;
}

// Implicit-shift QL diagonalization of a symmetric tridiagonal matrix.
// d: diagonal, e[1..n-1]: subdiagonal (shifted internally). Converged
// eigenvalues land in d, unordered.
void ql_implicit_shift(std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = d.size();
  if (n <= 1) return;
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxSweeps)
          fail(ErrorCategory::numeric,
               "eigensolver failed to converge within 50 sweeps");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, pp = 0.0;
        bool underflow = false;
        for (std::size_t ii = m; ii > l; --ii) {
          const std::size_t i = ii - 1;
          double fi = s * e[i];
          const double b = c * e[i];
          r = std::hypot(fi, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= pp;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = fi / r;
          c = g / r;
          g = d[i + 1] - pp;
          r = (d[i] - g) * s + 2.0 * c * b;
          pp = s * r;
          d[i + 1] = g + pp;
          g = c * r - b;
        }
        if (!underflow) {
          d[l] -= pp;
          e[l] = g;
          e[m] = 0.0;
        }
      }
    } while (m != l);
  }
}

// Residual ||T v - lambda v||_inf for one eigenvalue of the tridiagonal
// (diag, sub), estimated by a few inverse-iteration steps. The solve uses a
// row-pivoted LU of (T - lambda I); near-singular pivots get nudged so the
// shifted solve stays usable at the exact eigenvalue.
double tridiag_residual(const std::vector<double>& diag,
                        const std::vector<double>& sub, double lambda) {
  const std::size_t n = diag.size();
  if (n == 1) return std::abs(diag[0] - lambda);

  std::vector<double> dmain(n), du(n - 1), dl(n - 1);
  std::vector<double> du2(n > 2 ? n - 2 : 0, 0.0);
  std::vector<char> swapped(n - 1, 0);
  const double tiny = 1e-300;

  for (std::size_t i = 0; i < n; ++i) dmain[i] = diag[i] - lambda;
  for (std::size_t i = 0; i + 1 < n; ++i) du[i] = dl[i] = sub[i];

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(dmain[i]) >= std::abs(dl[i])) {
      if (dmain[i] == 0.0) dmain[i] = tiny;
      const double mult = dl[i] / dmain[i];
      dl[i] = mult;
      dmain[i + 1] -= mult * du[i];
      if (i + 2 < n) du2[i] = 0.0;
    } else {
      swapped[i] = 1;
      const double mult = dmain[i] / dl[i];
      dmain[i] = dl[i];
      dl[i] = mult;
      const double tmp = du[i];
      du[i] = dmain[i + 1];
      dmain[i + 1] = tmp - mult * dmain[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -mult * du[i + 1];
      }
    }
  }
  if (dmain[n - 1] == 0.0) dmain[n - 1] = tiny;

  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> x(n);
  for (int pass = 0; pass < 3; ++pass) {
    x = v;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (swapped[i]) std::swap(x[i], x[i + 1]);
      x[i + 1] -= dl[i] * x[i];
    }
    x[n - 1] /= dmain[n - 1];
    x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / dmain[n - 2];
    for (std::size_t ii = n - 2; ii-- > 0;) {
      double acc = x[ii] - du[ii] * x[ii + 1];
      if (ii + 2 < n) acc -= du2[ii] * x[ii + 2];
      x[ii] = acc / dmain[ii];
    }
    double norm = 0.0;
    for (double xv : x) norm += xv * xv;
    norm = std::sqrt(norm);
    if (!(norm > 0.0) || !std::isfinite(norm)) break;
    for (std::size_t i = 0; i < n; ++i) v[i] = x[i] / norm;
  }

  double res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double tv = diag[i] * v[i];
    if (i > 0) tv += sub[i - 1] * v[i - 1];
    if (i + 1 < n) tv += sub[i] * v[i + 1];
    res = std::max(res, std::abs(tv - lambda * v[i]));
  }
  return res;
}

}  // namespace

SpectralSummary symmetric_eigenvalues(const Matrix& m) {
  const std::size_t n = m.n();
  if (n == 0) fail(ErrorCategory::model, "empty matrix");
  if (!m.all_finite()) fail(ErrorCategory::numeric, "matrix has non-finite entries");
  if (m.max_asymmetry() > kSymTol)
    fail(ErrorCategory::numeric, "matrix is not symmetric to 1e-10");

  const double tr = m.trace();
  const double fro_sq = m.frobenius_norm_sq();
  const double max_entry = m.max_abs();

  Matrix work = m;
  std::vector<double> d, e;
  tridiagonalize(work, d, e);

  // Keep the tridiagonal for residual checks; QL destroys its inputs.
  std::vector<double> diag = d;
  std::vector<double> sub(n > 1 ? n - 1 : 0);
  for (std::size_t i = 0; i + 1 < n; ++i) sub[i] = e[i + 1];

  ql_implicit_shift(d, e);
  std::sort(d.begin(), d.end(), std::greater<double>());

  SpectralSummary out;
  out.eigenvalues = std::move(d);
  out.lambda_max = out.eigenvalues.front();
  out.lambda_min = out.eigenvalues.back();
  out.residual = std::max(tridiag_residual(diag, sub, out.lambda_max),
                          tridiag_residual(diag, sub, out.lambda_min));

  // Conservation sanity: the spectrum must carry the trace and the
  // Frobenius mass of the input.
  double sum = 0.0, sum_sq = 0.0, c1 = 0.0, c2 = 0.0;
  for (double lam : out.eigenvalues) {
    double y = lam - c1, t = sum + y;
    c1 = (t - sum) - y;
    sum = t;
    y = lam * lam - c2;
    t = sum_sq + y;
    c2 = (t - sum_sq) - y;
    sum_sq = t;
  }
  const double tol = 1e-8 * static_cast<double>(n) * std::max(1.0, max_entry);
  if (std::abs(sum - tr) > tol || std::abs(sum_sq - fro_sq) > tol)
    fail(ErrorCategory::numeric, "eigensolver conservation check failed");
  return out;
}

std::pair<double, double> extreme_eigenvalues(const Matrix& m) {
  const SpectralSummary s = symmetric_eigenvalues(m);
  return {s.lambda_max, s.lambda_min};
}

EsdHistogram esd(const SpectralSummary& summary, std::size_t bins) {
  if (bins == 0) fail(ErrorCategory::model, "bins must be positive");
  const std::size_t n = summary.eigenvalues.size();
  if (n == 0) fail(ErrorCategory::model, "empty spectrum");
  constexpr double delta = 1e-9;
  const double lo = summary.lambda_min - delta;
  const double hi = summary.lambda_max + delta;
  const double width = (hi - lo) / static_cast<double>(bins);

  EsdHistogram h;
  h.n = n;
  h.edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b)
    h.edges[b] = lo + width * static_cast<double>(b);
  h.counts.assign(bins, 0);
  for (double lam : summary.eigenvalues) {
    std::size_t b = static_cast<std::size_t>((lam - lo) / width);
    if (b >= bins) b = bins - 1;
    ++h.counts[b];
  }
  return h;
}

double semicircle_cdf(double x) {
  if (x <= -2.0) return 0.0;
  if (x >= 2.0) return 1.0;
  return 0.5 + (x * std::sqrt(4.0 - x * x) + 4.0 * std::asin(0.5 * x)) /
                   (4.0 * std::numbers::pi);
}

double ks_distance_to_semicircle(const SpectralSummary& summary) {
  std::vector<double> xs = summary.eigenvalues;  // descending
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double dist = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = semicircle_cdf(xs[i]);
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    dist = std::max({dist, std::abs(f - lo), std::abs(f - hi)});
  }
  return dist;
}

void write_esd_csv(const EsdHistogram& hist, const std::string& path) {
  std::ofstream os(path);
  if (!os) fail(ErrorCategory::io, "cannot open '" + path + "' for writing");
  os << "bin_center,density\n";
  for (std::size_t b = 0; b < hist.counts.size(); ++b) {
    const double width = hist.edges[b + 1] - hist.edges[b];
    const double center = 0.5 * (hist.edges[b] + hist.edges[b + 1]);
    const double density =
        static_cast<double>(hist.counts[b]) / (static_cast<double>(hist.n) * width);
    os << io::fmt_g17(center) << ',' << io::fmt_g17(density) << '\n';
  }
  if (!os) fail(ErrorCategory::io, "failed writing '" + path + "'");
}

}  // namespace dcsbm::spectra
