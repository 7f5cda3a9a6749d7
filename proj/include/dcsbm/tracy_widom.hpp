#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace dcsbm::tw {

// Airy function of the first kind on [-15, 15]: Maclaurin series in the
// middle, asymptotic expansions in the wings. Absolute accuracy ~1e-10.
double airy_ai(double y);
double airy_ai_prime(double y);

// Samples of the Painleve II solution that matches Ai at +infinity,
// integrated backward from y_start.
struct QSolution {
  double y_start = 0.0;
  double y_end = 0.0;
  double step = 0.0;
  std::vector<double> y;   // ascending, uniform
  std::vector<double> q;   // q(y_i)
  std::vector<double> qp;  // q'(y_i)
};

// Backward adaptive Runge-Kutta integration of q'' = y q + 2 q^3 with
// q = Ai, q' = Ai' at y_start. Per-step error controlled at `tol`
// (tol >= 1e-12). Blow-up is reported, never silently truncated.
QSolution hastings_mcleod_solve(double y_start, double y_end, double tol,
                                double grid_step = 1.0 / 512.0);

struct BuildOptions {
  double y_start = 8.0;    // table upper end; Airy tail beyond is analytic
  double y_end = -10.0;    // table lower end
  double grid_step = 1.0 / 512.0;
  double ode_tol = 1e-12;
};

// Sampled TW1 CDF/density with interpolation and inversion support.
// Immutable once built; safe to share across threads.
class TwTable {
 public:
  TwTable() = default;

  static TwTable build(const BuildOptions& opt = {});

  // Cache file: versioned header, the three arrays as little-endian
  // doubles, and a checksum. load() rejects corrupt or mismatched files.
  static TwTable load(const std::string& path);
  void save(const std::string& path) const;

  bool initialized() const { return !x_.empty(); }

  // F1(x); clamps to 0/1 outside the grid (flag reports clamping).
  double cdf(double x) const;
  double cdf(double x, bool& clamped) const;

  // dF1/dx = F1(x) * (q(x) + integral of q^2 over (x, inf)) / 2.
  double pdf(double x) const;

  // x with |F1(x) - p| <= 1e-6, for p in [1e-6, 1 - 1e-6].
  double quantile(double p) const;

  const std::vector<double>& grid() const { return x_; }
  const std::vector<double>& cdf_values() const { return cdf_; }
  const std::vector<double>& pdf_values() const { return pdf_; }
  double tol() const { return tol_; }

 private:
  void finalize();  // derive interpolation data from (x_, cdf_, pdf_)
  void require_initialized() const;
  std::size_t locate(double x) const;
  double exponent_at(double x) const;

  std::vector<double> x_, cdf_, pdf_;
  std::vector<double> expo_, dexpo_;  // log F1 and its derivative at nodes
  double tol_ = 0.0;
};

// Spec-level entry points; thin wrappers over the table.
double tw1_cdf(const TwTable& table, double x);
double tw1_pdf(const TwTable& table, double x);
double tw1_quantile(const TwTable& table, double p);

}  // namespace dcsbm::tw
