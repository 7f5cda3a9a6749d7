#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "dcsbm/matrix.hpp"

namespace dcsbm::spectra {

struct SpectralSummary {
  std::vector<double> eigenvalues;  // sorted descending
  double lambda_max = 0.0;
  double lambda_min = 0.0;
  // max |T v - lambda v| over the two extreme eigenpairs, computed in the
  // tridiagonal basis (the reduction is orthogonal, so the 2-norm residual
  // carries over).
  double residual = 0.0;
};

struct EsdHistogram {
  std::vector<double> edges;        // bins + 1, strictly increasing
  std::vector<std::size_t> counts;  // sums to n
  std::size_t n = 0;
};

// Full spectrum of a real symmetric matrix: Householder tridiagonalization
// followed by implicit-shift QL, eigenvalues only. Errors on non-symmetric
// or non-finite input and on failure to converge within 50 sweeps.
SpectralSummary symmetric_eigenvalues(const Matrix& m);

// (lambda_1, lambda_n); first/last entries of the full solve.
std::pair<double, double> extreme_eigenvalues(const Matrix& m);

// Uniform-width histogram over [min - delta, max + delta], delta = 1e-9.
EsdHistogram esd(const SpectralSummary& summary, std::size_t bins);

// Closed-form integral of the semicircle density (support [-2, 2]).
double semicircle_cdf(double x);

// Two-sided Kolmogorov-Smirnov distance between the empirical spectral
// distribution and the semicircle law.
double ks_distance_to_semicircle(const SpectralSummary& summary);

// Two-column CSV (bin_center, density) where density = count/(n * width).
void write_esd_csv(const EsdHistogram& hist, const std::string& path);

}  // namespace dcsbm::spectra
