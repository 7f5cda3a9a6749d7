#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>

#include "dcsbm/errors.hpp"
#include "dcsbm/model.hpp"
#include "dcsbm/rng.hpp"
#include "dcsbm/spectra.hpp"
#include "dcsbm/transform.hpp"
#include "oracles.hpp"

using namespace dcsbm;

namespace {

Matrix random_symmetric(std::size_t n, std::uint64_t seed, double amp = 1.0) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double v = amp * (2.0 * rng::uniform01(seed, 31, i * n + j) - 1.0);
      m(i, j) = v;
      m(j, i) = v;
    }
  return m;
}

std::vector<std::vector<double>> to_nested(const Matrix& m) {
  std::vector<std::vector<double>> a(m.n(), std::vector<double>(m.n()));
  for (std::size_t i = 0; i < m.n(); ++i)
    for (std::size_t j = 0; j < m.n(); ++j) a[i][j] = m(i, j);
  return a;
}

}  // namespace

TEST_CASE("two-by-two exchange matrix has eigenvalues +-1") {
  Matrix m(2);
  m(0, 1) = m(1, 0) = 1.0;
  const auto s = spectra::symmetric_eigenvalues(m);
  CHECK(s.lambda_max == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.lambda_min == doctest::Approx(-1.0).epsilon(1e-12));
  const auto [l1, ln] = spectra::extreme_eigenvalues(m);
  CHECK(l1 == doctest::Approx(1.0));
  CHECK(ln == doctest::Approx(-1.0));
}

TEST_CASE("diagonal matrices sort descending") {
  Matrix m(3);
  m(0, 0) = 3.0;
  m(1, 1) = 1.0;
  m(2, 2) = 2.0;
  const auto s = spectra::symmetric_eigenvalues(m);
  CHECK(s.eigenvalues[0] == doctest::Approx(3.0));
  CHECK(s.eigenvalues[1] == doctest::Approx(2.0));
  CHECK(s.eigenvalues[2] == doctest::Approx(1.0));
}

TEST_CASE("identity matrix has a flat spectrum") {
  Matrix m(5);
  for (std::size_t i = 0; i < 5; ++i) m(i, i) = 1.0;
  const auto [l1, ln] = spectra::extreme_eigenvalues(m);
  CHECK(l1 == doctest::Approx(1.0));
  CHECK(ln == doctest::Approx(1.0));
}

TEST_CASE("random 50x50 spectrum matches an independent Jacobi solver") {
  const Matrix m = random_symmetric(50, 2024);
  const auto s = spectra::symmetric_eigenvalues(m);
  const auto reference = oracles::jacobi_eigenvalues(to_nested(m));
  REQUIRE(s.eigenvalues.size() == reference.size());
  for (std::size_t i = 0; i < reference.size(); ++i)
    CHECK(std::abs(s.eigenvalues[i] - reference[i]) < 1e-9);
  CHECK(s.residual < 1e-10);
}

TEST_CASE("rejects non-symmetric and non-finite input") {
  Matrix m(3);
  m(0, 1) = 1.0;  // asymmetric
  CHECK_THROWS_AS(spectra::symmetric_eigenvalues(m), DcsbmError);
  Matrix bad(2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(spectra::symmetric_eigenvalues(bad), DcsbmError);
}

TEST_CASE("spectrum is invariant under orthogonal similarity") {
  const std::size_t n = 40;
  const Matrix m = random_symmetric(n, 5150);
  // Householder reflector Q = I - 2 v v^T.
  std::vector<double> v(n);
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = rng::uniform01(5151, 1, i) - 0.5;
    norm += v[i] * v[i];
  }
  for (double& x : v) x /= std::sqrt(norm);
  Matrix q(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      q(i, j) = (i == j ? 1.0 : 0.0) - 2.0 * v[i] * v[j];
  // Q m Q^T, symmetrized against roundoff.
  Matrix tmp(n), rot(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += q(i, k) * m(k, j);
      tmp(i, j) = acc;
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += tmp(i, k) * q(j, k);
      rot(i, j) = acc;
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double sym = 0.5 * (rot(i, j) + rot(j, i));
      rot(i, j) = sym;
      rot(j, i) = sym;
    }
  const auto s0 = spectra::symmetric_eigenvalues(m);
  const auto s1 = spectra::symmetric_eigenvalues(rot);
  for (std::size_t i = 0; i < n; ++i)
    CHECK(std::abs(s0.eigenvalues[i] - s1.eigenvalues[i]) < 1e-9);
}

TEST_CASE("shifting by the identity shifts every eigenvalue") {
  const std::size_t n = 30;
  const Matrix m = random_symmetric(n, 77);
  Matrix shifted = m;
  for (std::size_t i = 0; i < n; ++i) shifted(i, i) += 1.0;
  const auto s0 = spectra::symmetric_eigenvalues(m);
  const auto s1 = spectra::symmetric_eigenvalues(shifted);
  for (std::size_t i = 0; i < n; ++i)
    CHECK(s1.eigenvalues[i] == doctest::Approx(s0.eigenvalues[i] + 1.0).epsilon(1e-10));
}

TEST_CASE("Weyl perturbation bound holds for small random perturbations") {
  const std::size_t n = 25;
  const Matrix m = random_symmetric(n, 4096);
  for (int rep = 0; rep < 5; ++rep) {
    const Matrix e = random_symmetric(n, 9000 + rep, 1e-3);
    Matrix sum = m;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sum(i, j) += e(i, j);
    const double l1_m = spectra::symmetric_eigenvalues(m).lambda_max;
    const double l1_sum = spectra::symmetric_eigenvalues(sum).lambda_max;
    CHECK(std::abs(l1_sum - l1_m) <= std::sqrt(e.frobenius_norm_sq()) + 1e-12);
  }
}

TEST_CASE("esd bins eigenvalues with exact counts") {
  spectra::SpectralSummary s;
  s.eigenvalues = {1.0, 0.0, 0.0};
  s.lambda_max = 1.0;
  s.lambda_min = 0.0;
  const auto h = spectra::esd(s, 2);
  REQUIRE(h.counts.size() == 2);
  CHECK(h.counts[0] == 2);
  CHECK(h.counts[1] == 1);
  CHECK(std::accumulate(h.counts.begin(), h.counts.end(), std::size_t{0}) == 3);

  spectra::SpectralSummary flat;
  flat.eigenvalues = {2.0, 2.0, 2.0, 2.0};
  flat.lambda_max = flat.lambda_min = 2.0;
  const auto hf = spectra::esd(flat, 7);
  std::size_t occupied = 0;
  for (std::size_t c : hf.counts) occupied += (c > 0) ? 1 : 0;
  CHECK(occupied == 1);
}

TEST_CASE("semicircle cdf endpoints, symmetry, and quadrature agreement") {
  CHECK(spectra::semicircle_cdf(-2.0) == 0.0);
  CHECK(spectra::semicircle_cdf(2.0) == 1.0);
  CHECK(spectra::semicircle_cdf(-2.5) == 0.0);
  CHECK(spectra::semicircle_cdf(3.0) == 1.0);
  CHECK(spectra::semicircle_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
  for (double x : {-1.7, -1.0, -0.3, 0.4, 1.0, 1.9}) {
    const double quad = oracles::semicircle_cdf_quadrature(x);
    CHECK(std::abs(spectra::semicircle_cdf(x) - quad) < 1e-10);
  }
}

TEST_CASE("ks distance: point mass at zero scores exactly one half") {
  spectra::SpectralSummary s;
  s.eigenvalues = {0.0, 0.0, 0.0, 0.0};
  s.lambda_max = s.lambda_min = 0.0;
  CHECK(spectra::ks_distance_to_semicircle(s) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("ks distance: semicircle quantiles score near zero") {
  const std::size_t n = 1000;
  spectra::SpectralSummary s;
  s.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    s.eigenvalues[i] =
        oracles::semicircle_quantile((static_cast<double>(n - i) - 0.5) / n);
  s.lambda_max = s.eigenvalues.front();
  s.lambda_min = s.eigenvalues.back();
  CHECK(spectra::ks_distance_to_semicircle(s) <= 0.5 / n + 1e-6);
}

TEST_CASE("ks distance ignores input ordering") {
  spectra::SpectralSummary a, b;
  a.eigenvalues = {1.5, -0.2, 0.7, -1.9};
  b.eigenvalues = {-1.9, 0.7, 1.5, -0.2};
  CHECK(spectra::ks_distance_to_semicircle(a) ==
        doctest::Approx(spectra::ks_distance_to_semicircle(b)));
}

TEST_CASE("trace and frobenius mass are conserved at size 200") {
  const Matrix m = random_symmetric(200, 31337);
  const auto s = spectra::symmetric_eigenvalues(m);
  double sum = 0.0, sum_sq = 0.0;
  for (double lam : s.eigenvalues) {
    sum += lam;
    sum_sq += lam * lam;
  }
  CHECK(std::abs(sum - m.trace()) < 1e-8 * 200);
  CHECK(std::abs(sum_sq - m.frobenius_norm_sq()) < 1e-8 * 200 * m.max_abs());
}

TEST_CASE("scaled null transform at n=500 has edges near the bulk ends") {
  // Extreme eigenvalues of the scaled estimated transform concentrate near
  // +-2 on the n^{-2/3} scale; a +-0.5 window is far beyond typical
  // fluctuations at n = 500.
  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    const auto params = model::generate_null_experiment(500, seed);
    const auto a = model::sample_adjacency(params, seed);
    auto b = transform::scale(transform::estimated_transform(a));
    const auto [l1, ln] = spectra::extreme_eigenvalues(b.entries);
    CHECK(l1 > 1.5);
    CHECK(l1 < 2.5);
    CHECK(ln < -1.5);
    CHECK(ln > -2.5);
  }
}

TEST_CASE("scaling the transform scales every eigenvalue by n^{-1/2}") {
  const std::size_t n = 80;
  const auto params = model::generate_null_experiment(n, 23);
  const auto a = model::sample_adjacency(params, 23);
  const auto raw = transform::estimated_transform(a);
  const auto scaled = transform::scale(transform::estimated_transform(a));
  const auto s_raw = spectra::symmetric_eigenvalues(raw.entries);
  const auto s_scaled = spectra::symmetric_eigenvalues(scaled.entries);
  const double factor = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    CHECK(std::abs(s_scaled.eigenvalues[i] - factor * s_raw.eigenvalues[i]) <
          1e-9);
}

TEST_CASE("esd csv export carries normalized densities") {
  spectra::SpectralSummary s;
  s.eigenvalues = {1.0, 0.5, 0.0, -1.0};
  s.lambda_max = 1.0;
  s.lambda_min = -1.0;
  const auto h = spectra::esd(s, 4);
  const auto path =
      (std::filesystem::temp_directory_path() / "dcsbm_esd_test.csv").string();
  spectra::write_esd_csv(h, path);
  std::ifstream is(path);
  std::string header;
  std::getline(is, header);
  CHECK(header == "bin_center,density");
  double mass = 0.0;
  std::string line;
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    const auto comma = line.find(',');
    const double width = (h.edges[rows + 1] - h.edges[rows]);
    mass += std::stod(line.substr(comma + 1)) * width;
    ++rows;
  }
  CHECK(rows == 4);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
  std::filesystem::remove(path);
}

TEST_CASE("single null realization at n=3000 stays close to the semicircle") {
  const std::size_t n = 3000;
  const auto params = model::generate_null_experiment(n, 42);
  const auto a = model::sample_adjacency(params, 42);
  auto b = transform::scale(transform::estimated_transform(a));
  const auto s = spectra::symmetric_eigenvalues(b.entries);
  CHECK(spectra::ks_distance_to_semicircle(s) <= 0.05);

  // Bulk support concentrates on [-2, 2].
  CHECK(s.lambda_max < 2.3);
  CHECK(s.lambda_min > -2.3);
  std::size_t inside = 0;
  for (double lam : s.eigenvalues)
    if (lam > -2.05 && lam < 2.05) ++inside;
  CHECK(static_cast<double>(inside) / static_cast<double>(n) > 0.99);
}
