#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "dcsbm/errors.hpp"
#include "dcsbm/model.hpp"
#include "dcsbm/rng.hpp"

using namespace dcsbm;
using model::DcsbmParams;

namespace {

DcsbmParams two_node_params(double t1 = 0.5, double t2 = 0.5, double w = 2.0,
                            double eps = 0.25) {
  DcsbmParams p;
  p.n = 2;
  p.k = 1;
  p.epsilon = eps;
  p.phi = {0, 0};
  p.theta = {t1, t2};
  p.W = Matrix(1);
  p.W(0, 0) = w;
  return p;
}

bool mentions(const model::ValidationReport& r, const std::string& needle) {
  for (const std::string& v : r.violations)
    if (v.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("validate_params accepts the two-node half-probability model") {
  const auto report = model::validate_params(two_node_params());
  CHECK(report.ok);
  CHECK(report.violations.empty());
}

TEST_CASE("validate_params flags a theta sum violation") {
  const auto report = model::validate_params(two_node_params(0.6, 0.5));
  CHECK_FALSE(report.ok);
  CHECK(mentions(report, "theta sum != 1"));
}

TEST_CASE("validate_params flags a reducible W") {
  DcsbmParams p;
  p.n = 3;
  p.k = 2;
  p.epsilon = 0.1;
  p.phi = {0, 0, 1};
  p.theta = {0.5, 0.5, 1.0};
  p.W = Matrix(2);
  p.W(0, 0) = 1.0;
  p.W(1, 1) = 1.0;
  const auto report = model::validate_params(p);
  CHECK_FALSE(report.ok);
  CHECK(mentions(report, "W not irreducible"));
}

TEST_CASE("validate_params names probability-range offenders") {
  auto p = two_node_params();
  p.epsilon = 0.5;  // forces p_ij = 0.5 exactly; now shrink an affinity
  p.theta = {0.4, 0.6};
  const auto report = model::validate_params(p);
  CHECK_FALSE(report.ok);
  CHECK(mentions(report, "edge probability out of [epsilon, 1-epsilon]"));
}

TEST_CASE("edge_probability is the three-factor product and symmetric") {
  const auto p = two_node_params();
  CHECK(model::edge_probability(p, 0, 1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(model::edge_probability(p, 1, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(model::edge_probability(p, 0, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(model::edge_probability(p, 0, 2), DcsbmError);
}

TEST_CASE("sample_adjacency is a pure function of (params, seed)") {
  const auto p = model::generate_null_experiment(64, 99);
  const auto a = model::sample_adjacency(p, 1234);
  const auto b = model::sample_adjacency(p, 1234);
  const auto c = model::sample_adjacency(p, 1235);
  CHECK(a == b);
  CHECK(a.n() == 64);
  CHECK_FALSE(a == c);
}

TEST_CASE("sample_adjacency output is symmetric binary with sane degrees") {
  const auto p = model::generate_null_experiment(50, 7);
  const auto a = model::sample_adjacency(p, 7);
  const auto deg = a.degrees();
  double total = 0.0;
  for (std::size_t i = 0; i < a.n(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < a.n(); ++j) {
      CHECK(a.at(i, j) == a.at(j, i));
      row += a.at(i, j) ? 1.0 : 0.0;
    }
    CHECK(row == doctest::Approx(deg[i]));
    total += row;
  }
  CHECK(total == doctest::Approx(a.total_sum()));
}

TEST_CASE("empirical edge frequency matches p = 1/2 under epsilon = 1/2") {
  // All edge probabilities forced to exactly 1/2; per-entry frequency over
  // repeated sampling stays within the stated +-0.02 band.
  auto p = two_node_params();
  const std::size_t n = 100;
  p.n = n;
  p.k = 1;
  p.epsilon = 0.5;
  p.phi.assign(n, 0);
  p.theta.assign(n, 1.0 / static_cast<double>(n));
  p.W = Matrix(1);
  p.W(0, 0) = 0.5 * static_cast<double>(n) * static_cast<double>(n);
  REQUIRE(model::validate_params(p).ok);

  const std::size_t trials = 10000;
  std::vector<std::uint32_t> hits(n * (n + 1) / 2, 0);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto a = model::sample_adjacency(p, 5000 + t);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j, ++pos)
        if (a.at(i, j)) ++hits[pos];
  }
  double worst = 0.0;
  for (std::uint32_t h : hits)
    worst = std::max(worst,
                     std::abs(static_cast<double>(h) / trials - 0.5));
  CHECK(worst < 0.02);
}

TEST_CASE("canonicalize rescales exactly as the two-node example") {
  Matrix w(1);
  w(0, 0) = 5.0;
  const auto p = model::canonicalize({0, 0}, {0.2, 0.2}, w);
  CHECK(p.theta[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p.theta[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p.W(0, 0) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(model::edge_probability(p, 0, 1) == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("canonicalize is idempotent and preserves probabilities") {
  const std::uint64_t seed = 42;
  const std::size_t n = 30;
  std::vector<std::size_t> phi(n);
  std::vector<double> theta(n);
  for (std::size_t i = 0; i < n; ++i) {
    phi[i] = i % 3;
    theta[i] = 0.05 + rng::uniform01(seed, 11, i);
  }
  Matrix w(3);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = a; b < 3; ++b)
      w(a, b) = w(b, a) = 0.1 + rng::uniform01(seed, 12, a * 3 + b);

  const auto once = model::canonicalize(phi, theta, w);
  const auto twice = model::canonicalize(once.phi, once.theta, once.W);
  for (std::size_t i = 0; i < n; ++i)
    CHECK(std::abs(once.theta[i] - twice.theta[i]) < 1e-15);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double before = theta[i] * theta[j] * w(phi[i], phi[j]);
      CHECK(std::abs(model::edge_probability(once, i, j) - before) < 1e-14);
      CHECK(std::abs(model::edge_probability(twice, i, j) - before) < 1e-14);
    }
  // per-community sums land on 1
  for (std::size_t mu = 0; mu < 3; ++mu) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (once.phi[i] == mu) s += once.theta[i];
    CHECK(std::abs(s - 1.0) < 1e-12);
  }
}

TEST_CASE("canonicalize rejects degenerate inputs") {
  Matrix w(2);
  w(0, 0) = w(1, 1) = w(0, 1) = w(1, 0) = 1.0;
  CHECK_THROWS_AS(model::canonicalize({0, 0}, {0.5, 0.5}, w), DcsbmError);
  Matrix asym(1);
  CHECK_THROWS_AS(model::canonicalize({0}, {-1.0}, asym), DcsbmError);
}

TEST_CASE("null experiment matches its analytic probability range") {
  const auto p = model::generate_null_experiment(200, 3);
  CHECK(p.k == 1);
  CHECK(p.epsilon == doctest::Approx(0.005));
  CHECK(model::validate_params(p).ok);
  double lo = 1.0, hi = 0.0;
  for (std::size_t i = 0; i < p.n; ++i)
    for (std::size_t j = i; j < p.n; ++j) {
      const double pij = model::edge_probability(p, i, j);
      lo = std::min(lo, pij);
      hi = std::max(hi, pij);
    }
  CHECK(lo >= 0.005);
  CHECK(hi <= 0.405);
  double sum = 0.0;
  for (double t : p.theta) sum += t;
  CHECK(std::abs(sum - 1.0) < 1e-12);
}

TEST_CASE("null experiment with degenerate affinities gives p = 0.125") {
  // X_i = 0.5 for every node corresponds to theta_i = 1/(2 w') with the raw
  // w = 1/2; reproduce that limit directly through canonicalize.
  const std::size_t n = 8;
  std::vector<double> x(n, 0.5);
  Matrix w(1);
  w(0, 0) = 0.5;
  const auto p = model::canonicalize(std::vector<std::size_t>(n, 0), x, w, 0.005);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      CHECK(model::edge_probability(p, i, j) == doctest::Approx(0.125).epsilon(1e-13));
}

TEST_CASE("alternative experiment realizes the fixed mixing pattern") {
  const std::size_t n = 300;
  const auto p = model::generate_alternative_experiment(n, 17);
  CHECK(p.k == 3);
  CHECK(p.epsilon == doctest::Approx(0.002));
  CHECK(model::validate_params(p).ok);

  // Equal community sizes.
  std::vector<std::size_t> sizes(3, 0);
  for (std::size_t c : p.phi) ++sizes[c];
  CHECK(sizes[0] == n / 3);
  CHECK(sizes[1] == n / 3);
  CHECK(sizes[2] == n / 3);

  // De-canonicalized W recovers the pattern: W = D M D with D the raw
  // per-community affinity sums, and theta_i = X_i / s_mu, so
  // M[mu][nu] = W[mu][nu] / (s_mu s_nu) with s_mu recovered from theta.
  // Recover X from theta: X_i = theta_i * s_mu, and sum_i in mu of X_i = s_mu.
  // Instead check probabilities directly against M X_i X_j via a fresh draw
  // of the same affinities.
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = 0.1 + 0.8 * rng::uniform01(17, rng::kStreamAffinity, i);
  const Matrix m = model::alternative_block_pattern();
  CHECK(m(0, 0) == doctest::Approx(0.4));
  CHECK(m(1, 2) == doctest::Approx(0.3));
  for (std::size_t probe = 0; probe < 100; ++probe) {
    const std::size_t i = rng::hash3(5, 6, probe) % n;
    const std::size_t j = rng::hash3(5, 7, probe) % n;
    const double expected = m(p.phi[i], p.phi[j]) * x[i] * x[j];
    CHECK(model::edge_probability(p, i, j) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(model::edge_probability(p, i, j) ==
          doctest::Approx(model::edge_probability(p, j, i)).epsilon(1e-15));
  }

  // Within-community pair at the affinity ceiling: p = 0.6 * 0.81.
  CHECK(0.6 * 0.81 == doctest::Approx(0.486));
  CHECK_THROWS_AS(model::generate_alternative_experiment(100, 1), DcsbmError);
}

TEST_CASE("counter rng is order-independent and roughly uniform") {
  // Same (seed, stream, counter) tuples in any order give the same draws.
  const double a = rng::uniform01(9, 8, 7);
  const double b = rng::uniform01(9, 8, 6);
  CHECK(rng::uniform01(9, 8, 7) == a);
  CHECK(rng::uniform01(9, 8, 6) == b);

  // Chi-square uniformity sanity: 100 bins, 1e5 draws.
  const std::size_t draws = 100000, bins = 100;
  std::vector<std::size_t> counts(bins, 0);
  for (std::size_t i = 0; i < draws; ++i) {
    const double u = rng::uniform01(123, 456, i);
    ++counts[std::min(bins - 1, static_cast<std::size_t>(u * bins))];
  }
  double chi2 = 0.0;
  const double expected = static_cast<double>(draws) / bins;
  for (std::size_t c : counts) {
    const double d = static_cast<double>(c) - expected;
    chi2 += d * d / expected;
  }
  // 99 dof; [50, 160] is a generous two-sided band.
  CHECK(chi2 > 50.0);
  CHECK(chi2 < 160.0);
}

TEST_CASE("mean entry count of a null sample tracks the analytic sum") {
  const std::size_t n = 2000;
  const auto p = model::generate_null_experiment(n, 21);
  double expected = 0.0, variance = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double pij = model::edge_probability(p, i, j);
      expected += pij;
      variance += pij * (1.0 - pij);
    }
  const auto a = model::sample_adjacency(p, 21);
  const double count = static_cast<double>(a.edge_count());
  CHECK(std::abs(count - expected) <= 3.0 * std::sqrt(variance));
}
