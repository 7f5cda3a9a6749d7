#include "dcsbm/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dcsbm/errors.hpp"
#include "dcsbm/rng.hpp"

namespace dcsbm::model {

namespace {

constexpr double kThetaSumTol = 1e-12;

std::string idx(std::size_t i) { return std::to_string(i + 1); }  // 1-based in messages

// Per-community min/max of theta with argmin/argmax, for the O(n + k^2)
// edge-probability range check.
struct CommunityExtremes {
  std::vector<double> min_theta, max_theta;
  std::vector<std::size_t> argmin, argmax;
};

CommunityExtremes community_extremes(const DcsbmParams& p) {
  CommunityExtremes ex;
  ex.min_theta.assign(p.k, std::numeric_limits<double>::infinity());
  ex.max_theta.assign(p.k, -std::numeric_limits<double>::infinity());
  ex.argmin.assign(p.k, 0);
  ex.argmax.assign(p.k, 0);
  for (std::size_t i = 0; i < p.n; ++i) {
    const std::size_t mu = p.phi[i];
    if (p.theta[i] < ex.min_theta[mu]) {
      ex.min_theta[mu] = p.theta[i];
      ex.argmin[mu] = i;
    }
    if (p.theta[i] > ex.max_theta[mu]) {
      ex.max_theta[mu] = p.theta[i];
      ex.argmax[mu] = i;
    }
  }
  return ex;
}

bool support_connected(const Matrix& w) {
  const std::size_t k = w.n();
  if (k <= 1) return true;
  std::vector<char> seen(k, 0);
  std::vector<std::size_t> stack = {0};
  seen[0] = 1;
  while (!stack.empty()) {
    const std::size_t mu = stack.back();
    stack.pop_back();
    for (std::size_t nu = 0; nu < k; ++nu) {
      if (!seen[nu] && w(mu, nu) > 0.0) {
        seen[nu] = 1;
        stack.push_back(nu);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

void require_shapes(const DcsbmParams& p) {
  if (p.phi.size() != p.n || p.theta.size() != p.n || p.W.n() != p.k)
    fail(ErrorCategory::model, "params arrays do not match declared n/k");
}

}  // namespace

std::vector<double> AdjacencyMatrix::degrees() const {
  std::vector<double> deg(n_, 0.0);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (upper_[pos]) deg[i] += 1.0;  // diagonal, counted once
    ++pos;
    for (std::size_t j = i + 1; j < n_; ++j, ++pos) {
      if (upper_[pos]) {
        deg[i] += 1.0;
        deg[j] += 1.0;
      }
    }
  }
  return deg;
}

double AdjacencyMatrix::total_sum() const {
  double t = 0.0;
  for (double d : degrees()) t += d;
  return t;
}

std::size_t AdjacencyMatrix::edge_count() const {
  std::size_t c = 0;
  for (std::uint8_t v : upper_) c += v;
  return c;
}

ValidationReport validate_params(const DcsbmParams& p) {
  require_shapes(p);
  ValidationReport report;
  auto violate = [&report](const std::string& msg) {
    report.ok = false;
    report.violations.push_back(msg);
  };

  if (p.n == 0) violate("n must be positive");
  if (p.k == 0) violate("k must be positive");
  if (p.k >= p.n && p.n > 0) violate("k must be smaller than n");
  if (!(p.epsilon > 0.0 && p.epsilon <= 0.5))
    violate("epsilon must lie in (0, 1/2]");
  if (p.n == 0 || p.k == 0) return report;

  for (std::size_t i = 0; i < p.n; ++i) {
    if (p.phi[i] >= p.k) {
      violate("phi value out of range at node " + idx(i));
      return report;
    }
  }
  for (std::size_t i = 0; i < p.n; ++i) {
    if (!(p.theta[i] > 0.0 && p.theta[i] <= 1.0))
      violate("theta out of (0, 1] at node " + idx(i));
  }

  // Surjectivity and per-community sums, with compensated summation so the
  // 1e-12 tolerance is meaningful at large n.
  std::vector<std::vector<double>> by_comm(p.k);
  for (std::size_t i = 0; i < p.n; ++i) by_comm[p.phi[i]].push_back(p.theta[i]);
  for (std::size_t mu = 0; mu < p.k; ++mu) {
    if (by_comm[mu].empty()) {
      violate("phi is not surjective: community " + idx(mu) + " is empty");
      continue;
    }
    const double s = kahan_sum(by_comm[mu]);
    if (std::abs(s - 1.0) > kThetaSumTol) {
      std::ostringstream os;
      os << "per-community theta sum != 1 for community " << idx(mu)
         << " (got " << s << ")";
      violate(os.str());
    }
  }

  for (std::size_t mu = 0; mu < p.k; ++mu)
    for (std::size_t nu = mu; nu < p.k; ++nu) {
      if (p.W(mu, nu) != p.W(nu, mu))
        violate("W not symmetric at (" + idx(mu) + ", " + idx(nu) + ")");
      if (p.W(mu, nu) < 0.0)
        violate("W has negative entry at (" + idx(mu) + ", " + idx(nu) + ")");
    }
  if (!support_connected(p.W)) violate("W not irreducible");

  if (!(p.epsilon > 0.0 && p.epsilon <= 0.5)) return report;

  // p_ij range over each community pair is spanned by the theta extremes.
  const CommunityExtremes ex = community_extremes(p);
  for (std::size_t mu = 0; mu < p.k; ++mu) {
    if (by_comm[mu].empty()) return report;
    for (std::size_t nu = mu; nu < p.k; ++nu) {
      if (by_comm[nu].empty()) return report;
      const double w = p.W(mu, nu);
      const double lo = ex.min_theta[mu] * ex.min_theta[nu] * w;
      const double hi = ex.max_theta[mu] * ex.max_theta[nu] * w;
      if (lo < p.epsilon) {
        std::ostringstream os;
        os << "edge probability out of [epsilon, 1-epsilon] for nodes ("
           << idx(ex.argmin[mu]) << ", " << idx(ex.argmin[nu]) << "): p=" << lo;
        violate(os.str());
      }
      if (hi > 1.0 - p.epsilon) {
        std::ostringstream os;
        os << "edge probability out of [epsilon, 1-epsilon] for nodes ("
           << idx(ex.argmax[mu]) << ", " << idx(ex.argmax[nu]) << "): p=" << hi;
        violate(os.str());
      }
    }
  }
  return report;
}

double edge_probability(const DcsbmParams& p, std::size_t i, std::size_t j) {
  require_shapes(p);
  if (i >= p.n || j >= p.n)
    fail(ErrorCategory::model, "node index out of range");
  return p.theta[i] * p.theta[j] * p.W(p.phi[i], p.phi[j]);
}

AdjacencyMatrix sample_adjacency(const DcsbmParams& p, std::uint64_t seed) {
  require_shapes(p);
  AdjacencyMatrix a(p.n);
  for (std::size_t i = 0; i < p.n; ++i) {
    const double ti = p.theta[i];
    const double* wrow = p.W.row(p.phi[i]);
    for (std::size_t j = i; j < p.n; ++j) {
      const double pij = ti * p.theta[j] * wrow[p.phi[j]];
      const double u = rng::uniform01(seed, rng::kStreamEdge,
                                      static_cast<std::uint64_t>(i) * p.n + j);
      a.set(i, j, u < pij);
    }
  }
  return a;
}

DcsbmParams canonicalize(const std::vector<std::size_t>& phi,
                         const std::vector<double>& theta_raw,
                         const Matrix& w_raw,
                         std::optional<double> epsilon) {
  const std::size_t n = phi.size();
  const std::size_t k = w_raw.n();
  if (n == 0 || k == 0) fail(ErrorCategory::model, "canonicalize: empty inputs");
  if (theta_raw.size() != n)
    fail(ErrorCategory::model, "canonicalize: phi and theta lengths differ");
  for (std::size_t i = 0; i < n; ++i) {
    if (phi[i] >= k) fail(ErrorCategory::model, "canonicalize: phi value out of range");
    if (!(theta_raw[i] > 0.0))
      fail(ErrorCategory::model, "canonicalize: theta_raw must be positive");
  }
  if (w_raw.max_asymmetry() != 0.0)
    fail(ErrorCategory::model, "canonicalize: W_raw must be symmetric");

  std::vector<std::vector<double>> by_comm(k);
  for (std::size_t i = 0; i < n; ++i) by_comm[phi[i]].push_back(theta_raw[i]);
  std::vector<double> s(k, 0.0);
  for (std::size_t mu = 0; mu < k; ++mu) {
    if (by_comm[mu].empty())
      fail(ErrorCategory::model,
           "canonicalize: community " + idx(mu) + " has zero theta mass");
    s[mu] = kahan_sum(by_comm[mu]);
  }

  DcsbmParams out;
  out.n = n;
  out.k = k;
  out.phi = phi;
  out.theta.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.theta[i] = theta_raw[i] / s[phi[i]];
  out.W = Matrix(k);
  for (std::size_t mu = 0; mu < k; ++mu)
    for (std::size_t nu = mu; nu < k; ++nu) {
      // one rounding path, mirrored, so W stays exactly symmetric
      const double w = w_raw(mu, nu) * s[mu] * s[nu];
      out.W(mu, nu) = w;
      out.W(nu, mu) = w;
    }

  if (epsilon) {
    out.epsilon = *epsilon;
  } else {
    // Tightest valid margin from the exact probability range.
    const CommunityExtremes ex = community_extremes(out);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t mu = 0; mu < k; ++mu)
      for (std::size_t nu = mu; nu < k; ++nu) {
        lo = std::min(lo, ex.min_theta[mu] * ex.min_theta[nu] * out.W(mu, nu));
        hi = std::max(hi, ex.max_theta[mu] * ex.max_theta[nu] * out.W(mu, nu));
      }
    out.epsilon = std::min({lo, 1.0 - hi, 0.5});
  }
  return out;
}

DcsbmParams generate_null_experiment(std::size_t n, std::uint64_t seed) {
  if (n < 2) fail(ErrorCategory::model, "null experiment requires n >= 2");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = 0.1 + 0.8 * rng::uniform01(seed, rng::kStreamAffinity, i);
  std::vector<std::size_t> phi(n, 0);
  Matrix w_raw(1);
  w_raw(0, 0) = 0.5;  // p_ij = X_i X_j / 2
  return canonicalize(phi, x, w_raw, 0.005);
}

Matrix alternative_block_pattern() {
  Matrix m(3);
  const double rows[3][3] = {{0.4, 0.2, 0.2}, {0.2, 0.6, 0.3}, {0.2, 0.3, 0.5}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = rows[i][j];
  return m;
}

DcsbmParams generate_alternative_experiment(std::size_t n, std::uint64_t seed) {
  if (n < 6 || n % 3 != 0)
    fail(ErrorCategory::model, "alternative experiment requires n divisible by 3");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = 0.1 + 0.8 * rng::uniform01(seed, rng::kStreamAffinity, i);
  std::vector<std::size_t> phi(n);
  const std::size_t third = n / 3;
  for (std::size_t i = 0; i < n; ++i) phi[i] = i / third;
  return canonicalize(phi, x, alternative_block_pattern(), 0.002);
}

}  // namespace dcsbm::model
