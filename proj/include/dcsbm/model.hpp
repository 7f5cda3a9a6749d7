#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dcsbm/matrix.hpp"

namespace dcsbm::model {

// Full generative model: node count n, community count k, probability margin
// epsilon, community map phi (0-based internally), per-node affinities theta,
// and the symmetric block matrix W.
struct DcsbmParams {
  std::size_t n = 0;
  std::size_t k = 0;
  double epsilon = 0.0;
  std::vector<std::size_t> phi;
  std::vector<double> theta;
  Matrix W;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Symmetric binary adjacency snapshot. The upper triangle (diagonal included)
// is the authoritative storage, so symmetry holds structurally.
class AdjacencyMatrix {
 public:
  AdjacencyMatrix() = default;
  explicit AdjacencyMatrix(std::size_t n) : n_(n), upper_(n * (n + 1) / 2, 0) {}

  std::size_t n() const { return n_; }

  bool at(std::size_t i, std::size_t j) const { return upper_[index(i, j)] != 0; }
  void set(std::size_t i, std::size_t j, bool v) { upper_[index(i, j)] = v ? 1 : 0; }

  // Row sums; the diagonal entry counts once, matching A*1.
  std::vector<double> degrees() const;

  // 1^T A 1: off-diagonal entries count twice, diagonal once.
  double total_sum() const;

  std::size_t edge_count() const;  // number of stored 1s (i <= j)

  bool operator==(const AdjacencyMatrix&) const = default;

 private:
  std::size_t index(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return i * n_ - i * (i - 1) / 2 + (j - i);
  }

  std::size_t n_ = 0;
  std::vector<std::uint8_t> upper_;
};

// Checks every model invariant; violations are data, not failures.
ValidationReport validate_params(const DcsbmParams& p);

// theta_i * theta_j * W[phi(i)][phi(j)], symmetric in (i, j).
double edge_probability(const DcsbmParams& p, std::size_t i, std::size_t j);

// Independent Bernoulli draws for the diagonal and upper triangle, mirrored.
// A pure function of (params, seed).
AdjacencyMatrix sample_adjacency(const DcsbmParams& p, std::uint64_t seed);

// Rescales a raw (theta, W) pair so each community's theta sums to one while
// preserving every edge probability exactly. If epsilon is not supplied, the
// tightest valid margin (min p, capped by 1 - max p and 1/2) is used.
DcsbmParams canonicalize(const std::vector<std::size_t>& phi,
                         const std::vector<double>& theta_raw,
                         const Matrix& w_raw,
                         std::optional<double> epsilon = std::nullopt);

// One-community generator: affinities X_i ~ Unif[0.1, 0.9), edge
// probabilities X_i X_j / 2, epsilon = 0.005.
DcsbmParams generate_null_experiment(std::size_t n, std::uint64_t seed);

// Three equal communities, edge probabilities M[phi(i)][phi(j)] X_i X_j with
// the fixed 3x3 mixing pattern, epsilon = 0.002. Requires 3 | n.
DcsbmParams generate_alternative_experiment(std::size_t n, std::uint64_t seed);

// The fixed 3x3 mixing pattern used by the alternative generator.
Matrix alternative_block_pattern();

}  // namespace dcsbm::model
