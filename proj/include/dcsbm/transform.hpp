#pragma once

#include <cstddef>
#include <string>

#include "dcsbm/matrix.hpp"
#include "dcsbm/model.hpp"

namespace dcsbm::transform {

enum class Source { oracle, estimated };

// Centered-and-rescaled matrix (B or B-hat) plus scaling metadata.
struct TransformedMatrix {
  Matrix entries;
  bool scaled = false;
  Source source = Source::oracle;
  std::size_t clamp_count = 0;

  std::size_t n() const { return entries.n(); }
};

// Entrywise (a_ij - p_ij) / sqrt(p_ij (1 - p_ij)) with the model's exact
// edge probabilities. Requires valid one-community params.
TransformedMatrix oracle_transform(const model::AdjacencyMatrix& a,
                                   const model::DcsbmParams& params);

// Multiplies every entry by n^{-1/2} and sets the flag. Errors on
// double-scaling.
TransformedMatrix scale(TransformedMatrix b);

// Degree-product estimator (row sum i)(row sum j)/(total sum). Errors on an
// empty graph.
Matrix plug_in_probability(const model::AdjacencyMatrix& a);

// Plug-in estimate clamped into [clamp_floor, 1 - clamp_floor], then the same
// centering/rescaling as the oracle transform. clamp_count records how many
// distinct (i <= j) positions were clamped.
TransformedMatrix estimated_transform(const model::AdjacencyMatrix& a,
                                      double clamp_floor);

// Default clamp floor 1/n^2.
TransformedMatrix estimated_transform(const model::AdjacencyMatrix& a);

// Dense binary container: 16-byte header (magic "DCT1", u32 n, u32 flags,
// u32 reserved), then n*n little-endian doubles, row-major.
void write_container(const TransformedMatrix& b, const std::string& path);
TransformedMatrix read_container(const std::string& path);

// Plain CSV dump for inspection, one row per line.
void write_csv(const TransformedMatrix& b, const std::string& path);

}  // namespace dcsbm::transform
