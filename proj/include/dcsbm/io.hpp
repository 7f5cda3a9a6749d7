#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "dcsbm/model.hpp"

namespace dcsbm::io {

enum class GraphFormat { auto_detect, matrix_market, edge_list };

// Reads a graph file. Matrix Market carries its own dimension; edge lists
// need `n`. Duplicate edges collapse to 1; indices are 1-based on disk.
model::AdjacencyMatrix parse_graph(const std::string& path, GraphFormat format,
                                   std::optional<std::size_t> n = std::nullopt);

// "%%MatrixMarket matrix coordinate pattern symmetric", lower triangle,
// 1-indexed.
void write_matrix_market(const model::AdjacencyMatrix& a, const std::string& path);

// One "u v" pair per line, u <= v, 1-indexed.
void write_edge_list(const model::AdjacencyMatrix& a, const std::string& path);

// Params JSON: {"n", "k", "epsilon", "phi" (1-indexed), "theta", "W"}.
// Unknown keys are rejected.
model::DcsbmParams read_params_json(const std::string& path);
void write_params_json(const model::DcsbmParams& p, const std::string& path);
std::string params_to_json(const model::DcsbmParams& p);
model::DcsbmParams params_from_json(const std::string& text);

// Doubles formatted with 17 significant digits ("%.17g").
std::string fmt_g17(double v);

// Whole-file helpers.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace dcsbm::io
