#include "dcsbm/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dcsbm/errors.hpp"

namespace dcsbm::io {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool parse_index(const std::string& tok, std::size_t& out) {
  if (tok.empty()) return false;
  std::size_t v = 0;
  for (char c : tok) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    v = v * 10 + static_cast<std::size_t>(c - '0');
    if (v > (1ull << 32)) return false;
  }
  out = v;
  return true;
}

// Converts a 1-based on-disk index pair to 0-based, with line diagnostics.
void add_edge(model::AdjacencyMatrix& a, std::size_t u, std::size_t v,
              std::size_t line_no) {
  if (u == 0 || v == 0 || u > a.n() || v > a.n())
    fail(ErrorCategory::format,
         "index out of range on line " + std::to_string(line_no) +
             " (expected 1.." + std::to_string(a.n()) + ")");
  a.set(u - 1, v - 1, true);
}

model::AdjacencyMatrix parse_matrix_market(std::istream& is) {
  std::string header;
  if (!std::getline(is, header))
    fail(ErrorCategory::format, "empty Matrix Market file");
  std::istringstream hs(header);
  std::string banner, object, fmt, field, symmetry;
  hs >> banner >> object >> fmt >> field >> symmetry;
  if (banner != "%%MatrixMarket")
    fail(ErrorCategory::format, "malformed Matrix Market header");
  if (lower(object) != "matrix" || lower(fmt) != "coordinate")
    fail(ErrorCategory::format, "unsupported Matrix Market kind '" + object +
                                    " " + fmt + "'");
  if (lower(field) != "pattern")
    fail(ErrorCategory::format, "unsupported field type '" + field + "'");
  if (lower(symmetry) != "symmetric")
    fail(ErrorCategory::format, "unsupported symmetry '" + symmetry + "'");

  std::string line;
  std::size_t line_no = 1;
  // Comment lines, then the size line.
  std::size_t rows = 0, cols = 0, nnz = 0;
  bool have_size = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line[0] == '%') continue;
    std::istringstream ls(line);
    std::string a, b, c;
    if (!(ls >> a >> b >> c)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      fail(ErrorCategory::format,
           "malformed size line on line " + std::to_string(line_no));
    }
    if (!parse_index(a, rows) || !parse_index(b, cols) || !parse_index(c, nnz))
      fail(ErrorCategory::format,
           "malformed size line on line " + std::to_string(line_no));
    have_size = true;
    break;
  }
  if (!have_size) fail(ErrorCategory::format, "missing Matrix Market size line");
  if (rows != cols)
    fail(ErrorCategory::format, "adjacency matrix must be square");

  model::AdjacencyMatrix a(rows);
  std::size_t seen = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line[0] == '%') continue;
    std::istringstream ls(line);
    std::string su, sv, extra;
    if (!(ls >> su >> sv))
      fail(ErrorCategory::format,
           "malformed entry on line " + std::to_string(line_no));
    std::size_t u = 0, v = 0;
    if (!parse_index(su, u) || !parse_index(sv, v))
      fail(ErrorCategory::format,
           "malformed entry on line " + std::to_string(line_no));
    add_edge(a, u, v, line_no);
    ++seen;
  }
  if (seen != nnz)
    fail(ErrorCategory::format,
         "entry count mismatch: header says " + std::to_string(nnz) +
             ", file has " + std::to_string(seen));
  return a;
}

model::AdjacencyMatrix parse_edge_list(std::istream& is, std::size_t n) {
  model::AdjacencyMatrix a(n);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::string su, sv, extra;
    if (!(ls >> su >> sv) || (ls >> extra))
      fail(ErrorCategory::format,
           "expected 'u v' on line " + std::to_string(line_no));
    std::size_t u = 0, v = 0;
    if (!parse_index(su, u) || !parse_index(sv, v))
      fail(ErrorCategory::format,
           "expected 1-indexed integers on line " + std::to_string(line_no));
    add_edge(a, u, v, line_no);
  }
  return a;
}

}  // namespace

model::AdjacencyMatrix parse_graph(const std::string& path, GraphFormat format,
                                   std::optional<std::size_t> n) {
  std::ifstream is(path);
  if (!is) fail(ErrorCategory::io, "cannot open '" + path + "'");

  if (format == GraphFormat::auto_detect) {
    std::string first;
    std::getline(is, first);
    is.seekg(0);
    format = (first.rfind("%%MatrixMarket", 0) == 0) ? GraphFormat::matrix_market
                                                     : GraphFormat::edge_list;
  }
  if (format == GraphFormat::matrix_market) return parse_matrix_market(is);
  if (!n || *n == 0)
    fail(ErrorCategory::usage, "edge list input requires --n");
  return parse_edge_list(is, *n);
}

void write_matrix_market(const model::AdjacencyMatrix& a, const std::string& path) {
  std::ofstream os(path);
  if (!os) fail(ErrorCategory::io, "cannot open '" + path + "' for writing");
  os << "%%MatrixMarket matrix coordinate pattern symmetric\n";
  os << a.n() << ' ' << a.n() << ' ' << a.edge_count() << '\n';
  // Lower triangle, 1-indexed.
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (a.at(i, j)) os << (i + 1) << ' ' << (j + 1) << '\n';
  if (!os) fail(ErrorCategory::io, "failed writing '" + path + "'");
}

void write_edge_list(const model::AdjacencyMatrix& a, const std::string& path) {
  std::ofstream os(path);
  if (!os) fail(ErrorCategory::io, "cannot open '" + path + "' for writing");
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t j = i; j < a.n(); ++j)
      if (a.at(i, j)) os << (i + 1) << ' ' << (j + 1) << '\n';
  if (!os) fail(ErrorCategory::io, "failed writing '" + path + "'");
}

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorCategory::io, "cannot open '" + path + "'");
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorCategory::io, "cannot open '" + path + "' for writing");
  os << contents;
  if (!os) fail(ErrorCategory::io, "failed writing '" + path + "'");
}

model::DcsbmParams params_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCategory::format, std::string("params JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorCategory::format, "params JSON must be an object");
  static const char* known[] = {"n", "k", "epsilon", "phi", "theta", "W"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) {
          return it.key() == k;
        }) == std::end(known))
      fail(ErrorCategory::format, "params JSON: unknown key '" + it.key() + "'");
  }
  for (const char* k : known)
    if (!j.contains(k))
      fail(ErrorCategory::format, std::string("params JSON: missing key '") + k + "'");

  model::DcsbmParams p;
  try {
    p.n = j.at("n").get<std::size_t>();
    p.k = j.at("k").get<std::size_t>();
    p.epsilon = j.at("epsilon").get<double>();
    const auto& phi = j.at("phi");
    const auto& theta = j.at("theta");
    const auto& w = j.at("W");
    if (!phi.is_array() || phi.size() != p.n)
      fail(ErrorCategory::format, "params JSON: phi must be an array of length n");
    if (!theta.is_array() || theta.size() != p.n)
      fail(ErrorCategory::format, "params JSON: theta must be an array of length n");
    if (!w.is_array() || w.size() != p.k)
      fail(ErrorCategory::format, "params JSON: W must be a k-by-k array");
    p.phi.resize(p.n);
    for (std::size_t i = 0; i < p.n; ++i) {
      const long long v = phi[i].get<long long>();
      if (v < 1 || static_cast<std::size_t>(v) > p.k)
        fail(ErrorCategory::format,
             "params JSON: phi[" + std::to_string(i + 1) + "] must be in 1..k");
      p.phi[i] = static_cast<std::size_t>(v - 1);  // 1-indexed on disk
    }
    p.theta.resize(p.n);
    for (std::size_t i = 0; i < p.n; ++i) p.theta[i] = theta[i].get<double>();
    p.W = Matrix(p.k);
    for (std::size_t mu = 0; mu < p.k; ++mu) {
      if (!w[mu].is_array() || w[mu].size() != p.k)
        fail(ErrorCategory::format, "params JSON: W must be a k-by-k array");
      for (std::size_t nu = 0; nu < p.k; ++nu)
        p.W(mu, nu) = w[mu][nu].get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCategory::format, std::string("params JSON: ") + e.what());
  }
  return p;
}

model::DcsbmParams read_params_json(const std::string& path) {
  return params_from_json(read_file(path));
}

std::string params_to_json(const model::DcsbmParams& p) {
  std::ostringstream os;
  os << "{\"n\": " << p.n << ", \"k\": " << p.k
     << ", \"epsilon\": " << fmt_g17(p.epsilon) << ", \"phi\": [";
  for (std::size_t i = 0; i < p.n; ++i) {
    if (i) os << ", ";
    os << (p.phi[i] + 1);
  }
  os << "], \"theta\": [";
  for (std::size_t i = 0; i < p.n; ++i) {
    if (i) os << ", ";
    os << fmt_g17(p.theta[i]);
  }
  os << "], \"W\": [";
  for (std::size_t mu = 0; mu < p.k; ++mu) {
    if (mu) os << ", ";
    os << '[';
    for (std::size_t nu = 0; nu < p.k; ++nu) {
      if (nu) os << ", ";
      os << fmt_g17(p.W(mu, nu));
    }
    os << ']';
  }
  os << "]}";
  return os.str();
}

void write_params_json(const model::DcsbmParams& p, const std::string& path) {
  write_file(path, params_to_json(p) + "\n");
}

}  // namespace dcsbm::io
