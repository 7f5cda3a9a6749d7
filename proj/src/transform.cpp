#include "dcsbm/transform.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "dcsbm/errors.hpp"
#include "dcsbm/io.hpp"

namespace dcsbm::transform {

namespace {

constexpr char kMagic[4] = {'D', 'C', 'T', '1'};
constexpr std::uint32_t kFlagScaled = 1u;
constexpr std::uint32_t kFlagEstimated = 2u;

double standardize(double a, double p) {
  return (a - p) / std::sqrt(p * (1.0 - p));
}

}  // namespace

TransformedMatrix oracle_transform(const model::AdjacencyMatrix& a,
                                   const model::DcsbmParams& params) {
  if (params.k != 1)
    fail(ErrorCategory::model, "oracle transform is defined for k = 1 only");
  if (params.n != a.n())
    fail(ErrorCategory::model, "params and adjacency dimensions differ");
  const model::ValidationReport report = model::validate_params(params);
  if (!report.ok)
    fail(ErrorCategory::model, "invalid params: " + report.violations.front());

  TransformedMatrix out;
  out.entries = Matrix(a.n());
  out.source = Source::oracle;
  const double w = params.W(0, 0);
  for (std::size_t i = 0; i < a.n(); ++i) {
    const double ti = params.theta[i];
    for (std::size_t j = i; j < a.n(); ++j) {
      const double p = ti * params.theta[j] * w;
      if (!(p > 0.0 && p < 1.0))
        fail(ErrorCategory::numeric, "edge probability outside (0, 1)");
      const double v = standardize(a.at(i, j) ? 1.0 : 0.0, p);
      out.entries(i, j) = v;
      out.entries(j, i) = v;
    }
  }
  return out;
}

TransformedMatrix scale(TransformedMatrix b) {
  if (b.scaled) fail(ErrorCategory::numeric, "matrix is already scaled");
  if (b.n() == 0) fail(ErrorCategory::model, "cannot scale an empty matrix");
  const double s = 1.0 / std::sqrt(static_cast<double>(b.n()));
  for (double& v : b.entries.data()) v *= s;
  b.scaled = true;
  return b;
}

Matrix plug_in_probability(const model::AdjacencyMatrix& a) {
  const std::vector<double> deg = a.degrees();
  double total = 0.0;
  for (double d : deg) total += d;
  if (total <= 0.0) fail(ErrorCategory::model, "degenerate graph (no edges)");
  Matrix p(a.n());
  for (std::size_t i = 0; i < a.n(); ++i)
    for (std::size_t j = 0; j < a.n(); ++j) p(i, j) = deg[i] * deg[j] / total;
  return p;
}

TransformedMatrix estimated_transform(const model::AdjacencyMatrix& a,
                                      double clamp_floor) {
  if (!(clamp_floor > 0.0 && clamp_floor < 0.5))
    fail(ErrorCategory::model, "clamp_floor must lie in (0, 0.5)");
  const std::vector<double> deg = a.degrees();
  double total = 0.0;
  for (double d : deg) total += d;
  if (total <= 0.0) fail(ErrorCategory::model, "degenerate graph (no edges)");

  TransformedMatrix out;
  out.entries = Matrix(a.n());
  out.source = Source::estimated;
  const double hi = 1.0 - clamp_floor;
  for (std::size_t i = 0; i < a.n(); ++i) {
    for (std::size_t j = i; j < a.n(); ++j) {
      double p = deg[i] * deg[j] / total;
      if (p < clamp_floor) {
        p = clamp_floor;
        ++out.clamp_count;
      } else if (p > hi) {
        p = hi;
        ++out.clamp_count;
      }
      const double v = standardize(a.at(i, j) ? 1.0 : 0.0, p);
      out.entries(i, j) = v;
      out.entries(j, i) = v;
    }
  }
  return out;
}

TransformedMatrix estimated_transform(const model::AdjacencyMatrix& a) {
  const double n = static_cast<double>(a.n());
  return estimated_transform(a, 1.0 / (n * n));
}

void write_container(const TransformedMatrix& b, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorCategory::io, "cannot open '" + path + "' for writing");
  std::uint32_t n32 = static_cast<std::uint32_t>(b.n());
  std::uint32_t flags = (b.scaled ? kFlagScaled : 0u) |
                        (b.source == Source::estimated ? kFlagEstimated : 0u);
  std::uint32_t reserved = 0;
  os.write(kMagic, 4);
  os.write(reinterpret_cast<const char*>(&n32), 4);
  os.write(reinterpret_cast<const char*>(&flags), 4);
  os.write(reinterpret_cast<const char*>(&reserved), 4);
  os.write(reinterpret_cast<const char*>(b.entries.data().data()),
           static_cast<std::streamsize>(sizeof(double) * b.entries.data().size()));
  if (!os) fail(ErrorCategory::io, "failed writing '" + path + "'");
}

TransformedMatrix read_container(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorCategory::io, "cannot open '" + path + "'");
  char magic[4];
  std::uint32_t n32 = 0, flags = 0, reserved = 0;
  is.read(magic, 4);
  is.read(reinterpret_cast<char*>(&n32), 4);
  is.read(reinterpret_cast<char*>(&flags), 4);
  is.read(reinterpret_cast<char*>(&reserved), 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    fail(ErrorCategory::format, "'" + path + "' is not a DCT1 container");
  TransformedMatrix out;
  out.entries = Matrix(n32);
  out.scaled = (flags & kFlagScaled) != 0;
  out.source = (flags & kFlagEstimated) ? Source::estimated : Source::oracle;
  is.read(reinterpret_cast<char*>(out.entries.data().data()),
          static_cast<std::streamsize>(sizeof(double) * out.entries.data().size()));
  if (!is) fail(ErrorCategory::format, "'" + path + "' is truncated");
  return out;
}

void write_csv(const TransformedMatrix& b, const std::string& path) {
  std::ofstream os(path);
  if (!os) fail(ErrorCategory::io, "cannot open '" + path + "' for writing");
  for (std::size_t i = 0; i < b.n(); ++i) {
    for (std::size_t j = 0; j < b.n(); ++j) {
      if (j) os << ',';
      os << io::fmt_g17(b.entries(i, j));
    }
    os << '\n';
  }
  if (!os) fail(ErrorCategory::io, "failed writing '" + path + "'");
}

}  // namespace dcsbm::transform
