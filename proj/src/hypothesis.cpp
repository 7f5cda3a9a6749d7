#include "dcsbm/hypothesis.hpp"

#include <cmath>
#include <sstream>

#include "dcsbm/errors.hpp"
#include "dcsbm/io.hpp"
#include "dcsbm/spectra.hpp"
#include "dcsbm/transform.hpp"

namespace dcsbm::hypothesis {

double statistic(double lambda1, double lambdan, std::size_t n) {
  const double scale = std::pow(static_cast<double>(n), 2.0 / 3.0);
  return std::max(scale * (lambda1 - 2.0), scale * (-lambdan - 2.0));
}

TestOutcome decide(double t, double alpha, const tw::TwTable& table) {
  if (!(alpha > 0.0 && alpha < 1.0))
    fail(ErrorCategory::model, "alpha must lie in (0, 1)");
  TestOutcome out;
  out.statistic = t;
  out.alpha = alpha;
  out.threshold = table.quantile(1.0 - alpha / 2.0);
  out.reject = t >= out.threshold;  // ties reject: closed inequality
  out.p_value = std::min(1.0, 2.0 * (1.0 - table.cdf(t)));
  return out;
}

TestOutcome run_test(const model::AdjacencyMatrix& a, double alpha,
                     double clamp_floor, const tw::TwTable& table) {
  transform::TransformedMatrix bhat =
      clamp_floor > 0.0 ? transform::estimated_transform(a, clamp_floor)
                        : transform::estimated_transform(a);
  const std::size_t clamp_count = bhat.clamp_count;
  bhat = transform::scale(std::move(bhat));
  const spectra::SpectralSummary summary =
      spectra::symmetric_eigenvalues(bhat.entries);

  TestOutcome out =
      decide(statistic(summary.lambda_max, summary.lambda_min, a.n()), alpha, table);
  out.n = a.n();
  out.lambda1 = summary.lambda_max;
  out.lambdan = summary.lambda_min;
  out.clamp_count = clamp_count;
  return out;
}

std::string to_json(const TestOutcome& o) {
  std::ostringstream os;
  os << "{\"n\": " << o.n << ", \"lambda1\": " << io::fmt_g17(o.lambda1)
     << ", \"lambdan\": " << io::fmt_g17(o.lambdan)
     << ", \"T\": " << io::fmt_g17(o.statistic)
     << ", \"alpha\": " << io::fmt_g17(o.alpha)
     << ", \"threshold\": " << io::fmt_g17(o.threshold)
     << ", \"p_value\": " << io::fmt_g17(o.p_value)
     << ", \"reject\": " << (o.reject ? "true" : "false")
     << ", \"clamp_count\": " << o.clamp_count;
  if (o.seed) os << ", \"seed\": " << *o.seed;
  os << "}";
  return os.str();
}

}  // namespace dcsbm::hypothesis
