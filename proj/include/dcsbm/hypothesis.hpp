#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "dcsbm/model.hpp"
#include "dcsbm/tracy_widom.hpp"

namespace dcsbm::hypothesis {

struct TestOutcome {
  std::size_t n = 0;
  double lambda1 = 0.0;   // largest eigenvalue of the scaled matrix
  double lambdan = 0.0;   // smallest eigenvalue of the scaled matrix
  double statistic = 0.0;
  double alpha = 0.0;
  double threshold = 0.0;  // TW1 quantile at 1 - alpha/2
  double p_value = 0.0;
  bool reject = false;
  std::size_t clamp_count = 0;
  std::optional<std::uint64_t> seed;  // provenance, when known
};

// T = max(n^{2/3} (lambda1 - 2), n^{2/3} (-lambdan - 2)).
double statistic(double lambda1, double lambdan, std::size_t n);

// Bonferroni rule: reject iff T >= quantile(1 - alpha/2); two-sided
// p-value min(1, 2 (1 - F1(T))). Fills the statistic/decision fields.
TestOutcome decide(double t, double alpha, const tw::TwTable& table);

// Full pipeline on one snapshot: estimated transform, scaling, extreme
// eigenvalues, statistic, decision. Deterministic given A.
TestOutcome run_test(const model::AdjacencyMatrix& a, double alpha,
                     double clamp_floor, const tw::TwTable& table);

// Flat JSON with the documented field order; doubles printed with 17
// significant digits.
std::string to_json(const TestOutcome& outcome);

}  // namespace dcsbm::hypothesis
