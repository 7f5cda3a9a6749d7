#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "dcsbm/errors.hpp"
#include "dcsbm/tracy_widom.hpp"
#include "oracles.hpp"

using namespace dcsbm;

namespace {

const tw::TwTable& shared_table() {
  static const tw::TwTable table = tw::TwTable::build();
  return table;
}

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("airy value and slope at zero match the gamma-function closed forms") {
  const double ai0 = std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0);
  const double aip0 = -std::pow(3.0, -1.0 / 3.0) / std::tgamma(1.0 / 3.0);
  CHECK(std::abs(tw::airy_ai(0.0) - ai0) < 1e-14);
  CHECK(std::abs(tw::airy_ai_prime(0.0) - aip0) < 1e-14);
}

TEST_CASE("airy decays monotonically on the positive axis") {
  CHECK(tw::airy_ai(4.0) < tw::airy_ai(2.0));
  CHECK(tw::airy_ai(2.0) < tw::airy_ai(1.0));
  CHECK(tw::airy_ai(1.0) > 0.0);
  CHECK(tw::airy_ai(14.9) > 0.0);
}

TEST_CASE("airy first zero sits at the published location") {
  // Bisect the series implementation on a bracket of the first zero.
  double lo = -3.0, hi = -2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (tw::airy_ai(mid) * tw::airy_ai(hi) <= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  CHECK(std::abs(0.5 * (lo + hi) - (-2.33810741045976704)) < 1e-6);
}

TEST_CASE("airy series and asymptotic branches agree across the switchovers") {
  // |x| = 7 is the hand-off; both methods are accurate in a window around it.
  for (double x : {6.75, 6.9, 6.99}) {
    const double h = 7.01 - x;  // cross-check continuity through 7
    const double left = tw::airy_ai(x);
    const double right = tw::airy_ai(x + 2.0 * h);
    const double mid = tw::airy_ai(x + h);
    CHECK(std::abs(mid - 0.5 * (left + right)) <
          0.26 * std::abs(left - right) + 1e-12);
  }
  // direct smoothness probes around both hand-offs
  const double step = 1e-4;
  for (double x0 : {7.0, -7.0}) {
    const double d1 = (tw::airy_ai(x0 + step) - tw::airy_ai(x0)) / step;
    const double d2 = (tw::airy_ai(x0) - tw::airy_ai(x0 - step)) / step;
    CHECK(std::abs(d1 - d2) < 1e-3);
    CHECK(std::abs(tw::airy_ai_prime(x0) - d1) < 1e-3);
  }
}

TEST_CASE("airy ODE integration closes the loop on the initial conditions") {
  // Integrate w'' = x w from 8 back to 0 with w = Ai(8), w' = Ai'(8); the
  // result must land on Ai(0) to high accuracy. This exercises both
  // asymptotic initial values and the series value at once.
  long double w = tw::airy_ai(8.0), wp = tw::airy_ai_prime(8.0);
  long double x = 8.0L;
  const long double h = -1.0L / 4096.0L;
  while (x > 0.0L) {
    // RK4 step for the linear system
    auto f = [](long double t, long double a, long double b) {
      return std::pair<long double, long double>{b, t * a};
    };
    const auto [k1a, k1b] = f(x, w, wp);
    const auto [k2a, k2b] = f(x + h / 2, w + h / 2 * k1a, wp + h / 2 * k1b);
    const auto [k3a, k3b] = f(x + h / 2, w + h / 2 * k2a, wp + h / 2 * k2b);
    const auto [k4a, k4b] = f(x + h, w + h * k3a, wp + h * k3b);
    w += h / 6 * (k1a + 2 * k2a + 2 * k3a + k4a);
    wp += h / 6 * (k1b + 2 * k2b + 2 * k3b + k4b);
    x += h;
  }
  CHECK(std::abs(static_cast<double>(w) - tw::airy_ai(0.0)) < 1e-10);
  CHECK(std::abs(static_cast<double>(wp) - tw::airy_ai_prime(0.0)) < 1e-10);
}

TEST_CASE("airy rejects arguments outside the supported range") {
  CHECK_THROWS_AS(tw::airy_ai(15.5), DcsbmError);
  CHECK_THROWS_AS(tw::airy_ai(-15.5), DcsbmError);
  CHECK_THROWS_AS(tw::airy_ai_prime(20.0), DcsbmError);
}

TEST_CASE("hastings-mcleod solution starts on the airy boundary condition") {
  const auto sol = tw::hastings_mcleod_solve(8.0, -10.0, 1e-12);
  CHECK(sol.q.back() == tw::airy_ai(8.0));
  CHECK(sol.qp.back() == tw::airy_ai_prime(8.0));
  CHECK(sol.y.front() == doctest::Approx(-10.0));
  CHECK(sol.y.back() == doctest::Approx(8.0));
}

TEST_CASE("hastings-mcleod value at the origin matches the published constant") {
  const auto sol = tw::hastings_mcleod_solve(8.0, -10.0, 1e-12);
  double q0 = 0.0;
  for (std::size_t i = 0; i < sol.y.size(); ++i)
    if (std::abs(sol.y[i]) < 1e-9) q0 = sol.q[i];
  CHECK(std::abs(q0 - 0.36706155154807) < 1e-6);
}

TEST_CASE("hastings-mcleod tracks airy on [4, 6]") {
  const auto sol = tw::hastings_mcleod_solve(8.0, -10.0, 1e-12);
  for (double y = 4.0; y <= 6.0 + 1e-9; y += 0.5) {
    const std::size_t idx =
        static_cast<std::size_t>(std::llround((y - sol.y_end) / sol.step));
    const double ratio = sol.q[idx] / tw::airy_ai(sol.y[idx]);
    CHECK(ratio > 0.99);
    CHECK(ratio < 1.01);
  }
}

TEST_CASE("hastings-mcleod validates its preconditions") {
  CHECK_THROWS_AS(tw::hastings_mcleod_solve(5.0, -10.0, 1e-12), DcsbmError);
  CHECK_THROWS_AS(tw::hastings_mcleod_solve(8.0, -9.0, 1e-12), DcsbmError);
  CHECK_THROWS_AS(tw::hastings_mcleod_solve(8.0, -10.0, 1e-13), DcsbmError);
}

TEST_CASE("table invariants: tails, monotonicity, density mass") {
  const tw::TwTable& t = shared_table();
  CHECK(t.grid().front() <= -10.0);
  CHECK(t.grid().back() >= 6.0);
  CHECK(t.cdf_values().front() <= 1e-8);
  CHECK(t.cdf_values().back() >= 1.0 - 1e-6);

  // strictly increasing at grid resolution on [-8, 4]
  const auto& xs = t.grid();
  const auto& cs = t.cdf_values();
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    CHECK(cs[i + 1] >= cs[i]);
    if (xs[i] >= -8.0 && xs[i + 1] <= 4.0) CHECK(cs[i + 1] > cs[i]);
  }

  double mass = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    CHECK(t.pdf_values()[i] >= 0.0);
    mass += 0.5 * (t.pdf_values()[i] + t.pdf_values()[i + 1]) * (xs[i + 1] - xs[i]);
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("cdf clamps outside the grid and flags it") {
  const tw::TwTable& t = shared_table();
  bool clamped = false;
  CHECK(t.cdf(-12.0, clamped) == 0.0);
  CHECK(clamped);
  CHECK(t.cdf(9.0, clamped) == 1.0);
  CHECK(clamped);
  t.cdf(0.0, clamped);
  CHECK_FALSE(clamped);
  CHECK(t.cdf(6.0) >= 1.0 - 3e-6);  // true upper tail at 6 is ~2e-6
  CHECK(t.cdf(-10.0) <= 1e-8);
}

TEST_CASE("cdf matches the moment-matched gamma oracle over the bulk") {
  const tw::TwTable& t = shared_table();
  const oracles::ShiftedGammaTw1 oracle;
  for (double x = -4.0; x <= 2.0 + 1e-9; x += 0.25)
    CHECK(std::abs(t.cdf(x) - oracle.cdf(x)) < 5e-3);
}

TEST_CASE("cdf and quantiles agree with published anchor values") {
  const tw::TwTable& t = shared_table();
  // CDF at the TW1 mean.
  CHECK(std::abs(t.cdf(-1.2065335745820) - 0.519) < 2e-3);
  // Commonly tabulated upper quantiles.
  CHECK(std::abs(t.quantile(0.95) - 0.9793) < 5e-3);
  CHECK(std::abs(t.quantile(0.975) - 1.45) < 1e-2);
  CHECK(std::abs(t.quantile(0.99) - 2.0234) < 5e-3);
}

TEST_CASE("pdf integrates the cdf and peaks where the gamma oracle peaks") {
  const tw::TwTable& t = shared_table();
  // numeric derivative of the cdf equals the pdf
  for (double x : {-3.0, -1.5, -0.5, 0.5, 1.5}) {
    const double h = 1e-5;
    const double num = (t.cdf(x + h) - t.cdf(x - h)) / (2.0 * h);
    CHECK(std::abs(num - t.pdf(x)) < 1e-5);
  }
  // argmax: the TW1 density peaks near -1.39 (the moment-matched gamma mode
  // lands within a few hundredths of the true mode)
  const oracles::ShiftedGammaTw1 oracle;
  const double oracle_mode = (oracle.k - 1.0) * oracle.theta - oracle.alpha;
  double best_x = 0.0, best_v = -1.0;
  for (double x = -4.0; x <= 1.0; x += 1e-3) {
    const double v = t.pdf(x);
    if (v > best_v) {
      best_v = v;
      best_x = x;
    }
  }
  CHECK(std::abs(best_x - oracle_mode) < 0.05);
}

TEST_CASE("quantile and cdf round-trip through each other") {
  const tw::TwTable& t = shared_table();
  for (double p : {0.01, 0.05, 0.1, 0.5, 0.9, 0.95, 0.99})
    CHECK(std::abs(t.cdf(t.quantile(p)) - p) < 1e-4);
  CHECK(std::abs(t.quantile(t.cdf(0.3)) - 0.3) < 1e-4);
  CHECK_THROWS_AS(t.quantile(1e-7), DcsbmError);
  CHECK_THROWS_AS(t.quantile(1.0), DcsbmError);
}

TEST_CASE("grid refinement leaves the cdf unchanged at 20 probes") {
  const tw::TwTable& coarse = shared_table();
  tw::BuildOptions fine_opt;
  fine_opt.grid_step = fine_opt.grid_step / 2.0;
  const tw::TwTable fine = tw::TwTable::build(fine_opt);
  for (int i = 0; i < 20; ++i) {
    const double x = -8.0 + 12.0 * static_cast<double>(i) / 19.0;
    CHECK(std::abs(coarse.cdf(x) - fine.cdf(x)) < 1e-6);
  }
}

TEST_CASE("uninitialized tables refuse queries") {
  const tw::TwTable empty;
  CHECK_FALSE(empty.initialized());
  CHECK_THROWS_AS(empty.cdf(0.0), DcsbmError);
  CHECK_THROWS_AS(empty.pdf(0.0), DcsbmError);
  CHECK_THROWS_AS(empty.quantile(0.5), DcsbmError);
}

TEST_CASE("cache round-trip preserves every query; corruption is rejected") {
  const tw::TwTable& t = shared_table();
  const std::string path = temp_path("dcsbm_tw_cache_test.bin");
  t.save(path);
  const tw::TwTable back = tw::TwTable::load(path);
  for (double x : {-5.0, -1.0, 0.0, 1.45, 3.0}) {
    CHECK(back.cdf(x) == t.cdf(x));
    CHECK(back.pdf(x) == t.pdf(x));
  }
  CHECK(back.quantile(0.975) == t.quantile(0.975));

  // flip one payload byte: checksum must catch it
  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(64);
    char b;
    f.seekg(64);
    f.read(&b, 1);
    b ^= 0x40;
    f.seekp(64);
    f.write(&b, 1);
  }
  CHECK_THROWS_AS(tw::TwTable::load(path), DcsbmError);
  std::filesystem::remove(path);
}

TEST_CASE("free-function wrappers delegate to the table") {
  const tw::TwTable& t = shared_table();
  CHECK(tw::tw1_cdf(t, 0.5) == t.cdf(0.5));
  CHECK(tw::tw1_pdf(t, 0.5) == t.pdf(0.5));
  CHECK(tw::tw1_quantile(t, 0.9) == t.quantile(0.9));
}
