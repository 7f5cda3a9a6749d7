#include "dcsbm/tracy_widom.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <functional>

#include "dcsbm/errors.hpp"

namespace dcsbm::tw {

namespace {

using ld = long double;

constexpr ld kPi = 3.14159265358979323846264338327950288L;
constexpr ld kAiZero = 0.35502805388781723926L;    // Ai(0)  = 3^{-2/3}/Gamma(2/3)
constexpr ld kAipZero = -0.25881940379280679840L;  // Ai'(0) = -3^{-1/3}/Gamma(1/3)

// Maclaurin series for Ai and Ai'; cancellation keeps ~10 safe digits out to
// |x| ~ 7 in long double, which is where the asymptotics take over.
void airy_series(ld x, ld& ai, ld& aip) {
  if (x == 0.0L) {
    ai = kAiZero;
    aip = kAipZero;
    return;
  }
  const ld x3 = x * x * x;
  ld ft = 1.0L, gt = x;
  ld f = ft, g = gt;
  ld fp = 0.0L, gp = 1.0L;
  for (int k = 0; k < 240; ++k) {
    ft *= x3 / ((3.0L * k + 2.0L) * (3.0L * k + 3.0L));
    gt *= x3 / ((3.0L * k + 3.0L) * (3.0L * k + 4.0L));
    f += ft;
    g += gt;
    fp += ft * (3.0L * (k + 1)) / x;
    gp += gt * (3.0L * (k + 1) + 1.0L) / x;
    if (std::abs(ft) + std::abs(gt) < 1e-26L * (std::abs(f) + std::abs(g) + 1.0L))
      break;
  }
  ai = kAiZero * f + kAipZero * g;
  aip = kAiZero * fp + kAipZero * gp;
}

// Coefficients u_k of the Airy asymptotic expansions, as successive terms
// u_k / zeta^k with optimal truncation.
void airy_asymptotic_pos(ld x, ld& ai, ld& aip) {
  const ld zeta = (2.0L / 3.0L) * std::pow(x, 1.5L);
  ld term = 1.0L;  // u_k / zeta^k
  ld su = 1.0L, sv = 1.0L;
  ld prev = 1.0L;
  for (int k = 0; k < 60; ++k) {
    const ld ratio =
        ((3.0L * k + 0.5L) * (3.0L * k + 1.5L) * (3.0L * k + 2.5L)) /
        (54.0L * (k + 1.0L) * (k + 0.5L));
    term *= ratio / zeta;
    if (std::abs(term) > std::abs(prev)) break;  // asymptotic turning point
    const ld vterm = -term * (6.0L * (k + 1) + 1.0L) / (6.0L * (k + 1) - 1.0L);
    const ld sign = ((k + 1) % 2) ? -1.0L : 1.0L;
    su += sign * term;
    sv += sign * vterm;
    prev = term;
    if (std::abs(term) < 1e-26L) break;
  }
  const ld root = std::sqrt(kPi);
  ai = std::exp(-zeta) * su / (2.0L * root * std::pow(x, 0.25L));
  aip = -std::pow(x, 0.25L) * std::exp(-zeta) * sv / (2.0L * root);
}

void airy_asymptotic_neg(ld x, ld& ai, ld& aip) {
  const ld z = -x;
  const ld zeta = (2.0L / 3.0L) * std::pow(z, 1.5L);
  // Split u_k (and v_k) terms by parity with alternating signs.
  ld term = 1.0L;  // u_k / zeta^k, starting at k = 0
  ld p_even = 1.0L, q_odd = 0.0L;   // Ai sums
  ld r_even = 1.0L, s_odd = 0.0L;   // Ai' sums
  ld prev = 1.0L;
  for (int k = 0; k < 40; ++k) {
    const ld ratio =
        ((3.0L * k + 0.5L) * (3.0L * k + 1.5L) * (3.0L * k + 2.5L)) /
        (54.0L * (k + 1.0L) * (k + 0.5L));
    term *= ratio / zeta;
    if (std::abs(term) > std::abs(prev)) break;
    const int kk = k + 1;
    const ld vterm = -term * (6.0L * kk + 1.0L) / (6.0L * kk - 1.0L);
    // (-1)^m with m = kk/2 for even kk, m = (kk-1)/2 for odd kk
    if (kk % 2 == 0) {
      const ld sign = (kk / 2 % 2) ? -1.0L : 1.0L;
      p_even += sign * term;
      r_even += sign * vterm;
    } else {
      const ld sign = ((kk - 1) / 2 % 2) ? -1.0L : 1.0L;
      q_odd += sign * term;
      s_odd += sign * vterm;
    }
    prev = term;
    if (std::abs(term) < 1e-26L) break;
  }
  const ld phase = zeta + kPi / 4.0L;
  const ld root = std::sqrt(kPi);
  ai = (std::sin(phase) * p_even - std::cos(phase) * q_odd) /
       (root * std::pow(z, 0.25L));
  aip = -std::pow(z, 0.25L) *
        (std::cos(phase) * r_even + std::sin(phase) * s_odd) / root;
}

void airy_both(ld x, ld& ai, ld& aip) {
  if (x > 7.0L)
    airy_asymptotic_pos(x, ai, aip);
  else if (x < -7.0L)
    airy_asymptotic_neg(x, ai, aip);
  else
    airy_series(x, ai, aip);
}

void check_airy_range(double y) {
  if (!(y >= -15.0 && y <= 15.0))
    fail(ErrorCategory::numeric,
         "airy_ai: argument outside supported range [-15, 15]");
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4) for the second-order system q'' = y q + 2 q^3.

struct OdeState {
  ld q, p;
};

OdeState painleve_rhs(ld y, const OdeState& s) {
  return {s.p, y * s.q + 2.0L * s.q * s.q * s.q};
}

struct StepResult {
  OdeState next;
  ld error;  // scaled error estimate
};

StepResult dopri_step(ld y, const OdeState& s, ld h, ld tol) {
  static constexpr ld c2 = 1.0L / 5, c3 = 3.0L / 10, c4 = 4.0L / 5,
                      c5 = 8.0L / 9;
  static constexpr ld a21 = 1.0L / 5;
  static constexpr ld a31 = 3.0L / 40, a32 = 9.0L / 40;
  static constexpr ld a41 = 44.0L / 45, a42 = -56.0L / 15, a43 = 32.0L / 9;
  static constexpr ld a51 = 19372.0L / 6561, a52 = -25360.0L / 2187,
                      a53 = 64448.0L / 6561, a54 = -212.0L / 729;
  static constexpr ld a61 = 9017.0L / 3168, a62 = -355.0L / 33,
                      a63 = 46732.0L / 5247, a64 = 49.0L / 176,
                      a65 = -5103.0L / 18656;
  static constexpr ld b1 = 35.0L / 384, b3 = 500.0L / 1113, b4 = 125.0L / 192,
                      b5 = -2187.0L / 6784, b6 = 11.0L / 84;
  static constexpr ld e1 = 71.0L / 57600, e3 = -71.0L / 16695,
                      e4 = 71.0L / 1920, e5 = -17253.0L / 339200,
                      e6 = 22.0L / 525, e7 = -1.0L / 40;

  auto axpy = [](const OdeState& base, ld hh,
                 std::initializer_list<std::pair<ld, const OdeState*>> terms) {
    OdeState r = base;
    for (const auto& [coef, k] : terms) {
      r.q += hh * coef * k->q;
      r.p += hh * coef * k->p;
    }
    return r;
  };

  const OdeState k1 = painleve_rhs(y, s);
  const OdeState k2 = painleve_rhs(y + c2 * h, axpy(s, h, {{a21, &k1}}));
  const OdeState k3 = painleve_rhs(y + c3 * h, axpy(s, h, {{a31, &k1}, {a32, &k2}}));
  const OdeState k4 =
      painleve_rhs(y + c4 * h, axpy(s, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
  const OdeState k5 = painleve_rhs(
      y + c5 * h, axpy(s, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
  const OdeState k6 = painleve_rhs(
      y + h,
      axpy(s, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
  const OdeState next =
      axpy(s, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
  const OdeState k7 = painleve_rhs(y + h, next);

  const ld err_q = h * (e1 * k1.q + e3 * k3.q + e4 * k4.q + e5 * k5.q +
                        e6 * k6.q + e7 * k7.q);
  const ld err_p = h * (e1 * k1.p + e3 * k3.p + e4 * k4.p + e5 * k5.p +
                        e6 * k6.p + e7 * k7.p);
  const ld sq = std::abs(err_q) / (tol + tol * std::max(std::abs(s.q), std::abs(next.q)));
  const ld sp = std::abs(err_p) / (tol + tol * std::max(std::abs(s.p), std::abs(next.p)));
  return {next, std::max(sq, sp)};
}

// Integrates from y to y_target (y_target < y), adapting the step so every
// accepted step has scaled error <= 1.
void integrate_to(ld& y, OdeState& s, ld y_target, ld tol, ld& h) {
  while (y > y_target) {
    if (y + h < y_target) h = y_target - y;
    const StepResult r = dopri_step(y, s, h, tol);
    if (r.error <= 1.0L) {
      y += h;
      s = r.next;
      if (std::abs(s.q) > 1e6L)
        fail(ErrorCategory::numeric,
             "hastings_mcleod_solve: solution blow-up near y = " +
                 std::to_string(static_cast<double>(y)));
      const ld grow = (r.error > 0.0L)
                          ? std::min(5.0L, 0.9L * std::pow(r.error, -0.2L))
                          : 5.0L;
      h *= grow;
    } else {
      h *= std::max(0.2L, 0.9L * std::pow(r.error, -0.2L));
      if (std::abs(h) < 1e-14L)
        fail(ErrorCategory::numeric,
             "hastings_mcleod_solve: step size underflow (blow-up?)");
    }
    if (std::abs(s.q) > 1e6L || !std::isfinite(static_cast<double>(s.q)))
      fail(ErrorCategory::numeric,
           "hastings_mcleod_solve: solution blow-up near y = " +
               std::to_string(static_cast<double>(y)));
  }
}

// Adaptive Simpson quadrature on [a, b].
ld adaptive_simpson(const std::function<ld(ld)>& f, ld a, ld b, ld fa, ld fm,
                    ld fb, ld whole, ld tol, int depth) {
  const ld m = 0.5L * (a + b);
  const ld lm = 0.5L * (a + m), rm = 0.5L * (m + b);
  const ld flm = f(lm), frm = f(rm);
  const ld left = (m - a) / 6.0L * (fa + 4.0L * flm + fm);
  const ld right = (b - m) / 6.0L * (fm + 4.0L * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0L * tol)
    return left + right + (left + right - whole) / 15.0L;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5L * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5L * tol, depth - 1);
}

ld integrate(const std::function<ld(ld)>& f, ld a, ld b, ld tol) {
  const ld m = 0.5L * (a + b);
  const ld fa = f(a), fm = f(m), fb = f(b);
  const ld whole = (b - a) / 6.0L * (fa + 4.0L * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

std::uint64_t fnv1a(const unsigned char* bytes, std::size_t len,
                    std::uint64_t h = 1469598103934665603ULL) {
  for (std::size_t i = 0; i < len; ++i) {
    h ^= bytes[i];
    h *= 1099511628211ULL;
  }
  return h;
}

void append_bytes(std::string& buf, const void* p, std::size_t len) {
  buf.append(static_cast<const char*>(p), len);
}

}  // namespace

double airy_ai(double y) {
  check_airy_range(y);
  ld ai, aip;
  airy_both(static_cast<ld>(y), ai, aip);
  return static_cast<double>(ai);
}

double airy_ai_prime(double y) {
  check_airy_range(y);
  ld ai, aip;
  airy_both(static_cast<ld>(y), ai, aip);
  return static_cast<double>(aip);
}

QSolution hastings_mcleod_solve(double y_start, double y_end, double tol,
                                double grid_step) {
  if (!(y_start >= 6.0))
    fail(ErrorCategory::numeric, "hastings_mcleod_solve: y_start must be >= 6");
  if (!(y_end <= -10.0))
    fail(ErrorCategory::numeric, "hastings_mcleod_solve: y_end must be <= -10");
  if (!(tol >= 1e-12))
    fail(ErrorCategory::numeric,
         "hastings_mcleod_solve: tol below supported minimum 1e-12");
  if (!(grid_step > 0.0))
    fail(ErrorCategory::numeric, "hastings_mcleod_solve: grid_step must be positive");

  const std::size_t intervals = static_cast<std::size_t>(
      std::ceil((y_start - y_end) / grid_step - 1e-9));
  const ld h_grid = (static_cast<ld>(y_start) - static_cast<ld>(y_end)) /
                    static_cast<ld>(intervals);

  QSolution sol;
  sol.y_start = y_start;
  sol.y_end = y_end;
  sol.step = static_cast<double>(h_grid);
  sol.y.resize(intervals + 1);
  sol.q.resize(intervals + 1);
  sol.qp.resize(intervals + 1);

  ld ai, aip;
  airy_both(static_cast<ld>(y_start), ai, aip);
  OdeState state{ai, aip};
  ld y = static_cast<ld>(y_start);
  ld h = -1e-3L;

  // Walk the grid top-down; the adaptive stepper subdivides each interval as
  // needed and lands exactly on each node.
  for (std::size_t i = 0; i <= intervals; ++i) {
    const std::size_t node = intervals - i;  // ascending index of this node
    const ld y_node = static_cast<ld>(y_end) + h_grid * static_cast<ld>(node);
    if (i > 0) integrate_to(y, state, y_node, static_cast<ld>(tol), h);
    sol.y[node] = static_cast<double>(y_node);
    sol.q[node] = static_cast<double>(state.q);
    sol.qp[node] = static_cast<double>(state.p);
  }
  return sol;
}

TwTable TwTable::build(const BuildOptions& opt) {
  const QSolution sol =
      hastings_mcleod_solve(opt.y_start, opt.y_end, opt.ode_tol, opt.grid_step);
  const std::size_t count = sol.y.size();
  const ld h = static_cast<ld>(sol.step);

  // Tail of the exponent integral beyond the grid, where q is Airy to full
  // accuracy: integrals of Ai, Ai^2 and y Ai^2 over (y_top, ~14.5).
  const ld y_top = static_cast<ld>(sol.y_start);
  auto ai_f = [](ld t) {
    ld a, ap;
    airy_both(t, a, ap);
    return a;
  };
  auto ai2_f = [&ai_f](ld t) {
    const ld a = ai_f(t);
    return a * a;
  };
  auto yai2_f = [&ai_f](ld t) {
    const ld a = ai_f(t);
    return t * a * a;
  };
  const ld tail_hi = 14.5L;
  const ld tail_q = integrate(ai_f, y_top, tail_hi, 1e-22L);
  const ld tail_q2 = integrate(ai2_f, y_top, tail_hi, 1e-22L);
  const ld tail_yq2 = integrate(yai2_f, y_top, tail_hi, 1e-22L);

  // Cumulative integrals from the top node down, Hermite-corrected trapezoid
  // (both endpoint values and derivatives are known).
  std::vector<ld> q(count), qp(count);
  for (std::size_t i = 0; i < count; ++i) {
    q[i] = static_cast<ld>(sol.q[i]);
    qp[i] = static_cast<ld>(sol.qp[i]);
  }
  std::vector<ld> big_p(count), big_q(count), big_r(count);
  big_p[count - 1] = tail_q;
  big_q[count - 1] = tail_q2;
  big_r[count - 1] = tail_yq2;
  const ld h2_12 = h * h / 12.0L;
  for (std::size_t i = count - 1; i-- > 0;) {
    const ld y0 = static_cast<ld>(sol.y[i]), y1 = static_cast<ld>(sol.y[i + 1]);
    const ld f0 = q[i], f1 = q[i + 1];
    const ld d0 = qp[i], d1 = qp[i + 1];
    big_p[i] = big_p[i + 1] + 0.5L * h * (f0 + f1) + h2_12 * (d0 - d1);

    const ld g0 = q[i] * q[i], g1 = q[i + 1] * q[i + 1];
    const ld gd0 = 2.0L * q[i] * qp[i], gd1 = 2.0L * q[i + 1] * qp[i + 1];
    big_q[i] = big_q[i + 1] + 0.5L * h * (g0 + g1) + h2_12 * (gd0 - gd1);

    const ld r0 = y0 * g0, r1 = y1 * g1;
    const ld rd0 = g0 + y0 * gd0, rd1 = g1 + y1 * gd1;
    big_r[i] = big_r[i + 1] + 0.5L * h * (r0 + r1) + h2_12 * (rd0 - rd1);
  }

  TwTable table;
  table.x_.resize(count);
  table.cdf_.resize(count);
  table.pdf_.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const ld x = static_cast<ld>(sol.y[i]);
    const ld exponent = -0.5L * (big_p[i] + big_r[i] - x * big_q[i]);
    const ld dexponent = 0.5L * (q[i] + big_q[i]);
    const ld cdf = std::exp(exponent);
    table.x_[i] = static_cast<double>(x);
    table.cdf_[i] = static_cast<double>(cdf);
    table.pdf_[i] = static_cast<double>(cdf * dexponent);
  }
  table.tol_ = 1e-8;
  table.finalize();
  return table;
}

void TwTable::finalize() {
  const std::size_t count = x_.size();
  expo_.resize(count);
  dexpo_.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    expo_[i] = std::log(cdf_[i]);
    dexpo_[i] = pdf_[i] / cdf_[i];
  }
}

void TwTable::require_initialized() const {
  if (x_.empty())
    fail(ErrorCategory::numeric, "TW table not initialized");
}

std::size_t TwTable::locate(double x) const {
  const double h = x_[1] - x_[0];
  const double pos = (x - x_.front()) / h;
  if (pos <= 0.0) return 0;
  std::size_t i = static_cast<std::size_t>(pos);
  if (i >= x_.size() - 1) i = x_.size() - 2;
  return i;
}

double TwTable::exponent_at(double x) const {
  const std::size_t i = locate(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  return h00 * expo_[i] + h * h10 * dexpo_[i] + h01 * expo_[i + 1] +
         h * h11 * dexpo_[i + 1];
}

double TwTable::cdf(double x) const {
  bool clamped = false;
  return cdf(x, clamped);
}

double TwTable::cdf(double x, bool& clamped) const {
  require_initialized();
  clamped = false;
  if (x <= x_.front()) {
    clamped = x < x_.front();
    return clamped ? 0.0 : cdf_.front();
  }
  if (x >= x_.back()) {
    clamped = x > x_.back();
    return clamped ? 1.0 : cdf_.back();
  }
  return std::exp(exponent_at(x));
}

double TwTable::pdf(double x) const {
  require_initialized();
  if (x <= x_.front() || x >= x_.back()) return 0.0;
  const std::size_t i = locate(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  // Cubic interpolation of the exponent derivative (Catmull-Rom away from
  // the edges, linear at them), then pdf = F1 * E'.
  double dexp;
  if (i == 0 || i + 2 >= x_.size()) {
    dexp = (1.0 - t) * dexpo_[i] + t * dexpo_[i + 1];
  } else {
    const double fm1 = dexpo_[i - 1], f0 = dexpo_[i], f1 = dexpo_[i + 1],
                 f2 = dexpo_[i + 2];
    const double t2 = t * t, t3 = t2 * t;
    dexp = 0.5 * ((-t3 + 2.0 * t2 - t) * fm1 + (3.0 * t3 - 5.0 * t2 + 2.0) * f0 +
                  (-3.0 * t3 + 4.0 * t2 + t) * f1 + (t3 - t2) * f2);
  }
  return std::exp(exponent_at(x)) * dexp;
}

double TwTable::quantile(double p) const {
  require_initialized();
  if (!(p >= 1e-6 && p <= 1.0 - 1e-6))
    fail(ErrorCategory::numeric,
         "tw1_quantile: p outside supported range [1e-6, 1 - 1e-6]");
  // Bracket on the monotone node values, then bisect the interpolant.
  const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), p);
  if (it == cdf_.begin()) return x_.front();
  if (it == cdf_.end()) return x_.back();
  std::size_t hi_idx = static_cast<std::size_t>(it - cdf_.begin());
  double lo = x_[hi_idx - 1], hi = x_[hi_idx];
  for (int iter = 0; iter < 90; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) < p)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-14) break;
  }
  return 0.5 * (lo + hi);
}

void TwTable::save(const std::string& path) const {
  require_initialized();
  std::string payload;
  const std::uint32_t version = 1;
  const std::uint64_t count = x_.size();
  append_bytes(payload, &version, sizeof version);
  append_bytes(payload, &count, sizeof count);
  append_bytes(payload, x_.data(), count * sizeof(double));
  append_bytes(payload, cdf_.data(), count * sizeof(double));
  append_bytes(payload, pdf_.data(), count * sizeof(double));
  append_bytes(payload, &tol_, sizeof tol_);
  const std::uint64_t checksum =
      fnv1a(reinterpret_cast<const unsigned char*>(payload.data()), payload.size());

  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorCategory::io, "cannot open '" + path + "' for writing");
  os.write("TWT1", 4);
  os.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  os.write(reinterpret_cast<const char*>(&checksum), sizeof checksum);
  if (!os) fail(ErrorCategory::io, "failed writing '" + path + "'");
}

TwTable TwTable::load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorCategory::io, "cannot open '" + path + "'");
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "TWT1", 4) != 0)
    fail(ErrorCategory::format, "'" + path + "' is not a TW table cache");
  std::uint32_t version = 0;
  std::uint64_t count = 0;
  is.read(reinterpret_cast<char*>(&version), sizeof version);
  is.read(reinterpret_cast<char*>(&count), sizeof count);
  if (!is || version != 1)
    fail(ErrorCategory::format, "unsupported TW table version");
  if (count < 2 || count > (1u << 24))
    fail(ErrorCategory::format, "implausible TW table size");

  TwTable table;
  table.x_.resize(count);
  table.cdf_.resize(count);
  table.pdf_.resize(count);
  is.read(reinterpret_cast<char*>(table.x_.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  is.read(reinterpret_cast<char*>(table.cdf_.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  is.read(reinterpret_cast<char*>(table.pdf_.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  is.read(reinterpret_cast<char*>(&table.tol_), sizeof table.tol_);
  std::uint64_t stored = 0;
  is.read(reinterpret_cast<char*>(&stored), sizeof stored);
  if (!is) fail(ErrorCategory::format, "'" + path + "' is truncated");

  std::string payload;
  const std::uint64_t cnt = count;
  append_bytes(payload, &version, sizeof version);
  append_bytes(payload, &cnt, sizeof cnt);
  append_bytes(payload, table.x_.data(), count * sizeof(double));
  append_bytes(payload, table.cdf_.data(), count * sizeof(double));
  append_bytes(payload, table.pdf_.data(), count * sizeof(double));
  append_bytes(payload, &table.tol_, sizeof table.tol_);
  const std::uint64_t checksum =
      fnv1a(reinterpret_cast<const unsigned char*>(payload.data()), payload.size());
  if (checksum != stored)
    fail(ErrorCategory::format, "'" + path + "' failed its checksum");
  table.finalize();
  return table;
}

double tw1_cdf(const TwTable& table, double x) { return table.cdf(x); }
double tw1_pdf(const TwTable& table, double x) { return table.pdf(x); }
double tw1_quantile(const TwTable& table, double p) { return table.quantile(p); }

}  // namespace dcsbm::tw
