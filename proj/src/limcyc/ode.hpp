#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>

#include "limcyc/error.hpp"

namespace limcyc {

struct IntegratorOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
  /// Step budget for a single trajectory (flow); exceeding it is an
  /// integration failure.
  long max_steps = 1'000'000;
};

/// Dormand-Prince 5(4) for autonomous systems y' = f(y), with Hairer's
/// fourth-order continuous extension over the last accepted step.
///
/// Rhs must be callable as `void(const State&, State&)`.
template <std::size_t N, class Rhs>
class DormandPrince {
 public:
  using State = std::array<double, N>;

  DormandPrince(Rhs rhs, IntegratorOptions opts) : rhs_(std::move(rhs)), opts_(opts) {}

  void start(double t0, const State& y0) {
    t_ = t_prev_ = t0;
    y_ = y0;
    rhs_(y_, k1_);
    h_ = initial_step();
  }

  double t() const { return t_; }
  double t_prev() const { return t_prev_; }
  const State& y() const { return y_; }
  /// Local error estimate (unscaled) of the last accepted step.
  const State& last_error() const { return err_; }
  double last_step() const { return t_ - t_prev_; }

  /// Replaces the current state (e.g. after projecting onto a manifold).
  void reset_state(const State& y) {
    y_ = y;
    rhs_(y_, k1_);
  }

  /// Caps the size of the next step only (used to land exactly on an end time).
  void limit_next_step(double h) { limit_ = h; }

  /// Continuous-extension coefficients of the last accepted step; see
  /// evaluate_dense().
  std::array<State, 5> dense_coefficients() const { return {r1_, r2_, r3_, r4_, r5_}; }

  static State evaluate_dense(const std::array<State, 5>& r, double theta) {
    const double theta1 = 1.0 - theta;
    State out;
    for (std::size_t i = 0; i < N; ++i) {
      out[i] = r[0][i] + theta * (r[1][i] + theta1 * (r[2][i] + theta * (r[3][i] + theta1 * r[4][i])));
    }
    return out;
  }

  /// Advances by one accepted step. Throws IntegrationError when the step
  /// size underflows (typically a finite-time blowup).
  void step() {
    for (;;) {
      const double h_floor = 1e-14 * std::max(1.0, std::abs(t_));
      if (!(h_ >= h_floor)) throw IntegrationError(t_, "step size underflow");
      const double h = std::min({h_, opts_.max_step, limit_});
      attempt(h);
      const double err = error_norm();
      if (err <= 1.0) {
        accept(h);
        limit_ = std::numeric_limits<double>::infinity();
        const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        h_ = h * fac;
        return;
      }
      const double fac = std::isfinite(err) ? std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9) : 0.1;
      h_ = h * fac;
    }
  }

  /// Dense output for t_prev() <= t <= t().
  State dense(double t) const {
    const double h = t_ - t_prev_;
    const double theta = h > 0 ? (t - t_prev_) / h : 1.0;
    return evaluate_dense({r1_, r2_, r3_, r4_, r5_}, theta);
  }

 private:
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                          a76 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;
  static constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                          d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                          d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

  void attempt(double h) {
    State tmp;
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y_[i] + h * a21 * k1_[i];
    rhs_(tmp, k2_);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y_[i] + h * (a31 * k1_[i] + a32 * k2_[i]);
    rhs_(tmp, k3_);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y_[i] + h * (a41 * k1_[i] + a42 * k2_[i] + a43 * k3_[i]);
    rhs_(tmp, k4_);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y_[i] + h * (a51 * k1_[i] + a52 * k2_[i] + a53 * k3_[i] + a54 * k4_[i]);
    rhs_(tmp, k5_);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y_[i] + h * (a61 * k1_[i] + a62 * k2_[i] + a63 * k3_[i] + a64 * k4_[i] + a65 * k5_[i]);
    rhs_(tmp, k6_);
    for (std::size_t i = 0; i < N; ++i)
      ynew_[i] = y_[i] + h * (a71 * k1_[i] + a73 * k3_[i] + a74 * k4_[i] + a75 * k5_[i] + a76 * k6_[i]);
    rhs_(ynew_, k7_);
    for (std::size_t i = 0; i < N; ++i)
      err_try_[i] = h * (e1 * k1_[i] + e3 * k3_[i] + e4 * k4_[i] + e5 * k5_[i] + e6 * k6_[i] + e7 * k7_[i]);
  }

  double error_norm() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      if (!std::isfinite(ynew_[i])) return std::numeric_limits<double>::infinity();
      const double sk = opts_.atol + opts_.rtol * std::max(std::abs(y_[i]), std::abs(ynew_[i]));
      const double r = err_try_[i] / sk;
      acc += r * r;
    }
    return std::sqrt(acc / static_cast<double>(N));
  }

  void accept(double h) {
    for (std::size_t i = 0; i < N; ++i) {
      const double ydiff = ynew_[i] - y_[i];
      const double bspl = h * k1_[i] - ydiff;
      r1_[i] = y_[i];
      r2_[i] = ydiff;
      r3_[i] = bspl;
      r4_[i] = ydiff - h * k7_[i] - bspl;
      r5_[i] = h * (d1 * k1_[i] + d3 * k3_[i] + d4 * k4_[i] + d5 * k5_[i] + d6 * k6_[i] + d7 * k7_[i]);
    }
    t_prev_ = t_;
    t_ += h;
    y_ = ynew_;
    k1_ = k7_;
    err_ = err_try_;
  }

  // Hairer & Wanner's starting step heuristic.
  double initial_step() {
    double d0 = 0.0;
    double d1n = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sk = opts_.atol + opts_.rtol * std::abs(y_[i]);
      d0 += (y_[i] / sk) * (y_[i] / sk);
      d1n += (k1_[i] / sk) * (k1_[i] / sk);
    }
    d0 = std::sqrt(d0 / N);
    d1n = std::sqrt(d1n / N);
    double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
    h0 = std::min(h0, opts_.max_step);
    State tmp;
    State f1;
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y_[i] + h0 * k1_[i];
    rhs_(tmp, f1);
    double d2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sk = opts_.atol + opts_.rtol * std::abs(y_[i]);
      const double v = (f1[i] - k1_[i]) / sk;
      d2 += v * v;
    }
    d2 = std::isfinite(d2) ? std::sqrt(d2 / N) / h0 : std::numeric_limits<double>::infinity();
    const double dm = std::max(d1n, d2);
    const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
    return std::min({100 * h0, h1, opts_.max_step});
  }

  Rhs rhs_;
  IntegratorOptions opts_;
  double t_ = 0.0;
  double t_prev_ = 0.0;
  double h_ = 0.0;
  double limit_ = std::numeric_limits<double>::infinity();
  State y_{}, ynew_{};
  State k1_{}, k2_{}, k3_{}, k4_{}, k5_{}, k6_{}, k7_{};
  State err_{}, err_try_{};
  State r1_{}, r2_{}, r3_{}, r4_{}, r5_{};
};

}  // namespace limcyc
