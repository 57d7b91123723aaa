#include "limcyc/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "limcyc/error.hpp"

namespace limcyc {

void VectorField::validate() const {
  if (p.is_zero() && q.is_zero()) throw Error(ErrorCode::InvalidArgument, "vector field is identically zero");
}

CompiledField::CompiledField(const VectorField& f)
    : p(f.p),
      q(f.q),
      px(differentiate(f.p, Var::X)),
      py(differentiate(f.p, Var::Y)),
      qx(differentiate(f.q, Var::X)),
      qy(differentiate(f.q, Var::Y)) {}

// ---------------------------------------------------------------------------
// Trajectory

void Trajectory::begin(double t, const Point& p) {
  samples_.assign(1, {t, p});
  coeffs_.clear();
  step_t0_.clear();
  step_h_.clear();
  negated_ = false;
}

void Trajectory::append(double step_t0, double step_h, const Point& p, const std::array<Point, 5>& coefficients) {
  samples_.push_back({step_t0 + step_h, p});
  coeffs_.push_back(coefficients);
  step_t0_.push_back(step_t0);
  step_h_.push_back(step_h);
}

void Trajectory::truncate_last(double t, const Point& p) { samples_.back() = {t, p}; }

void Trajectory::negate_time() {
  for (auto& s : samples_) s.t = -s.t;
  negated_ = !negated_;
}

Point Trajectory::at(double t) const {
  if (coeffs_.empty()) return samples_.front().point;
  const double end = negated_ ? -samples_.back().t : samples_.back().t;
  const double tau = std::clamp(negated_ ? -t : t, step_t0_.front(), end);
  auto it = std::upper_bound(step_t0_.begin(), step_t0_.end(), tau);
  const std::size_t k = it == step_t0_.begin() ? 0 : static_cast<std::size_t>(it - step_t0_.begin()) - 1;
  const double theta = (tau - step_t0_[k]) / step_h_[k];
  const auto& r = coeffs_[k];
  const double theta1 = 1.0 - theta;
  Point out;
  for (std::size_t i = 0; i < 2; ++i) {
    out[i] = r[0][i] + theta * (r[1][i] + theta1 * (r[2][i] + theta * (r[3][i] + theta1 * r[4][i])));
  }
  return out;
}

namespace {

template <std::size_t N>
std::array<Point, 5> project_xy(const std::array<std::array<double, N>, 5>& r) {
  std::array<Point, 5> out;
  for (std::size_t k = 0; k < 5; ++k) out[k] = {r[k][0], r[k][1]};
  return out;
}

struct PlanarRhs {
  const CompiledField* f;
  void operator()(const std::array<double, 2>& s, std::array<double, 2>& d) const { d = (*f)(s); }
};

}  // namespace

Trajectory flow(const VectorField& x, const Point& p0, double t_end, const IntegratorOptions& opts) {
  x.validate();
  if (!std::isfinite(t_end) || !std::isfinite(p0[0]) || !std::isfinite(p0[1])) {
    throw Error(ErrorCode::InvalidArgument, "flow: non-finite start point or end time");
  }
  if (!(opts.rtol > 0) || !(opts.atol > 0)) throw Error(ErrorCode::InvalidArgument, "flow: tolerances must be positive");
  const bool backward = t_end < 0;
  const CompiledField f(backward ? x.reversed() : x);
  const double horizon = std::abs(t_end);

  Trajectory tr;
  tr.begin(0.0, p0);
  if (horizon > 0) {
    DormandPrince<2, PlanarRhs> dp(PlanarRhs{&f}, opts);
    dp.start(0.0, p0);
    const double eps = 1e-15 * std::max(1.0, horizon);
    long steps = 0;
    try {
      while (horizon - dp.t() > eps) {
        if (++steps > opts.max_steps) {
          throw IntegrationError(dp.t(), "step budget exhausted");
        }
        dp.limit_next_step(horizon - dp.t());
        dp.step();
        tr.append(dp.t_prev(), dp.last_step(), dp.y(), project_xy<2>(dp.dense_coefficients()));
      }
    } catch (const IntegrationError& e) {
      throw IntegrationError(backward ? -e.last_reliable_t() : e.last_reliable_t(), std::string("flow: ") + e.what());
    }
    tr.truncate_last(horizon, dp.y());
  }
  if (backward) tr.negate_time();
  return tr;
}

bool is_hyperbolic_exponent(double exponent, double error) {
  return std::abs(exponent) > std::max(1e-6, 10.0 * error);
}

// ---------------------------------------------------------------------------
// Return map

namespace {

using Aug = std::array<double, 8>;

// State: x, y, integral of div, integral of the normal strain n^T J n,
// and the 2x2 fundamental matrix (row-major).
struct AugRhs {
  const CompiledField* f;
  void operator()(const Aug& s, Aug& d) const {
    const Point z{s[0], s[1]};
    const double P = f->p(z);
    const double Q = f->q(z);
    const double a = f->px(z);
    const double b = f->py(z);
    const double c = f->qx(z);
    const double e = f->qy(z);
    d[0] = P;
    d[1] = Q;
    d[2] = a + e;
    const double sp = P * P + Q * Q;
    d[3] = sp > 0 ? (Q * Q * a - P * Q * (b + c) + P * P * e) / sp : 0.0;
    d[4] = a * s[4] + b * s[6];
    d[5] = a * s[5] + b * s[7];
    d[6] = c * s[4] + e * s[6];
    d[7] = c * s[5] + e * s[7];
  }
};

enum class ReturnFailure { None, Escaped, TimeLimit, Integration, Equilibrium };

struct ReturnResult {
  ReturnFailure failure = ReturnFailure::None;
  double time = 0.0;
  Aug state{};
  double exponent_error = 0.0;
  double max_excursion = 0.0;
  bool skipped_far_crossing = false;

  bool ok() const { return failure == ReturnFailure::None; }
  Point end() const { return {state[0], state[1]}; }
};

double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1]; }

// Newton steps along the gradient back onto C = 0.
Point project_onto(const CompiledCurve& cc, Point q) {
  for (int it = 0; it < 8; ++it) {
    const double v = cc.c(q);
    const Point g = cc.gradient(q);
    const double g2 = g[0] * g[0] + g[1] * g[1];
    if (v == 0 || !(g2 > 0)) break;
    q = {q[0] - v * g[0] / g2, q[1] - v * g[1] / g2};
    if (std::abs(v) * std::abs(v) <= 1e-32 * g2 * (1.0 + q[0] * q[0] + q[1] * q[1])) break;
  }
  return q;
}

// Tracks the first crossing of the line {n.(z - anchor) = 0} in the same
// direction as the flow crosses it at `start` (which lies on the line).
class ReturnTracker {
 public:
  ReturnTracker(const CompiledField& f, const Point& start, const Point& anchor, const Point& n,
                const CycleOptions& opts, Trajectory* record, const CompiledCurve* manifold = nullptr)
      : dp_(AugRhs{&f}, opts.integrator),
        f_(&f),
        anchor_(anchor),
        n_(n),
        u_{-n[1], n[0]},
        dir_(dot(n, f(start)) > 0 ? 1.0 : -1.0),
        escape_(opts.escape_radius > 0 ? opts.escape_radius : 1e4 * (1.0 + norm(anchor))),
        max_steps_(opts.max_steps),
        record_(record),
        manifold_(manifold) {
    dp_.start(0.0, {start[0], start[1], 0.0, 0.0, 1.0, 0.0, 0.0, 1.0});
    if (record_) record_->begin(0.0, start);
  }

  bool done() const { return done_; }
  double t() const { return dp_.t(); }
  const ReturnResult& result() const { return out_; }

  /// One integration step; stops with TimeLimit once t exceeds t_limit.
  void advance(double t_limit) {
    if (done_) return;
    if (dp_.t() >= t_limit) return finish(ReturnFailure::TimeLimit);
    if (++steps_ > max_steps_) return finish(ReturnFailure::Integration);
    try {
      dp_.step();
    } catch (const IntegrationError&) {
      return finish(ReturnFailure::Integration);
    }
    out_.exponent_error += std::abs(dp_.last_error()[2]);
    if (manifold_) {
      Aug projected = dp_.y();
      const Point q = project_onto(*manifold_, {projected[0], projected[1]});
      projected[0] = q[0];
      projected[1] = q[1];
      // The variational block is meaningless on the curve and would overflow.
      projected[4] = projected[7] = 1.0;
      projected[5] = projected[6] = 0.0;
      dp_.reset_state(projected);
    }
    const Aug& s = dp_.y();
    if (record_) record_->append(dp_.t_prev(), dp_.last_step(), {s[0], s[1]}, project_xy<8>(dp_.dense_coefficients()));
    const double dist = std::hypot(s[0] - anchor_[0], s[1] - anchor_[1]);
    if (!(dist <= escape_)) return finish(ReturnFailure::Escaped);
    out_.max_excursion = std::max(out_.max_excursion, dist);
    // The normal strain is undefined at rest points; near one it is noise.
    const Point v = (*f_)({s[0], s[1]});
    if (std::hypot(v[0], v[1]) <= 1e-9 * (1.0 + std::hypot(s[0], s[1]))) return finish(ReturnFailure::Equilibrium);
    const double gn = g(s);
    if (g_prev_ < 0 && gn >= 0) {
      const double tc = polish(g_prev_, gn);
      const Aug sc = dp_.dense(tc);
      const double along = u_[0] * (sc[0] - anchor_[0]) + u_[1] * (sc[1] - anchor_[1]);
      if (std::abs(along) <= 0.5 * out_.max_excursion) {
        out_.time = tc;
        out_.state = sc;
        if (record_) record_->truncate_last(tc, {sc[0], sc[1]});
        return finish(ReturnFailure::None);
      }
      out_.skipped_far_crossing = true;
    }
    g_prev_ = gn;
  }

 private:
  double g(const Aug& s) const { return dir_ * (n_[0] * (s[0] - anchor_[0]) + n_[1] * (s[1] - anchor_[1])); }

  // Illinois iteration for the crossing time on the dense output.
  double polish(double g0, double g1) const {
    double a = dp_.t_prev(), b = dp_.t();
    double fa = g0, fb = g1;
    double ga = g0, gb = g1;
    int side = 0;
    for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
      double c = (a * fb - b * fa) / (fb - fa);
      if (!(c > a && c < b)) c = 0.5 * (a + b);
      const double fc = g(dp_.dense(c));
      if (fc == 0) return c;
      if (fc > 0) {
        b = c;
        fb = gb = fc;
        if (side == 1) fa *= 0.5;
        side = 1;
      } else {
        a = c;
        fa = ga = fc;
        if (side == -1) fb *= 0.5;
        side = -1;
      }
    }
    return std::abs(ga) < std::abs(gb) ? a : b;
  }

  void finish(ReturnFailure f) {
    out_.failure = f;
    done_ = true;
  }

  DormandPrince<8, AugRhs> dp_;
  const CompiledField* f_;
  Point anchor_, n_, u_;
  double dir_;
  double escape_;
  long max_steps_;
  Trajectory* record_;
  const CompiledCurve* manifold_;
  ReturnResult out_;
  double g_prev_ = 0.0;
  long steps_ = 0;
  bool done_ = false;
};

ReturnResult first_return(const CompiledField& f, const Point& start, const Point& anchor, const Point& n,
                          const CycleOptions& opts, Trajectory* record) {
  ReturnTracker tr(f, start, anchor, n, opts, record);
  while (!tr.done()) tr.advance(opts.t_max);
  return tr.result();
}

// Runs forward and backward probes in lockstep. Once one returns at time T
// the other gets until 4T: a return of the same cycle in the opposite
// direction takes about as long.
std::pair<ReturnResult, ReturnResult> paired_returns(const CompiledField& fwd, const CompiledField& bwd,
                                                     const Point& a, const Point& n, const CycleOptions& opts) {
  ReturnTracker tf(fwd, a, a, n, opts, nullptr);
  ReturnTracker tb(bwd, a, a, n, opts, nullptr);
  double limit = opts.t_max;
  while (!tf.done() || !tb.done()) {
    ReturnTracker& next = tb.done() || (!tf.done() && tf.t() <= tb.t()) ? tf : tb;
    next.advance(limit);
    if (next.done() && next.result().ok()) limit = std::min(limit, 4.0 * next.result().time);
  }
  return {tf.result(), tb.result()};
}

// Derivative of the return map along the section coordinate u, from the
// fundamental matrix with the time-of-flight correction.
double phi_derivative(const ReturnResult& r, const CompiledField& f, const Point& n, const Point& u) {
  const Aug& s = r.state;
  const Point phi_u{s[4] * u[0] + s[5] * u[1], s[6] * u[0] + s[7] * u[1]};
  const Point fe = f(r.end());
  const double nf = dot(n, fe);
  if (nf == 0) return std::numeric_limits<double>::infinity();
  return dot(u, phi_u) - dot(u, fe) * dot(n, phi_u) / nf;
}

const char* failure_name(ReturnFailure f) {
  switch (f) {
    case ReturnFailure::Escaped:
      return "trajectory escaped";
    case ReturnFailure::TimeLimit:
      return "no return before t_max";
    case ReturnFailure::Integration:
      return "integration failed";
    case ReturnFailure::Equilibrium:
      return "trajectory settles at an equilibrium";
    case ReturnFailure::None:
      break;
  }
  return "ok";
}

}  // namespace

CycleReport refine_cycle(const VectorField& x, const Point& seed, std::optional<Point> section_normal,
                         const CycleOptions& opts) {
  x.validate();
  if (!std::isfinite(seed[0]) || !std::isfinite(seed[1])) throw Error(ErrorCode::InvalidArgument, "non-finite seed");
  const CompiledField fwd(x);
  const CompiledField bwd(x.reversed());
  const Point f0 = fwd(seed);
  const double speed = norm(f0);
  if (!(speed > 0)) throw Error(ErrorCode::InvalidArgument, "seed is an equilibrium of the field");
  Point n = section_normal.value_or(f0);
  const double nn = norm(n);
  if (!(nn > 0) || !std::isfinite(nn)) throw Error(ErrorCode::InvalidArgument, "section normal must be nonzero");
  n = {n[0] / nn, n[1] / nn};
  if (std::abs(dot(n, f0)) <= 1e-12 * speed) {
    throw Error(ErrorCode::InvalidArgument, "section is not transverse to the flow at the seed");
  }
  const Point u{-n[1], n[0]};
  const Point a = seed;
  const double scale = 1.0 + norm(a);

  // Refine in whichever time direction contracts onto the cycle: of the
  // two probes, take the one whose return lands closer to the seed (the
  // other one is either expanding or has drifted to another orbit).
  auto [fprobe, bprobe] = paired_returns(fwd, bwd, a, n, opts);
  if (!fprobe.ok() && !bprobe.ok()) {
    throw Error(ErrorCode::NoCycle, std::string("no periodic return from the seed (forward: ") +
                                        failure_name(fprobe.failure) + ", backward: " + failure_name(bprobe.failure) +
                                        ")");
  }
  bool reversed = !fprobe.ok();
  if (fprobe.ok() && bprobe.ok()) {
    const double df = distance(a, fprobe.end());
    const double db = distance(a, bprobe.end());
    reversed = db < df || (db == df && std::abs(phi_derivative(fprobe, fwd, n, u)) > 1.0);
  }
  ReturnResult cur = reversed ? bprobe : fprobe;
  const CompiledField& g = reversed ? bwd : fwd;

  double s = 0.0;
  double best_s = 0.0;
  double best_closure = std::numeric_limits<double>::infinity();
  double prev_closure = std::numeric_limits<double>::infinity();
  bool non_hyperbolic = false;
  int stalls = 0;
  for (int it = 0;; ++it) {
    const Point start{a[0] + s * u[0], a[1] + s * u[1]};
    const Point end = cur.end();
    const double closure = distance(start, end);
    if (closure < best_closure) {
      best_closure = closure;
      best_s = s;
    }
    if (closure <= 1e-11 * scale) break;
    const double dphi = phi_derivative(cur, g, n, u);
    const double dsig = std::exp(cur.state[3]);
    if (std::abs(dsig - 1.0) <= 1e-12 || std::abs(dphi - 1.0) <= 1e-12) {
      non_hyperbolic = true;
      break;
    }
    stalls = (closure <= opts.closure_tolerance && closure > 0.5 * prev_closure) ? stalls + 1 : 0;
    if (stalls >= 2 || it >= opts.max_newton) break;
    prev_closure = closure;

    const double disp = dot(u, {end[0] - a[0], end[1] - a[1]}) - s;
    double delta = -disp / (dphi - 1.0);
    const double cap = 0.25 * std::max(cur.max_excursion, 1e-12);
    if (!std::isfinite(delta)) break;
    if (std::abs(delta) > cap) delta = std::copysign(cap, delta);
    if (std::abs(delta) <= 1e-15 * scale) break;
    bool moved = false;
    for (int k = 0; k < 12 && !moved; ++k, delta *= 0.5) {
      const Point trial{a[0] + (s + delta) * u[0], a[1] + (s + delta) * u[1]};
      ReturnResult next = first_return(g, trial, a, n, opts, nullptr);
      if (next.ok()) {
        s += delta;
        cur = next;
        moved = true;
      }
    }
    if (!moved) break;
  }
  if (!non_hyperbolic && best_closure > opts.closure_tolerance) {
    throw Error(ErrorCode::NonConvergence,
                "return-map Newton iteration stagnated (closure error " + std::to_string(best_closure) + ")");
  }

  // Final pass at the best section coordinate, recording the orbit.
  const Point start{a[0] + best_s * u[0], a[1] + best_s * u[1]};
  Trajectory traj;
  const ReturnResult fin = first_return(g, start, a, n, opts, &traj);
  if (!fin.ok()) throw Error(ErrorCode::NonConvergence, "refined cycle failed to return on the final pass");

  CycleReport rep;
  rep.anchor = start;
  rep.period = fin.time;
  const double sign = reversed ? -1.0 : 1.0;
  rep.exponent = sign * fin.state[2];
  rep.return_derivative = std::exp(sign * fin.state[3]);
  rep.exponent_error = fin.exponent_error;
  rep.multiplier = std::exp(rep.exponent);
  rep.closure_error = distance(start, fin.end());
  rep.stable = rep.exponent < 0;
  rep.hyperbolic = !non_hyperbolic && is_hyperbolic_exponent(rep.exponent, rep.exponent_error);
  rep.winding_ambiguous = fin.skipped_far_crossing;
  const int m = std::max(opts.orbit_samples, 16);
  rep.orbit.reserve(static_cast<std::size_t>(m));
  rep.orbit.push_back(start);
  for (int k = 1; k < m; ++k) {
    const double frac = static_cast<double>(reversed ? m - k : k) / m;
    rep.orbit.push_back(traj.at(frac * rep.period));
  }
  if (non_hyperbolic) rep.warnings.emplace_back(kNonHyperbolicWarning);
  if (rep.winding_ambiguous) rep.warnings.emplace_back("winding-ambiguous");
  return rep;
}

CycleReport invariant_oval_cycle(const VectorField& x, const Poly& curve, const Point& seed,
                                 const CycleOptions& opts) {
  x.validate();
  const CompiledCurve cc(curve);
  const Point a = project_onto(cc, seed);
  if (!(std::abs(cc.c(a)) <= kOnCurveTolerance)) {
    throw Error(ErrorCode::InvalidArgument, "seed does not project onto the curve");
  }
  const CompiledField f(x);
  const Point f0 = f(a);
  const double speed = norm(f0);
  if (!(speed > 0)) throw Error(ErrorCode::InvalidArgument, "seed is an equilibrium of the field");
  const Point n{f0[0] / speed, f0[1] / speed};
  Trajectory traj;
  ReturnTracker tr(f, a, a, n, opts, &traj, &cc);
  while (!tr.done()) tr.advance(opts.t_max);
  const ReturnResult& fin = tr.result();
  if (!fin.ok()) {
    throw Error(ErrorCode::NoCycle, std::string("no return along the curve component: ") + failure_name(fin.failure));
  }
  CycleReport rep;
  rep.anchor = a;
  rep.period = fin.time;
  rep.exponent = fin.state[2];
  rep.return_derivative = std::exp(fin.state[3]);
  rep.exponent_error = fin.exponent_error;
  rep.multiplier = std::exp(rep.exponent);
  rep.closure_error = distance(a, fin.end());
  rep.stable = rep.exponent < 0;
  rep.hyperbolic = is_hyperbolic_exponent(rep.exponent, rep.exponent_error);
  rep.winding_ambiguous = fin.skipped_far_crossing;
  const int m = std::max(opts.orbit_samples, 16);
  for (int k = 0; k < m; ++k) rep.orbit.push_back(k == 0 ? a : traj.at(rep.period * k / m));
  if (!rep.hyperbolic) rep.warnings.emplace_back(kNonHyperbolicWarning);
  if (rep.winding_ambiguous) rep.warnings.emplace_back("winding-ambiguous");
  return rep;
}

ExponentEstimate divergence_exponent(const VectorField& x, const CycleReport& report, const IntegratorOptions& opts) {
  x.validate();
  if (!(report.period > 0)) throw Error(ErrorCode::InvalidArgument, "cycle report has no positive period");
  const bool reversed = !report.stable;
  const CompiledField f(reversed ? x.reversed() : x);
  auto rhs = [&f](const std::array<double, 3>& s, std::array<double, 3>& d) {
    const Point z{s[0], s[1]};
    d[0] = f.p(z);
    d[1] = f.q(z);
    d[2] = f.divergence(z);
  };
  DormandPrince<3, decltype(rhs)> dp(rhs, opts);
  dp.start(0.0, {report.anchor[0], report.anchor[1], 0.0});
  ExponentEstimate est;
  const double eps = 1e-15 * std::max(1.0, report.period);
  while (report.period - dp.t() > eps) {
    dp.limit_next_step(report.period - dp.t());
    dp.step();
    est.error += std::abs(dp.last_error()[2]);
  }
  est.value = reversed ? -dp.y()[2] : dp.y()[2];
  return est;
}

// ---------------------------------------------------------------------------
// Cycle census

namespace {

double halton(int index, int base) {
  double f = 1.0;
  double r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * (index % base);
    index /= base;
  }
  return r;
}

// Runs the field for the transient time; nullopt if the orbit leaves `outer`
// or the integrator fails.
std::optional<Point> settle(const CompiledField& f, const Point& seed, const Region& outer, double transient,
                            const IntegratorOptions& opts) {
  DormandPrince<2, PlanarRhs> dp(PlanarRhs{&f}, opts);
  dp.start(0.0, seed);
  try {
    while (transient - dp.t() > 1e-12) {
      dp.limit_next_step(transient - dp.t());
      dp.step();
      if (!outer.contains(dp.y())) return std::nullopt;
    }
  } catch (const IntegrationError&) {
    return std::nullopt;
  }
  return dp.y();
}

double max_edge(const std::vector<Point>& poly) {
  double m = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) m = std::max(m, distance(poly[i], poly[(i + 1) % poly.size()]));
  return m;
}

double polyline_diameter(const std::vector<Point>& poly) {
  double xmin = poly[0][0], xmax = xmin, ymin = poly[0][1], ymax = ymin;
  for (const auto& p : poly) {
    xmin = std::min(xmin, p[0]);
    xmax = std::max(xmax, p[0]);
    ymin = std::min(ymin, p[1]);
    ymax = std::max(ymax, p[1]);
  }
  return std::hypot(xmax - xmin, ymax - ymin);
}

}  // namespace

std::vector<CycleReport> count_cycles(const VectorField& x, const Region& region, int seed_count,
                                      const CountOptions& opts) {
  x.validate();
  region.validate();
  if (seed_count < 1) throw Error(ErrorCode::InvalidArgument, "seed count must be at least 1");
  const CompiledField fwd(x);
  const CompiledField bwd(x.reversed());
  const Region outer{region.xmin - 0.5 * region.width(), region.xmax + 0.5 * region.width(),
                     region.ymin - 0.5 * region.height(), region.ymax + 0.5 * region.height()};

  std::vector<CycleReport> found;
  auto near_known = [&](const Point& p) {
    for (const auto& r : found) {
      const double tol = std::max(1e-3 * polyline_diameter(r.orbit), 2.0 * max_edge(r.orbit) * max_edge(r.orbit));
      if (distance_to_polyline(p, r.orbit) <= tol) return true;
    }
    return false;
  };

  for (int k = 1; k <= seed_count; ++k) {
    const Point seed{region.xmin + halton(k, 2) * region.width(), region.ymin + halton(k, 3) * region.height()};
    for (const CompiledField* f : {&fwd, &bwd}) {
      const auto end = settle(*f, seed, outer, opts.transient, opts.cycle.integrator);
      if (!end || !region.contains(*end)) continue;
      if (norm(fwd(*end)) < 1e-8) continue;
      if (near_known(*end)) continue;
      CycleReport rep;
      try {
        rep = refine_cycle(x, *end, std::nullopt, opts.cycle);
      } catch (const Error&) {
        continue;
      }
      if (!rep.hyperbolic) continue;
      if (!std::all_of(rep.orbit.begin(), rep.orbit.end(), [&](const Point& p) { return region.contains(p); })) {
        continue;
      }
      const double edge = max_edge(rep.orbit);
      const bool duplicate = std::any_of(found.begin(), found.end(), [&](const CycleReport& r) {
        const double tol = std::max(opts.dedupe_distance, std::max(edge * edge, max_edge(r.orbit) * max_edge(r.orbit)));
        return hausdorff_distance(r.orbit, rep.orbit) <= tol;
      });
      if (!duplicate) found.push_back(std::move(rep));
    }
  }
  return found;
}

}  // namespace limcyc
