#include "ddelc/dde.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ddelc/elliptic.hpp"
#include "ddelc/errors.hpp"
#include "ddelc/harmonic_balance.hpp"

namespace ddelc::dde {

namespace {

constexpr double kPi = std::numbers::pi;

// Cubic Hermite basis on theta in [0, 1].
double hermite(double x0, double v0, double x1, double v1, double dt, double theta) {
  const double t2 = theta * theta;
  const double omt = 1.0 - theta;
  const double h00 = (1.0 + 2.0 * theta) * omt * omt;
  const double h10 = theta * omt * omt;
  const double h01 = t2 * (3.0 - 2.0 * theta);
  const double h11 = t2 * (theta - 1.0);
  return h00 * x0 + h10 * dt * v0 + h01 * x1 + h11 * dt * v1;
}

double hermite_deriv(double x0, double v0, double x1, double v1, double dt, double theta) {
  const double t2 = theta * theta;
  const double d00 = 6.0 * t2 - 6.0 * theta;
  const double d10 = 3.0 * t2 - 4.0 * theta + 1.0;
  const double d01 = -d00;
  const double d11 = 3.0 * t2 - 2.0 * theta;
  return (d00 * x0 + d01 * x1) / dt + d10 * v0 + d11 * v1;
}

}  // namespace

SimConfig SimConfig::normalized() const {
  if (!(delay >= 0.0)) throw std::domain_error("SimConfig: delay must be >= 0");
  if (!(damping >= 0.0)) throw std::domain_error("SimConfig: damping must be >= 0");
  if (!(dt > 0.0)) throw std::domain_error("SimConfig: dt must be > 0");
  if (!(t_end > 0.0)) throw std::domain_error("SimConfig: t_end must be > 0");
  if (!(blowup_threshold > 0.0)) throw std::domain_error("SimConfig: blowup_threshold must be > 0");
  SimConfig out = *this;
  if (delay > 0.0) {
    const auto m = std::max<long long>(4, std::llround(delay / dt));
    out.dt = delay / static_cast<double>(m);
  }
  return out;
}

Trajectory::Trajectory(std::vector<double> xs, std::vector<double> vs, double dt,
                       bool diverged, double divergence_time)
    : xs_(std::move(xs)), vs_(std::move(vs)), dt_(dt), diverged_(diverged),
      divergence_time_(divergence_time) {
  if (xs_.size() != vs_.size() || xs_.size() < 2 || !(dt_ > 0.0))
    throw std::invalid_argument("Trajectory: inconsistent node data");
}

double Trajectory::x_at(double t) const { return state_at(t).x; }

State Trajectory::state_at(double t) const {
  const double tmax = t_end();
  t = std::clamp(t, 0.0, tmax);
  double j_real = std::floor(t / dt_);
  auto j = static_cast<std::size_t>(std::max(0.0, j_real));
  if (j >= xs_.size() - 1) j = xs_.size() - 2;
  const double theta = t / dt_ - static_cast<double>(j);
  if (theta <= 0.0) return {xs_[j], vs_[j]};
  if (theta >= 1.0) return {xs_[j + 1], vs_[j + 1]};
  return {hermite(xs_[j], vs_[j], xs_[j + 1], vs_[j + 1], dt_, theta),
          hermite_deriv(xs_[j], vs_[j], xs_[j + 1], vs_[j + 1], dt_, theta)};
}

Trajectory integrate(const SimConfig& raw) {
  const SimConfig cfg = raw.normalized();
  const double dt = cfg.dt;
  const double T = cfg.delay;
  const auto n_steps = static_cast<std::size_t>(std::ceil(cfg.t_end / dt - 1e-9));

  std::vector<double> xs;
  std::vector<double> vs;
  xs.reserve(n_steps + 1);
  vs.reserve(n_steps + 1);
  xs.push_back(cfg.x0);
  vs.push_back(cfg.v0);

  // Delayed position at time t. Only called with t - T on completed steps or
  // in the constant history.
  const auto delayed_x = [&](double t) -> double {
    const double td = t - T;
    if (td <= 0.0) return cfg.x0;
    const double pos = td / dt;
    auto j = static_cast<std::size_t>(std::floor(pos + 1e-9));
    const double theta = pos - static_cast<double>(j);
    if (theta <= 1e-9) return xs[j];
    return hermite(xs[j], vs[j], xs[j + 1], vs[j + 1], dt, theta);
  };

  bool diverged = false;
  double divergence_time = 0.0;

  for (std::size_t i = 0; i < n_steps; ++i) {
    const double t = static_cast<double>(i) * dt;
    const double x = xs[i];
    const double v = vs[i];

    // For T = 0 the delayed term degenerates to the current stage value.
    const auto accel = [&](double ts, double xc, double vc) {
      const double xd = (T > 0.0) ? delayed_x(ts) : xc;
      return -cfg.damping * vc - xd - xc * xc * xc;
    };

    const double k1x = v;
    const double k1v = accel(t, x, v);
    const double k2x = v + 0.5 * dt * k1v;
    const double k2v = accel(t + 0.5 * dt, x + 0.5 * dt * k1x, v + 0.5 * dt * k1v);
    const double k3x = v + 0.5 * dt * k2v;
    const double k3v = accel(t + 0.5 * dt, x + 0.5 * dt * k2x, v + 0.5 * dt * k2v);
    const double k4x = v + dt * k3v;
    const double k4v = accel(t + dt, x + dt * k3x, v + dt * k3v);

    const double xn = x + dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    const double vn = v + dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    if (!std::isfinite(xn) || !std::isfinite(vn))
      throw numerical_error("integrate: state became non-finite at t = " +
                            std::to_string(t + dt));
    xs.push_back(xn);
    vs.push_back(vn);
    if (std::abs(xn) > cfg.blowup_threshold) {
      diverged = true;
      divergence_time = t + dt;
      break;
    }
  }
  return Trajectory(std::move(xs), std::move(vs), dt, diverged, divergence_time);
}

AmplitudeEstimate measure_amplitude(const Trajectory& traj, double settle_fraction) {
  if (traj.diverged())
    throw std::invalid_argument("measure_amplitude: trajectory diverged");
  if (!(settle_fraction >= 0.0) || !(settle_fraction < 1.0))
    throw std::domain_error("measure_amplitude: settle_fraction must lie in [0, 1)");

  const std::size_t n = traj.size();
  const auto i0 = static_cast<std::size_t>(settle_fraction * static_cast<double>(n - 1));
  const double dt = traj.dt();

  std::vector<double> peak_mags;
  std::vector<double> peak_times;
  int sign_changes = 0;
  for (std::size_t i = i0; i + 1 < n; ++i) {
    const auto [x0, v0] = traj.state(i);
    const auto [x1, v1] = traj.state(i + 1);
    if (v0 == 0.0) {
      // the node itself is the extremum
      ++sign_changes;
      peak_mags.push_back(std::abs(x0));
      peak_times.push_back(traj.time(i));
      continue;
    }
    if (!(v0 * v1 < 0.0)) continue;
    ++sign_changes;
    // Extremum inside the step: root of the interpolant's derivative,
    // bisected on theta (the derivative is a plain quadratic but bisection
    // is branch-free and the bracket is guaranteed).
    double lo = 0.0, hi = 1.0, dlo = v0;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double dm = hermite_deriv(x0, v0, x1, v1, dt, mid);
      if ((dm > 0.0) == (dlo > 0.0)) {
        lo = mid;
        dlo = dm;
      } else {
        hi = mid;
      }
    }
    const double theta = 0.5 * (lo + hi);
    peak_mags.push_back(std::abs(hermite(x0, v0, x1, v1, dt, theta)));
    peak_times.push_back(traj.time(i) + theta * dt);
  }

  if (sign_changes < 8)
    throw insufficient_data_error("measure_amplitude: fewer than 8 sign changes of x' in window");

  AmplitudeEstimate est;
  est.n_peaks = static_cast<int>(peak_mags.size());
  double sum = 0.0, mn = peak_mags.front(), mx = peak_mags.front();
  for (double p : peak_mags) {
    sum += p;
    mn = std::min(mn, p);
    mx = std::max(mx, p);
  }
  est.amplitude = sum / static_cast<double>(est.n_peaks);
  est.spread = (est.amplitude > 0.0) ? (mx - mn) / est.amplitude : 0.0;
  est.period = 2.0 * (peak_times.back() - peak_times.front()) /
               static_cast<double>(est.n_peaks - 1);
  est.converged = est.n_peaks >= 4 && est.spread < 1e-2;
  return est;
}

double default_dt(double delay, double alpha, double x0) {
  const double a = std::max(1.0, 1.5 * std::abs(x0));
  double omega_max = 2.0 * kPi / elliptic::EllipticOrbit::from_amplitude(a).P;
  if (delay > 0.0 && alpha > 0.0) {
    for (const auto& s : hb::damped_hb_solutions(delay, alpha))
      omega_max = std::max(omega_max, s.omega);
  }
  omega_max = std::max(omega_max, 1.0);
  double dt = 2.0 * kPi / omega_max / 200.0;
  if (delay > 0.0) dt = std::min(dt, delay / 20.0);
  return dt;
}

namespace {

// Index of the harmonic-balance branch whose amplitude is nearest to `a`.
int nearest_branch(const std::vector<hb::HbSolution>& branches, double a) {
  int best = 0;
  double best_d = std::abs(branches.front().amplitude - a);
  for (std::size_t i = 1; i < branches.size(); ++i) {
    const double d = std::abs(branches[i].amplitude - a);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

}  // namespace

double find_separatrix(double delay, double alpha, double x_low, double x_high, double tol) {
  if (!(tol > 0.0)) throw std::domain_error("find_separatrix: tol must be > 0");
  if (!(x_low < x_high))
    throw std::invalid_argument("find_separatrix: bracket is degenerate or reversed");
  if (!(delay > 0.0)) throw std::domain_error("find_separatrix: delay must be > 0");

  const auto branches = (alpha > 0.0) ? hb::damped_hb_solutions(delay, alpha)
                                      : hb::undamped_amplitudes(delay, 25);
  if (branches.size() < 2)
    throw bracket_error("find_separatrix: fewer than two amplitude branches exist");

  const double dt = default_dt(delay, alpha, x_high);
  const auto classify = [&](double x0) -> int {
    SimConfig cfg;
    cfg.delay = delay;
    cfg.damping = alpha;
    cfg.x0 = x0;
    cfg.dt = dt;
    cfg.t_end = 300.0;
    for (int attempt = 0; attempt < 3; ++attempt) {
      const auto traj = integrate(cfg);
      if (traj.diverged()) return -1;
      // Classify on the settled tail; transients near the basin boundary
      // linger around the unstable cycle before committing.
      const auto est = measure_amplitude(traj, 0.75);
      if (est.converged) return nearest_branch(branches, est.amplitude);
      cfg.t_end *= 2.0;
    }
    throw numerical_error("find_separatrix: run from x0 = " + std::to_string(x0) +
                          " did not settle");
  };

  const int lo_branch = classify(x_low);
  if (lo_branch == classify(x_high))
    throw bracket_error("find_separatrix: both endpoints settle onto the same branch");

  double lo = x_low, hi = x_high;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (classify(mid) == lo_branch) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace ddelc::dde
