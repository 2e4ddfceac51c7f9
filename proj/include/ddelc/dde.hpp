#pragma once

#include <cstddef>
#include <vector>

namespace ddelc::dde {

/// One integration run of x'' + alpha x' + x(t - T) + x^3 = 0. The history is
/// the constant state (x0, v0) for t <= 0.
struct SimConfig {
  double delay = 0.0;              ///< T >= 0
  double damping = 0.0;            ///< alpha >= 0
  double x0 = 0.0;                 ///< history position
  double v0 = 0.0;                 ///< history velocity
  double dt = 1e-3;                ///< step size; snapped to delay/m, m >= 4
  double t_end = 100.0;            ///< final time > 0
  double blowup_threshold = 1e6;   ///< |x| beyond this counts as divergence

  /// Returns a copy with dt adjusted so that delay = m dt for an integer
  /// m >= 4 (no-op when delay = 0). Throws std::domain_error on invalid
  /// fields.
  SimConfig normalized() const;
};

struct State {
  double x;
  double v;
};

/// Dense solution on the uniform grid t_i = i dt. Between nodes the solution
/// is the cubic Hermite interpolant through (x_i, v_i) and (x_{i+1}, v_{i+1}),
/// which reproduces the stored nodes exactly and carries the integrator's
/// fourth-order accuracy. Immutable after construction; safe to share across
/// threads read-only.
class Trajectory {
 public:
  Trajectory(std::vector<double> xs, std::vector<double> vs, double dt,
             bool diverged, double divergence_time);

  std::size_t size() const { return xs_.size(); }
  double dt() const { return dt_; }
  double time(std::size_t i) const { return static_cast<double>(i) * dt_; }
  State state(std::size_t i) const { return {xs_[i], vs_[i]}; }
  double t_end() const { return time(xs_.size() - 1); }

  /// Dense output at any t in [0, t_end]; clamps t to the grid range.
  double x_at(double t) const;
  State state_at(double t) const;

  bool diverged() const { return diverged_; }
  /// Time at which |x| first exceeded the blow-up threshold (only meaningful
  /// when diverged() is true).
  double divergence_time() const { return divergence_time_; }

 private:
  std::vector<double> xs_;
  std::vector<double> vs_;
  double dt_;
  bool diverged_;
  double divergence_time_;
};

struct AmplitudeEstimate {
  double amplitude = 0.0;  ///< mean |x| over the detected peaks
  double period = 0.0;     ///< twice the mean peak-to-peak spacing
  int n_peaks = 0;
  /// relative spread (max - min)/mean of the peak magnitudes
  double spread = 0.0;
  bool converged = false;  ///< spread < 1e-2 and at least 4 peaks
};

/// Integrates the configuration with classical fourth-order Runge-Kutta on
/// (x, x'). Delayed values are read from the constant history for t <= T and
/// from the trajectory's dense output afterwards; because dt divides the
/// delay, every delayed lookup lands on already-completed steps and the
/// scheme stays fully explicit. For delay = 0 the delayed term is the current
/// state. Blow-up yields a diverged trajectory; a non-finite state throws
/// ddelc::numerical_error.
Trajectory integrate(const SimConfig& cfg);

/// Discards the first settle_fraction of the time span, locates the extrema
/// of x from sign changes of x' (refined on the dense output), and averages
/// their magnitudes. Requires a non-diverged trajectory and at least 8 sign
/// changes of x' in the window; throws ddelc::insufficient_data_error
/// otherwise.
AmplitudeEstimate measure_amplitude(const Trajectory& traj, double settle_fraction = 0.5);

/// Step-size default min(T/20, P_est/200), where P_est estimates the fastest
/// oscillation the run can reach (from the conservative orbit through
/// 1.5 max(1, |x0|) and, for alpha > 0, the harmonic-balance frequencies).
double default_dt(double delay, double alpha, double x0);

/// Bisection on the initial condition (x0, 0) between two basins of
/// attraction. Runs from x_low and x_high must settle onto different
/// amplitude branches (classified by the nearest harmonic-balance amplitude);
/// otherwise throws ddelc::bracket_error. Returns the threshold to within
/// tol.
double find_separatrix(double delay, double alpha, double x_low, double x_high, double tol);

}  // namespace ddelc::dde
