#pragma once

#include <complex>
#include <vector>

namespace ddelc::hb {

/// One single-harmonic periodic solution x = A cos(omega t) of
/// x'' + alpha x' + x(t - T) + x^3 = 0, satisfying
///
///   sin(omega T) = alpha omega
///   A^2 = (4/3) (omega^2 - cos(omega T))
///
/// `presumed_stable` is bookkeeping only: with branches sorted by amplitude,
/// the first and then every other one is the branch seen in direct
/// simulation, the intermediate ones act as basin boundaries. It is not a
/// computed stability result.
struct HbSolution {
  int n = 0;               ///< branch index (harmonic number when alpha = 0)
  double omega = 0.0;      ///< angular frequency
  double amplitude = 0.0;  ///< A >= 0
  bool presumed_stable = false;
};

/// Undamped ladder: omega = n pi / T and
/// A = (2/sqrt 3) sqrt(n^2 pi^2 / T^2 + 1) for odd n (minus 1 for even n).
/// Branches whose radicand is negative (possible for even n once T > pi)
/// are omitted. Requires T > 0, n_max >= 1.
std::vector<HbSolution> undamped_amplitudes(double delay, int n_max);

/// Critical delay at which the origin loses stability through a Hopf
/// bifurcation:
///   T = sqrt(2) arccos((-a^2 + sqrt(a^4 + 4)) / 2) / sqrt(-a^2 + sqrt(a^4 + 4)).
/// T(0) = 0 and T(alpha) ~ alpha for small alpha.
double hopf_critical_delay(double alpha);

/// All branches with omega > 0 for the damped equation, sorted by amplitude.
/// Roots of sin(omega T) = alpha omega are bracketed on a grid of step
/// pi/(8T) and refined by bisection; |sin| <= 1 confines them to
/// omega <= 1/alpha. Branches with a negative amplitude radicand are
/// dropped. For alpha = 0 this reduces to the undamped ladder; `omega_max`
/// then bounds the harvest (default 16 pi / T). Requires T > 0.
std::vector<HbSolution> damped_hb_solutions(double delay, double alpha,
                                            double omega_max = 0.0);

/// One fold (saddle-node of cycles) curve: the line alpha_n(T) = T cos(beta_n)
/// in the (T, alpha) plane, where beta_n is the n-th positive root of
/// tan x = x. Only betas with cos(beta_n) > 0 give tangencies at positive
/// damping; the others are reported with `active` false.
struct FoldCurve {
  int n = 0;
  double beta = 0.0;      ///< n-th positive root of tan x = x
  double cos_beta = 0.0;  ///< slope of the curve: alpha = T cos(beta)
  bool active = false;    ///< cos_beta > 0

  double alpha_at(double delay) const { return delay * cos_beta; }
  double omega_at(double delay) const { return beta / delay; }
};

/// Fold curves for n = 1..n_max. Requires n_max >= 1.
std::vector<FoldCurve> fold_curves(int n_max);

/// A root of the characteristic function f(lambda) = lambda^2 + alpha lambda
/// + exp(-lambda T) of the linearized equation.
struct CharRoot {
  std::complex<double> lambda;
  double residual = 0.0;  ///< |f(lambda)|
};

/// Distinct characteristic roots with positive imaginary part, found by
/// complex Newton iteration from harmonic-balance frequencies and a spread of
/// imaginary-axis seeds, sorted by decreasing real part and truncated to
/// n_branches entries. Every returned root has residual <= 1e-10. Throws
/// ddelc::numerical_error if no seed converges.
std::vector<CharRoot> characteristic_roots(double delay, double alpha,
                                           int n_branches);

/// Number of coexisting harmonic-balance limit cycles at (T, alpha); the
/// count steps through 0, 1, 3, 5, ... across the Hopf line and successive
/// fold curves. Requires T > 0, alpha > 0.
int region_count(double delay, double alpha);

}  // namespace ddelc::hb
