#include "ddelc/harmonic_balance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ddelc/errors.hpp"

namespace ddelc::hb {

namespace {

constexpr double kPi = std::numbers::pi;

// Marks every other branch, by increasing amplitude, as the one simulation
// settles onto.
void label_stability(std::vector<HbSolution>& sols) {
  for (std::size_t i = 0; i < sols.size(); ++i) sols[i].presumed_stable = (i % 2 == 0);
}

double bisect(double lo, double hi, auto&& f) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw bracket_error("bisect: endpoints do not bracket a sign change");
  for (int i = 0; i < 200 && hi - lo > 1e-16 * (1.0 + std::abs(lo)); ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<HbSolution> undamped_amplitudes(double delay, int n_max) {
  if (!(delay > 0.0)) throw std::domain_error("undamped_amplitudes: delay must be > 0");
  if (n_max < 1) throw std::domain_error("undamped_amplitudes: n_max must be >= 1");
  std::vector<HbSolution> out;
  out.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    const double omega = n * kPi / delay;
    const double sign = (n % 2 == 1) ? 1.0 : -1.0;
    const double radicand = omega * omega + sign;
    if (radicand < 0.0) continue;  // even-n branch below threshold (T > pi)
    out.push_back({n, omega, 2.0 / std::sqrt(3.0) * std::sqrt(radicand), false});
  }
  label_stability(out);
  return out;
}

double hopf_critical_delay(double alpha) {
  if (!(alpha >= 0.0)) throw std::domain_error("hopf_critical_delay: alpha must be >= 0");
  const double s = std::sqrt(alpha * alpha * alpha * alpha + 4.0);
  const double u = -alpha * alpha + s;  // = 2 omega^2 at criticality
  return std::sqrt(2.0) * std::acos(std::min(1.0, 0.5 * u)) / std::sqrt(u);
}

std::vector<HbSolution> damped_hb_solutions(double delay, double alpha, double omega_max) {
  if (!(delay > 0.0)) throw std::domain_error("damped_hb_solutions: delay must be > 0");
  if (!(alpha >= 0.0)) throw std::domain_error("damped_hb_solutions: alpha must be >= 0");

  if (alpha == 0.0) {
    // sin(omega T) = 0: the undamped ladder, cut off at omega_max.
    if (omega_max <= 0.0) omega_max = 16.0 * kPi / delay;
    const int n_max = static_cast<int>(std::floor(omega_max * delay / kPi + 1e-9));
    auto sols = undamped_amplitudes(delay, std::max(1, n_max));
    std::erase_if(sols, [&](const HbSolution& s) { return s.omega > omega_max * (1.0 + 1e-12); });
    std::sort(sols.begin(), sols.end(),
              [](const HbSolution& a, const HbSolution& b) { return a.amplitude < b.amplitude; });
    label_stability(sols);
    return sols;
  }

  if (omega_max <= 0.0) omega_max = 1.0 / alpha;
  const auto g = [&](double w) { return std::sin(w * delay) - alpha * w; };

  // Bracket sign changes on a grid fine enough to separate the roots, then
  // refine. omega = 0 is always a (trivial) root, so start just above it.
  const double step = kPi / (8.0 * delay);
  std::vector<double> roots;
  double w_prev = std::min(step * 1e-6, omega_max * 0.5);
  double g_prev = g(w_prev);
  for (double w = step; w_prev < omega_max; w += step) {
    const double w_cur = std::min(w, omega_max);
    const double g_cur = g(w_cur);
    if (g_prev == 0.0) {
      roots.push_back(w_prev);
    } else if ((g_prev > 0.0) != (g_cur > 0.0)) {
      roots.push_back(bisect(w_prev, w_cur, g));
    }
    w_prev = w_cur;
    g_prev = g_cur;
    if (w_cur >= omega_max) break;
  }

  std::vector<HbSolution> out;
  int index = 0;
  for (double w : roots) {
    const double radicand = w * w - std::cos(w * delay);
    if (radicand < 0.0) continue;
    out.push_back({++index, w, std::sqrt(4.0 / 3.0 * radicand), false});
  }
  std::sort(out.begin(), out.end(),
            [](const HbSolution& a, const HbSolution& b) { return a.amplitude < b.amplitude; });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].n = static_cast<int>(i) + 1;
  label_stability(out);
  return out;
}

std::vector<FoldCurve> fold_curves(int n_max) {
  if (n_max < 1) throw std::domain_error("fold_curves: n_max must be >= 1");
  std::vector<FoldCurve> out;
  out.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    // tan x = x has one root in (n pi, n pi + pi/2). Solve the pole-free
    // form g(x) = sin x - x cos x, then polish with Newton (g' = x sin x).
    const double lo = n * kPi + 1e-9;
    const double hi = n * kPi + kPi / 2.0 - 1e-9;
    double beta = bisect(lo, hi, [](double x) { return std::sin(x) - x * std::cos(x); });
    for (int i = 0; i < 4; ++i) {
      const double gb = std::sin(beta) - beta * std::cos(beta);
      beta -= gb / (beta * std::sin(beta));
    }
    const double cb = std::cos(beta);
    out.push_back({n, beta, cb, cb > 0.0});
  }
  return out;
}

namespace {

std::complex<double> char_fn(std::complex<double> l, double delay, double alpha) {
  return l * l + alpha * l + std::exp(-l * delay);
}

bool newton_root(std::complex<double>& l, double delay, double alpha) {
  for (int it = 0; it < 100; ++it) {
    const auto f = char_fn(l, delay, alpha);
    const auto df = 2.0 * l + alpha - delay * std::exp(-l * delay);
    if (std::abs(df) < 1e-300) return false;
    const auto step = f / df;
    l -= step;
    if (std::abs(step) < 1e-14 * (1.0 + std::abs(l))) {
      return std::abs(char_fn(l, delay, alpha)) <= 1e-10;
    }
  }
  return false;
}

}  // namespace

std::vector<CharRoot> characteristic_roots(double delay, double alpha, int n_branches) {
  if (n_branches < 1) throw std::domain_error("characteristic_roots: n_branches must be >= 1");
  if (!(delay >= 0.0) || !(alpha >= 0.0))
    throw std::domain_error("characteristic_roots: delay and alpha must be >= 0");

  std::vector<std::complex<double>> seeds;
  if (delay > 0.0) {
    for (const auto& s : damped_hb_solutions(delay, alpha)) seeds.emplace_back(0.05, s.omega);
    for (int j = 1; j <= n_branches + 1; ++j)
      seeds.emplace_back(0.05, (2.0 * j - 1.0) * kPi / (2.0 * delay));
  }
  for (double w : {0.5, 1.0, 1.5, 2.5}) seeds.emplace_back(0.0, w);

  std::vector<CharRoot> roots;
  for (auto seed : seeds) {
    std::complex<double> l = seed;
    if (!newton_root(l, delay, alpha)) continue;
    if (l.imag() < 0.0) l = std::conj(l);  // roots pair up for real parameters
    if (!(l.imag() > 0.0)) continue;
    const bool dup = std::any_of(roots.begin(), roots.end(), [&](const CharRoot& r) {
      return std::abs(r.lambda - l) < 1e-8;
    });
    if (!dup) roots.push_back({l, std::abs(char_fn(l, delay, alpha))});
  }
  if (roots.empty())
    throw numerical_error("characteristic_roots: no seed converged to a root");
  std::sort(roots.begin(), roots.end(), [](const CharRoot& a, const CharRoot& b) {
    return a.lambda.real() > b.lambda.real();
  });
  if (roots.size() > static_cast<std::size_t>(n_branches))
    roots.resize(static_cast<std::size_t>(n_branches));
  return roots;
}

int region_count(double delay, double alpha) {
  if (!(delay > 0.0) || !(alpha > 0.0))
    throw std::domain_error("region_count: delay and alpha must be > 0");
  return static_cast<int>(damped_hb_solutions(delay, alpha).size());
}

}  // namespace ddelc::hb
