#include "ddelc/melnikov.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ddelc/batch.hpp"
#include "ddelc/elliptic.hpp"
#include "ddelc/errors.hpp"
#include "ddelc/harmonic_balance.hpp"

namespace ddelc::mel {

namespace {

constexpr double kPi = std::numbers::pi;
const double kTwoKHalf = 2.0 * elliptic::complete_K(0.5);  // 3.70815...

// Order-16 Gauss-Legendre rule on [-1, 1], positive half (symmetric).
constexpr std::array<std::array<double, 2>, 8> kGL16{{
    {9.50125098376374544e-02, 1.89450610455068585e-01},
    {2.81603550779258915e-01, 1.82603415044923612e-01},
    {4.58016777657227370e-01, 1.69156519395002619e-01},
    {6.17876244402643771e-01, 1.49595988816576764e-01},
    {7.55404408355002999e-01, 1.24628971255534030e-01},
    {8.65631202387831755e-01, 9.51585116824925914e-02},
    {9.44575023073232600e-01, 6.22535239386477063e-02},
    {9.89400934991649939e-01, 2.71524594117540374e-02},
}};

double gauss_panels(double a, double b, int panels, auto&& f) {
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    double acc = 0.0;
    for (const auto& [x, w] : kGL16) {
      acc += w * (f(mid + 0.5 * h * x) + f(mid - 0.5 * h * x));
    }
    total += 0.5 * h * acc;
  }
  return total;
}

int panel_count(const elliptic::EllipticOrbit& orbit, double delay) {
  return std::max(16, static_cast<int>(std::ceil(8.0 * orbit.a2 * std::abs(delay) / orbit.P)));
}

double integrate_with_check(double a, double b, int panels, auto&& f, const char* what) {
  const double coarse = gauss_panels(a, b, panels, f);
  const double fine = gauss_panels(a, b, 2 * panels, f);
  if (std::abs(fine - coarse) > 1e-9 * std::max(1.0, std::abs(fine)))
    throw accuracy_error(std::string(what) + ": quadrature did not converge under panel doubling");
  return fine;
}

}  // namespace

double melnikov_integral(double a1, double delay) {
  const auto orbit = elliptic::EllipticOrbit::from_amplitude(a1);
  const auto integrand = [&](double t) {
    const auto shifted = elliptic::jacobi(orbit.a2 * (t - delay), orbit.m);
    const auto at_t = elliptic::jacobi(orbit.a2 * t, orbit.m);
    return shifted.cn * at_t.sn * at_t.dn;
  };
  return integrate_with_check(0.0, orbit.P, panel_count(orbit, delay), integrand,
                              "melnikov_integral");
}

double melnikov_integral_one_term(double a1, double delay) {
  const auto orbit = elliptic::EllipticOrbit::from_amplitude(a1);
  const double k = std::sqrt(orbit.m);
  const double c1 = 2.0 * kPi / (k * orbit.K) * std::sqrt(orbit.q);
  const double sn1 = c1 / (1.0 - orbit.q);
  const double cn1 = c1 / (1.0 + orbit.q);
  const double dn0 = kPi / (2.0 * orbit.K);
  const double g = kPi * orbit.a2 / (2.0 * orbit.K);  // d(G)/dt
  const auto integrand = [&](double t) {
    return cn1 * std::cos(g * (t - delay)) * sn1 * std::sin(g * t) * dn0;
  };
  return integrate_with_check(0.0, orbit.P, panel_count(orbit, delay), integrand,
                              "melnikov_integral_one_term");
}

double default_scan_step(double delay) {
  if (!(delay > 0.0)) throw std::domain_error("default_scan_step: delay must be > 0");
  return 0.1 * kTwoKHalf / delay;
}

std::vector<ZeroCrossing> scan_zeros(double delay, double a1_min, double a1_max,
                                     double step, double tol) {
  if (!(delay > 0.0)) throw std::domain_error("scan_zeros: delay must be > 0");
  if (!(a1_min > 0.0) || !(a1_min < a1_max))
    throw std::domain_error("scan_zeros: need 0 < a1_min < a1_max");
  if (!(tol > 0.0)) throw std::domain_error("scan_zeros: tol must be > 0");
  const double spacing = kTwoKHalf / delay;
  if (!(step > 0.0) || step >= spacing / 4.0)
    throw std::domain_error("scan_zeros: step must lie in (0, 2K/(4T)) to resolve zeros");

  std::vector<double> grid;
  for (double a = a1_min; a < a1_max + 0.5 * step; a += step) grid.push_back(std::min(a, a1_max));
  const auto values = batch::melnikov_values(delay, grid);

  std::vector<ZeroCrossing> zeros;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double f_lo = values[i];
    const double f_hi = values[i + 1];
    if (f_lo == 0.0) {
      zeros.push_back({static_cast<int>(zeros.size()) + 1, grid[i], grid[i], grid[i]});
      continue;
    }
    if ((f_lo > 0.0) == (f_hi > 0.0)) continue;
    double lo = grid[i], hi = grid[i + 1];
    double sign_lo = f_lo;
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      const double fm = melnikov_integral(mid, delay);
      if (fm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((fm > 0.0) == (sign_lo > 0.0)) {
        lo = mid;
        sign_lo = fm;
      } else {
        hi = mid;
      }
    }
    zeros.push_back({static_cast<int>(zeros.size()) + 1, 0.5 * (lo + hi), lo, hi});
  }
  return zeros;
}

double analytic_amplitude(int n, double delay) {
  if (n < 1) throw std::domain_error("analytic_amplitude: n must be >= 1");
  if (!(delay > 0.0)) throw std::domain_error("analytic_amplitude: delay must be > 0");
  return kTwoKHalf * n / delay;
}

std::vector<HbComparisonRow> compare_with_hb(std::span<const double> delays) {
  std::vector<HbComparisonRow> rows;
  rows.reserve(delays.size());
  for (double T : delays) {
    if (!(T > 0.0)) throw std::domain_error("compare_with_hb: delays must be > 0");
    const double predicted = kTwoKHalf / T;
    const double lo = std::max(0.5 * predicted, 1e-3);
    const double hi = 1.6 * predicted;
    const auto zeros = scan_zeros(T, lo, hi, default_scan_step(T), 1e-6 * predicted);
    if (zeros.empty())
      throw numerical_error("compare_with_hb: no Melnikov zero near the predicted amplitude at T = " +
                            std::to_string(T));
    rows.push_back({T, zeros.front().a1, hb::undamped_amplitudes(T, 1).front().amplitude});
  }
  return rows;
}

}  // namespace ddelc::mel
