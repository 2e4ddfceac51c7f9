#include "ddelc/elliptic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ddelc/errors.hpp"

namespace ddelc::elliptic {

namespace {

constexpr double kPi = std::numbers::pi;

void check_modulus(double m, bool exclude_zero) {
  if (!(m >= 0.0) || m > max_modulus_squared)
    throw std::domain_error("modulus-squared m must lie in [0, 1 - 1e-12]");
  if (exclude_zero && m == 0.0)
    throw std::domain_error("modulus-squared m must be positive here");
}

}  // namespace

double complete_K(double m) {
  check_modulus(m, false);
  double a = 1.0;
  double b = std::sqrt(1.0 - m);
  // AGM: quadratic convergence, a and b meet to full precision in <= 8
  // rounds for m <= 1 - 1e-12.
  for (int i = 0; i < 40 && std::abs(a - b) > 1e-17 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return kPi / (2.0 * a);
}

double nome(double m) {
  check_modulus(m, true);
  return std::exp(-kPi * complete_K(1.0 - m) / complete_K(m));
}

JacobiValues jacobi(double z, double m) {
  check_modulus(m, false);
  if (!std::isfinite(z)) throw std::domain_error("jacobi: argument must be finite");
  if (m == 0.0) return {std::sin(z), std::cos(z), 1.0};

  const double K = complete_K(m);
  // Reduce to one period; sn, cn, dn are all 4K-periodic.
  double zr = std::fmod(z, 4.0 * K);
  if (zr < 0.0) zr += 4.0 * K;

  // Ascending AGM scale (a_n, b_n, c_n), then the amplitude phi is recovered
  // by the downward Gauss transformation.
  constexpr int kMaxLevels = 32;
  std::array<double, kMaxLevels> as{};
  std::array<double, kMaxLevels> cs{};
  double a = 1.0;
  double b = std::sqrt(1.0 - m);
  double c = std::sqrt(m);
  int n = 0;
  as[0] = a;
  cs[0] = c;
  while (std::abs(c) > 1e-17 * a && n + 1 < kMaxLevels) {
    const double an = 0.5 * (a + b);
    c = 0.5 * (a - b);
    b = std::sqrt(a * b);
    a = an;
    ++n;
    as[n] = a;
    cs[n] = c;
  }

  double phi = std::ldexp(a * zr, n);  // 2^n a_n z
  for (int i = n; i >= 1; --i) {
    double s = cs[i] / as[i] * std::sin(phi);
    s = std::clamp(s, -1.0, 1.0);
    phi = 0.5 * (phi + std::asin(s));
  }

  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  const double dn = std::sqrt(1.0 - m * sn * sn);
  return {sn, cn, dn};
}

namespace {

struct SeriesSetup {
  double K;
  double q;
  double G;
};

SeriesSetup series_setup(double z, double m, int n_terms) {
  check_modulus(m, true);
  if (n_terms < 1) throw std::domain_error("series: n_terms must be >= 1");
  const double K = complete_K(m);
  return {K, nome(m), kPi * z / (2.0 * K)};
}

}  // namespace

double sn_series(double z, double m, int n_terms) {
  const auto [K, q, G] = series_setup(z, m, n_terms);
  const double k = std::sqrt(m);
  double sum = 0.0;
  for (int n = 0; n < n_terms; ++n) {
    const double qp = std::pow(q, n + 0.5);
    sum += qp * std::sin((2 * n + 1) * G) / (1.0 - std::pow(q, 2 * n + 1));
  }
  return 2.0 * kPi / (k * K) * sum;
}

double cn_series(double z, double m, int n_terms) {
  const auto [K, q, G] = series_setup(z, m, n_terms);
  const double k = std::sqrt(m);
  double sum = 0.0;
  for (int n = 0; n < n_terms; ++n) {
    const double qp = std::pow(q, n + 0.5);
    sum += qp * std::cos((2 * n + 1) * G) / (1.0 + std::pow(q, 2 * n + 1));
  }
  return 2.0 * kPi / (k * K) * sum;
}

double dn_series(double z, double m, int n_terms) {
  const auto [K, q, G] = series_setup(z, m, n_terms);
  double sum = 0.0;
  for (int n = 1; n <= n_terms; ++n) {
    sum += std::pow(q, n) * std::cos(2 * n * G) / (1.0 + std::pow(q, 2 * n));
  }
  return kPi / (2.0 * K) + 2.0 * kPi / K * sum;
}

EllipticOrbit EllipticOrbit::from_amplitude(double a1) {
  if (!(a1 > 0.0) || !std::isfinite(a1))
    throw std::domain_error("EllipticOrbit: amplitude a1 must be positive and finite");
  EllipticOrbit o;
  o.a1 = a1;
  o.a2 = std::sqrt(a1 * a1 + 1.0);
  o.m = a1 * a1 / (2.0 * (1.0 + a1 * a1));
  o.K = complete_K(o.m);
  o.Kprime = complete_K(1.0 - o.m);
  o.q = std::exp(-kPi * o.Kprime / o.K);
  o.P = 4.0 * o.K / o.a2;
  return o;
}

}  // namespace ddelc::elliptic
