#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "ddelc/elliptic.hpp"

using namespace ddelc;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent oracle for K(m): adaptive Simpson quadrature of
// d theta / sqrt(1 - m sin^2 theta) over [0, pi/2].
double k_integrand(double theta, double m) {
  const double s = std::sin(theta);
  return 1.0 / std::sqrt(1.0 - m * s * s);
}

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(double a, double b, double fa, double fm, double fb, double whole,
                        double tol, int depth, double m) {
  const double mid = 0.5 * (a + b);
  const double lm = k_integrand(0.5 * (a + mid), m);
  const double rm = k_integrand(0.5 * (mid + b), m);
  const double left = simpson(a, mid, fa, lm, fm);
  const double right = simpson(mid, b, fm, rm, fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(a, mid, fa, lm, fm, left, tol / 2.0, depth - 1, m) +
         adaptive_simpson(mid, b, fm, rm, fb, right, tol / 2.0, depth - 1, m);
}

double quadrature_K(double m) {
  const double a = 0.0, b = kPi / 2.0;
  const double fa = k_integrand(a, m);
  const double fm = k_integrand(0.5 * (a + b), m);
  const double fb = k_integrand(b, m);
  return adaptive_simpson(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), 1e-14, 48, m);
}

// Independent oracle for the nome: the lambda-series inversion
// q = lam + 2 lam^5 + 15 lam^9 + 150 lam^13 + 1707 lam^17 + 20910 lam^21,
// lam = (1 - (1-m)^{1/4}) / (2 (1 + (1-m)^{1/4})).
double series_nome(double m) {
  const double r = std::pow(1.0 - m, 0.25);
  const double lam = (1.0 - r) / (2.0 * (1.0 + r));
  const double l4 = lam * lam * lam * lam;
  // Horner in lam^4.
  double q = 20910.0;
  q = q * l4 + 1707.0;
  q = q * l4 + 150.0;
  q = q * l4 + 15.0;
  q = q * l4 + 2.0;
  q = q * l4 + 1.0;
  return q * lam;
}

}  // namespace

TEST_CASE("complete_K: closed-form and quadrature anchors") {
  CHECK(elliptic::complete_K(0.0) == doctest::Approx(kPi / 2.0).epsilon(1e-15));
  // 1.854 appears in the analytic amplitude law; full-precision value frozen
  // from a 25-digit evaluation.
  CHECK(std::abs(elliptic::complete_K(0.5) - 1.8540746773013719) < 1e-14);
  for (double m : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    CAPTURE(m);
    CHECK(std::abs(elliptic::complete_K(m) - quadrature_K(m)) <= 1e-12);
  }
}

TEST_CASE("complete_K: domain errors") {
  CHECK_THROWS_AS(elliptic::complete_K(-0.01), std::domain_error);
  CHECK_THROWS_AS(elliptic::complete_K(1.0), std::domain_error);
  CHECK_THROWS_AS(elliptic::complete_K(1.0 - 1e-14), std::domain_error);
  CHECK_NOTHROW(elliptic::complete_K(1.0 - 1e-12));
}

TEST_CASE("nome: symmetry point, limit, series oracle") {
  CHECK(std::abs(elliptic::nome(0.5) - std::exp(-kPi)) < 1e-15);
  CHECK(elliptic::nome(1e-6) < 1e-6);
  for (double m : {0.1, 0.25, 0.4, 0.6}) {
    CAPTURE(m);
    CHECK(std::abs(elliptic::nome(m) - series_nome(m)) <= 1e-10);
  }
  // monotone increasing in m
  double prev = 0.0;
  for (double m = 0.05; m < 0.95; m += 0.05) {
    const double q = elliptic::nome(m);
    CHECK(q > prev);
    prev = q;
  }
  CHECK_THROWS_AS(elliptic::nome(0.0), std::domain_error);
  CHECK_THROWS_AS(elliptic::nome(1.0), std::domain_error);
}

TEST_CASE("jacobi: degenerate and quarter-period values") {
  for (double m : {0.0, 0.2, 0.7}) {
    const auto v = elliptic::jacobi(0.0, m);
    CHECK(v.sn == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(v.cn == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(v.dn == doctest::Approx(1.0).epsilon(1e-15));
  }
  const auto circ = elliptic::jacobi(1.2, 0.0);
  CHECK(circ.sn == doctest::Approx(std::sin(1.2)).epsilon(1e-15));
  CHECK(circ.cn == doctest::Approx(std::cos(1.2)).epsilon(1e-15));
  CHECK(circ.dn == 1.0);

  const double K = elliptic::complete_K(0.5);
  const auto quarter = elliptic::jacobi(K, 0.5);
  CHECK(std::abs(quarter.sn - 1.0) < 1e-12);
  CHECK(std::abs(quarter.cn) < 1e-12);
  CHECK(std::abs(quarter.dn - std::sqrt(0.5)) < 1e-12);

  CHECK_THROWS_AS(elliptic::jacobi(std::numeric_limits<double>::infinity(), 0.5),
                  std::domain_error);
}

TEST_CASE("jacobi: pythagorean identities and periodicity") {
  for (double m : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double K = elliptic::complete_K(m);
    for (int i = 0; i <= 40; ++i) {
      const double z = -2.0 * K + 8.0 * K * i / 40.0;
      const auto v = elliptic::jacobi(z, m);
      CAPTURE(m);
      CAPTURE(z);
      CHECK(std::abs(v.sn * v.sn + v.cn * v.cn - 1.0) <= 1e-12);
      CHECK(std::abs(v.dn * v.dn + m * v.sn * v.sn - 1.0) <= 1e-12);
      const auto w = elliptic::jacobi(z + 4.0 * K, m);
      CHECK(std::abs(w.cn - v.cn) <= 1e-12);
      CHECK(std::abs(w.sn - v.sn) <= 1e-12);
      CHECK(std::abs(w.dn - v.dn) <= 1e-12);
    }
  }
}

TEST_CASE("series: converged truncations agree with the exact evaluator") {
  for (double m : {0.1, 0.3, 0.5}) {
    const double K = elliptic::complete_K(m);
    for (int i = 0; i <= 32; ++i) {
      const double z = 4.0 * K * i / 32.0;
      const auto v = elliptic::jacobi(z, m);
      CAPTURE(m);
      CAPTURE(z);
      CHECK(std::abs(elliptic::sn_series(z, m, 12) - v.sn) <= 1e-9);
      CHECK(std::abs(elliptic::cn_series(z, m, 12) - v.cn) <= 1e-9);
      CHECK(std::abs(elliptic::dn_series(z, m, 12) - v.dn) <= 1e-9);
    }
  }
}

TEST_CASE("series: one-term remainder and deep truncation at m = 0.5") {
  const auto exact = elliptic::jacobi(0.7, 0.5);
  // q(0.5) = e^{-pi}; the one-term remainder is O(q^{3/2}) ~ 0.009.
  CHECK(std::abs(elliptic::cn_series(0.7, 0.5, 1) - exact.cn) < 0.02);
  CHECK(std::abs(elliptic::cn_series(0.7, 0.5, 10) - exact.cn) <= 1e-10);
  CHECK(std::abs(elliptic::cn_series(0.0, 0.3, 8) - 1.0) < 1e-9);
  CHECK_THROWS_AS(elliptic::cn_series(0.1, 0.5, 0), std::domain_error);
  CHECK_THROWS_AS(elliptic::sn_series(0.1, 0.0, 4), std::domain_error);
}

TEST_CASE("EllipticOrbit: parameter identities across the amplitude range") {
  for (double a1 = 0.125; a1 <= 200.0; a1 *= 2.0) {
    const auto o = elliptic::EllipticOrbit::from_amplitude(a1);
    CAPTURE(a1);
    CHECK(std::abs(o.a2 * o.a2 - (a1 * a1 + 1.0)) <= 1e-12 * (1.0 + a1 * a1));
    CHECK(o.m == a1 * a1 / (2.0 * (1.0 + a1 * a1)));
    CHECK(o.m < 0.5);
    CHECK(o.q > 0.0);
    CHECK(o.q < 1.0);
    CHECK(std::abs(o.q - std::exp(-kPi * o.Kprime / o.K)) <= 1e-15);
    CHECK(o.P > 0.0);
    CHECK(o.P == 4.0 * o.K / o.a2);
  }
  CHECK_THROWS_AS(elliptic::EllipticOrbit::from_amplitude(0.0), std::domain_error);
  CHECK_THROWS_AS(elliptic::EllipticOrbit::from_amplitude(-3.0), std::domain_error);
}
