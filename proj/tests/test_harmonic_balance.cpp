#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <doctest.h>

#include "ddelc/errors.hpp"
#include "ddelc/harmonic_balance.hpp"

using namespace ddelc;

namespace {

constexpr double kPi = std::numbers::pi;

double amplitude_residual(const hb::HbSolution& s, double delay) {
  return std::abs(-s.omega * s.omega + std::cos(s.omega * delay) +
                  0.75 * s.amplitude * s.amplitude);
}

}  // namespace

TEST_CASE("undamped ladder at T = 0.3") {
  const auto sols = hb::undamped_amplitudes(0.3, 9);
  REQUIRE(sols.size() == 9);
  // Direct high-precision evaluation of the amplitude formula.
  const double expected[] = {12.147004, 24.156409, 36.294360, 48.354198, 60.471004,
                             72.542785, 84.651846, 96.729074, 108.834088};
  for (int n = 1; n <= 9; ++n) {
    const auto& s = sols[n - 1];
    CAPTURE(n);
    CHECK(s.n == n);
    CHECK(std::abs(s.omega * 0.3 - n * kPi) <= 1e-12 * n);
    CHECK(std::abs(s.amplitude - expected[n - 1]) <= 5e-4);
    // A^2 = (4/3)(omega^2 - cos(omega T)) restated
    CHECK(amplitude_residual(s, 0.3) <= 1e-8);
  }
  // first and third branches are the ones simulation settles on
  CHECK(sols[0].presumed_stable);
  CHECK_FALSE(sols[1].presumed_stable);
  CHECK(sols[2].presumed_stable);
  // published 2-decimal anchors (n = 1 and n = 3 are printed truncated)
  CHECK(std::abs(sols[0].amplitude - 12.14) <= 0.01);
  CHECK(std::abs(sols[2].amplitude - 36.29) <= 0.01);
}

TEST_CASE("undamped ladder: even branch below threshold is omitted") {
  // T > pi makes n = 2 infeasible: omega^2 < 1 and the radicand goes negative.
  const auto sols = hb::undamped_amplitudes(7.0, 3);
  for (const auto& s : sols) CHECK(s.n != 2);
  CHECK_THROWS_AS(hb::undamped_amplitudes(0.0, 3), std::domain_error);
  CHECK_THROWS_AS(hb::undamped_amplitudes(0.3, 0), std::domain_error);
}

TEST_CASE("asymptotic amplitude slope 2 pi / sqrt(3)") {
  const double limit = 2.0 * kPi / std::sqrt(3.0);
  for (double delay : {0.1, 0.3}) {
    const int n = static_cast<int>(std::ceil(100.0 * delay / kPi)) + 1;
    const auto sols = hb::undamped_amplitudes(delay, n);
    const auto& s = sols.back();
    REQUIRE(s.omega >= 100.0);
    CHECK(std::abs(s.amplitude * delay / s.n - limit) / limit < 1e-4);
  }
}

TEST_CASE("hopf critical delay") {
  CHECK(hb::hopf_critical_delay(0.0) == 0.0);
  // frozen 25-digit evaluation of the closed form
  CHECK(std::abs(hb::hopf_critical_delay(1.0) - 1.150614) <= 1e-5);
  CHECK(std::abs(hb::hopf_critical_delay(0.5) - 0.520501) <= 1e-5);
  const double ratio = hb::hopf_critical_delay(0.1) / 0.1;
  CHECK(ratio >= 0.98);
  CHECK(ratio <= 1.05);
  CHECK_THROWS_AS(hb::hopf_critical_delay(-0.1), std::domain_error);
}

TEST_CASE("damped branches: frozen root values and residuals") {
  struct Case {
    double delay, alpha;
    std::vector<double> amplitudes;
  };
  // Frozen from a 30-digit scan-and-bisect of the same pair of balance
  // equations.
  const Case cases[] = {
      {0.4, 0.1, {7.2164}},
      {0.4, 0.2, {5.5106}},
      {0.4, 0.3, {3.6296}},
      {0.4, 0.4, {}},
      {0.6, 0.1, {5.2698}},
      {0.6, 0.2, {4.4834}},
      {0.6, 0.3, {3.7057}},
      {0.6, 0.4, {2.8612}},
      {0.6, 0.5, {1.7928}},
      {0.6, 0.6, {}},
      {1.0, 0.1, {3.4822, 8.1036, 9.7632}},
      {2.0, 0.1, {2.0740, 3.6541, 5.2872, 7.6098, 8.6368}},
  };
  for (const auto& c : cases) {
    CAPTURE(c.delay);
    CAPTURE(c.alpha);
    const auto sols = hb::damped_hb_solutions(c.delay, c.alpha);
    REQUIRE(sols.size() == c.amplitudes.size());
    for (std::size_t i = 0; i < sols.size(); ++i) {
      CHECK(std::abs(sols[i].amplitude - c.amplitudes[i]) <= 5e-4);
      CHECK(std::abs(std::sin(sols[i].omega * c.delay) - c.alpha * sols[i].omega) <= 1e-10);
      CHECK(amplitude_residual(sols[i], c.delay) <= 1e-8);
      CHECK(sols[i].presumed_stable == (i % 2 == 0));
      if (i) CHECK(sols[i].amplitude > sols[i - 1].amplitude);
    }
  }
  CHECK_THROWS_AS(hb::damped_hb_solutions(-1.0, 0.1), std::domain_error);
}

TEST_CASE("damped branches reduce to the undamped ladder at alpha = 0") {
  const auto undamped = hb::undamped_amplitudes(0.3, 9);
  const auto damped = hb::damped_hb_solutions(0.3, 0.0, 9.5 * kPi / 0.3);
  REQUIRE(damped.size() == undamped.size());
  for (std::size_t i = 0; i < damped.size(); ++i) {
    CHECK(std::abs(damped[i].omega - undamped[i].omega) <= 1e-10);
    CHECK(std::abs(damped[i].amplitude - undamped[i].amplitude) <= 1e-10);
  }
}

TEST_CASE("fold curves from tan x = x") {
  const auto curves = hb::fold_curves(4);
  REQUIRE(curves.size() == 4);
  const double betas[] = {4.4934094579, 7.7252518369, 10.9041216594, 14.0661939128};
  for (int i = 0; i < 4; ++i) {
    const auto& fc = curves[i];
    CAPTURE(fc.n);
    CHECK(std::abs(fc.beta - betas[i]) <= 1e-9);
    CHECK(std::abs(std::tan(fc.beta) - fc.beta) <= 1e-12);
    CHECK(fc.beta > (2.0 * fc.n - 1.0) * kPi / 2.0);
    CHECK(fc.beta < (2.0 * fc.n + 1.0) * kPi / 2.0);
    // tan beta = beta forces |cos beta| = 1 / sqrt(1 + beta^2)
    CHECK(std::abs(std::abs(fc.cos_beta) - 1.0 / std::sqrt(1.0 + fc.beta * fc.beta)) <= 1e-12);
    CHECK(fc.active == (fc.cos_beta > 0.0));
    CHECK(fc.alpha_at(0.0) == 0.0);
    CHECK(fc.omega_at(2.0) == doctest::Approx(fc.beta / 2.0));
  }
  // tangencies from below alternate: only even-index betas give alpha > 0
  CHECK_FALSE(curves[0].active);
  CHECK(curves[1].active);
  CHECK_FALSE(curves[2].active);
  CHECK(curves[3].active);
  CHECK(std::abs(curves[0].cos_beta - -0.2172) <= 5e-4);
  CHECK(std::abs(curves[1].cos_beta - 0.1284) <= 5e-4);
  CHECK_THROWS_AS(hb::fold_curves(0), std::domain_error);
}

TEST_CASE("characteristic roots: anchors, residuals, ordering") {
  const auto r1 = hb::characteristic_roots(0.4, 0.1, 4);
  REQUIRE(!r1.empty());
  CHECK(std::abs(r1.front().lambda - std::complex<double>(0.134923, 0.954435)) <= 1e-4);
  for (const auto& r : r1) CHECK(r.residual <= 1e-10);
  for (std::size_t i = 1; i < r1.size(); ++i)
    CHECK(r1[i].lambda.real() <= r1[i - 1].lambda.real());

  const auto r2 = hb::characteristic_roots(0.6, 0.5, 4);
  CHECK(std::abs(r2.front().lambda - std::complex<double>(0.029851, 0.922685)) <= 1e-4);

  // T = 0: plain oscillator, lambda = i
  const auto r0 = hb::characteristic_roots(0.0, 0.0, 1);
  REQUIRE(r0.size() == 1);
  CHECK(std::abs(r0.front().lambda - std::complex<double>(0.0, 1.0)) <= 1e-12);

  // distinctness and conjugate normalization
  for (std::size_t i = 0; i < r1.size(); ++i) {
    CHECK(r1[i].lambda.imag() > 0.0);
    for (std::size_t j = i + 1; j < r1.size(); ++j)
      CHECK(std::abs(r1[i].lambda - r1[j].lambda) > 1e-8);
  }
  CHECK_THROWS_AS(hb::characteristic_roots(0.4, 0.1, 0), std::domain_error);
}

TEST_CASE("leading root sits on the imaginary axis along the hopf curve") {
  for (double alpha : {0.2, 0.5, 1.0}) {
    const double T = hb::hopf_critical_delay(alpha);
    const auto roots = hb::characteristic_roots(T, alpha, 4);
    CAPTURE(alpha);
    CHECK(std::abs(roots.front().lambda.real()) <= 1e-6);
  }
}

TEST_CASE("region counts step 0, 1, 3, 5 and shrink with damping") {
  CHECK(hb::region_count(0.4, 0.5) == 0);
  CHECK(hb::region_count(0.4, 0.1) == 1);
  CHECK(hb::region_count(1.0, 0.1) == 3);
  CHECK(hb::region_count(2.0, 0.1) == 5);
  for (double delay : {0.6, 2.0}) {
    int prev = hb::region_count(delay, 0.02);
    for (double alpha = 0.04; alpha <= 0.8; alpha += 0.02) {
      const int c = hb::region_count(delay, alpha);
      CAPTURE(delay);
      CAPTURE(alpha);
      CHECK(c <= prev);
      prev = c;
    }
  }
  CHECK_THROWS_AS(hb::region_count(0.0, 0.1), std::domain_error);
}
