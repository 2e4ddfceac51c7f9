#pragma once

#include <span>
#include <vector>

namespace ddelc::mel {

/// One evaluation of the Melnikov integral
///
///   M(a1, T) = integral over one orbit period of
///              cn(a2 (t - T) | m) sn(a2 t | m) dn(a2 t | m) dt
///
/// along the unperturbed orbit x = a1 cn(a2 t | m). M vanishes identically at
/// T = 0 (the integrand is a perfect derivative) and is P-periodic and odd in
/// the delay.
struct MelnikovSample {
  double a1 = 0.0;
  double delay = 0.0;
  double value = 0.0;
};

/// A bracketed, refined zero of a1 -> M(a1, T).
struct ZeroCrossing {
  int n = 0;        ///< 1-based index in increasing a1
  double a1 = 0.0;  ///< midpoint of the final bracket
  double lo = 0.0;  ///< final bracket, sample values of opposite sign
  double hi = 0.0;
};

/// Evaluates M(a1, T) with composite order-16 Gauss-Legendre panels over one
/// period; the panel count grows with a2 T / P. Every call verifies itself by
/// doubling the panel count and throws ddelc::accuracy_error if the two
/// results disagree beyond 1e-9. Requires a1 > 0; T may be any real.
double melnikov_integral(double a1, double delay);

/// Same integral with each elliptic factor replaced by the leading term of
/// its nome expansion (dn by its constant term). Used to validate the
/// one-term amplitude law against the full quadrature.
double melnikov_integral_one_term(double a1, double delay);

/// Grid-scan step so that the expected zero spacing 2K(1/2)/T is sampled
/// about ten times per half-spacing.
double default_scan_step(double delay);

/// Samples M on [a1_min, a1_max] with the given step (grid evaluation runs in
/// parallel), brackets every sign change, and refines each by bisection until
/// the bracket is narrower than tol. An empty result means no sign change was
/// found. Requires 0 < a1_min < a1_max, 0 < step < (2K(1/2)/T)/4, tol > 0.
std::vector<ZeroCrossing> scan_zeros(double delay, double a1_min, double a1_max,
                                     double step, double tol);

/// Closed-form amplitude of the n-th surviving orbit in the small-delay,
/// large-amplitude limit: a1 = 2 K(1/2) n / T = 3.7081 n / T.
double analytic_amplitude(int n, double delay);

struct HbComparisonRow {
  double delay = 0.0;
  double melnikov_zero = 0.0;  ///< first numeric zero of M(., T)
  double hb_amplitude = 0.0;   ///< first undamped harmonic-balance amplitude
};

/// For each delay, pairs the first numeric Melnikov zero with the n = 1
/// harmonic-balance amplitude. Throws ddelc::numerical_error if the scan
/// around the predicted first zero finds none.
std::vector<HbComparisonRow> compare_with_hb(std::span<const double> delays);

}  // namespace ddelc::mel
