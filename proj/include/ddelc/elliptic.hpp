#pragma once

#include <cstddef>

namespace ddelc::elliptic {

/// Every function in this header takes the modulus-squared m = k^2, not the
/// modulus k. The convention matters: K at m = 1/2 is 1.8541, while K at
/// modulus k = 1/2 would be 1.6858. Arguments with m >= 1 - 1e-12 are
/// rejected rather than silently losing precision near the logarithmic
/// singularity at m = 1.
inline constexpr double max_modulus_squared = 1.0 - 1e-12;

/// Complete elliptic integral of the first kind K(m), computed by the
/// arithmetic-geometric-mean iteration (quadratic convergence, relative
/// error at the few-ulp level over m in [0, max_modulus_squared]).
double complete_K(double m);

/// Nome q = exp(-pi K(1-m) / K(m)), in (0, 1). Requires 0 < m < 1.
double nome(double m);

struct JacobiValues {
  double sn;
  double cn;
  double dn;
};

/// Jacobi elliptic functions sn(z|m), cn(z|m), dn(z|m) evaluated together by
/// the descending-Landen/AGM recursion after reducing z modulo the period 4K.
JacobiValues jacobi(double z, double m);

/// Truncated Fourier (nome) expansions. `n_terms` counts the harmonics kept:
///
///   sn: (2 pi / (k K)) * sum_{n=0}^{n_terms-1} q^{n+1/2} sin((2n+1)G) / (1 - q^{2n+1})
///   cn: (2 pi / (k K)) * sum_{n=0}^{n_terms-1} q^{n+1/2} cos((2n+1)G) / (1 + q^{2n+1})
///   dn: pi/(2K) + (2 pi / K) * sum_{n=1}^{n_terms}  q^n     cos(2 n G)  / (1 + q^{2n})
///
/// with G = pi z / (2K). Truncation remainder is O(q^{n_terms + 1/2}); the
/// default 12 terms is converged to ~1e-15 for m <= 0.5. Requires 0 < m < 1
/// and n_terms >= 1.
double sn_series(double z, double m, int n_terms = 12);
double cn_series(double z, double m, int n_terms = 12);
double dn_series(double z, double m, int n_terms = 12);

/// The closed orbit x = a1 cn(a2 t | m) of x'' + x + x^3 = 0, with
/// a2^2 = a1^2 + 1 and m = a1^2 / (2 (1 + a1^2)), so m < 1/2 for all finite
/// amplitudes. P = 4K/a2 is the orbit period.
struct EllipticOrbit {
  double a1;      ///< orbit amplitude, > 0
  double a2;      ///< frequency-like parameter, sqrt(a1^2 + 1)
  double m;       ///< modulus-squared, in (0, 1/2)
  double K;       ///< complete_K(m)
  double Kprime;  ///< complete_K(1 - m)
  double q;       ///< nome(m)
  double P;       ///< period 4K/a2

  /// Builds the orbit through amplitude a1 > 0.
  static EllipticOrbit from_amplitude(double a1);
};

}  // namespace ddelc::elliptic
