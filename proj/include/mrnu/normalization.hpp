#pragma once

// Closed-form radial normalization constant N_nl = 1/sqrt(s(n)).

#include "mrnu/core_model.hpp"
#include "mrnu/specialfns.hpp"

#include <cmath>
#include <string>

namespace mrnu {

namespace detail {

// Rising factorial x (x+1) ... (x+k-1).
inline wide_float pochhammer(wide_float x, int k) {
  wide_float v = 1;
  for (int j = 0; j < k; ++j)
    v *= x + j;
  return v;
}

inline wide_float factorial(int k) { return pochhammer(1, k); }

} // namespace detail

/*!
  @brief s(n)/b = int_0^1 z^(2eps-1) (1-z)^(2Lambda+2) [P_n^(2eps,2Lambda+1)(1-2z)]^2 dz

  Evaluated as the double sum over p, r in [0, n] obtained by expanding both
  Jacobi factors and integrating each monomial as a Beta function:

    s(n)/b = G (-1)^n sum_{p,r} (-1)^(p+r) (n+2eps-p+1)_r (2eps+r+1)_(n-r)
             (p+2Lambda+2) / [p! r! (n-p)! (n-r)! (n+2eps+r-p)(n+2eps+r+2Lambda+2)]

  with G = Gamma(n+2Lambda+2) Gamma(n+2eps+1) / Gamma(n+2eps+2Lambda+2).

  G is taken from log-gamma; the per-term Gamma ratios are short rising
  factorials, evaluated as direct products so that each term carries only a
  few ulps of error into the alternating sum.
*/
inline double normalization_sum_unit_length(int n, double epsilon,
                                            double lambda_cap) {
  if (n < 0)
    throw SpecError("normalization: n must be >= 0");
  if (!(epsilon > 0.0))
    throw SpecError("normalization: epsilon must be positive");
  if (!(lambda_cap > -1.0))
    throw SpecError("normalization: Lambda must exceed -1");

  const double two_e = 2.0 * epsilon;
  const double two_l = 2.0 * lambda_cap;
  const double log_g = log_gamma(n + two_l + 2.0) + log_gamma(n + two_e + 1.0) -
                       log_gamma(n + two_e + two_l + 2.0);

  // The sum alternates and, for large eps, cancels by many digits, so it is
  // accumulated in the wide format of the Jacobi sums.
  using W = detail::wide_float;
  const W te = two_e, tl = two_l;
  W acc = 0;
  for (int p = 0; p <= n; ++p) {
    for (int r = 0; r <= n; ++r) {
      const W num = detail::pochhammer(n + te - p + 1, r) *
                    detail::pochhammer(te + r + 1, n - r) * (p + tl + 2);
      const W den = detail::factorial(p) * detail::factorial(r) *
                    detail::factorial(n - p) * detail::factorial(n - r) *
                    (n + te + r - p) * (n + te + r + tl + 2);
      acc += ((p + r) % 2 == 0) ? num / den : -num / den;
    }
  }
  const double s = ((n % 2 == 0) ? 1.0 : -1.0) * static_cast<double>(acc) *
                   std::exp(log_g);
  if (!(s > 0.0) || !std::isfinite(s))
    throw NumericalError("normalization sum is non-positive (s=" +
                         std::to_string(s) + ", n=" + std::to_string(n) +
                         "); cancellation in the double sum");
  return s;
}

//! N_nl = 1 / sqrt(b * s(n)/b).
inline double norm_constant(int n, double epsilon, double lambda_cap,
                            double b) {
  return 1.0 / std::sqrt(b * normalization_sum_unit_length(n, epsilon,
                                                           lambda_cap));
}

} // namespace mrnu
