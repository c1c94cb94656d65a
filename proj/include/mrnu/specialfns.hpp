#pragma once

// Special-function kernels: log-gamma and the Jacobi polynomial
// P_n^{(rho,nu)}(xi) by two explicit finite sums and by recurrence.

#include "mrnu/core_model.hpp"

#include <cmath>
#include <string>

namespace mrnu {

//==============================================================================
//! ln Gamma(x) for x > 0.
inline double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw std::domain_error("log_gamma: argument must be positive and finite");
#if defined(__GLIBC__)
  int sign = 0; // lgamma_r avoids the global signgam write
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

//! ln C(x, k) for real x and integer 0 <= k with x - k > -1.
inline double log_binomial(double x, int k) {
  return log_gamma(x + 1.0) - log_gamma(k + 1.0) - log_gamma(x - k + 1.0);
}

//==============================================================================
//! Parameters of P_n^{(rho,nu)}; rho, nu > -1 keeps the weight integrable.
struct JacobiParams {
  double rho{};
  double nu{};
  int degree{};
};

inline void validate(const JacobiParams &p) {
  if (p.degree < 0)
    throw SpecError("Jacobi degree must be >= 0");
  if (!(p.rho > -1.0) || !(p.nu > -1.0) || !std::isfinite(p.rho) ||
      !std::isfinite(p.nu))
    throw SpecError("Jacobi parameters must satisfy rho > -1 and nu > -1 "
                    "(got rho=" +
                    std::to_string(p.rho) + ", nu=" + std::to_string(p.nu) +
                    ")");
}

namespace detail {

// The explicit sums alternate in sign and, for parameters of a few tens,
// cancel by up to ten decimal digits in the interior of [-1, 1]. Their terms
// are therefore formed as exact products in binary128 (long double where the
// compiler has no such type); the range of that format also removes the
// overflow that raw Gamma values would hit in double.
#if defined(__SIZEOF_FLOAT128__)
using wide_float = __float128;
#else
using wide_float = long double;
#endif

// C(x, k) = x (x-1) ... (x-k+1) / k!
inline wide_float wide_binomial(wide_float x, int k) {
  wide_float c = 1;
  for (int j = 1; j <= k; ++j)
    c = c * (x - k + j) / j;
  return c;
}

inline wide_float wide_power(wide_float base, int k) {
  wide_float p = 1;
  for (int j = 0; j < k; ++j)
    p *= base;
  return p;
}

} // namespace detail

/*!
  @brief Binomial double-factor sum:
    P = 2^-n sum_p (-1)^(n-p) C(n+rho, p) C(n+nu, n-p) (1-xi)^(n-p) (1+xi)^p
*/
inline double jacobi_sum_form_A(const JacobiParams &p, double xi) {
  validate(p);
  const int n = p.degree;
  if (n == 0)
    return 1.0;
  using W = detail::wide_float;
  const W x = xi, rho = p.rho, nu = p.nu;
  const W minus = W(1) - x, plus = W(1) + x;
  W sum = 0;
  for (int k = 0; k <= n; ++k) {
    W term = detail::wide_binomial(n + rho, k) *
             detail::wide_binomial(n + nu, n - k) *
             detail::wide_power(minus, n - k) * detail::wide_power(plus, k);
    sum += ((n - k) % 2 == 0) ? term : -term;
  }
  return static_cast<double>(sum / detail::wide_power(W(2), n));
}

/*!
  @brief Gamma-ratio sum in powers of (xi - 1)/2:
    P = Gamma(n+rho+1) / (n! Gamma(n+rho+nu+1))
        * sum_r C(n,r) Gamma(n+rho+nu+r+1)/Gamma(r+rho+1) ((xi-1)/2)^r

  Every Gamma ratio here has integer spacing, so the prefactor is
  (rho+1)_n / n! and the r-th term carries (n+rho+nu+1)_r / (rho+1)_r; both
  are accumulated as running products.
*/
inline double jacobi_sum_form_B(const JacobiParams &p, double xi) {
  validate(p);
  const int n = p.degree;
  if (n == 0)
    return 1.0;
  using W = detail::wide_float;
  const W rho = p.rho, s = W(n) + rho + W(p.nu) + 1;
  const W half_step = (W(xi) - 1) / 2;

  W pre = 1;
  for (int j = 0; j < n; ++j)
    pre = pre * (rho + 1 + j) / (j + 1);

  W term = 1, sum = 1;
  for (int r = 0; r < n; ++r) {
    term = term * W(n - r) / W(r + 1) * (s + r) / (rho + 1 + r) * half_step;
    sum += term;
  }
  return static_cast<double>(pre * sum);
}

//! Upward three-term recurrence from P0 = 1, P1 = (rho+1) + (rho+nu+2)(xi-1)/2.
//! Reference route; the explicit sums are checked against it.
inline double jacobi_recurrence(const JacobiParams &p, double xi) {
  validate(p);
  const int n = p.degree;
  const double a = p.rho, b = p.nu;
  double pm1 = 1.0;
  if (n == 0)
    return pm1;
  double pk = (a + 1.0) + (a + b + 2.0) * 0.5 * (xi - 1.0);
  for (int k = 2; k <= n; ++k) {
    const double c = 2.0 * k + a + b;
    const double a1 = 2.0 * k * (k + a + b) * (c - 2.0);
    const double a2 = (c - 1.0) * (a * a - b * b);
    const double a3 = (c - 2.0) * (c - 1.0) * c;
    const double a4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c;
    const double next = ((a2 + a3 * xi) * pk - a4 * pm1) / a1;
    pm1 = pk;
    pk = next;
  }
  return pk;
}

enum class JacobiRoute { Recurrence, SumA, SumB };

inline double jacobi(const JacobiParams &p, double xi,
                     JacobiRoute route = JacobiRoute::Recurrence) {
  switch (route) {
  case JacobiRoute::SumA:
    return jacobi_sum_form_A(p, xi);
  case JacobiRoute::SumB:
    return jacobi_sum_form_B(p, xi);
  case JacobiRoute::Recurrence:
    break;
  }
  return jacobi_recurrence(p, xi);
}

//! P_n^{(rho,nu)}(1) = Gamma(n+rho+1) / (n! Gamma(rho+1)).
inline double jacobi_at_one(const JacobiParams &p) {
  validate(p);
  return std::exp(log_gamma(p.degree + p.rho + 1.0) -
                  log_gamma(p.degree + 1.0) - log_gamma(p.rho + 1.0));
}

} // namespace mrnu
