#pragma once

// Adaptive 7-point Gauss / 15-point Kronrod quadrature on a finite interval.

#include <array>
#include <cmath>
#include <limits>

namespace mrnu {

struct IntegralEstimate {
  double value{};
  double abs_error{}; //!< sum of |K15 - G7| over accepted panels
  int panels{};
};

namespace detail {

inline constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd Kronrod nodes kXgk[1], [3], [5], [7].
inline constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
void gk15_panel(F &f, double a, double b, double &kronrod, double &gauss) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  kronrod = kWgk[7] * fc;
  gauss = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double s = f(c - dx) + f(c + dx);
    kronrod += kWgk[j] * s;
    if (j % 2 == 1)
      gauss += kWg[j / 2] * s;
  }
  kronrod *= h;
  gauss *= h;
}

template <typename F>
void gk15_adapt(F &f, double a, double b, double tol, int depth,
                IntegralEstimate &acc) {
  double k = 0.0, g = 0.0;
  gk15_panel(f, a, b, k, g);
  const double err = std::abs(k - g);
  const double floor = 50.0 * std::numeric_limits<double>::epsilon() *
                       std::abs(k);
  if (err <= tol || err <= floor || depth == 0) {
    acc.value += k;
    acc.abs_error += err;
    ++acc.panels;
    return;
  }
  const double m = 0.5 * (a + b);
  gk15_adapt(f, a, m, 0.5 * tol, depth - 1, acc);
  gk15_adapt(f, m, b, 0.5 * tol, depth - 1, acc);
}

} // namespace detail

//! Integral of f over [a, b] by recursive bisection until each panel's
//! |K15 - G7| is below its share of abs_tol (or max_depth is reached).
template <typename F>
IntegralEstimate integrate_gk15(F &&f, double a, double b, double abs_tol,
                                int max_depth = 30) {
  IntegralEstimate acc;
  if (a == b)
    return acc;
  detail::gk15_adapt(f, a, b, abs_tol, max_depth, acc);
  return acc;
}

} // namespace mrnu
