#pragma once

// Closed-form spectrum of the Manning-Rosen potential under the exponential
// centrifugal approximation, the shape of the potential itself, and the
// Hulthen / Coulomb limits.

#include "mrnu/core_model.hpp"
#include "mrnu/normalization.hpp"

#include <cmath>
#include <optional>

namespace mrnu {

//! a = sqrt((1 - 2 alpha)^2 + 4 l (l+1)); a >= 1 and symmetric in alpha <-> 1-alpha.
inline double compute_a(double alpha, int l) {
  if (l < 0)
    throw SpecError("l must be >= 0");
  const double t = 1.0 - 2.0 * alpha;
  return std::sqrt(t * t + 4.0 * l * (l + 1.0));
}

//! Effective angular momentum Lambda = (a - 1)/2; equals l at alpha in {0, 1}.
inline double compute_lambda(double alpha, int l) {
  return 0.5 * (compute_a(alpha, l) - 1.0);
}

//! A_c = (n+1+Lambda)^2 - Lambda(Lambda+1) + l(l+1): the coupling at which
//! level (n, l) reaches zero binding energy.
inline double critical_coupling(double alpha, QuantumNumbers q) {
  validate(q);
  const double lam = compute_lambda(alpha, q.l);
  const double s = q.n + 1.0 + lam;
  return s * s - lam * (lam + 1.0) + q.l * (q.l + 1.0);
}

/*!
  @brief Dimensionless energy parameter of level (n, l), if bound.

  eps = (A - A_c) / (2 (n + 1 + Lambda)). This is the positive root of the
  quantization condition; eps <= 0 means the level does not exist and
  std::nullopt is returned (zero binding energy counts as unbound).
*/
inline std::optional<double> compute_epsilon(const PotentialSpec &spec,
                                             QuantumNumbers q) {
  validate_spec(spec);
  validate(q);
  const double lam = compute_lambda(spec.alpha, q.l);
  const double eps =
      (spec.A - critical_coupling(spec.alpha, q)) / (2.0 * (q.n + 1.0 + lam));
  if (!(eps > 0.0))
    return std::nullopt;
  return eps;
}

struct SpectrumResult {
  QuantumNumbers state{};
  std::optional<BoundState> bound{}; //!< empty when the level is not bound

  bool is_bound() const { return bound.has_value(); }
};

//! E_nl = -(hbar^2 / 2 mu b^2) eps^2, together with eps, Lambda, a and N_nl.
inline SpectrumResult energy(const PotentialSpec &spec, QuantumNumbers q) {
  SpectrumResult out{q, std::nullopt};
  const auto eps = compute_epsilon(spec, q);
  if (!eps)
    return out;
  BoundState bs;
  bs.epsilon = *eps;
  bs.a_param = compute_a(spec.alpha, q.l);
  bs.lambda_cap = 0.5 * (bs.a_param - 1.0);
  bs.energy = -spectroscopic_energy_scale(spec) * bs.epsilon * bs.epsilon;
  bs.norm = norm_constant(q.n, bs.epsilon, bs.lambda_cap, spec.b);
  out.bound = bs;
  return out;
}

//! Pure Hulthen levels (alpha = 0 or 1); only A, b, mu are used:
//! E = -[A - N^2]^2 hbar^2 / (8 mu b^2 N^2), N = n + l + 1.
//! Valid while A > N^2; at A = N^2 this is zero.
inline double hulthen_energy(const PotentialSpec &spec, QuantumNumbers q) {
  validate(q);
  const double N = q.principal();
  const double d = spec.A - N * N;
  return -spectroscopic_energy_scale(spec) * d * d / (4.0 * N * N);
}

//! Hulthen energy parameter eps = (A - N^2) / (2N).
inline double hulthen_epsilon(double A, QuantumNumbers q) {
  validate(q);
  const double N = q.principal();
  return (A - N * N) / (2.0 * N);
}

//! Coulomb levels -eps0/N^2 with eps0 = Z^2 hbar^2 / (2 mu a0^2), a0 = hbar^2/(mu e^2);
//! atomic convention hbar = e = 1, so eps0 = Z^2 mu / 2.
inline double coulomb_limit_energy(double z_eff, QuantumNumbers q, double mu) {
  validate(q);
  if (!(mu > 0.0))
    throw SpecError("mu must be positive");
  const double N = q.principal();
  return -0.5 * z_eff * z_eff * mu / (N * N);
}

//==============================================================================
// Shape of the potential

//! V(r) = (hbar^2 / 2 mu b^2) [alpha(alpha-1) y^2 - A y], y = e^{-r/b}/(1 - e^{-r/b}).
inline double potential_value(const PotentialSpec &spec, double r) {
  if (!(r > 0.0))
    throw std::domain_error("potential_value: r must be positive");
  const double y = 1.0 / std::expm1(r / spec.b);
  const double c = spec.alpha * (spec.alpha - 1.0);
  return spectroscopic_energy_scale(spec) * (c * y * y - spec.A * y);
}

struct PotentialMinimum {
  double r0{};
  double v_min{}; //!< V(r0) evaluated through potential_value
};

/*!
  @brief Interior minimum r0 = b ln(1 + 2 alpha(alpha-1)/A).

  A stationary point with y > 0 needs alpha(alpha-1) and A of equal sign; it
  is a minimum only when both are positive (d^2V/dy^2 = 2 alpha(alpha-1)).
*/
inline std::optional<PotentialMinimum> potential_minimum(
    const PotentialSpec &spec) {
  validate_spec(spec);
  const double c = spec.alpha * (spec.alpha - 1.0);
  if (!(c > 0.0) || !(spec.A > 0.0))
    return std::nullopt;
  const double r0 = spec.b * std::log1p(2.0 * c / spec.A);
  return PotentialMinimum{r0, potential_value(spec, r0)};
}

struct CurvatureReport {
  double r0{};
  double finite_difference{}; //!< d^2V/dr^2 at r0, Richardson-extrapolated
  double printed_closed_form{}; //!< A^2 [A + 2c]^2 / (8 b^4 c^3), c = alpha(alpha-1)
  double ratio{};               //!< finite_difference / printed_closed_form
};

//! Force constant at the minimum by central differences (step b*1e-4 and
//! half of it, Richardson-combined). Throws SpecError if no minimum exists.
inline CurvatureReport potential_curvature(const PotentialSpec &spec,
                                           double rel_step = 1e-4) {
  const auto m = potential_minimum(spec);
  if (!m)
    throw SpecError("potential has no interior minimum");
  const double r0 = m->r0;
  auto d2 = [&](double h) {
    return (potential_value(spec, r0 + h) - 2.0 * m->v_min +
            potential_value(spec, r0 - h)) /
           (h * h);
  };
  double h = spec.b * rel_step;
  // keep r0 - h inside the domain
  while (h >= r0)
    h *= 0.5;
  const double coarse = d2(h);
  const double fine = d2(0.5 * h);
  CurvatureReport out;
  out.r0 = r0;
  out.finite_difference = (4.0 * fine - coarse) / 3.0;
  const double c = spec.alpha * (spec.alpha - 1.0);
  const double b4 = std::pow(spec.b, 4);
  out.printed_closed_form = spec.A * spec.A * (spec.A + 2.0 * c) *
                            (spec.A + 2.0 * c) / (8.0 * b4 * c * c * c);
  out.ratio = out.finite_difference / out.printed_closed_form;
  return out;
}

//! Value printed alongside r0 for the well depth, -A^2 / (4 mu b^2 alpha(alpha-1))
//! in atomic units (the same expression carried through the active energy
//! scale otherwise). Kept only for side-by-side reporting against v_min.
inline double printed_minimum_value(const PotentialSpec &spec) {
  const double c = spec.alpha * (spec.alpha - 1.0);
  return -spectroscopic_energy_scale(spec) * spec.A * spec.A / (2.0 * c);
}

} // namespace mrnu
