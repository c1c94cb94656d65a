#pragma once

// Normalized radial wavefunctions
//   R_nl(r) = N z^eps (1-z)^(1+Lambda) P_n^(2eps, 2Lambda+1)(1 - 2z),  z = e^{-r/b}
// plus quadrature and node-count checks on them.

#include "mrnu/core_model.hpp"
#include "mrnu/normalization.hpp"
#include "mrnu/quadrature.hpp"
#include "mrnu/specialfns.hpp"
#include "mrnu/spectrum.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mrnu {

struct RadialWavefunction {
  enum class Form { General, Hulthen };

  PotentialSpec spec{};
  QuantumNumbers state{};
  BoundState bound{};
  double norm{}; //!< N_nl; 1.0 gives the unnormalized profile
  Form form{Form::General};

  //! Same wavefunction with N forced to 1.
  RadialWavefunction unnormalized() const {
    auto w = *this;
    w.norm = 1.0;
    return w;
  }

  JacobiParams jacobi_params() const {
    return {2.0 * bound.epsilon, 2.0 * bound.lambda_cap + 1.0, state.n};
  }
};

//! Assembles R_nl for a bound level; std::nullopt when (n, l) is not bound.
inline std::optional<RadialWavefunction> make_wavefunction(
    const PotentialSpec &spec, QuantumNumbers q) {
  const auto res = energy(spec, q);
  if (!res.is_bound())
    return std::nullopt;
  return RadialWavefunction{spec, q, *res.bound, res.bound->norm,
                            RadialWavefunction::Form::General};
}

/*!
  @brief Hulthen-limit wavefunction (alpha in {0, 1}):
    R = N e^{-delta eps r} (1 - e^{-delta r})^{l+1} P_n^(2eps, 2l+1)(1 - 2 e^{-delta r})
  with delta = 1/b and eps = (A - N^2)/(2N).
*/
inline std::optional<RadialWavefunction> hulthen_wavefunction(
    const PotentialSpec &spec, QuantumNumbers q) {
  validate_spec(spec);
  if (spec.alpha != 0.0 && spec.alpha != 1.0)
    throw SpecError("hulthen_wavefunction requires alpha = 0 or alpha = 1");
  const double eps = hulthen_epsilon(spec.A, q);
  if (!(eps > 0.0))
    return std::nullopt;
  BoundState bs;
  bs.epsilon = eps;
  bs.lambda_cap = q.l;
  bs.a_param = 2.0 * q.l + 1.0;
  bs.energy = hulthen_energy(spec, q);
  bs.norm = norm_constant(q.n, eps, bs.lambda_cap, spec.b);
  return RadialWavefunction{spec, q, bs, bs.norm,
                            RadialWavefunction::Form::Hulthen};
}

//! R(r). Exactly 0 at r = 0; the exponential factors are combined in log
//! space so large r underflows cleanly to 0.
inline double evaluate(const RadialWavefunction &w, double r,
                       JacobiRoute route = JacobiRoute::Recurrence) {
  if (r < 0.0 || std::isnan(r))
    throw std::domain_error("wavefunction: r must be >= 0");
  if (r == 0.0)
    return 0.0;
  const double x = r / w.spec.b;
  const double z = std::exp(-x);
  const double poly = jacobi(w.jacobi_params(), 1.0 - 2.0 * z, route);
  if (poly == 0.0)
    return 0.0;

  if (w.form == RadialWavefunction::Form::Hulthen) {
    const double delta = 1.0 / w.spec.b;
    return w.norm * std::exp(-delta * w.bound.epsilon * r) *
           std::pow(1.0 - std::exp(-delta * r), w.state.l + 1) * poly;
  }

  const double log_mag = std::log(w.norm) - w.bound.epsilon * x +
                         (1.0 + w.bound.lambda_cap) * std::log(-std::expm1(-x)) +
                         std::log(std::abs(poly));
  return std::copysign(std::exp(log_mag), poly);
}

//! Default outer radius for quadrature, node scans and exports.
inline double default_r_cut(const PotentialSpec &spec) { return 60.0 * spec.b; }

//! (r, R(r)) at `count` equally spaced points on [0, r_max], both ends included.
inline std::vector<std::pair<double, double>> sample(
    const RadialWavefunction &w, double r_max, int count) {
  if (count < 2)
    throw SpecError("sample: need at least 2 points");
  if (!(r_max > 0.0))
    throw SpecError("sample: r_max must be positive");
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double r = r_max * i / (count - 1);
    out.emplace_back(r, evaluate(w, r));
  }
  return out;
}

struct QuadratureResult {
  double value{};
  double error_estimate{};
  double r_cut{};
  double tail_fraction{}; //!< share of the total carried by the outermost panel
};

/*!
  @brief int_0^r_cut |R(r)|^2 dr.

  The range is split into geometric panels [r_cut 2^-(k+1), r_cut 2^-k]
  down to a panel of width ~b/64 at the origin, and each is integrated by
  adaptive Gauss-Kronrod. Throws NumericalError if the summed error
  estimate exceeds `tol`.
*/
inline QuadratureResult normalization_integral(const RadialWavefunction &w,
                                               std::optional<double> r_cut = {},
                                               double tol = 1e-10) {
  const double rc = r_cut.value_or(default_r_cut(w.spec));
  if (!(rc > 0.0))
    throw SpecError("normalization_integral: r_cut must be positive");

  auto f = [&](double r) {
    const double v = evaluate(w, r);
    return v * v;
  };

  std::vector<double> edges{rc};
  const double innermost = w.spec.b / 64.0;
  while (edges.back() > innermost && edges.size() < 60)
    edges.push_back(0.5 * edges.back());
  edges.push_back(0.0);

  const double panel_tol = 1e-3 * tol / static_cast<double>(edges.size());
  QuadratureResult out;
  out.r_cut = rc;
  double outer_panel = 0.0;
  for (std::size_t i = edges.size() - 1; i > 0; --i) {
    const auto piece = integrate_gk15(f, edges[i], edges[i - 1], panel_tol);
    out.value += piece.value;
    out.error_estimate += piece.abs_error;
    if (i == 1)
      outer_panel = piece.value;
  }
  out.tail_fraction = out.value > 0.0 ? outer_panel / out.value : 0.0;
  if (!(out.error_estimate <= tol))
    throw NumericalError("normalization quadrature did not converge: achieved "
                         "error estimate " +
                         std::to_string(out.error_estimate));
  return out;
}

//! Strict sign changes of R on `grid_points` interior points of (0, r_cut).
inline int count_nodes(const RadialWavefunction &w,
                       std::optional<double> r_cut = {},
                       int grid_points = 10000) {
  const double rc = r_cut.value_or(default_r_cut(w.spec));
  int nodes = 0;
  double prev = 0.0;
  for (int i = 1; i <= grid_points; ++i) {
    const double v = evaluate(w, rc * i / (grid_points + 1.0));
    if (v == 0.0)
      continue;
    if (prev != 0.0 && (v > 0.0) != (prev > 0.0))
      ++nodes;
    prev = v;
  }
  return nodes;
}

} // namespace mrnu
