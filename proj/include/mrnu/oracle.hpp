#pragma once

// Independent numerical check of the closed-form spectrum: second-order
// finite differences for -K d^2/dr^2 + V_eff(r) on a uniform grid, Dirichlet
// at r = 0 and r_max, symmetric tridiagonal eigenvalues by Sturm bisection,
// Richardson extrapolation over a ladder of halved grid spacings.

#include "mrnu/core_model.hpp"
#include "mrnu/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace mrnu {

enum class CentrifugalMode {
  Exact,       //!< l(l+1)/r^2
  Approximated //!< l(l+1) e^{-r/b} / (b^2 (1 - e^{-r/b})^2)
};

struct OracleConfig {
  std::optional<double> r_max{}; //!< defaults to 60 b
  int grid_points{20000};        //!< intervals on the finest grid
  CentrifugalMode centrifugal_mode{CentrifugalMode::Exact};
  int refine_levels{3};          //!< grids N, N/2, ..., N/2^(levels-1)
  double eig_tol{1e-12};         //!< bisection width on the algebraic problem
  int max_states{8};             //!< lowest states returned per l
  std::optional<double> max_grid_error{}; //!< reject states above this estimate
};

inline void validate(const OracleConfig &c) {
  if (c.grid_points < 100)
    throw SpecError("oracle: grid_points must be >= 100");
  if (c.r_max && !(*c.r_max > 0.0))
    throw SpecError("oracle: r_max must be positive");
  if (c.refine_levels < 1)
    throw SpecError("oracle: refine_levels must be >= 1");
  if (c.refine_levels > 1 && c.grid_points % (1 << (c.refine_levels - 1)) != 0)
    throw SpecError("oracle: grid_points must be divisible by 2^(refine_levels-1)");
  if (!(c.eig_tol > 0.0))
    throw SpecError("oracle: eig_tol must be positive");
  if (c.max_states < 1)
    throw SpecError("oracle: max_states must be >= 1");
}

struct OracleEigenvalue {
  QuantumNumbers state{};
  double energy{};              //!< Richardson-extrapolated
  double grid_error_estimate{}; //!< |last two entries of the finest row|
  std::vector<double> ladder{}; //!< raw eigenvalues, coarsest grid first
};

//==============================================================================
namespace detail {

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off; // off[i] couples i and i+1
};

// Number of eigenvalues strictly below x.
inline int sturm_count(const Tridiagonal &t, const std::vector<double> &off2,
                       double x, double pivmin) {
  int count = 0;
  double q = t.diag[0] - x;
  if (std::abs(q) < pivmin)
    q = -pivmin;
  if (q < 0.0)
    ++count;
  for (std::size_t i = 1; i < t.diag.size(); ++i) {
    q = t.diag[i] - x - off2[i - 1] / q;
    if (std::abs(q) < pivmin)
      q = -pivmin;
    if (q < 0.0)
      ++count;
  }
  return count;
}

struct EigenBracket {
  double lower;
  double upper;
};

inline EigenBracket gershgorin(const Tridiagonal &t) {
  double lo = std::numeric_limits<double>::max();
  double hi = std::numeric_limits<double>::lowest();
  const std::size_t n = t.diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0)
      r += std::abs(t.off[i - 1]);
    if (i + 1 < n)
      r += std::abs(t.off[i]);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  return {lo, hi};
}

// Lowest `k` eigenvalues below `ceiling`, ascending.
inline std::vector<double> lowest_eigenvalues(const Tridiagonal &t, int k,
                                              double ceiling, double tol) {
  std::vector<double> off2(t.off.size());
  double norm = 0.0;
  for (std::size_t i = 0; i < t.off.size(); ++i) {
    off2[i] = t.off[i] * t.off[i];
    norm = std::max(norm, std::abs(t.off[i]));
  }
  for (double d : t.diag)
    norm = std::max(norm, std::abs(d));
  const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, norm);

  const auto g = gershgorin(t);
  const int below = sturm_count(t, off2, ceiling, pivmin);
  const int m = std::min(k, below);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    double lo = g.lower, hi = ceiling;
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi)
        break;
      if (sturm_count(t, off2, mid, pivmin) > j)
        hi = mid;
      else
        lo = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

// Solve (T - shift) x = rhs by tridiagonal LU with partial pivoting.
inline std::vector<double> shifted_solve(const Tridiagonal &t, double shift,
                                         std::vector<double> rhs) {
  const std::size_t n = t.diag.size();
  std::vector<double> d(n), du(n, 0.0), dl(n, 0.0), du2(n, 0.0);
  std::vector<char> swapped(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    d[i] = t.diag[i] - shift;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    du[i] = t.off[i];
    dl[i] = t.off[i];
  }
  const double tiny = std::numeric_limits<double>::epsilon() *
                      std::max(1.0, std::abs(shift));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0)
        d[i] = tiny;
      const double f = dl[i] / d[i];
      dl[i] = f;
      d[i + 1] -= f * du[i];
    } else {
      const double f = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = f;
      const double tmp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = tmp - f * d[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -f * du[i + 1];
      }
      swapped[i] = 1;
    }
  }
  if (d[n - 1] == 0.0)
    d[n - 1] = tiny;
  // L y = P b
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (swapped[i])
      std::swap(rhs[i], rhs[i + 1]);
    rhs[i + 1] -= dl[i] * rhs[i];
  }
  // U x = y
  rhs[n - 1] /= d[n - 1];
  if (n > 1)
    rhs[n - 2] = (rhs[n - 2] - du[n - 2] * rhs[n - 1]) / d[n - 2];
  for (std::size_t i = n - 2; i-- > 0;)
    rhs[i] = (rhs[i] - du[i] * rhs[i + 1] - du2[i] * rhs[i + 2]) / d[i];
  return rhs;
}

inline std::vector<double> inverse_iteration(const Tridiagonal &t,
                                             double eigenvalue) {
  std::vector<double> v(t.diag.size(), 1.0);
  for (int it = 0; it < 3; ++it) {
    v = shifted_solve(t, eigenvalue, std::move(v));
    double m = 0.0;
    for (double x : v)
      m = std::max(m, std::abs(x));
    for (double &x : v)
      x /= m;
  }
  return v;
}

// Sign changes, ignoring components below 1e-10 of the peak (the
// exponentially small tail carries only rounding noise).
inline int count_sign_changes(const std::vector<double> &v) {
  double peak = 0.0;
  for (double x : v)
    peak = std::max(peak, std::abs(x));
  const double floor = 1e-10 * peak;
  int changes = 0;
  double prev = 0.0;
  for (double x : v) {
    if (std::abs(x) <= floor)
      continue;
    if (prev != 0.0 && (x > 0.0) != (prev > 0.0))
      ++changes;
    prev = x;
  }
  return changes;
}

template <typename Veff>
Tridiagonal build_hamiltonian(Veff &&veff, double kinetic, double r_max,
                              int intervals) {
  const double h = r_max / intervals;
  const auto n = static_cast<std::size_t>(intervals - 1);
  Tridiagonal t;
  t.diag.resize(n);
  t.off.assign(n > 0 ? n - 1 : 0, -kinetic / (h * h));
  for (std::size_t i = 0; i < n; ++i) {
    const double r = h * static_cast<double>(i + 1);
    t.diag[i] = 2.0 * kinetic / (h * h) + veff(r);
  }
  return t;
}

// Richardson table for errors in powers of h^2; returns (value, estimate).
inline std::pair<double, double> richardson(const std::vector<double> &e) {
  std::vector<double> row = e;
  double prev_col_last = e.back();
  for (std::size_t k = 1; k < e.size(); ++k) {
    const double f = std::pow(4.0, static_cast<double>(k));
    prev_col_last = row.back();
    std::vector<double> next(row.size() - 1);
    for (std::size_t i = 0; i + 1 < row.size(); ++i)
      next[i] = row[i + 1] + (row[i + 1] - row[i]) / (f - 1.0);
    row = std::move(next);
  }
  return {row.back(), std::abs(row.back() - prev_col_last)};
}

} // namespace detail

/*!
  @brief Bound levels of -K d^2/dr^2 + veff(r) for a fixed l.

  `veff` must already contain the centrifugal term. Eigenvalue index j on
  every grid is matched to radial quantum number n = j; the finest-grid
  eigenvector is checked to have exactly j interior sign changes. A state is
  returned only if it is negative on every grid of the ladder.
*/
template <typename Veff>
std::vector<OracleEigenvalue> solve_radial(Veff &&veff, double kinetic, int l,
                                           double r_max,
                                           const OracleConfig &config) {
  validate(config);
  if (!(r_max > 0.0))
    throw SpecError("oracle: r_max must be positive");

  std::vector<int> ladder;
  for (int k = config.refine_levels - 1; k >= 0; --k)
    ladder.push_back(config.grid_points >> k);
  // one level has nothing to compare with; add a half grid for the estimate
  if (config.refine_levels == 1)
    ladder.insert(ladder.begin(), config.grid_points / 2);

  std::vector<std::vector<double>> levels;
  detail::Tridiagonal finest;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    auto t = detail::build_hamiltonian(veff, kinetic, r_max, ladder[i]);
    levels.push_back(
        detail::lowest_eigenvalues(t, config.max_states, 0.0, config.eig_tol));
    if (i + 1 == ladder.size())
      finest = std::move(t);
  }
  std::size_t common = levels.front().size();
  for (const auto &lv : levels)
    common = std::min(common, lv.size());

  std::vector<OracleEigenvalue> out;
  for (std::size_t j = 0; j < common; ++j) {
    OracleEigenvalue ev;
    ev.state = {static_cast<int>(j), l};
    for (const auto &lv : levels)
      ev.ladder.push_back(lv[j]);
    if (config.refine_levels == 1) {
      ev.energy = ev.ladder.back();
      ev.grid_error_estimate = std::abs(ev.ladder[1] - ev.ladder[0]) / 3.0;
    } else {
      const auto [val, est] = detail::richardson(ev.ladder);
      ev.energy = val;
      ev.grid_error_estimate = est;
    }
    const auto vec = detail::inverse_iteration(finest, ev.ladder.back());
    const int nodes = detail::count_sign_changes(vec);
    if (nodes != static_cast<int>(j))
      throw NumericalError("oracle: eigenvector " + std::to_string(j) +
                           " has " + std::to_string(nodes) +
                           " sign changes; grid too coarse");
    out.push_back(std::move(ev));
  }
  return out;
}

//! Effective potential of the radial problem, with either centrifugal form.
inline auto effective_potential(const PotentialSpec &spec, int l,
                                CentrifugalMode mode) {
  const double k = kinetic_coefficient(spec);
  const double ll = l * (l + 1.0);
  return [spec, k, ll, mode](double r) {
    double cent;
    if (mode == CentrifugalMode::Exact) {
      cent = ll / (r * r);
    } else {
      // e^{-x}/(1-e^{-x})^2 = 1/(4 sinh^2(x/2))
      const double s = std::sinh(0.5 * r / spec.b);
      cent = ll / (4.0 * s * s * spec.b * spec.b);
    }
    return potential_value(spec, r) + k * cent;
  };
}

//! Lowest bound levels of the Manning-Rosen radial problem for one l.
inline std::vector<OracleEigenvalue> solve(const PotentialSpec &spec, int l,
                                           const OracleConfig &config) {
  validate_spec(spec);
  if (l < 0)
    throw SpecError("l must be >= 0");
  const double r_max = config.r_max.value_or(60.0 * spec.b);
  return solve_radial(effective_potential(spec, l, config.centrifugal_mode),
                      kinetic_coefficient(spec), l, r_max, config);
}

//! The oracle level matched to (n, l) by node count.
inline OracleEigenvalue solve_state(const PotentialSpec &spec, QuantumNumbers q,
                                    OracleConfig config) {
  validate(q);
  config.max_states = std::max(config.max_states, q.n + 1);
  const auto levels = solve(spec, q.l, config);
  if (static_cast<int>(levels.size()) <= q.n)
    throw NotBoundError("oracle: state n=" + std::to_string(q.n) +
                        ", l=" + std::to_string(q.l) +
                        " is not bound on the finite-difference grid");
  const auto &ev = levels[static_cast<std::size_t>(q.n)];
  if (config.max_grid_error && ev.grid_error_estimate > *config.max_grid_error)
    throw NumericalError("oracle: not converged, grid error estimate " +
                         std::to_string(ev.grid_error_estimate));
  return ev;
}

//! E_exact - E_approx for the node-matched level.
inline double approximation_error(const PotentialSpec &spec, QuantumNumbers q,
                                  OracleConfig config) {
  config.centrifugal_mode = CentrifugalMode::Exact;
  const double exact = solve_state(spec, q, config).energy;
  config.centrifugal_mode = CentrifugalMode::Approximated;
  const double approx = solve_state(spec, q, config).energy;
  return exact - approx;
}

} // namespace mrnu
