// Prints the lowest levels of a Manning-Rosen well, checks one of them
// against the finite-difference solver, and writes a short profile of R(r).

#include "mrnu/mrnu.hpp"

#include <cstdio>

int main() {
  using namespace mrnu;

  const auto spec = atomic_table_spec(0.025, 0.75); // A = 80, b = 40, mu = 1

  std::printf("%-5s %-4s %-4s %-20s %-12s\n", "state", "n", "l", "E", "A_c");
  for (int l = 0; l <= 3; ++l)
    for (int n = 0; n <= 2; ++n) {
      const QuantumNumbers q{n, l};
      const auto r = energy(spec, q);
      std::printf("%-5s %-4d %-4d %-20s %-12s\n", state_label(q).c_str(), n, l,
                  r.is_bound() ? format_number(r.bound->energy).c_str()
                               : "not bound",
                  format_number(critical_coupling(spec.alpha, q)).c_str());
    }

  OracleConfig cfg;
  cfg.centrifugal_mode = CentrifugalMode::Exact;
  const QuantumNumbers q2p{0, 1};
  const auto exact = solve_state(spec, q2p, cfg);
  std::printf("\n2p closed form %s, exact centrifugal term %s (grid error %.1e)\n",
              format_number(energy(spec, q2p).bound->energy).c_str(),
              format_number(exact.energy).c_str(), exact.grid_error_estimate);

  if (const auto w = make_wavefunction(spec, {1, 1})) {
    std::printf("\n3p: eps=%g Lambda=%g N=%g nodes=%d norm integral=%.12f\n",
                w->bound.epsilon, w->bound.lambda_cap, w->norm, count_nodes(*w),
                normalization_integral(*w).value);
    for (const auto &[r, v] : sample(*w, 200.0, 11))
      std::printf("  r=%-6g R=%s\n", r, format_number(v).c_str());
  }
  return 0;
}
