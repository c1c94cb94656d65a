#pragma once

// The `mrnu` command line. run_cli() is the whole program; main() only
// forwards argv and the standard streams, which keeps every subcommand
// testable in-process.

#include "mrnu/config.hpp"
#include "mrnu/core_model.hpp"
#include "mrnu/oracle.hpp"
#include "mrnu/report.hpp"
#include "mrnu/spectrum.hpp"
#include "mrnu/units_molecules.hpp"
#include "mrnu/wavefunction.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace mrnu {

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitNumerical = 3 };

namespace cli_detail {

struct GlobalOptions {
  std::string format{"csv"};
  std::optional<std::string> config_path;
  std::optional<std::string> units;
  std::optional<std::string> molecules_path;
};

struct SpecOptions {
  std::optional<double> A, alpha, inv_b, mu, column;
  std::optional<std::string> molecule;
};

struct StateOptions {
  std::optional<std::string> label;
  std::optional<int> n, l;
};

inline void add_spec_options(CLI::App *cmd, SpecOptions &o) {
  cmd->add_option("--A", o.A, "Coupling A (dimensionless)");
  cmd->add_option("--alpha", o.alpha, "Shape parameter alpha");
  cmd->add_option("--inv-b", o.inv_b, "Inverse screening length 1/b");
  cmd->add_option("--mu", o.mu, "Reduced mass (amu in ev_angstrom units)");
  cmd->add_option("--molecule", o.molecule, "Molecule from the database");
  cmd->add_option("--column", o.column, "Tabulated 1/b column value");
}

inline void add_state_options(CLI::App *cmd, StateOptions &o) {
  cmd->add_option("--state", o.label, "State label such as 2p or 4f");
  cmd->add_option("--n", o.n, "Radial quantum number");
  cmd->add_option("--l", o.l, "Orbital quantum number");
}

inline MoleculeDatabase load_molecules(const GlobalOptions &g) {
  if (!g.molecules_path)
    return MoleculeDatabase::builtin();
  std::ifstream in(*g.molecules_path);
  if (!in)
    throw SpecError("cannot open molecule file '" + *g.molecules_path + "'");
  return molecules_from_config(in);
}

inline PotentialSpec build_spec(const GlobalOptions &g, const SpecOptions &o) {
  if (o.molecule) {
    if (!o.column || !o.alpha)
      throw SpecError("--molecule needs --column and --alpha");
    if (o.A || o.inv_b || o.mu)
      throw SpecError("--molecule fixes A, 1/b and mu; do not pass them");
    if (g.units && parse_units(*g.units) != UnitSystem::Kind::Spectroscopic)
      throw SpecError("--molecule works in ev_angstrom units");
    return table_spec(load_molecules(g), *o.molecule, *o.column, *o.alpha);
  }
  if (o.column)
    throw SpecError("--column needs --molecule");

  KeyValues kv;
  if (g.config_path) {
    std::ifstream in(*g.config_path);
    if (!in)
      throw SpecError("cannot open config file '" + *g.config_path + "'");
    kv = parse_key_values(in);
  }
  auto put = [&](const char *key, const std::optional<double> &v) {
    if (v)
      kv[key] = format_round_trip(*v);
  };
  put("A", o.A);
  put("alpha", o.alpha);
  put("inv_b", o.inv_b);
  if (o.mu) {
    kv.erase("mu_amu");
    put("mu", o.mu);
  }
  if (g.units)
    kv["units"] = *g.units;
  return spec_from_key_values(kv);
}

inline QuantumNumbers build_state(const StateOptions &o) {
  if (o.label) {
    if (o.n || o.l)
      throw SpecError("give either --state or --n/--l, not both");
    return state_label_to_quantum_numbers(*o.label);
  }
  if (!o.n || !o.l)
    throw SpecError("a state is required: --state LABEL or --n N --l L");
  const QuantumNumbers q{*o.n, *o.l};
  validate(q);
  return q;
}

inline void write_metadata(std::ostream &out) {
  out << "# mrnu " << kVersion << '\n';
}

inline void write_rows(std::ostream &out, const GlobalOptions &g,
                       const std::vector<ReportRow> &rows) {
  if (g.format == "json") {
    nlohmann::json j;
    j["version"] = kVersion;
    auto &arr = j["rows"] = nlohmann::json::array();
    for (const auto &r : rows)
      arr.push_back(to_json(r));
    out << j.dump(2) << '\n';
    return;
  }
  write_metadata(out);
  out << kReportCsvHeader << '\n';
  for (const auto &r : rows)
    write_csv_row(out, r);
}

//==============================================================================
// Subcommands

inline int cmd_energy(std::ostream &out, const GlobalOptions &g,
                      const SpecOptions &so, const StateOptions &st) {
  const auto spec = build_spec(g, so);
  const auto q = build_state(st);
  auto row = closed_form_row(spec, q);
  if (so.column)
    row.column_inv_b = so.column;
  if (so.molecule)
    row.species = so.molecule;
  write_rows(out, g, {row});
  return kExitOk;
}

inline int cmd_table(std::ostream &out, const GlobalOptions &g, int which) {
  const auto rep = reproduce_table(which, load_molecules(g));
  if (g.format == "json")
    out << table_json(rep).dump(2) << '\n';
  else
    write_table_csv(out, rep);
  return kExitOk;
}

struct WavefunctionOptions {
  int samples{4000};
  std::optional<double> r_max;
};

inline int cmd_wavefunction(std::ostream &out, const GlobalOptions &g,
                            const SpecOptions &so, const StateOptions &st,
                            const WavefunctionOptions &wo) {
  const auto spec = build_spec(g, so);
  const auto q = build_state(st);
  if (wo.samples < 2)
    throw SpecError("--samples must be >= 2");
  const double r_max = wo.r_max.value_or(default_r_cut(spec));
  if (!(r_max > 0.0))
    throw SpecError("--rmax must be positive");

  const auto w = make_wavefunction(spec, q);
  const bool json = g.format == "json";
  if (!w) {
    if (json) {
      out << nlohmann::json{{"version", kVersion},
                            {"state", state_label(q)},
                            {"flag", "not-bound"}}
                 .dump(2)
          << '\n';
    } else {
      write_metadata(out);
      out << "# state=" << state_label(q) << " flag=not-bound\n";
    }
    return kExitOk;
  }

  const auto pts = sample(*w, r_max, wo.samples);
  const int nodes = count_nodes(*w, r_max);
  if (json) {
    nlohmann::json j;
    j["version"] = kVersion;
    j["state"] = state_label(q);
    j["n"] = q.n;
    j["l"] = q.l;
    j["epsilon"] = printed_value(w->bound.epsilon);
    j["Lambda"] = printed_value(w->bound.lambda_cap);
    j["norm"] = printed_value(w->norm);
    j["nodes"] = nodes;
    auto &r = j["r"] = nlohmann::json::array();
    auto &R = j["R"] = nlohmann::json::array();
    auto &R2 = j["R2"] = nlohmann::json::array();
    for (const auto &[x, y] : pts) {
      r.push_back(printed_value(x));
      R.push_back(printed_value(y));
      R2.push_back(printed_value(y * y));
    }
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  write_metadata(out);
  out << "# state=" << state_label(q) << " n=" << q.n << " l=" << q.l
      << '\n'
      << "# epsilon=" << format_number(w->bound.epsilon) << '\n'
      << "# Lambda=" << format_number(w->bound.lambda_cap) << '\n'
      << "# norm=" << format_number(w->norm) << '\n'
      << "# nodes=" << nodes << '\n'
      << "r,R,R2\n";
  for (const auto &[x, y] : pts)
    out << format_number(x) << ',' << format_number(y) << ','
        << format_number(y * y) << '\n';
  return kExitOk;
}

struct CompareOptions {
  std::optional<int> grid;
  std::optional<double> r_max;
  std::optional<int> refine;
  std::optional<double> max_grid_error;
};

inline int cmd_compare(std::ostream &out, const GlobalOptions &g,
                       const SpecOptions &so, const StateOptions &st,
                       const CompareOptions &co) {
  const auto spec = build_spec(g, so);
  const auto q = build_state(st);
  OracleConfig cfg;
  if (co.grid)
    cfg.grid_points = *co.grid;
  if (co.refine)
    cfg.refine_levels = *co.refine;
  cfg.r_max = co.r_max;
  cfg.max_grid_error = co.max_grid_error;
  validate(cfg);

  auto row = closed_form_row(spec, q);
  if (so.column)
    row.column_inv_b = so.column;
  if (so.molecule)
    row.species = so.molecule;

  double grid_error = 0.0;
  auto run = [&](CentrifugalMode mode) -> std::optional<double> {
    cfg.centrifugal_mode = mode;
    try {
      const auto ev = solve_state(spec, q, cfg);
      grid_error = std::max(grid_error, ev.grid_error_estimate);
      return ev.energy;
    } catch (const NotBoundError &) {
      return std::nullopt;
    }
  };
  row.e_oracle_approx = run(CentrifugalMode::Approximated);
  row.e_oracle_exact = run(CentrifugalMode::Exact);
  if (row.e_oracle_approx || row.e_oracle_exact)
    row.oracle_grid_error = grid_error;
  if (row.e_oracle_approx && row.e_closed_form)
    row.oracle_approx_minus_closed = *row.e_oracle_approx - *row.e_closed_form;
  if (row.e_oracle_exact && row.e_oracle_approx)
    row.oracle_exact_minus_approx = *row.e_oracle_exact - *row.e_oracle_approx;
  write_rows(out, g, {row});
  return kExitOk;
}

struct PotentialOptions {
  int samples{1000};
  std::optional<double> r_max;
};

inline int cmd_potential(std::ostream &out, const GlobalOptions &g,
                         const SpecOptions &so, const PotentialOptions &po) {
  const auto spec = build_spec(g, so);
  if (po.samples < 1)
    throw SpecError("--samples must be >= 1");
  const double r_max = po.r_max.value_or(10.0 * spec.b);
  if (!(r_max > 0.0))
    throw SpecError("--rmax must be positive");

  std::vector<std::pair<double, double>> pts;
  pts.reserve(static_cast<std::size_t>(po.samples));
  for (int i = 1; i <= po.samples; ++i) {
    const double r = r_max * i / po.samples;
    pts.emplace_back(r, potential_value(spec, r));
  }
  const auto m = potential_minimum(spec);
  std::optional<CurvatureReport> curv;
  if (m)
    curv = potential_curvature(spec);

  if (g.format == "json") {
    nlohmann::json j;
    j["version"] = kVersion;
    auto &r = j["r"] = nlohmann::json::array();
    auto &V = j["V"] = nlohmann::json::array();
    for (const auto &[x, v] : pts) {
      r.push_back(printed_value(x));
      V.push_back(printed_value(v));
    }
    nlohmann::json s;
    if (m) {
      const double printed = printed_minimum_value(spec);
      s["r0"] = printed_value(m->r0);
      s["v_min"] = printed_value(m->v_min);
      s["printed_v_min"] = printed_value(printed);
      s["v_min_ratio"] = printed_value(m->v_min / printed);
      s["curvature_fd"] = printed_value(curv->finite_difference);
      s["printed_curvature"] = printed_value(curv->printed_closed_form);
      s["curvature_ratio"] = printed_value(curv->ratio);
    } else {
      s["minimum"] = "no interior minimum";
    }
    j["summary"] = s;
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  write_metadata(out);
  out << "r,V\n";
  for (const auto &[x, v] : pts)
    out << format_number(x) << ',' << format_number(v) << '\n';
  if (!m) {
    out << "# summary: no interior minimum\n";
    return kExitOk;
  }
  const double printed = printed_minimum_value(spec);
  out << "# summary: r0=" << format_number(m->r0) << '\n'
      << "# summary: v_min=" << format_number(m->v_min) << '\n'
      << "# summary: printed_v_min=" << format_number(printed)
      << " ratio=" << format_number(m->v_min / printed) << '\n'
      << "# summary: curvature_fd=" << format_number(curv->finite_difference)
      << '\n'
      << "# summary: printed_curvature="
      << format_number(curv->printed_closed_form)
      << " ratio=" << format_number(curv->ratio) << '\n';
  return kExitOk;
}

inline int cmd_critical_coupling(std::ostream &out, const GlobalOptions &g,
                                 double alpha, const StateOptions &st) {
  const auto q = build_state(st);
  const double ac = critical_coupling(alpha, q);
  const double lam = compute_lambda(alpha, q.l);
  if (g.format == "json") {
    out << nlohmann::json{{"version", kVersion},
                          {"state", state_label(q)},
                          {"n", q.n},
                          {"l", q.l},
                          {"alpha", printed_value(alpha)},
                          {"Lambda", printed_value(lam)},
                          {"A_c", printed_value(ac)}}
               .dump(2)
        << '\n';
    return kExitOk;
  }
  write_metadata(out);
  out << "state,n,l,alpha,Lambda,A_c\n"
      << state_label(q) << ',' << q.n << ',' << q.l << ','
      << format_number(alpha) << ',' << format_number(lam) << ','
      << format_number(ac) << '\n';
  return kExitOk;
}

} // namespace cli_detail

//==============================================================================
/*!
  @brief Parses argv and runs one subcommand.

  Returns 0 on success (a level that is not bound is a successful result),
  2 on bad arguments or an invalid problem, 3 when a numerical routine fails.
*/
inline int run_cli(int argc, const char *const *argv, std::ostream &out,
                   std::ostream &err) {
  using namespace cli_detail;
  CLI::App app{"Bound states of the Manning-Rosen potential", "mrnu"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--config", g.config_path, "key = value problem file");
  app.add_option("--units", g.units, "atomic or ev_angstrom")
      ->check(CLI::IsMember({"atomic", "ev_angstrom"}));
  app.add_option("--molecules", g.molecules_path,
                 "name = mass_amu file merged over the built-in molecules");

  SpecOptions so;
  StateOptions st;

  auto *energy_cmd = app.add_subcommand("energy", "Closed-form level energy");
  add_spec_options(energy_cmd, so);
  add_state_options(energy_cmd, st);

  int which = 0;
  auto *table_cmd =
      app.add_subcommand("table", "Reproduce one of the reference tables");
  table_cmd->add_option("--which", which, "Table number")
      ->required()
      ->check(CLI::Range(1, 3));

  WavefunctionOptions wo;
  auto *wf_cmd =
      app.add_subcommand("wavefunction", "Sample the normalized radial function");
  add_spec_options(wf_cmd, so);
  add_state_options(wf_cmd, st);
  wf_cmd->add_option("--samples", wo.samples, "Number of points, ends included");
  wf_cmd->add_option("--rmax", wo.r_max, "Upper end of the grid (default 60 b)");

  CompareOptions co;
  auto *cmp_cmd = app.add_subcommand(
      "compare", "Closed form against the finite-difference solver");
  add_spec_options(cmp_cmd, so);
  add_state_options(cmp_cmd, st);
  cmp_cmd->add_option("--grid", co.grid, "Intervals on the finest grid");
  cmp_cmd->add_option("--rmax", co.r_max, "Box size (default 60 b)");
  cmp_cmd->add_option("--refine", co.refine, "Grid levels in the ladder");
  cmp_cmd->add_option("--max-grid-error", co.max_grid_error,
                      "Fail when the grid error estimate exceeds this");

  PotentialOptions po;
  auto *pot_cmd = app.add_subcommand("potential", "Tabulate V(r)");
  add_spec_options(pot_cmd, so);
  pot_cmd->add_option("--samples", po.samples, "Number of points");
  pot_cmd->add_option("--rmax", po.r_max, "Upper end (default 10 b)");

  double cc_alpha = 0.0;
  auto *cc_cmd = app.add_subcommand("critical-coupling",
                                    "Coupling at which a level becomes bound");
  cc_cmd->add_option("--alpha", cc_alpha, "Shape parameter alpha")->required();
  add_state_options(cc_cmd, st);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*energy_cmd)
      return cmd_energy(out, g, so, st);
    if (*table_cmd)
      return cmd_table(out, g, which);
    if (*wf_cmd)
      return cmd_wavefunction(out, g, so, st, wo);
    if (*cmp_cmd)
      return cmd_compare(out, g, so, st, co);
    if (*pot_cmd)
      return cmd_potential(out, g, so, po);
    if (*cc_cmd)
      return cmd_critical_coupling(out, g, cc_alpha, st);
  } catch (const SpecError &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError &e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const NotBoundError &e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::domain_error &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

} // namespace mrnu
