#pragma once

// Report rows and their CSV / JSON renderings, plus the table-reproduction
// sweep shared by the CLI and the acceptance suite.

#include "mrnu/reference_tables.hpp"
#include "mrnu/spectrum.hpp"
#include "mrnu/units_molecules.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace mrnu {

inline constexpr const char *kVersion = "1.0.0";

enum class RowFlag { Ok, KnownDiscrepant, NotBound };

inline const char *to_string(RowFlag f) {
  switch (f) {
  case RowFlag::KnownDiscrepant:
    return "known-discrepant";
  case RowFlag::NotBound:
    return "not-bound";
  case RowFlag::Ok:
    break;
  }
  return "ok";
}

struct ReportRow {
  std::string state_label;
  int n{};
  int l{};
  double alpha{};
  std::optional<double> column_inv_b;
  std::optional<std::string> species;
  std::optional<double> e_closed_form;
  std::optional<double> e_paper; //!< tabulated reference energy
  std::optional<double> e_oracle_approx;
  std::optional<double> e_oracle_exact;
  std::optional<double> abs_diff_vs_paper;
  std::optional<double> rel_diff_vs_paper;
  std::optional<double> oracle_approx_minus_closed;
  std::optional<double> oracle_exact_minus_approx;
  std::optional<double> oracle_grid_error;
  RowFlag flag{RowFlag::Ok};

  //! Fills the diff columns from e_closed_form and e_paper.
  void set_reference(double e_ref) {
    e_paper = e_ref;
    if (e_closed_form) {
      abs_diff_vs_paper = std::abs(*e_closed_form - e_ref);
      rel_diff_vs_paper = *abs_diff_vs_paper / std::abs(e_ref);
    }
  }
};

//==============================================================================
// Number formatting: 15 significant digits, no locale.

inline std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 15);
  return std::string(buf, ptr);
}

//! The double that the 15-digit text denotes, so JSON carries the same payload.
inline double printed_value(double v) {
  const auto s = format_number(v);
  double out = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

namespace detail {
inline std::string opt_text(const std::optional<double> &v) {
  return v ? format_number(*v) : std::string{};
}
inline nlohmann::json opt_json(const std::optional<double> &v) {
  return v ? nlohmann::json(printed_value(*v)) : nlohmann::json(nullptr);
}
} // namespace detail

inline const char *kReportCsvHeader =
    "state,n,l,alpha,column_inv_b,species,e_closed_form,e_paper,"
    "abs_diff_vs_paper,rel_diff_vs_paper,e_oracle_approx,e_oracle_exact,"
    "oracle_approx_minus_closed,oracle_exact_minus_approx,oracle_grid_error,"
    "flag";

inline void write_csv_row(std::ostream &out, const ReportRow &r) {
  using detail::opt_text;
  out << r.state_label << ',' << r.n << ',' << r.l << ','
      << format_number(r.alpha) << ',' << opt_text(r.column_inv_b) << ','
      << r.species.value_or("") << ',' << opt_text(r.e_closed_form) << ','
      << opt_text(r.e_paper) << ',' << opt_text(r.abs_diff_vs_paper) << ','
      << opt_text(r.rel_diff_vs_paper) << ',' << opt_text(r.e_oracle_approx)
      << ',' << opt_text(r.e_oracle_exact) << ','
      << opt_text(r.oracle_approx_minus_closed) << ','
      << opt_text(r.oracle_exact_minus_approx) << ','
      << opt_text(r.oracle_grid_error) << ',' << to_string(r.flag) << '\n';
}

inline nlohmann::json to_json(const ReportRow &r) {
  using detail::opt_json;
  nlohmann::json j;
  j["state"] = r.state_label;
  j["n"] = r.n;
  j["l"] = r.l;
  j["alpha"] = printed_value(r.alpha);
  j["column_inv_b"] = opt_json(r.column_inv_b);
  j["species"] = r.species ? nlohmann::json(*r.species) : nlohmann::json(nullptr);
  j["e_closed_form"] = opt_json(r.e_closed_form);
  j["e_paper"] = opt_json(r.e_paper);
  j["abs_diff_vs_paper"] = opt_json(r.abs_diff_vs_paper);
  j["rel_diff_vs_paper"] = opt_json(r.rel_diff_vs_paper);
  j["e_oracle_approx"] = opt_json(r.e_oracle_approx);
  j["e_oracle_exact"] = opt_json(r.e_oracle_exact);
  j["oracle_approx_minus_closed"] = opt_json(r.oracle_approx_minus_closed);
  j["oracle_exact_minus_approx"] = opt_json(r.oracle_exact_minus_approx);
  j["oracle_grid_error"] = opt_json(r.oracle_grid_error);
  j["flag"] = to_string(r.flag);
  return j;
}

//! Spectroscopic label, or "n<n>l<l>" past the last orbital letter.
inline std::string state_label(QuantumNumbers q) {
  validate(q);
  if (q.l < static_cast<int>(kOrbitalLetters.size()))
    return quantum_numbers_to_label(q);
  return "n" + std::to_string(q.n) + "l" + std::to_string(q.l);
}

//! Closed-form row for one state of one spec.
inline ReportRow closed_form_row(const PotentialSpec &spec, QuantumNumbers q) {
  ReportRow row;
  row.state_label = state_label(q);
  row.n = q.n;
  row.l = q.l;
  row.alpha = spec.alpha;
  const auto res = energy(spec, q);
  if (res.is_bound())
    row.e_closed_form = res.bound->energy;
  else
    row.flag = RowFlag::NotBound;
  return row;
}

//==============================================================================
// Table reproduction

struct TableSummary {
  int cells{};
  int compared{}; //!< cells outside the known-discrepant set
  double max_abs_diff{};
  double max_rel_diff{};
  int known_discrepant{};
  double discrepant_ratio_min{};
  double discrepant_ratio_max{};
};

struct TableReport {
  int which{};
  std::vector<ReportRow> rows;
  TableSummary summary;
};

inline TableReport reproduce_table(int which,
                                   const MoleculeDatabase &db =
                                       MoleculeDatabase::builtin(),
                                   const TableCalibration &cal = {}) {
  if (which < 1 || which > 3)
    throw SpecError("table must be 1, 2 or 3");
  TableReport rep;
  rep.which = which;
  auto &s = rep.summary;
  s.discrepant_ratio_min = INFINITY;
  s.discrepant_ratio_max = -INFINITY;
  for (const auto &cell : reference_table(which)) {
    const auto spec = cell_spec(cell, db, cal);
    const auto q = state_label_to_quantum_numbers(cell.state);
    auto row = closed_form_row(spec, q);
    row.column_inv_b = cell.inv_b;
    row.species = cell.species;
    row.set_reference(cell.energy());
    ++s.cells;
    if (row.flag == RowFlag::Ok && is_known_discrepant(cell)) {
      row.flag = RowFlag::KnownDiscrepant;
      ++s.known_discrepant;
      const double ratio = cell.energy() / *row.e_closed_form;
      s.discrepant_ratio_min = std::min(s.discrepant_ratio_min, ratio);
      s.discrepant_ratio_max = std::max(s.discrepant_ratio_max, ratio);
    } else if (row.abs_diff_vs_paper) {
      ++s.compared;
      s.max_abs_diff = std::max(s.max_abs_diff, *row.abs_diff_vs_paper);
      s.max_rel_diff = std::max(s.max_rel_diff, *row.rel_diff_vs_paper);
    }
    rep.rows.push_back(std::move(row));
  }
  if (s.known_discrepant == 0)
    s.discrepant_ratio_min = s.discrepant_ratio_max = 0.0;
  return rep;
}

inline void write_table_csv(std::ostream &out, const TableReport &rep) {
  out << "# mrnu " << kVersion << " reference-data " << reference_data_version()
      << '\n';
  out << kReportCsvHeader << '\n';
  for (const auto &r : rep.rows)
    write_csv_row(out, r);
  const auto &s = rep.summary;
  out << "# summary: table=" << rep.which << " cells=" << s.cells
      << " compared=" << s.compared
      << " max_abs_diff=" << format_number(s.max_abs_diff)
      << " max_rel_diff=" << format_number(s.max_rel_diff)
      << " known_discrepant=" << s.known_discrepant;
  if (s.known_discrepant > 0)
    out << " discrepant_ratio_min=" << format_number(s.discrepant_ratio_min)
        << " discrepant_ratio_max=" << format_number(s.discrepant_ratio_max);
  out << '\n';
}

inline nlohmann::json table_json(const TableReport &rep) {
  nlohmann::json j;
  j["version"] = kVersion;
  j["reference_data"] = reference_data_version();
  j["table"] = rep.which;
  auto &rows = j["rows"] = nlohmann::json::array();
  for (const auto &r : rep.rows)
    rows.push_back(to_json(r));
  const auto &s = rep.summary;
  j["summary"] = {{"cells", s.cells},
                  {"compared", s.compared},
                  {"max_abs_diff", printed_value(s.max_abs_diff)},
                  {"max_rel_diff", printed_value(s.max_rel_diff)},
                  {"known_discrepant", s.known_discrepant},
                  {"discrepant_ratio_min", printed_value(s.discrepant_ratio_min)},
                  {"discrepant_ratio_max", printed_value(s.discrepant_ratio_max)}};
  return j;
}

} // namespace mrnu
