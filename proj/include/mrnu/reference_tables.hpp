#pragma once

// Embedded reference eigenvalue tables (data/reference_tables.csv) and the
// mapping from a table cell to the problem instance that produced it.

#include "mrnu/config.hpp"
#include "mrnu/core_model.hpp"
#include "mrnu/reference_tables_data.hpp"
#include "mrnu/units_molecules.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace mrnu {

struct ReferenceCell {
  int table{};         //!< 1 (atomic units), 2 or 3 (eV)
  std::string species; //!< "atomic" for table 1, else a molecule name
  std::string state;   //!< label, e.g. "3d"
  double inv_b{};      //!< tabulated 1/b column value
  double alpha{};      //!< 0 stands for the alpha in {0, 1} column
  std::string source;  //!< "present", "QD" or "LS"
  double minus_energy{}; //!< tabulated -E
  std::string printed;   //!< -E exactly as printed

  //! The tabulated energy with its sign restored (E < 0).
  double energy() const { return -minus_energy; }
};

inline std::vector<ReferenceCell> parse_reference_cells(const std::string &csv) {
  std::vector<ReferenceCell> cells;
  std::istringstream in(csv);
  std::string line;
  bool header_seen = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#')
      continue;
    if (!header_seen) {
      header_seen = true; // column names
      continue;
    }
    std::vector<std::string> f;
    std::istringstream ls(line);
    std::string item;
    while (std::getline(ls, item, ','))
      f.push_back(item);
    if (f.size() != 7)
      throw SpecError("reference table line " + std::to_string(lineno) +
                      ": expected 7 fields");
    ReferenceCell c;
    c.table = static_cast<int>(parse_double(f[0], "table"));
    c.species = f[1];
    c.state = f[2];
    c.inv_b = parse_double(f[3], "inv_b");
    c.alpha = parse_double(f[4], "alpha");
    c.source = f[5];
    c.printed = f[6];
    c.minus_energy = parse_double(f[6], "minus_energy");
    cells.push_back(std::move(c));
  }
  return cells;
}

inline const std::vector<ReferenceCell> &reference_cells() {
  static const std::vector<ReferenceCell> cells =
      parse_reference_cells(detail::kReferenceTablesCsv);
  return cells;
}

//! Version tag carried in the data file header.
inline std::string reference_data_version() {
  std::istringstream in(detail::kReferenceTablesCsv);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("# version:", 0) == 0)
      return std::string(detail::trim(line.substr(10)));
  return "unknown";
}

//! Cells of one table and source column, in file order.
inline std::vector<ReferenceCell> reference_table(int table,
                                                  const std::string &source =
                                                      "present") {
  std::vector<ReferenceCell> out;
  for (const auto &c : reference_cells())
    if (c.table == table && c.source == source)
      out.push_back(c);
  return out;
}

//! The problem instance behind a cell.
inline PotentialSpec cell_spec(const ReferenceCell &c,
                               const MoleculeDatabase &db =
                                   MoleculeDatabase::builtin(),
                               const TableCalibration &cal = {}) {
  if (c.table == 1)
    return atomic_table_spec(c.inv_b, c.alpha);
  return table_spec(db, c.species, c.inv_b, c.alpha, cal);
}

//! The alpha in {0, 1} column of the CO block in table 3 does not follow
//! from the closed form with the tabulated reduced mass (off by ~2x).
inline bool is_known_discrepant(const ReferenceCell &c) {
  return c.table == 3 && c.species == "CO" && c.alpha == 0.0;
}

} // namespace mrnu
