#pragma once

// Built-in diatomic reduced masses, the eV/Angstrom table calibration, and
// spectroscopic state labels ("2p", "4f", ...).

#include "mrnu/core_model.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mrnu {

//==============================================================================
class MoleculeDatabase {
public:
  MoleculeDatabase() = default;
  explicit MoleculeDatabase(std::vector<MoleculeRecord> records) {
    for (auto &r : records)
      add(std::move(r));
  }

  //! HCl, CH, LiH and CO with reduced masses in amu.
  static MoleculeDatabase builtin() {
    return MoleculeDatabase({{"HCl", 0.9801045},
                             {"CH", 0.929931},
                             {"LiH", 0.8801221},
                             {"CO", 6.8606719}});
  }

  //! Inserts or replaces (names compare case-insensitively).
  void add(MoleculeRecord r) {
    if (r.name.empty())
      throw SpecError("molecule name must not be empty");
    if (!(r.reduced_mass_amu > 0.0))
      throw SpecError("reduced mass of " + r.name + " must be positive");
    if (auto *existing = find_mut(r.name))
      *existing = std::move(r);
    else
      records_.push_back(std::move(r));
  }

  std::optional<MoleculeRecord> find(std::string_view name) const {
    for (const auto &r : records_)
      if (iequal(r.name, name))
        return r;
    return std::nullopt;
  }

  const MoleculeRecord &at(std::string_view name) const {
    for (const auto &r : records_)
      if (iequal(r.name, name))
        return r;
    throw SpecError("unknown molecule: " + std::string(name));
  }

  const std::vector<MoleculeRecord> &records() const { return records_; }

private:
  static bool iequal(std::string_view a, std::string_view b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
             return std::tolower(static_cast<unsigned char>(x)) ==
                    std::tolower(static_cast<unsigned char>(y));
           });
  }
  MoleculeRecord *find_mut(std::string_view name) {
    for (auto &r : records_)
      if (iequal(r.name, name))
        return &r;
    return nullptr;
  }

  std::vector<MoleculeRecord> records_;
};

//==============================================================================
/*!
  @brief How a tabulated "1/b" column value maps onto a physical problem.

  The column value c is used as a pure number for the coupling, A = 2/c,
  while the physical screening length is b = length_factor / c Angstrom.
  length_factor = 0.01 is the calibration under which c = 0.025 gives
  b = 0.4 Angstrom and reproduces the tabulated HCl/CH/LiH/CO energies.
*/
struct TableCalibration {
  double hbar_c{kHbarC_eVA};
  double amu_to_energy{kAmuToEV};
  double length_factor{0.01};
};

inline PotentialSpec table_spec(const MoleculeDatabase &db,
                                std::string_view molecule, double column_inv_b,
                                double alpha, const TableCalibration &cal = {}) {
  if (!(column_inv_b > 0.0))
    throw SpecError("table column 1/b must be positive");
  const auto &m = db.at(molecule);
  PotentialSpec s;
  s.A = 2.0 / column_inv_b;
  s.alpha = alpha;
  s.b = cal.length_factor / column_inv_b;
  s.mu = m.reduced_mass_amu;
  s.units = UnitSystem::spectroscopic(cal.hbar_c, cal.amu_to_energy);
  return validate_spec(s);
}

//! Atomic-units problem with A = 2b, the convention of the atomic table.
inline PotentialSpec atomic_table_spec(double inv_b, double alpha,
                                       double mu = 1.0) {
  if (!(inv_b > 0.0))
    throw SpecError("1/b must be positive");
  PotentialSpec s;
  s.b = 1.0 / inv_b;
  s.A = 2.0 * s.b;
  s.alpha = alpha;
  s.mu = mu;
  return validate_spec(s);
}

//==============================================================================
// State labels

inline constexpr std::string_view kOrbitalLetters = "spdfghiklmnoqrtuv";

inline std::optional<int> orbital_from_letter(char c) {
  const auto pos = kOrbitalLetters.find(
      static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (pos == std::string_view::npos)
    return std::nullopt;
  return static_cast<int>(pos);
}

//! "2p" -> (n=0, l=1); "6g" -> (n=1, l=4). Principal must exceed l.
inline QuantumNumbers state_label_to_quantum_numbers(std::string_view label) {
  if (label.size() < 2)
    throw SpecError("malformed state label '" + std::string(label) + "'");
  int principal = 0;
  std::size_t i = 0;
  while (i < label.size() &&
         std::isdigit(static_cast<unsigned char>(label[i]))) {
    principal = principal * 10 + (label[i] - '0');
    if (principal > 1000)
      throw SpecError("state label principal number too large");
    ++i;
  }
  if (i == 0 || i + 1 != label.size())
    throw SpecError("malformed state label '" + std::string(label) + "'");
  const auto l = orbital_from_letter(label[i]);
  if (!l)
    throw SpecError("unknown orbital letter in '" + std::string(label) + "'");
  if (principal <= *l)
    throw SpecError("state label '" + std::string(label) +
                    "' needs principal number > l");
  return {principal - *l - 1, *l};
}

inline std::string quantum_numbers_to_label(QuantumNumbers q) {
  validate(q);
  if (q.l >= static_cast<int>(kOrbitalLetters.size()))
    throw SpecError("no spectroscopic letter for l=" + std::to_string(q.l));
  return std::to_string(q.principal()) +
         kOrbitalLetters[static_cast<std::size_t>(q.l)];
}

} // namespace mrnu
