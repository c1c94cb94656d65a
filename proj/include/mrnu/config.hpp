#pragma once

// Flat `key = value` text files: problem specs and molecule tables.

#include "mrnu/core_model.hpp"
#include "mrnu/units_molecules.hpp"

#include <charconv>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>

namespace mrnu {

using KeyValues = std::map<std::string, std::string>;

namespace detail {
inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}
} // namespace detail

//! Locale-independent strict double parse.
inline double parse_double(std::string_view text, std::string_view what) {
  text = detail::trim(text);
  if (!text.empty() && text.front() == '+')
    text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw SpecError("cannot parse '" + std::string(text) + "' as a number for " +
                    std::string(what));
  return v;
}

//! Shortest decimal text that parses back to exactly `v`.
inline std::string format_round_trip(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

//! One `key = value` per line; blank lines and `#` comments are skipped.
//! Later duplicates of a key are an error.
inline KeyValues parse_key_values(std::istream &in) {
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = line;
    if (const auto hash = s.find('#'); hash != std::string_view::npos)
      s = s.substr(0, hash);
    s = detail::trim(s);
    if (s.empty())
      continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos)
      throw SpecError("config line " + std::to_string(lineno) +
                      ": expected 'key = value'");
    const auto key = std::string(detail::trim(s.substr(0, eq)));
    const auto value = std::string(detail::trim(s.substr(eq + 1)));
    if (key.empty())
      throw SpecError("config line " + std::to_string(lineno) + ": empty key");
    if (!kv.emplace(key, value).second)
      throw SpecError("config line " + std::to_string(lineno) +
                      ": duplicate key '" + key + "'");
  }
  return kv;
}

inline KeyValues parse_key_values(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_key_values(in);
}

inline UnitSystem::Kind parse_units(std::string_view name) {
  if (name == "atomic")
    return UnitSystem::Kind::Atomic;
  if (name == "ev_angstrom")
    return UnitSystem::Kind::Spectroscopic;
  throw SpecError("unknown units '" + std::string(name) +
                  "' (expected atomic or ev_angstrom)");
}

/*!
  @brief Spec from keys A, alpha, inv_b, mu (or mu_amu), units.

  inv_b is the physical inverse screening length in the active length unit;
  b = 1/inv_b. Unknown keys are rejected.
*/
inline PotentialSpec spec_from_key_values(const KeyValues &kv) {
  for (const auto &[k, v] : kv) {
    if (k != "A" && k != "alpha" && k != "inv_b" && k != "mu" &&
        k != "mu_amu" && k != "units")
      throw SpecError("unknown config key '" + k + "'");
  }
  auto need = [&](const char *key) -> const std::string & {
    const auto it = kv.find(key);
    if (it == kv.end())
      throw SpecError(std::string("config is missing key '") + key + "'");
    return it->second;
  };
  PotentialSpec s;
  if (const auto it = kv.find("units"); it != kv.end())
    s.units.kind = parse_units(it->second);
  s.A = parse_double(need("A"), "A");
  s.alpha = parse_double(need("alpha"), "alpha");
  const double inv_b = parse_double(need("inv_b"), "inv_b");
  if (!(inv_b > 0.0))
    throw SpecError("inv_b must be positive");
  s.b = 1.0 / inv_b;
  const bool has_mu = kv.count("mu") > 0, has_amu = kv.count("mu_amu") > 0;
  if (has_mu && has_amu)
    throw SpecError("config must give only one of mu and mu_amu");
  if (!has_mu && !has_amu)
    throw SpecError("config is missing key 'mu' (or 'mu_amu')");
  s.mu = has_mu ? parse_double(kv.at("mu"), "mu")
                : parse_double(kv.at("mu_amu"), "mu_amu");
  return validate_spec(s);
}

inline PotentialSpec spec_from_config(std::istream &in) {
  return spec_from_key_values(parse_key_values(in));
}

//! Serializes a spec with round-trip number formatting.
inline std::string to_config(const PotentialSpec &s) {
  std::ostringstream out;
  out << "A = " << format_round_trip(s.A) << '\n'
      << "alpha = " << format_round_trip(s.alpha) << '\n'
      << "inv_b = " << format_round_trip(1.0 / s.b) << '\n'
      << (s.units.is_atomic() ? "mu" : "mu_amu") << " = "
      << format_round_trip(s.mu) << '\n'
      << "units = " << to_string(s.units.kind) << '\n';
  return out.str();
}

//! `name = mass_amu` lines merged over the built-in molecule table.
inline MoleculeDatabase molecules_from_config(std::istream &in,
                                              MoleculeDatabase base =
                                                  MoleculeDatabase::builtin()) {
  for (const auto &[name, value] : parse_key_values(in))
    base.add({name, parse_double(value, name)});
  return base;
}

} // namespace mrnu
