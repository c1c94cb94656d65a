#pragma once

// Shared domain types for the Manning-Rosen bound-state library: potential
// parameters, quantum numbers, unit systems and the per-state result record.

#include <cmath>
#include <stdexcept>
#include <string>

namespace mrnu {

//==============================================================================
// Errors

//! Raised when a PotentialSpec (or any other input) violates its bounds.
class SpecError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

//! Raised when a numerical procedure fails (quadrature, eigen-solve, sums).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

//! Raised when an operation needs a bound level that does not exist.
class NotBoundError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

//==============================================================================
// Units

//! hbar*c in eV*Angstrom.
inline constexpr double kHbarC_eVA = 1973.29;
//! Rest energy of one atomic mass unit in eV.
inline constexpr double kAmuToEV = 931.4941e6;

/*!
  @brief Unit convention carried by a PotentialSpec.

  Atomic: hbar = 1, the mass mu is given explicitly (usually 1), lengths in
  bohr-like units, energies in the matching Hartree-like unit.

  Spectroscopic: lengths in Angstrom, mu in amu, energies in eV. The kinetic
  prefactor is (hbar c)^2 / (2 mu c^2 b^2) with mu c^2 = mu_amu * amu_to_energy.
*/
struct UnitSystem {
  enum class Kind { Atomic, Spectroscopic };

  Kind kind{Kind::Atomic};
  double hbar_c{kHbarC_eVA};
  double amu_to_energy{kAmuToEV};

  static constexpr UnitSystem atomic() { return {}; }
  static constexpr UnitSystem spectroscopic(double hbar_c = kHbarC_eVA,
                                            double amu_to_energy = kAmuToEV) {
    return {Kind::Spectroscopic, hbar_c, amu_to_energy};
  }

  bool is_atomic() const { return kind == Kind::Atomic; }

  friend bool operator==(const UnitSystem &, const UnitSystem &) = default;
};

inline std::string to_string(UnitSystem::Kind k) {
  return k == UnitSystem::Kind::Atomic ? "atomic" : "ev_angstrom";
}

//==============================================================================
// Domain types

//! Physical parameters of one Manning-Rosen problem instance.
struct PotentialSpec {
  double A{};     //!< dimensionless coupling
  double alpha{}; //!< dimensionless shape parameter
  double b{};     //!< screening length (range 1/b), active length unit
  double mu{};    //!< reduced mass, active mass unit (amu when spectroscopic)
  UnitSystem units{};

  //! Same problem with alpha -> 1 - alpha; the spectrum is invariant.
  PotentialSpec mirrored() const {
    auto s = *this;
    s.alpha = 1.0 - alpha;
    return s;
  }

  friend bool operator==(const PotentialSpec &, const PotentialSpec &) =
      default;
};

//! Radial quantum number n (interior nodes) and orbital l.
struct QuantumNumbers {
  int n{0};
  int l{0};

  //! Principal-style label index N = n + l + 1 (2p -> 2).
  int principal() const { return n + l + 1; }

  friend bool operator==(const QuantumNumbers &, const QuantumNumbers &) =
      default;
};

inline void validate(QuantumNumbers q) {
  if (q.n < 0)
    throw SpecError("radial quantum number n must be >= 0 (got " +
                    std::to_string(q.n) + ")");
  if (q.l < 0)
    throw SpecError("orbital quantum number l must be >= 0 (got " +
                    std::to_string(q.l) + ")");
}

//! Closed-form data for one bound (n, l) level.
struct BoundState {
  double energy{};     //!< E_nl < 0
  double epsilon{};    //!< b sqrt(-2 mu E)/hbar > 0
  double lambda_cap{}; //!< (a - 1)/2
  double a_param{};    //!< sqrt((1-2 alpha)^2 + 4 l (l+1))
  double norm{};       //!< radial normalization constant, 1/sqrt(length)
};

//! Named diatomic species.
struct MoleculeRecord {
  std::string name;
  double reduced_mass_amu{};
};

//==============================================================================
// Operations

//! Returns the spec unchanged when every field is within bounds; throws
//! SpecError naming the offending field otherwise.
inline const PotentialSpec &validate_spec(const PotentialSpec &spec) {
  if (!std::isfinite(spec.A))
    throw SpecError("A must be finite");
  if (!std::isfinite(spec.alpha))
    throw SpecError("alpha must be finite");
  if (!std::isfinite(spec.b))
    throw SpecError("b must be finite");
  if (!(spec.b > 0.0))
    throw SpecError("b must be positive (got " + std::to_string(spec.b) + ")");
  if (!std::isfinite(spec.mu))
    throw SpecError("mu must be finite");
  if (!(spec.mu > 0.0))
    throw SpecError("mu must be positive (got " + std::to_string(spec.mu) +
                    ")");
  if (!spec.units.is_atomic() &&
      !(spec.units.hbar_c > 0.0 && spec.units.amu_to_energy > 0.0))
    throw SpecError("spectroscopic unit constants must be positive");
  return spec;
}

/*!
  @brief The kinetic prefactor hbar^2 / (2 mu b^2) in the active units.

  Every energy in the library is this scale times a dimensionless number.
*/
inline double spectroscopic_energy_scale(const PotentialSpec &spec) {
  validate_spec(spec);
  const double b2 = spec.b * spec.b;
  if (spec.units.is_atomic())
    return 1.0 / (2.0 * spec.mu * b2);
  const double mc2 = spec.mu * spec.units.amu_to_energy;
  return spec.units.hbar_c * spec.units.hbar_c / (2.0 * mc2 * b2);
}

//! hbar^2 / (2 mu) in the active units (energy * length^2).
inline double kinetic_coefficient(const PotentialSpec &spec) {
  return spectroscopic_energy_scale(spec) * spec.b * spec.b;
}

} // namespace mrnu
