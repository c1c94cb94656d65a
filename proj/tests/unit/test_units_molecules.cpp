#include "catch_amalgamated.hpp"

#include "mrnu/spectrum.hpp"
#include "mrnu/units_molecules.hpp"

using namespace mrnu;
using Catch::Matchers::WithinRel;

TEST_CASE("built-in molecules", "[molecules]") {
  const auto db = MoleculeDatabase::builtin();
  REQUIRE(db.records().size() == 4);
  CHECK(db.at("HCl").reduced_mass_amu == 0.9801045);
  CHECK(db.at("hcl").reduced_mass_amu == 0.9801045);
  CHECK(db.at("CO").reduced_mass_amu == 6.8606719);
  CHECK_FALSE(db.find("N2"));
  CHECK_THROWS_WITH(db.at("N2"), Catch::Matchers::ContainsSubstring("unknown molecule"));
}

TEST_CASE("database add replaces by name", "[molecules]") {
  auto db = MoleculeDatabase::builtin();
  db.add({"hcl", 1.0});
  CHECK(db.records().size() == 4);
  CHECK(db.at("HCl").reduced_mass_amu == 1.0);
  db.add({"N2", 7.00153718});
  CHECK(db.records().size() == 5);
  CHECK_THROWS_AS(db.add({"X", 0.0}), SpecError);
  CHECK_THROWS_AS(db.add({"", 1.0}), SpecError);
}

TEST_CASE("state labels", "[molecules]") {
  CHECK(state_label_to_quantum_numbers("2p") == QuantumNumbers{0, 1});
  CHECK(state_label_to_quantum_numbers("3d") == QuantumNumbers{0, 2});
  CHECK(state_label_to_quantum_numbers("4f") == QuantumNumbers{0, 3});
  CHECK(state_label_to_quantum_numbers("6p") == QuantumNumbers{4, 1});
  CHECK(state_label_to_quantum_numbers("6g") == QuantumNumbers{1, 4});
  CHECK(state_label_to_quantum_numbers("1s") == QuantumNumbers{0, 0});
  for (const char *bad : {"", "p", "2", "2x", "1p", "3f", "2pp", "p2", "-2p"})
    CHECK_THROWS_AS(state_label_to_quantum_numbers(bad), SpecError);

  for (int principal = 1; principal <= 9; ++principal)
    for (int l = 0; l <= 4 && l < principal; ++l) {
      const QuantumNumbers q{principal - l - 1, l};
      CHECK(state_label_to_quantum_numbers(quantum_numbers_to_label(q)) == q);
    }
  CHECK(quantum_numbers_to_label({1, 4}) == "6g");
}

TEST_CASE("table specs reproduce tabulated molecular levels", "[molecules]") {
  const auto db = MoleculeDatabase::builtin();
  {
    const auto s = table_spec(db, "HCl", 0.025, 0.75);
    CHECK(s.A == 80.0);
    CHECK_THAT(s.b, WithinRel(0.4, 1e-15));
    CHECK_THAT(spectroscopic_energy_scale(s), WithinRel(0.013328441190735633, 1e-14));
    CHECK_THAT(energy(s, {0, 1}).bound->energy, WithinRel(-5.14278553, 1e-4));
  }
  CHECK_THAT(energy(table_spec(db, "CH", 0.100, 0.0), {0, 1}).bound->energy,
             WithinRel(-3.59614587, 1e-4));
  CHECK_THAT(energy(table_spec(db, "LiH", 0.025, 1.5), {0, 2}).bound->energy,
             WithinRel(-1.88246712, 1e-4));
  CHECK_THAT(energy(table_spec(db, "CH", 0.050, 1.5), {0, 1}).bound->energy,
             WithinRel(-3.60725796, 1e-4));

  CHECK_THROWS_AS(table_spec(db, "HCl", 0.0, 0.75), SpecError);
  CHECK_THROWS_AS(table_spec(db, "Ar2", 0.025, 0.75), SpecError);

  TableCalibration cal;
  cal.length_factor = 0.02;
  CHECK_THAT(table_spec(db, "HCl", 0.025, 0.75, cal).b, WithinRel(0.8, 1e-15));
}

TEST_CASE("alpha in {0,1} levels depend on n + l + 1 only", "[molecules][property]") {
  const auto db = MoleculeDatabase::builtin();
  for (const char *mol : {"HCl", "CH", "LiH", "CO"})
    for (double alpha : {0.0, 1.0})
      for (int principal = 2; principal <= 6; ++principal) {
        const auto s = table_spec(db, mol, 0.025, alpha);
        const auto ref = energy(s, {principal - 2, 1});
        REQUIRE(ref.is_bound());
        for (int l = 2; l < principal; ++l)
          CHECK_THAT(energy(s, {principal - l - 1, l}).bound->energy,
                     WithinRel(ref.bound->energy, 1e-12));
      }
}

TEST_CASE("atomic table convention A = 2b", "[molecules]") {
  const auto s = atomic_table_spec(0.025, 0.75);
  CHECK(s.b == 40.0);
  CHECK(s.A == 80.0);
  CHECK(s.mu == 1.0);
  CHECK(s.units.is_atomic());
}
