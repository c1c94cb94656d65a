#include "catch_amalgamated.hpp"

#include "mrnu/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace mrnu;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "mrnu");
  std::vector<const char *> argv;
  for (const auto &a : args)
    argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> data_rows(const std::string &csv) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(csv);
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#')
      continue;
    if (!header) {
      header = true;
      continue;
    }
    std::vector<std::string> f;
    std::istringstream ls(line);
    std::string item;
    while (std::getline(ls, item, ','))
      f.push_back(item);
    if (!line.empty() && line.back() == ',')
      f.emplace_back();
    rows.push_back(f);
  }
  return rows;
}

// strtod rather than stod: the far tail of R(r) is subnormal.
double num(const std::string &s) { return std::strtod(s.c_str(), nullptr); }

std::string comment_value(const std::string &csv, const std::string &key) {
  const auto pos = csv.find("# " + key + "=");
  if (pos == std::string::npos)
    return {};
  const auto start = pos + key.size() + 3;
  return csv.substr(start, csv.find_first_of(" \n", start) - start);
}
} // namespace

TEST_CASE("energy in atomic units", "[cli]") {
  const auto r = run({"energy", "--A", "80", "--alpha", "0.75", "--inv-b", "0.025",
                      "--mu", "1", "--units", "atomic", "--state", "2p"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# mrnu ", 0) == 0);
  const auto rows = data_rows(r.out);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0][0] == "2p");
  CHECK_THAT(num(rows[0][6]), WithinAbs(-0.1205793, 5e-8));
  CHECK(rows[0].back() == "ok");
}

TEST_CASE("energy for a tabulated molecule", "[cli]") {
  const auto r = run({"energy", "--molecule", "CH", "--column", "0.050", "--alpha",
                      "1.5", "--state", "2p", "--units", "ev_angstrom"});
  REQUIRE(r.code == 0);
  const auto rows = data_rows(r.out);
  CHECK_THAT(num(rows[0][6]), WithinRel(-3.60725796, 1e-4));
  CHECK(rows[0][5] == "CH");

  const auto h = run({"energy", "--molecule", "HCl", "--column", "0.050",
                      "--alpha", "1.5", "--state", "2p"});
  CHECK_THAT(num(data_rows(h.out)[0][6]), WithinRel(-3.42259525, 1e-4));
}

TEST_CASE("not-bound is a successful result", "[cli]") {
  const auto r = run({"energy", "--A", "3.9", "--alpha", "0", "--inv-b", "1",
                      "--mu", "1", "--state", "2p"});
  CHECK(r.code == 0);
  CHECK(data_rows(r.out)[0].back() == "not-bound");
}

TEST_CASE("usage errors exit with 2", "[cli]") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"energy", "--A", "80", "--alpha", "0.75", "--inv-b", "0.025",
             "--mu", "1"})
            .code == 2);
  CHECK(run({"energy", "--A", "80", "--alpha", "0.75", "--inv-b", "0.025",
             "--mu", "-1", "--state", "2p"})
            .code == 2);
  CHECK(run({"energy", "--A", "80", "--alpha", "0.75", "--inv-b", "0.025",
             "--mu", "1", "--state", "2z"})
            .code == 2);
  CHECK(run({"table", "--which", "4"}).code == 2);
  CHECK(run({"energy", "--format", "xml", "--A", "1"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("config file and flag overrides", "[cli]") {
  const std::string path = "mrnu_test_config.txt";
  {
    std::ofstream f(path);
    f << "# atomic-table 2p cell\nA = 80\nalpha = 0.75\ninv_b = 0.025\nmu = 1\n";
  }
  const auto a = run({"--config", path, "energy", "--state", "2p"});
  REQUIRE(a.code == 0);
  CHECK_THAT(num(data_rows(a.out)[0][6]), WithinAbs(-0.1205793, 5e-8));
  const auto b = run({"energy", "--config", path, "--alpha", "1.5", "--state", "2p"});
  CHECK(std::trunc(-num(data_rows(b.out)[0][6]) * 1e7) == 900228.0);
  std::remove(path.c_str());
  CHECK(run({"energy", "--config", "/nonexistent/file", "--state", "2p"}).code == 2);
}

TEST_CASE("molecule file overrides masses", "[cli]") {
  const std::string path = "mrnu_test_molecules.txt";
  {
    std::ofstream f(path);
    f << "N2 = 7.00153718\n";
  }
  const auto r = run({"energy", "--molecules", path, "--molecule", "N2", "--column",
                      "0.025", "--alpha", "0.75", "--state", "2p"});
  std::remove(path.c_str());
  REQUIRE(r.code == 0);
  CHECK(data_rows(r.out)[0].back() == "ok");
}

TEST_CASE("table reports", "[cli]") {
  const auto r = run({"table", "--which", "1"});
  REQUIRE(r.code == 0);
  CHECK(data_rows(r.out).size() == 56);
  CHECK_THAT(r.out, ContainsSubstring("# summary: table=1 cells=56"));

  const auto t3 = run({"table", "--which", "3"});
  CHECK_THAT(t3.out, ContainsSubstring("known_discrepant=29"));
  int flagged = 0;
  for (const auto &row : data_rows(t3.out))
    if (row.back() == "known-discrepant") {
      ++flagged;
      CHECK(row[5] == "CO");
      CHECK(row[3] == "0");
    }
  CHECK(flagged == 29);
}

TEST_CASE("wavefunction export", "[cli]") {
  const auto r = run({"wavefunction", "--A", "80", "--alpha", "0.75", "--inv-b",
                      "0.025", "--mu", "1", "--n", "2", "--l", "1"});
  REQUIRE(r.code == 0);
  const auto rows = data_rows(r.out);
  REQUIRE(rows.size() == 4000);
  CHECK(num(rows[0][0]) == 0.0);
  CHECK(num(rows[0][1]) == 0.0);
  CHECK_THAT(num(rows.back()[0]), WithinRel(2400.0, 1e-15));

  double integral = 0.0;
  int sign_changes = 0;
  double prev = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double h = num(rows[i][0]) - num(rows[i - 1][0]);
    integral += 0.5 * h * (num(rows[i][2]) + num(rows[i - 1][2]));
  }
  for (const auto &row : rows) {
    const double v = num(row[1]);
    if (v == 0.0)
      continue;
    if (prev != 0.0 && (v > 0.0) != (prev > 0.0))
      ++sign_changes;
    prev = v;
  }
  CHECK(integral >= 0.999);
  CHECK(integral <= 1.001);
  CHECK(comment_value(r.out, "nodes") == std::to_string(sign_changes));
  CHECK(sign_changes == 2);
  CHECK_THAT(num(comment_value(r.out, "epsilon")),
             WithinRel(8.170350378830018, 1e-13));

  const auto nb = run({"wavefunction", "--A", "3.9", "--alpha", "0", "--inv-b", "1",
                       "--mu", "1", "--state", "2p"});
  CHECK(nb.code == 0);
  CHECK_THAT(nb.out, ContainsSubstring("not-bound"));
}

TEST_CASE("compare against the oracle", "[cli]") {
  const auto r = run({"compare", "--A", "80", "--alpha", "0.75", "--inv-b", "0.025",
                      "--mu", "1", "--state", "2p"});
  REQUIRE(r.code == 0);
  const auto row = data_rows(r.out).at(0);
  const double closed = num(row[6]);
  CHECK_THAT(closed, WithinAbs(-0.1205793, 5e-8));
  CHECK_THAT(num(row[10]), WithinAbs(closed, 1e-6));
  CHECK_THAT(num(row[11]), WithinAbs(-0.1205271, 1e-4));
  CHECK(std::abs(num(row[12])) <= 1e-6);

  const auto s = run({"compare", "--A", "80", "--alpha", "1.5", "--inv-b", "0.025",
                      "--mu", "1", "--n", "1", "--l", "0", "--grid", "8000"});
  const auto srow = data_rows(s.out).at(0);
  CHECK_THAT(num(srow[10]), WithinAbs(num(srow[11]), 1e-10));

  const auto bad = run({"compare", "--A", "80", "--alpha", "0.75", "--inv-b",
                        "0.025", "--mu", "1", "--state", "2p", "--grid", "4000",
                        "--max-grid-error", "1e-15"});
  CHECK(bad.code == 3);
  CHECK_THAT(bad.err, ContainsSubstring("grid error estimate"));
  CHECK(run({"compare", "--A", "80", "--alpha", "0.75", "--inv-b", "0.025", "--mu",
             "1", "--state", "2p", "--grid", "4001"})
            .code == 2);
}

TEST_CASE("potential profile", "[cli]") {
  const auto none = run({"potential", "--A", "80", "--alpha", "0.5", "--inv-b",
                         "0.025", "--mu", "1"});
  REQUIRE(none.code == 0);
  CHECK_THAT(none.out, ContainsSubstring("no interior minimum"));
  CHECK(data_rows(none.out).size() == 1000);

  const auto r = run({"potential", "--A", "80", "--alpha", "1.5", "--inv-b",
                      "0.025", "--mu", "1", "--rmax", "4000"});
  REQUIRE(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("# summary: r0=0.743055422917416"));
  CHECK_THAT(r.out, ContainsSubstring("ratio=0.5"));
  const auto rows = data_rows(r.out);
  CHECK(std::abs(num(rows.back()[1])) < 1e-12 / 3200.0);
}

TEST_CASE("critical coupling", "[cli]") {
  const auto r = run({"critical-coupling", "--alpha", "0", "--state", "2p"});
  REQUIRE(r.code == 0);
  CHECK(data_rows(r.out).at(0).back() == "4");
  const auto j = run({"--format", "json", "critical-coupling", "--alpha", "0.75",
                      "--n", "0", "--l", "1"});
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["A_c"].get<double>() > 0.0);
}

TEST_CASE("csv and json agree and output is deterministic", "[cli]") {
  const std::vector<std::string> base{"energy", "--A", "80", "--alpha", "0.75",
                                      "--inv-b", "0.025", "--mu", "1",
                                      "--state", "3d"};
  const auto csv = run(base);
  auto jargs = base;
  jargs.insert(jargs.begin(), {"--format", "json"});
  const auto js = run(jargs);
  REQUIRE(js.code == 0);
  const auto doc = nlohmann::json::parse(js.out);
  CHECK(num(data_rows(csv.out)[0][6]) ==
        doc["rows"][0]["e_closed_form"].get<double>());
  CHECK(run(base).out == csv.out);
  CHECK(run(jargs).out == js.out);

  const auto wj = run({"--format", "json", "wavefunction", "--A", "80", "--alpha",
                       "0.75", "--inv-b", "0.025", "--mu", "1", "--state", "2p",
                       "--samples", "50"});
  const auto wc = run({"wavefunction", "--A", "80", "--alpha", "0.75", "--inv-b",
                       "0.025", "--mu", "1", "--state", "2p", "--samples", "50"});
  const auto wdoc = nlohmann::json::parse(wj.out);
  const auto wrows = data_rows(wc.out);
  REQUIRE(wrows.size() == 50);
  for (std::size_t i = 0; i < wrows.size(); ++i)
    CHECK(num(wrows[i][1]) == wdoc["R"][i].get<double>());
}
