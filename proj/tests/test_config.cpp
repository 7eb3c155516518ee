#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "ryd/config.hpp"
#include "ryd/units.hpp"

using namespace ryd;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  return {std::istreambuf_iterator<char>(in),
          std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("shipped rubidium config parses") {
  const auto c = config::load_config(std::string(RYD_DATA_DIR) +
                                     "/rubidium.json");
  CHECK(c.schema_version == 1);
  CHECK(c.n == 42);
  CHECK(c.energy_model == "quantum_defect");
  CHECK(c.defects.at(0) == doctest::Approx(3.1311));
  CHECK(c.defects.at(3) == doctest::Approx(0.0165));
  CHECK(c.length_unit == "um");
  CHECK(c.subspaces.size() == 3);
  CHECK(c.protocol == "toffoli");

  const Geometry g = config::geometry_bohr(c);
  CHECK(g.pair(0, 1).distance ==
        doctest::Approx(5.0 * units::micron_to_bohr));
  CHECK(g.pair(0, 2).distance ==
        doctest::Approx(10.0 * units::micron_to_bohr));

  const EnergyModel model = config::energy_model(c);
  CHECK(model.kind == EnergyModelKind::quantum_defect);
  CHECK(model.defects.at(2) == doctest::Approx(1.3479));

  const auto spec = config::interaction_from_config(c);
  CHECK(spec.delta_sp == doctest::Approx(2 * M_PI * 18.193));

  // determinism: dumping twice is byte identical
  CHECK(config::dump_config(c) == config::dump_config(c));
}

TEST_CASE("validation failures") {
  CHECK_THROWS_AS(config::parse_config("{nope"), ConfigError);
  CHECK_THROWS_AS(config::parse_config("{}"), ConfigError);
  CHECK_THROWS_AS(
      config::parse_config(R"({"schema_version": 99,
        "geometry": {"positions": [[0,0,0],[0,0,1],[0,0,2]]}})"),
      ConfigError);
  CHECK_THROWS_AS(
      config::parse_config(R"({"schema_version": 1})"), ConfigError);
  CHECK_THROWS_AS(
      config::parse_config(R"({"schema_version": 1,
        "geometry": {"unit": "ly",
                     "positions": [[0,0,0],[0,0,1],[0,0,2]]}})"),
      ConfigError);
  CHECK_THROWS_AS(
      config::parse_config(R"({"schema_version": 1,
        "geometry": {"positions": [[0,0,0],[0,0,1]]}})"),
      ConfigError);
  CHECK_THROWS_AS(
      config::parse_config(R"({"schema_version": 1,
        "subspaces": ["sf"],
        "geometry": {"positions": [[0,0,0],[0,0,1],[0,0,2]]}})"),
      ConfigError);
  CHECK_THROWS_AS(config::parse_subspace("xy"), ConfigError);
  CHECK_THROWS_AS(config::load_config("/no/such/file.json"), ConfigError);
}

TEST_CASE("explicit deltas and the inf marker") {
  auto c = config::parse_config(R"({"schema_version": 1,
    "geometry": {"positions": [[0,0,0],[0,0,1],[0,0,2]], "unit": "a0"},
    "gate": {"delta_sp_mhz": "inf", "delta_pd_mhz": 2.0,
             "delta_spd_mhz": 3.0}})");
  const auto spec = config::interaction_from_config(c);
  CHECK(std::isinf(spec.delta_sp));
  CHECK(spec.delta_pd == doctest::Approx(2 * M_PI * 2.0));

  c.delta_pd_mhz.reset();
  CHECK_THROWS_AS(config::interaction_from_config(c), ConfigError);
}

TEST_CASE("spectra report round trip") {
  coupling::ShiftSpectrum sp;
  sp.kind = coupling::Subspace::sp;
  sp.hartree = {-2e-9, -1e-9, 0.0, 1e-9, 2e-9};
  coupling::ShiftSpectrum pd = sp;
  pd.kind = coupling::Subspace::pd;
  pd.hartree = {-4e-10, 4e-10};
  coupling::ShiftSpectrum spd = sp;
  spd.kind = coupling::Subspace::spd;
  spd.hartree = {-3e-9, 0.0, 5e-10};

  const std::string text = config::spectra_json({sp, pd, spd});
  const auto src = config::read_shift_source(text);
  CHECK(src.sp_mhz == doctest::Approx(1e-9 * units::hartree_to_mhz));
  CHECK(src.pd_mhz == doctest::Approx(4e-10 * units::hartree_to_mhz));
  CHECK(src.spd_mhz == doctest::Approx(5e-10 * units::hartree_to_mhz));

  // the shift_source path feeds the gate interaction
  const std::string path = "round_trip_spectra.json";
  {
    std::ofstream out(path);
    out << text;
  }
  auto c = config::parse_config(R"({"schema_version": 1,
    "geometry": {"positions": [[0,0,0],[0,0,1],[0,0,2]], "unit": "a0"},
    "gate": {"shift_source": "round_trip_spectra.json"}})");
  const auto spec = config::interaction_from_config(c);
  CHECK(spec.delta_sp ==
        doctest::Approx(2 * M_PI * 1e-9 * units::hartree_to_mhz));
  std::remove(path.c_str());

  CHECK_THROWS_AS(config::read_shift_source("{}"), ConfigError);
  CHECK_THROWS_AS(config::read_shift_source(config::spectra_json({sp})),
                  ConfigError);

  // csv writer carries the unit columns
  const std::string csv = config::spectra_csv({sp});
  CHECK(csv.find("subspace,index,hartree,inv_cm,mhz,dimensionless") == 0);
  CHECK(csv.find("\nsp,0,") != std::string::npos);
}

TEST_CASE("report writers smoke") {
  blockade::BlockadeReport report;
  report.pass = true;
  report.margin_sum = 0.01;
  report.channels.push_back(
      {{42, 0, 1, 41, 1, 41, 0, coupling::Subspace::sp}, -100.0, 0.5, 0.01,
       false});
  const std::string bj = config::blockade_json(report);
  CHECK(bj.find("\"pass\": true") != std::string::npos);
  CHECK(bj.find("|42s,42p><->|41p,41s>") != std::string::npos);
  CHECK(config::blockade_csv(report).find("channel,subspace") == 0);

  const auto gate = gatesim::run_toffoli_protocol(
      1.0, {gatesim::InteractionMode::effective_diagonal,
            std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity()});
  const std::string gj = config::gate_json(gate, "toffoli");
  CHECK(gj.find("\"protocol\": \"toffoli\"") != std::string::npos);
  CHECK(gj.find("\"adjusted_gate\"") != std::string::npos);
  CHECK(config::gate_csv(gate, "toffoli").find("protocol,") == 0);
}
