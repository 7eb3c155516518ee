#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ryd/blockade.hpp"
#include "ryd/coupling.hpp"
#include "ryd/gatesim.hpp"
#include "ryd/geometry.hpp"
#include "ryd/orbital.hpp"

namespace ryd::config {

inline constexpr int kSchemaVersion = 1;

/// Parsed run configuration (JSON, versioned schema). Lengths are stored
/// in the declared unit and converted on demand; frequencies are linear
/// MHz in the file and converted to angular units for the simulator.
struct RunConfig {
  int schema_version = kSchemaVersion;

  // species
  double Z = 1.0;
  std::string energy_model = "quantum_defect";  // or "hydrogenic"
  std::map<int, double> defects;                // l -> delta_l
  int n = 42;

  // geometry
  std::array<Eigen::Vector3d, 3> positions{};
  std::string length_unit = "um";  // "um" or "a0"

  std::vector<std::string> subspaces = {"sp", "pd", "spd"};

  blockade::BlockadeOptions blockade;

  // gate options
  std::string protocol = "toffoli";  // or "ccphase"
  double rabi_mhz = 0.1;
  std::string interaction_mode = "effective-diagonal";  // or "full-exchange"
  std::string shift_source;  // path of a spectra JSON report; empty means
                             // the explicit deltas below are used
  std::optional<double> delta_sp_mhz;
  std::optional<double> delta_pd_mhz;
  std::optional<double> delta_spd_mhz;

  // output
  std::string format = "json";  // "json" or "csv"
  std::string output_path;      // empty -> stdout
};

/// Parse and validate; ConfigError on schema violations.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
std::string dump_config(const RunConfig& config);

Geometry geometry_bohr(const RunConfig& config);
EnergyModel energy_model(const RunConfig& config);
coupling::Subspace parse_subspace(const std::string& name);

/// Smallest nonzero |shift| per manifold in MHz, the worst case for the
/// blockade argument.
struct ShiftSource {
  double sp_mhz = 0;
  double pd_mhz = 0;
  double spd_mhz = 0;
};

/// Builds the simulator interaction from the config: either explicit
/// deltas or a spectra JSON written by the shifts command (round trip).
gatesim::InteractionSpec interaction_from_config(const RunConfig& config);
ShiftSource read_shift_source(const std::string& json_text);

// Report writers. All emit fixed formatting so identical inputs give
// byte-identical files.
std::string spectra_json(const std::vector<coupling::ShiftSpectrum>& spectra);
std::string spectra_csv(const std::vector<coupling::ShiftSpectrum>& spectra);
std::string blockade_json(const blockade::BlockadeReport& report);
std::string blockade_csv(const blockade::BlockadeReport& report);
std::string gate_json(const gatesim::GateResult& result,
                      const std::string& protocol);
std::string gate_csv(const gatesim::GateResult& result,
                     const std::string& protocol);

}  // namespace ryd::config
