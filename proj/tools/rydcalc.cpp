#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ryd/blockade.hpp"
#include "ryd/config.hpp"
#include "ryd/coupling.hpp"
#include "ryd/gatesim.hpp"
#include "ryd/hydrogenics.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitComputation = 3;

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ryd::ConfigError("cannot write " + path);
  out << text;
}

int cmd_radial(int n, int l, int n_prime, int l_prime,
               const std::string& method) {
  if (std::abs(l - l_prime) != 1)
    std::cerr << "warning: |l - l'| != 1; this element is unused by the "
                 "dipole-dipole pipeline\n";
  const auto result =
      method == "quadrature"
          ? ryd::hydro::radial_integral_quadrature(n, l, n_prime, l_prime)
          : ryd::hydro::radial_integral_closed(n, l, n_prime, l_prime);
  std::printf("R_{%d%c}^{%d%c} = %.12g a0 (%s)\n", n,
              ryd::orbital_letter(l), n_prime, ryd::orbital_letter(l_prime),
              result.value, method.c_str());
  return 0;
}

int cmd_shifts(const ryd::config::RunConfig& config,
               const std::string& output, const std::string& format) {
  const auto geometry = ryd::config::geometry_bohr(config);
  const ryd::coupling::RadialSource radial;
  std::vector<ryd::coupling::ShiftSpectrum> spectra;
  for (const auto& name : config.subspaces) {
    const auto kind = ryd::config::parse_subspace(name);
    const auto basis = ryd::coupling::build_subspace_basis(kind, config.n);
    const auto matrix = ryd::coupling::assemble_interaction_matrix(
        basis, geometry, radial, kind);
    spectra.push_back(ryd::coupling::eigen_shifts(matrix));
  }
  emit(format == "csv" ? ryd::config::spectra_csv(spectra)
                       : ryd::config::spectra_json(spectra),
       output);
  return 0;
}

int cmd_blockade(const ryd::config::RunConfig& config,
                 const std::string& output, const std::string& format) {
  const auto geometry = ryd::config::geometry_bohr(config);
  const auto model = ryd::config::energy_model(config);
  const ryd::coupling::RadialSource radial;
  const auto report = ryd::blockade::check_negligibility(
      config.n, geometry, model, config.blockade, radial);
  emit(format == "csv" ? ryd::config::blockade_csv(report)
                       : ryd::config::blockade_json(report),
       output);
  if (!report.alarms.empty()) {
    for (const auto& alarm : report.alarms)
      std::cerr << "alarm: " << alarm << "\n";
    return kExitComputation;
  }
  return report.pass ? 0 : kExitComputation;
}

int cmd_gatesim(const ryd::config::RunConfig& config,
                const std::string& protocol, const std::string& output,
                const std::string& format) {
  const auto interaction = ryd::config::interaction_from_config(config);
  const double omega = 2 * M_PI * config.rabi_mhz;
  const auto result = protocol == "ccphase"
                          ? ryd::gatesim::run_ccphase_protocol(omega,
                                                               interaction)
                          : ryd::gatesim::run_toffoli_protocol(omega,
                                                               interaction);
  emit(format == "csv" ? ryd::config::gate_csv(result, protocol)
                       : ryd::config::gate_json(result, protocol),
       output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "rydcalc: Rydberg dipole-dipole shifts, blockade feasibility and "
      "three-qubit gate simulation"};
  app.require_subcommand(1);

  // radial
  int n = 42, l = 0, n_prime = 42, l_prime = 1;
  std::string method = "closed";
  auto* radial = app.add_subcommand("radial", "one radial matrix element");
  radial->add_option("n", n)->required();
  radial->add_option("l", l)->required();
  radial->add_option("n_prime", n_prime)->required();
  radial->add_option("l_prime", l_prime)->required();
  radial->add_option("--method", method)
      ->check(CLI::IsMember({"closed", "quadrature"}));

  std::string config_path, output, format;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "run configuration (JSON)")
        ->required();
    cmd->add_option("--output", output, "output file (default stdout)");
    cmd->add_option("--format", format)
        ->check(CLI::IsMember({"json", "csv"}));
  };
  auto* shifts =
      app.add_subcommand("shifts", "first-order shift spectra per subspace");
  add_common(shifts);
  auto* blockade =
      app.add_subcommand("blockade", "coupling-channel negligibility check");
  add_common(blockade);
  std::string protocol;
  auto* gatesim = app.add_subcommand("gatesim", "pulse-protocol simulation");
  add_common(gatesim);
  gatesim->add_option("--protocol", protocol)
      ->check(CLI::IsMember({"toffoli", "ccphase"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (radial->parsed()) return cmd_radial(n, l, n_prime, l_prime, method);

    const auto config = ryd::config::load_config(config_path);
    if (output.empty()) output = config.output_path;
    if (format.empty()) format = config.format;
    if (shifts->parsed()) return cmd_shifts(config, output, format);
    if (blockade->parsed()) return cmd_blockade(config, output, format);
    if (protocol.empty()) protocol = config.protocol;
    return cmd_gatesim(config, protocol, output, format);
  } catch (const ryd::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ryd::StructureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitComputation;
  }
}
