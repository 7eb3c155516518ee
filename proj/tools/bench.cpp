// Compares the OpenMP kernels against their serial reference
// implementations: spd matrix assembly and the blockade channel sweep.

#include <chrono>
#include <cstdio>

#include "ryd/blockade.hpp"
#include "ryd/coupling.hpp"
#include "ryd/units.hpp"

using Clock = std::chrono::steady_clock;

static double seconds(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

int main() {
  const int n = 42;
  const ryd::Geometry geometry =
      ryd::Geometry::collinear_z(5.0 * ryd::units::micron_to_bohr);
  const ryd::EnergyModel model = ryd::EnergyModel::quantum_defect(
      {{0, 3.1311}, {1, 2.6548}, {2, 1.3479}, {3, 0.0165}});

  {
    const auto basis =
        ryd::coupling::build_subspace_basis(ryd::coupling::Subspace::spd, n);
    ryd::coupling::RadialSource radial;
    // warm the radial cache so both timings measure the assembly kernel
    ryd::coupling::assemble_interaction_matrix_ref(
        basis, geometry, radial, ryd::coupling::Subspace::spd);
    auto t0 = Clock::now();
    const auto serial = ryd::coupling::assemble_interaction_matrix_ref(
        basis, geometry, radial, ryd::coupling::Subspace::spd);
    auto t1 = Clock::now();
    const auto parallel = ryd::coupling::assemble_interaction_matrix(
        basis, geometry, radial, ryd::coupling::Subspace::spd);
    auto t2 = Clock::now();
    const double diff = (serial.entries - parallel.entries).norm();
    std::printf("spd assembly (%zux%zu): serial %.3fs  openmp %.3fs  "
                "speedup %.2fx  |diff| %.2e\n",
                basis.size(), basis.size(), seconds(t0, t1), seconds(t1, t2),
                seconds(t0, t1) / seconds(t1, t2), diff);
  }

  {
    ryd::coupling::RadialSource radial;
    ryd::blockade::BlockadeOptions options;
    options.n_window = 6;  // widen the sweep to give the kernel some work
    ryd::blockade::check_negligibility_ref(n, geometry, model, options,
                                           radial);  // warm the cache
    auto t0 = Clock::now();
    const auto serial = ryd::blockade::check_negligibility_ref(
        n, geometry, model, options, radial);
    auto t1 = Clock::now();
    const auto parallel = ryd::blockade::check_negligibility(
        n, geometry, model, options, radial);
    auto t2 = Clock::now();
    std::printf("blockade sweep (%zu channels): serial %.3fs  openmp %.3fs  "
                "speedup %.2fx  |margin diff| %.2e\n",
                serial.channels.size(), seconds(t0, t1), seconds(t1, t2),
                seconds(t0, t1) / seconds(t1, t2),
                std::abs(serial.margin_sum - parallel.margin_sum));
  }
  return 0;
}
