// Acceptance gate: one line of output per criterion, "criterion N: PASS"
// or "criterion N: FAIL". Run with a number 1..9 to check one criterion,
// or with no arguments for all. Exit code is the number of failures.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "ryd/angular.hpp"
#include "ryd/blockade.hpp"
#include "ryd/coupling.hpp"
#include "ryd/gatesim.hpp"
#include "ryd/hydrogenics.hpp"
#include "ryd/units.hpp"

using namespace ryd;
using coupling::Subspace;

namespace {

bool require(bool ok, const char* what) {
  if (!ok) std::fprintf(stderr, "  failed: %s\n", what);
  return ok;
}

bool close_rel(double value, double expect, double tol) {
  return std::abs(value - expect) <= tol * std::abs(expect);
}

Geometry random_geometry(std::mt19937& rng) {
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  while (true) {
    std::array<Eigen::Vector3d, 3> pos;
    for (auto& p : pos)
      p = 1e5 * Eigen::Vector3d(coord(rng), coord(rng), coord(rng));
    bool ok = true;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if ((pos[i] - pos[j]).norm() < 5e4) ok = false;
    if (ok) return Geometry(pos);
  }
}

coupling::ShiftSpectrum spectrum(const Geometry& geometry, Subspace kind,
                                 int n, const coupling::RadialSource& radial) {
  const auto basis = coupling::build_subspace_basis(kind, n);
  return coupling::eigen_shifts(
      coupling::assemble_interaction_matrix(basis, geometry, radial, kind));
}

Geometry paper_geometry() {
  return Geometry::collinear_z(5.0 * units::micron_to_bohr);
}

// 1: sp dimensionless spectrum is {-2/3, -1/3, -1/3, 1/3, 1/3, 2/3} for
// 20 random geometries, within 1e-10.
bool criterion1() {
  std::mt19937 rng(101);
  const coupling::RadialSource radial;
  const double expect[6] = {-2.0 / 3, -1.0 / 3, -1.0 / 3,
                            1.0 / 3,  1.0 / 3,  2.0 / 3};
  bool ok = true;
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = spectrum(random_geometry(rng), Subspace::sp, 42, radial);
    ok &= require(s.dimensionless.size() == 6, "sp spectrum has 6 values");
    for (int i = 0; i < 6 && ok; ++i)
      ok &= require(std::abs(s.dimensionless[i] - expect[i]) < 1e-10,
                    "sp eigenvalue off the universal set");
  }
  return ok;
}

// 2: pd nonzero eigenvalue magnitudes span [0.023, 0.643] within 2%,
// geometry independent.
bool criterion2() {
  std::mt19937 rng(202);
  const coupling::RadialSource radial;
  bool ok = true;
  for (int trial = 0; trial < 20; ++trial) {
    const auto mags = spectrum(random_geometry(rng), Subspace::pd, 42, radial)
                          .nonzero_magnitudes_dimensionless();
    ok &= require(!mags.empty(), "pd spectrum has nonzero values");
    if (!ok) break;
    ok &= require(close_rel(mags.front(), 0.023, 0.02),
                  "pd minimum magnitude within 2% of 0.023");
    ok &= require(close_rel(mags.back(), 0.643, 0.02),
                  "pd maximum magnitude within 2% of 0.643");
  }
  return ok;
}

// 3: radial integrals: the two n = 42 elements within 0.1% of the
// 4-digit references, and closed form vs quadrature oracle to 1e-9
// relative for 100 sampled arguments with n, n' <= 50.
bool criterion3() {
  bool ok = true;
  const double sp = hydro::radial_integral_closed(42, 0, 42, 1).value;
  const double pd = hydro::radial_integral_closed(42, 1, 42, 2).value;
  ok &= require(close_rel(std::abs(sp), 2645.0, 1e-3),
                "R_42s^42p within 0.1% of 2645");
  ok &= require(close_rel(std::abs(pd), 2644.0, 1e-3),
                "R_42p^42d within 0.1% of 2644");

  std::mt19937 rng(303);
  std::uniform_int_distribution<int> pick_n(1, 50);
  for (int trial = 0; trial < 100 && ok; ++trial) {
    const int n = pick_n(rng);
    const int n2 = pick_n(rng);
    std::uniform_int_distribution<int> pick_l(0, n - 1);
    const int l = pick_l(rng);
    const int l2 = std::min(n2 - 1, l + 1);
    const double closed = hydro::radial_integral_closed(n, l, n2, l2).value;
    const double quad =
        hydro::radial_integral_quadrature(n, l, n2, l2).value;
    const double scale = std::max({std::abs(closed), std::abs(quad), 1e-30});
    if (std::abs(closed - quad) / scale >= 1e-9) {
      std::fprintf(stderr, "  failed: closed vs quadrature at n=%d l=%d "
                           "n'=%d l'=%d (rel %.2e)\n",
                   n, l, n2, l2, std::abs(closed - quad) / scale);
      ok = false;
    }
  }
  return ok;
}

// 4: physical shift endpoints in the n = 42 collinear 5 um scenario.
bool criterion4() {
  const coupling::RadialSource radial;
  const Geometry geometry = paper_geometry();
  bool ok = true;
  const auto sp =
      spectrum(geometry, Subspace::sp, 42, radial).nonzero_magnitudes_mhz();
  ok &= require(close_rel(sp.front(), 18.0, 0.05) &&
                    close_rel(sp.back(), 36.0, 0.05),
                "sp endpoints within 5% of 18 and 36 MHz");
  const auto pd =
      spectrum(geometry, Subspace::pd, 42, radial).nonzero_magnitudes_mhz();
  ok &= require(close_rel(pd.front(), 1.3, 0.10) &&
                    close_rel(pd.back(), 35.0, 0.10),
                "pd endpoints within 10% of 1.3 and 35 MHz");
  const auto spd =
      spectrum(geometry, Subspace::spd, 42, radial).nonzero_magnitudes_mhz();
  std::fprintf(stderr, "  spd endpoints computed: %.4f and %.4f MHz "
                       "(reference 2 and 67)\n",
               spd.front(), spd.back());
  ok &= require(close_rel(spd.front(), 2.0, 0.10) &&
                    close_rel(spd.back(), 67.0, 0.10),
                "spd endpoints within 10% of 2 and 67 MHz");
  return ok;
}

// 5: the |42s,42d> / |42d,42s> manifolds are uncoupled below 1e-12 of
// the sp coupling scale.
bool criterion5() {
  const coupling::RadialSource radial;
  const auto pair =
      PairGeometry::from_vector({0, 0, 10.0 * units::micron_to_bohr});
  const double rsp = radial.integral(42, 0, 42, 1);
  const double scale =
      rsp * rsp / (pair.distance * pair.distance * pair.distance);
  double worst = 0;
  for (int md = -2; md <= 2; ++md)
    for (int md2 = -2; md2 <= 2; ++md2)
      worst = std::max(
          worst, std::abs(coupling::pair_matrix_element(
                     coupling::AtomState::rydberg({42, 0, 0}),
                     coupling::AtomState::rydberg({42, 2, md}),
                     coupling::AtomState::rydberg({42, 2, md2}),
                     coupling::AtomState::rydberg({42, 0, 0}), pair,
                     radial)));
  return require(worst < 1e-12 * std::abs(scale),
                 "s-d cross manifold elements vanish");
}

// 6: property suite.
bool criterion6() {
  bool ok = true;
  for (int n : {1, 2, 5, 10, 20, 30, 42, 50, 60}) {
    for (int l : {0, n / 2, n - 1}) {
      const double norm = hydro::radial_overlap_quadrature(n, l, n);
      if (std::abs(norm - 1.0) > 1e-10) {
        std::fprintf(stderr, "  failed: normalization at n=%d l=%d\n", n, l);
        ok = false;
      }
    }
  }

  const coupling::RadialSource radial;
  const Geometry geometry = paper_geometry();
  const auto basis = coupling::build_subspace_basis(Subspace::spd, 42);
  const auto matrix = coupling::assemble_interaction_matrix(
      basis, geometry, radial, Subspace::spd);
  ok &= require((matrix.entries - matrix.entries.adjoint()).norm() <=
                    1e-12 * matrix.entries.norm(),
                "Hermiticity within 1e-12");

  const auto base = coupling::eigen_shifts(matrix);
  const Eigen::Matrix3d rot =
      Eigen::AngleAxisd(1.1, Eigen::Vector3d(2, -1, 3).normalized())
          .toRotationMatrix();
  std::array<Eigen::Vector3d, 3> pos;
  for (int i = 0; i < 3; ++i) pos[i] = rot * geometry.positions[i];
  const auto rotated = coupling::eigen_shifts(
      coupling::assemble_interaction_matrix(basis, Geometry(pos), radial,
                                            Subspace::spd));
  const Geometry doubled =
      Geometry::collinear_z(10.0 * units::micron_to_bohr);
  const auto scaled = coupling::eigen_shifts(
      coupling::assemble_interaction_matrix(basis, doubled, radial,
                                            Subspace::spd));
  const double top = std::abs(base.hartree.back());
  for (size_t i = 0; i < base.hartree.size(); ++i) {
    ok &= require(std::abs(base.hartree[i] - rotated.hartree[i]) <=
                      1e-10 * top,
                  "rotation invariance within 1e-10");
    ok &= require(std::abs(base.hartree[i] - 8 * scaled.hartree[i]) <=
                      1e-10 * top,
                  "1/R^3 scaling within 1e-10");
    if (!ok) break;
  }

  for (int l = 0; l <= 4 && ok; ++l)
    for (int lp = 0; lp <= 4 && ok; ++lp)
      for (int m = -l; m <= l && ok; ++m)
        for (int mp = -lp; mp <= lp && ok; ++mp) {
          const bool allowed = angular::selection_rule_allowed(l, m, lp, mp);
          const double norm =
              angular::angular_vector_integral(l, m, lp, mp).value.norm();
          ok &= require(allowed == (norm > 1e-14),
                        "selection-rule zero pattern for l <= 4");
        }
  return ok;
}

// 7: Toffoli protocol.
bool criterion7() {
  using gatesim::InteractionMode;
  auto uniform = [](double d) {
    return gatesim::InteractionSpec{InteractionMode::effective_diagonal, d,
                                    d, d};
  };
  bool ok = true;
  const auto tight = gatesim::run_toffoli_protocol(1.0, uniform(1e4));
  ok &= require(1.0 - tight.fidelity_adjusted <= 1e-4,
                "fidelity deficit <= 1e-4 at Delta/Omega = 1e4");
  const auto loose = gatesim::run_toffoli_protocol(1.0, uniform(20.0));
  ok &= require(loose.fidelity_adjusted >= 0.99,
                "fidelity >= 0.99 at Delta/Omega = 20");

  const auto free = gatesim::run_toffoli_protocol(1.0, uniform(0.0));
  Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(8, 8);
  for (int c = 0; c < 4; ++c) {
    expect(2 * c, 2 * c + 1) = 1;
    expect(2 * c + 1, 2 * c) = 1;
  }
  ok &= require(
      (free.adjusted_gate - expect).cwiseAbs().maxCoeff() < 1e-8,
      "zero shifts flip the target unconditionally");
  return ok;
}

// 8: ccphase protocol.
bool criterion8() {
  const gatesim::InteractionSpec spec{
      gatesim::InteractionMode::effective_diagonal, 1e4, 1e4, 1e4};
  const auto r = gatesim::run_ccphase_protocol(1.0, spec);
  Eigen::MatrixXcd ideal = Eigen::MatrixXcd::Identity(8, 8);
  ideal(1, 1) = -1;
  bool ok = require(
      (gatesim::remove_global_phase(r.adjusted_gate, ideal) - ideal)
              .cwiseAbs()
              .maxCoeff() < 1e-4,
      "gate is diag(+1...) with -1 on |001> within 1e-4");
  ok &= require(r.unitarity_defect <= 1e-10,
                "full-space propagator unitary to 1e-10");
  return ok;
}

// 9: blockade feasibility with the Rb defects; alarms with hydrogenic
// energies.
bool criterion9() {
  const coupling::RadialSource radial;
  const auto model = EnergyModel::quantum_defect(
      {{0, 3.1311}, {1, 2.6548}, {2, 1.3479}, {3, 0.0165}});
  const auto report = blockade::check_negligibility(
      42, paper_geometry(), model, blockade::BlockadeOptions{}, radial);
  bool ok = require(report.pass && report.margin_sum < 0.1,
                    "Rb pipeline passes at threshold 0.1");
  ok &= require(report.omega_max_mhz > 0.3 && report.omega_max_mhz < 3.0,
                "Omega_max of order 1 MHz");
  ok &= require(report.min_step_duration_us > 0.3 &&
                    report.min_step_duration_us < 3.0,
                "step duration of order 1 us");

  const auto hydrogenic = blockade::check_negligibility(
      42, paper_geometry(), EnergyModel::hydrogenic(),
      blockade::BlockadeOptions{}, radial);
  ok &= require(!hydrogenic.alarms.empty() && !hydrogenic.pass,
                "hydrogenic energies raise resonance alarms");
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  bool (*criteria[])() = {criterion1, criterion2, criterion3,
                          criterion4, criterion5, criterion6,
                          criterion7, criterion8, criterion9};
  int first = 1, last = 9;
  if (argc > 1) {
    first = last = std::atoi(argv[1]);
    if (first < 1 || first > 9) {
      std::fprintf(stderr, "usage: %s [1..9]\n", argv[0]);
      return 64;
    }
  }
  int failures = 0;
  for (int i = first; i <= last; ++i) {
    bool ok = false;
    try {
      ok = criteria[i - 1]();
    } catch (const std::exception& e) {
      std::fprintf(stderr, "  exception: %s\n", e.what());
    }
    std::printf("criterion %d: %s\n", i, ok ? "PASS" : "FAIL");
    if (!ok) ++failures;
  }
  return failures;
}
