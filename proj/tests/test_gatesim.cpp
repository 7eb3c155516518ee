#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "ryd/gatesim.hpp"

using namespace ryd;
using gatesim::InteractionMode;
using gatesim::InteractionSpec;
using gatesim::PulseSpec;
using gatesim::PulseSequence;
using gatesim::SystemModel;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

InteractionSpec uniform(double delta) {
  return {InteractionMode::effective_diagonal, delta, delta, delta};
}

Eigen::MatrixXcd ideal_toffoli() {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(8, 8);
  u(6, 6) = u(7, 7) = 0;
  u(6, 7) = u(7, 6) = 1;
  return u;
}

}  // namespace

TEST_CASE("hamiltonian assembly") {
  const SystemModel atoms = SystemModel::atoms();
  CHECK(atoms.dim() == 125);
  CHECK(SystemModel::registers().dim() == 27);

  // no pulses, no interaction
  CHECK(gatesim::build_hamiltonian(atoms, {}, uniform(0)).norm() == 0.0);

  // single resonant pulse: off-diagonal Omega/2 blocks
  PulseSpec p{0, 0, 2, 2.0, M_PI, 0.0, 0.0};
  const auto h = gatesim::build_hamiltonian(atoms, {p}, uniform(0));
  CHECK(h(atoms.index(0, 0, 0), atoms.index(2, 0, 0)).real() ==
        doctest::Approx(1.0));
  CHECK(h(atoms.index(0, 3, 1), atoms.index(2, 3, 1)).real() ==
        doctest::Approx(1.0));
  CHECK((h - h.adjoint()).norm() == 0.0);

  // blockade diagonal: pair and triple shifts, (r1, r3) unshifted
  const InteractionSpec spec{InteractionMode::effective_diagonal, 3.0, 5.0,
                             11.0};
  const auto v = gatesim::build_hamiltonian(atoms, {}, spec);
  CHECK(v(atoms.index(2, 3, 0), atoms.index(2, 3, 0)).real() == 3.0);
  CHECK(v(atoms.index(0, 3, 4), atoms.index(0, 3, 4)).real() == 5.0);
  CHECK(v(atoms.index(2, 3, 4), atoms.index(2, 3, 4)).real() == 11.0);
  CHECK(v(atoms.index(2, 0, 4), atoms.index(2, 0, 4)).real() == 0.0);
}

TEST_CASE("pulse validation") {
  const SystemModel atoms = SystemModel::atoms();
  PulseSequence seq;
  seq.pulses.push_back({0, 0, 3, 1.0, M_PI, 0.0, 0.0});  // atom 0 lasers hit r1
  CHECK_THROWS_AS(seq.validate(atoms), StructureError);

  seq.pulses.clear();
  seq.pulses.push_back({1, 0, 3, 1.0, M_PI, 0.0, 0.0});
  seq.pulses.push_back({1, 1, 3, 1.0, M_PI, 0.0, 1.0});  // overlaps the first
  CHECK_THROWS_AS(seq.validate(atoms), ScheduleError);

  seq.pulses[1].start = M_PI;  // back to back is fine
  CHECK_NOTHROW(seq.validate(atoms));
}

TEST_CASE("evolve basics") {
  CHECK((gatesim::evolve(Eigen::MatrixXcd::Zero(4, 4), 1.7) -
         Eigen::MatrixXcd::Identity(4, 4))
            .norm() < 1e-14);

  // resonant pi pulse transfers everything
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2, 2);
  h(0, 1) = h(1, 0) = 0.5;  // Omega = 1
  const auto u = gatesim::evolve(h, M_PI);
  CHECK(std::abs(u(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(u(0, 0)) < 1e-12);

  // detuned pulse: peak transfer Omega^2 / (Omega^2 + Delta^2)
  const double delta = 7.0;
  h(1, 1) = delta;
  const double peak_time = M_PI / std::sqrt(1 + delta * delta);
  const auto ud = gatesim::evolve(h, peak_time);
  CHECK(std::abs(ud(1, 0)) * std::abs(ud(1, 0)) ==
        doctest::Approx(1.0 / (1 + delta * delta)).epsilon(1e-10));

  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(gatesim::evolve(bad, 1.0), StructureError);
}

TEST_CASE("toffoli: exact blockade limit") {
  const auto r = gatesim::run_toffoli_protocol(1.0, uniform(kInf));
  CHECK(r.unitarity_defect < 1e-10);
  CHECK(r.leakage < 1e-10);
  const Eigen::MatrixXcd diff =
      gatesim::remove_global_phase(r.adjusted_gate, r.ideal) - r.ideal;
  CHECK(diff.cwiseAbs().maxCoeff() < 1e-6);
  CHECK(1.0 - r.fidelity_adjusted < 1e-6);
}

TEST_CASE("toffoli: zero shifts flip the target unconditionally") {
  const auto r = gatesim::run_toffoli_protocol(1.0, uniform(0.0));
  Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(8, 8);
  for (int c = 0; c < 4; ++c) {
    expect(2 * c, 2 * c + 1) = 1;
    expect(2 * c + 1, 2 * c) = 1;
  }
  CHECK((r.adjusted_gate - expect).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("toffoli: finite blockade fidelities and monotone leakage") {
  const auto r20 = gatesim::run_toffoli_protocol(1.0, uniform(20.0));
  CHECK(r20.fidelity_adjusted >= 0.99);
  CHECK(r20.unitarity_defect < 1e-10);

  const auto r1e4 = gatesim::run_toffoli_protocol(1.0, uniform(1e4));
  CHECK(1.0 - r1e4.fidelity_adjusted <= 1e-4);

  double prev = 1.0;
  for (double ratio : {5.0, 10.0, 20.0, 50.0, 100.0}) {
    const auto r = gatesim::run_toffoli_protocol(1.0, uniform(ratio));
    CHECK(r.leakage <= prev + 1e-12);
    prev = r.leakage;
  }
}

TEST_CASE("toffoli: control symmetry") {
  const InteractionSpec spec{InteractionMode::effective_diagonal, 35.0, 12.0,
                             21.0};
  InteractionSpec swapped = spec;
  std::swap(swapped.delta_sp, swapped.delta_pd);
  const auto a = gatesim::run_toffoli_protocol(1.0, spec, false);
  const auto b = gatesim::run_toffoli_protocol(1.0, swapped, true);
  // same truth table: compare element magnitudes
  CHECK((a.adjusted_gate.cwiseAbs() - b.adjusted_gate.cwiseAbs())
            .maxCoeff() < 1e-10);
}

TEST_CASE("toffoli: rubidium worst-case shifts at 0.1 MHz drive") {
  // angular units 2 pi MHz; smallest |shift| per manifold, true collinear
  const double tp = 2 * M_PI;
  const InteractionSpec spec{InteractionMode::effective_diagonal,
                             tp * 18.193, tp * 1.2512, tp * 0.4378};
  const auto r = gatesim::run_toffoli_protocol(tp * 0.1, spec);
  CHECK(r.fidelity_adjusted >= 0.99);
}

TEST_CASE("toffoli: full-exchange interaction") {
  const InteractionSpec fx{InteractionMode::full_exchange, 1e4, 1e4, 1e4};
  const auto r = gatesim::run_toffoli_protocol(1.0, fx);
  CHECK(r.unitarity_defect < 1e-10);
  CHECK(r.fidelity_adjusted >= 0.999);

  const InteractionSpec fx20{InteractionMode::full_exchange, 20.0, 20.0,
                             20.0};
  CHECK(gatesim::run_toffoli_protocol(1.0, fx20).fidelity_adjusted <
        r.fidelity_adjusted + 1e-12);

  // exchange mode needs the atom model and finite amplitudes
  const InteractionSpec fx_inf{InteractionMode::full_exchange, kInf, 0, 0};
  CHECK_THROWS_AS(
      gatesim::build_hamiltonian(SystemModel::atoms(), {}, fx_inf),
      StructureError);
  CHECK_THROWS_AS(
      gatesim::build_hamiltonian(SystemModel::registers(), {}, fx),
      StructureError);
}

TEST_CASE("ccphase: exact blockade limit") {
  const auto r = gatesim::run_ccphase_protocol(1.0, uniform(kInf));
  CHECK(r.unitarity_defect < 1e-10);
  Eigen::MatrixXcd expect = Eigen::MatrixXcd::Identity(8, 8);
  expect(1, 1) = -1;
  CHECK((gatesim::remove_global_phase(r.adjusted_gate, r.ideal) - expect)
            .cwiseAbs()
            .maxCoeff() < 1e-10);
}

TEST_CASE("ccphase: large finite blockade within 1e-4 elementwise") {
  const auto r = gatesim::run_ccphase_protocol(1.0, uniform(1e4));
  CHECK(r.unitarity_defect < 1e-10);
  CHECK((gatesim::remove_global_phase(r.adjusted_gate, r.ideal) - r.ideal)
            .cwiseAbs()
            .maxCoeff() < 1e-4);
}

TEST_CASE("ccphase: zero shifts phase every target-1 state") {
  const auto r = gatesim::run_ccphase_protocol(1.0, uniform(0.0));
  Eigen::MatrixXcd expect = Eigen::MatrixXcd::Identity(8, 8);
  for (int k : {1, 3, 5, 7}) expect(k, k) = -1;
  CHECK((r.adjusted_gate - expect).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(r.fidelity_adjusted < 1.0);  // honest: not the ideal ccphase
}

TEST_CASE("ccphase: step A then step C alone is the identity") {
  const SystemModel model = SystemModel::registers();
  PulseSequence seq;
  double t = 0;
  for (int rep = 0; rep < 2; ++rep)
    for (int site : {0, 2}) {
      seq.pulses.push_back({site, 1, 2, 1.0, M_PI, 0.0, t});
      t += M_PI;
    }
  const auto u = gatesim::propagate(model, seq, uniform(kInf));
  Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(8, model.dim());
  for (int c1 = 0; c1 < 2; ++c1)
    for (int c2 = 0; c2 < 2; ++c2)
      for (int tt = 0; tt < 2; ++tt)
        proj(c1 * 4 + c2 * 2 + tt, model.index(c1, tt, c2)) = 1;
  Eigen::MatrixXcd gate = proj * u * proj.transpose();
  // undo the deterministic -1 per excited control
  Eigen::MatrixXcd frame = Eigen::MatrixXcd::Identity(8, 8);
  for (int k = 0; k < 8; ++k) {
    int sign = 1;
    if (k & 4) sign = -sign;
    if (k & 2) sign = -sign;
    frame(k, k) = sign;
  }
  CHECK((frame * gate - Eigen::MatrixXcd::Identity(8, 8))
            .cwiseAbs()
            .maxCoeff() < 1e-8);
}
