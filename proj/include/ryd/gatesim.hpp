#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "ryd/errors.hpp"

namespace ryd::gatesim {

/// Three-site product space. Atom mode: five levels per site
/// {g=0, q=1, r1=2, r2=3, r3=4}, site k's laser addresses level 2+k only.
/// Register mode: three effective levels per ensemble
/// {no excitation=0, one q excitation=1, one Rydberg excitation=2}; the
/// Rydberg level of register k plays the role of r_{k+1}.
struct SystemModel {
  int levels = 5;
  bool register_mode = false;

  static SystemModel atoms() { return {5, false}; }
  static SystemModel registers() { return {3, true}; }

  int dim() const { return levels * levels * levels; }
  int index(int a, int b, int c) const { return (a * levels + b) * levels + c; }
  /// Rydberg level reached by site k's laser.
  int addressed_level(int site) const { return register_mode ? 2 : 2 + site; }
};

/// One laser pulse: resonant drive on one transition of one site.
struct PulseSpec {
  int target = 0;       // site index 0..2, ordered (C1, T, C2)
  int level_low = 0;    // g or q
  int level_high = 2;   // the site's addressed Rydberg level
  double omega = 1;     // angular Rabi frequency
  double area = M_PI;   // pi or 2 pi
  double phase = 0;
  double start = 0;

  double duration() const { return area / omega; }
  double end() const { return start + duration(); }
};

struct PulseSequence {
  std::vector<PulseSpec> pulses;

  /// Rejects pulses outside the model (bad site, unaddressed Rydberg
  /// level, nonpositive omega/area) and same-target overlaps in time.
  void validate(const SystemModel& model) const;
};

enum class InteractionMode { effective_diagonal, full_exchange };

/// Blockade interaction, angular-frequency units matching PulseSpec. In
/// effective-diagonal mode delta_* shift the pair states (r1,r2), (r2,r3)
/// and, exclusively, the triple (r1,r2,r3); the (r1,r3) pair is exactly
/// unshifted. Infinite deltas request the exact-blockade limit: couplings
/// into the shifted states are dropped. Full-exchange mode (atoms only)
/// reinterprets delta_sp/delta_pd as exchange amplitudes
/// |r1 r2> <-> |r2 r1> and |r2 r3> <-> |r3 r2| on the corresponding site
/// pairs, keeping delta_spd diagonal.
struct InteractionSpec {
  InteractionMode mode = InteractionMode::effective_diagonal;
  double delta_sp = 0;
  double delta_pd = 0;
  double delta_spd = 0;
};

/// H(t) for the given active pulses: sum of (omega/2) e^{i phase}
/// |low><high| + h.c. per pulse plus the interaction terms. Infinite
/// shifts produce the exact-blockade Hamiltonian described above.
Eigen::MatrixXcd build_hamiltonian(const SystemModel& model,
                                   const std::vector<PulseSpec>& active,
                                   const InteractionSpec& interaction);

/// exp(-i H t) via eigendecomposition; H must be Hermitian.
Eigen::MatrixXcd evolve(const Eigen::MatrixXcd& hamiltonian, double duration);

/// Propagator of a validated sequence of non-overlapping pulses, applied
/// in time order.
Eigen::MatrixXcd propagate(const SystemModel& model,
                           const PulseSequence& sequence,
                           const InteractionSpec& interaction);

/// |Tr(U_ideal^dag U)| / d. Dimension mismatch throws.
double fidelity(const Eigen::MatrixXcd& u_sim, const Eigen::MatrixXcd& u_ideal);
/// min_k |<k| U_ideal^dag U_sim |k>|.
double worst_overlap(const Eigen::MatrixXcd& u_sim,
                     const Eigen::MatrixXcd& u_ideal);
/// U_sim with the trace-optimal global phase against u_ideal removed.
Eigen::MatrixXcd remove_global_phase(const Eigen::MatrixXcd& u_sim,
                                     const Eigen::MatrixXcd& u_ideal);

struct GateResult {
  Eigen::MatrixXcd propagator;     // full space, 125 or 27
  Eigen::MatrixXcd raw_gate;       // 8x8 projection onto |c1 c2 t>
  Eigen::MatrixXcd adjusted_gate;  // raw gate with the deterministic
                                   // single-site frame phases undone
  Eigen::MatrixXcd ideal;          // 8x8 target gate
  double fidelity_raw = 0;
  double fidelity_adjusted = 0;
  double worst_overlap_adjusted = 0;
  double leakage = 0;              // 1 - min_k |raw_gate column k|^2
  double unitarity_defect = 0;     // |U^dag U - 1| of the full propagator
};

/// Seven sequential pi pulses on three atoms: excite both controls
/// g <-> r, swap g/q on the target through r2 (three pulses), de-excite
/// the controls. swap_controls exchanges the roles of C1 and C2.
GateResult run_toffoli_protocol(double omega, const InteractionSpec& interaction,
                                bool swap_controls = false);

/// Register protocol: pi pulses q <-> r on both control ensembles, a 2 pi
/// pulse q <-> r on the target ensemble, then the controls again. The -1
/// phase lands on |c1 c2 t> = |001> only.
GateResult run_ccphase_protocol(double omega,
                                const InteractionSpec& interaction);

}  // namespace ryd::gatesim
