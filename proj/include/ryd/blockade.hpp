#pragma once

#include <string>
#include <vector>

#include "ryd/coupling.hpp"
#include "ryd/geometry.hpp"
#include "ryd/orbital.hpp"

namespace ryd::blockade {

/// One unwanted two-atom coupling |n la, n lb> <-> |n1 l1, n2 l2>,
/// instantiated from the eight channel families.
struct CouplingChannel {
  int n;            // common principal quantum number of the initial pair
  int la, lb;       // initial single-atom l values
  int n1, l1;       // final atom states
  int n2, l2;
  coupling::Subspace subspace;  // degenerate manifold the initial pair
                                // belongs to (sp, pd) or spd for the
                                // uncoupled s-d pair
  std::string label() const;
};

/// All Table-style channel families over n1, n2 in [n - window, n + window]
/// with the stated (n1, n2) != (n, n) exclusions, in deterministic order.
std::vector<CouplingChannel> enumerate_channels(int n, int n_window);

/// Sum of final minus initial single-atom energies, Hartree.
double channel_detuning(const CouplingChannel& channel,
                        const EnergyModel& model);

/// max over magnetic sublevels of |<init|V_dd|final>|^2 / |detuning|, at
/// the channel's pair separation, Hartree. Throws ResonanceAlarm when
/// |detuning| < resonance_threshold.
double second_order_estimate(const CouplingChannel& channel,
                             const Geometry& geometry,
                             const EnergyModel& model,
                             const coupling::RadialSource& radial,
                             double resonance_threshold = 0.0);

struct BlockadeOptions {
  int n_window = 4;
  double margin_threshold = 0.1;    // pass iff sum of margins below this
  double rabi_ratio = 0.05;         // Omega_max = ratio * min |Delta_sp|
  double resonance_factor = 10.0;   // resonant if |detuning| < factor *
                                    // largest first-order shift
};

struct ChannelReport {
  CouplingChannel channel;
  double detuning_mhz = 0;
  double estimate_mhz = 0;   // second-order shift estimate
  double margin = 0;         // estimate / min first-order shift of the
                             // channel's subspace
  bool resonant = false;
};

struct BlockadeReport {
  std::vector<ChannelReport> channels;
  std::vector<std::string> alarms;

  double min_shift_sp_mhz = 0;   // smallest nonzero |Delta| per manifold
  double min_shift_pd_mhz = 0;
  double min_shift_spd_mhz = 0;
  double max_shift_mhz = 0;

  double margin_sum = 0;
  double margin_max = 0;
  bool pass = false;

  double omega_max_mhz = 0;       // recommended max Rabi frequency
  double min_step_duration_us = 0;  // pi-pulse duration at Omega_max
};

/// Full Eq.-style negligibility pipeline: first-order spectra, channel
/// sweep (OpenMP-parallel), aggregation. Channels whose detuning falls
/// below the resonance threshold are reported as alarms rather than
/// thrown.
BlockadeReport check_negligibility(int n, const Geometry& geometry,
                                   const EnergyModel& model,
                                   const BlockadeOptions& options,
                                   const coupling::RadialSource& radial);

/// Serial reference implementation; kept for testing and benchmarking.
BlockadeReport check_negligibility_ref(int n, const Geometry& geometry,
                                       const EnergyModel& model,
                                       const BlockadeOptions& options,
                                       const coupling::RadialSource& radial);

}  // namespace ryd::blockade
