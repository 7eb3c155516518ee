#include "ryd/blockade.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>

#include "ryd/units.hpp"

namespace ryd::blockade {

namespace {

// (la, lb, l1, l2, exclude_nn). exclude_nn drops the (n1, n2) = (n, n)
// final state, which then lies inside the degenerate manifold itself and
// is already handled at first order.
struct Family {
  int la, lb, l1, l2;
  bool exclude_nn;
};

constexpr Family kFamilies[] = {
    {0, 1, 1, 0, true},   // |ns, np> <-> |n1 p, n2 s>
    {0, 1, 1, 2, false},  // |ns, np> <-> |n1 p, n2 d>
    {0, 2, 1, 1, false},  // |ns, nd> <-> |n1 p, n2 p>
    {0, 2, 1, 3, false},  // |ns, nd> <-> |n1 p, n2 f>
    {1, 2, 0, 1, false},  // |np, nd> <-> |n1 s, n2 p>
    {1, 2, 0, 3, false},  // |np, nd> <-> |n1 s, n2 f>
    {1, 2, 2, 1, true},   // |np, nd> <-> |n1 d, n2 p>
    {1, 2, 2, 3, false},  // |np, nd> <-> |n1 d, n2 f>
};

coupling::Subspace pair_subspace(int la, int lb) {
  const int lo = std::min(la, lb), hi = std::max(la, lb);
  if (lo == 0 && hi == 1) return coupling::Subspace::sp;
  if (lo == 1 && hi == 2) return coupling::Subspace::pd;
  return coupling::Subspace::spd;  // the uncoupled s-d pair
}

// The atom pair a channel lives on: s-p on (1,2), p-d on (2,3), s-d on
// the outer pair (1,3).
PairGeometry channel_pair(const CouplingChannel& channel,
                          const Geometry& geometry) {
  switch (channel.subspace) {
    case coupling::Subspace::sp: return geometry.pair(0, 1);
    case coupling::Subspace::pd: return geometry.pair(1, 2);
    case coupling::Subspace::spd: break;
  }
  return geometry.pair(0, 2);
}

}  // namespace

std::string CouplingChannel::label() const {
  std::ostringstream os;
  os << "|" << n << orbital_letter(la) << "," << n << orbital_letter(lb)
     << "><->|" << n1 << orbital_letter(l1) << "," << n2
     << orbital_letter(l2) << ">";
  return os.str();
}

std::vector<CouplingChannel> enumerate_channels(int n, int n_window) {
  if (n < 3 || n_window < 0)
    throw StructureError("enumerate_channels: need n >= 3, window >= 0");
  std::vector<CouplingChannel> channels;
  for (const auto& f : kFamilies) {
    for (int n1 = n - n_window; n1 <= n + n_window; ++n1) {
      for (int n2 = n - n_window; n2 <= n + n_window; ++n2) {
        if (f.exclude_nn && n1 == n && n2 == n) continue;
        if (n1 < 1 || n2 < 1 || f.l1 > n1 - 1 || f.l2 > n2 - 1) continue;
        channels.push_back({n, f.la, f.lb, n1, f.l1, n2, f.l2,
                            pair_subspace(f.la, f.lb)});
      }
    }
  }
  return channels;
}

double channel_detuning(const CouplingChannel& channel,
                        const EnergyModel& model) {
  return energy_level(channel.n1, channel.l1, model) +
         energy_level(channel.n2, channel.l2, model) -
         energy_level(channel.n, channel.la, model) -
         energy_level(channel.n, channel.lb, model);
}

double second_order_estimate(const CouplingChannel& channel,
                             const Geometry& geometry,
                             const EnergyModel& model,
                             const coupling::RadialSource& radial,
                             double resonance_threshold) {
  const double detuning = channel_detuning(channel, model);
  if (std::abs(detuning) < resonance_threshold ||
      std::abs(detuning) < 1e-300)
    throw ResonanceAlarm(
        "second_order_estimate: near-resonant channel " + channel.label(),
        channel.label());

  const PairGeometry pair = channel_pair(channel, geometry);
  double best = 0;
  for (int ma = -channel.la; ma <= channel.la; ++ma)
    for (int mb = -channel.lb; mb <= channel.lb; ++mb)
      for (int m1 = -channel.l1; m1 <= channel.l1; ++m1)
        for (int m2 = -channel.l2; m2 <= channel.l2; ++m2) {
          const auto bra_i = coupling::AtomState::rydberg(
              {channel.n, channel.la, ma});
          const auto bra_j = coupling::AtomState::rydberg(
              {channel.n, channel.lb, mb});
          const auto ket_i = coupling::AtomState::rydberg(
              {channel.n1, channel.l1, m1});
          const auto ket_j = coupling::AtomState::rydberg(
              {channel.n2, channel.l2, m2});
          best = std::max(best,
                          std::abs(coupling::pair_matrix_element(
                              bra_i, bra_j, ket_i, ket_j, pair, radial)));
        }
  return best * best / std::abs(detuning);
}

namespace {

double min_nonzero_shift_mhz(coupling::Subspace kind, int n,
                             const Geometry& geometry,
                             const coupling::RadialSource& radial,
                             bool parallel, double* max_out) {
  const auto basis = coupling::build_subspace_basis(kind, n);
  const auto matrix =
      parallel ? coupling::assemble_interaction_matrix(basis, geometry,
                                                       radial, kind)
               : coupling::assemble_interaction_matrix_ref(basis, geometry,
                                                           radial, kind);
  const auto mags = coupling::eigen_shifts(matrix).nonzero_magnitudes_mhz();
  if (mags.empty())
    throw StructureError("check_negligibility: all first-order shifts of " +
                         std::string(coupling::subspace_name(kind)) +
                         " vanish");
  if (max_out) *max_out = std::max(*max_out, mags.back());
  return mags.front();
}

BlockadeReport check_impl(int n, const Geometry& geometry,
                          const EnergyModel& model,
                          const BlockadeOptions& options,
                          const coupling::RadialSource& radial,
                          bool parallel) {
  BlockadeReport report;

  report.max_shift_mhz = 0;
  report.min_shift_sp_mhz = min_nonzero_shift_mhz(
      coupling::Subspace::sp, n, geometry, radial, parallel,
      &report.max_shift_mhz);
  report.min_shift_pd_mhz = min_nonzero_shift_mhz(
      coupling::Subspace::pd, n, geometry, radial, parallel,
      &report.max_shift_mhz);
  report.min_shift_spd_mhz = min_nonzero_shift_mhz(
      coupling::Subspace::spd, n, geometry, radial, parallel,
      &report.max_shift_mhz);

  const double resonance_mhz = options.resonance_factor * report.max_shift_mhz;
  const double resonance_hartree = resonance_mhz / units::hartree_to_mhz;
  const double global_min = std::min(
      {report.min_shift_sp_mhz, report.min_shift_pd_mhz,
       report.min_shift_spd_mhz});

  const auto channels = enumerate_channels(n, options.n_window);
  report.channels.resize(channels.size());

  // Warm the radial cache before the parallel sweep.
  for (const auto& c : channels) {
    radial.integral(c.n, c.la, c.n1, c.l1);
    radial.integral(c.n, c.lb, c.n2, c.l2);
  }

  const int count = static_cast<int>(channels.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int i = 0; i < count; ++i) {
    try {
      ChannelReport& row = report.channels[i];
      row.channel = channels[i];
      row.detuning_mhz =
          channel_detuning(channels[i], model) * units::hartree_to_mhz;
      try {
        row.estimate_mhz =
            second_order_estimate(channels[i], geometry, model, radial,
                                  resonance_hartree) *
            units::hartree_to_mhz;
      } catch (const ResonanceAlarm&) {
        row.resonant = true;
        continue;
      }
      double denom = global_min;
      if (channels[i].subspace == coupling::Subspace::sp)
        denom = report.min_shift_sp_mhz;
      else if (channels[i].subspace == coupling::Subspace::pd)
        denom = report.min_shift_pd_mhz;
      row.margin = row.estimate_mhz / denom;
    } catch (...) {
      // exceptions must not unwind through the parallel region
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  for (const auto& row : report.channels) {
    if (row.resonant) {
      report.alarms.push_back("near-resonant channel " + row.channel.label() +
                              " (|detuning| below " +
                              std::to_string(resonance_mhz) + " MHz)");
      continue;
    }
    report.margin_sum += row.margin;
    report.margin_max = std::max(report.margin_max, row.margin);
  }

  report.pass =
      report.alarms.empty() && report.margin_sum < options.margin_threshold;
  report.omega_max_mhz = options.rabi_ratio * report.min_shift_sp_mhz;
  report.min_step_duration_us = 0.5 / report.omega_max_mhz;
  return report;
}

}  // namespace

BlockadeReport check_negligibility(int n, const Geometry& geometry,
                                   const EnergyModel& model,
                                   const BlockadeOptions& options,
                                   const coupling::RadialSource& radial) {
  return check_impl(n, geometry, model, options, radial, true);
}

BlockadeReport check_negligibility_ref(int n, const Geometry& geometry,
                                       const EnergyModel& model,
                                       const BlockadeOptions& options,
                                       const coupling::RadialSource& radial) {
  return check_impl(n, geometry, model, options, radial, false);
}

}  // namespace ryd::blockade
