#include "ryd/gatesim.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

namespace ryd::gatesim {

namespace {

using Complex = std::complex<double>;

// Which of the r1/r2/r3 roles a product state occupies.
struct Occupation {
  bool r1, r2, r3;
};

Occupation occupation(const SystemModel& model, int a, int b, int c) {
  if (model.register_mode) return {a == 2, b == 2, c == 2};
  return {a == 2, b == 3, c == 4};
}

// Diagonal blockade shift of one product state; the triple shift replaces
// the pair shifts, and the (r1, r3) pair is unshifted.
double diagonal_shift(const SystemModel& model,
                      const InteractionSpec& interaction, int a, int b,
                      int c) {
  const Occupation occ = occupation(model, a, b, c);
  if (occ.r1 && occ.r2 && occ.r3) return interaction.delta_spd;
  double s = 0;
  if (occ.r1 && occ.r2) s += interaction.delta_sp;
  if (occ.r2 && occ.r3) s += interaction.delta_pd;
  return s;
}

}  // namespace

void PulseSequence::validate(const SystemModel& model) const {
  for (const auto& p : pulses) {
    if (p.target < 0 || p.target > 2)
      throw StructureError("PulseSpec: target site must be 0, 1 or 2");
    if (p.level_high != model.addressed_level(p.target))
      throw StructureError("PulseSpec: site " + std::to_string(p.target) +
                           " lasers address level " +
                           std::to_string(model.addressed_level(p.target)) +
                           " only");
    if (p.level_low != 0 && p.level_low != 1)
      throw StructureError("PulseSpec: lower level must be 0 or 1");
    if (!(p.omega > 0) || !(p.area > 0))
      throw StructureError("PulseSpec: omega and area must be positive");
  }
  for (size_t i = 0; i < pulses.size(); ++i)
    for (size_t j = i + 1; j < pulses.size(); ++j) {
      const auto& p = pulses[i];
      const auto& q = pulses[j];
      if (p.target != q.target) continue;
      const double eps = 1e-12 * std::max(p.duration(), q.duration());
      if (p.start < q.end() - eps && q.start < p.end() - eps)
        throw ScheduleError("PulseSequence: overlapping pulses on site " +
                            std::to_string(p.target));
    }
}

Eigen::MatrixXcd build_hamiltonian(const SystemModel& model,
                                   const std::vector<PulseSpec>& active,
                                   const InteractionSpec& interaction) {
  const int dim = model.dim();
  const int L = model.levels;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);

  if (interaction.mode == InteractionMode::full_exchange &&
      model.register_mode)
    throw StructureError(
        "build_hamiltonian: full-exchange mode needs the atom model");
  if (interaction.mode == InteractionMode::full_exchange &&
      !(std::isfinite(interaction.delta_sp) &&
        std::isfinite(interaction.delta_pd) &&
        std::isfinite(interaction.delta_spd)))
    throw StructureError(
        "build_hamiltonian: full-exchange mode needs finite deltas");

  // Diagonal shifts. Infinitely shifted states model the exact-blockade
  // limit: they keep a zero diagonal and all couplings into them are
  // dropped below.
  std::vector<bool> blocked(dim, false);
  const bool exchange = interaction.mode == InteractionMode::full_exchange;
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b)
      for (int c = 0; c < L; ++c) {
        const int i = model.index(a, b, c);
        double s = 0;
        if (exchange) {
          const Occupation occ = occupation(model, a, b, c);
          if (occ.r1 && occ.r2 && occ.r3) s = interaction.delta_spd;
        } else {
          s = diagonal_shift(model, interaction, a, b, c);
        }
        if (std::isinf(s)) {
          blocked[i] = true;
        } else {
          h(i, i) = s;
        }
      }

  if (exchange) {
    // |r1 r2> <-> |r2 r1> on sites (0, 1) and |r2 r3> <-> |r3 r2> on
    // sites (1, 2); the r levels double as the s/p/d orbital labels.
    for (int c = 0; c < L; ++c) {
      const int i = model.index(2, 3, c), j = model.index(3, 2, c);
      h(i, j) += interaction.delta_sp;
      h(j, i) += interaction.delta_sp;
    }
    for (int a = 0; a < L; ++a) {
      const int i = model.index(a, 3, 4), j = model.index(a, 4, 3);
      h(i, j) += interaction.delta_pd;
      h(j, i) += interaction.delta_pd;
    }
  }

  for (const auto& p : active) {
    const Complex amp = 0.5 * p.omega * std::polar(1.0, p.phase);
    // Tensor the 2x2 drive with the identity on the two spectator sites.
    for (int u = 0; u < L; ++u)
      for (int v = 0; v < L; ++v) {
        int levels_low[3], levels_high[3];
        int* spots[2];
        int spot_count = 0;
        for (int site = 0; site < 3; ++site) {
          if (site == p.target) {
            levels_low[site] = p.level_low;
            levels_high[site] = p.level_high;
          } else {
            spots[spot_count++] = &levels_low[site];
            levels_high[site] = -1;  // filled from levels_low below
          }
        }
        *spots[0] = u;
        *spots[1] = v;
        for (int site = 0; site < 3; ++site)
          if (site != p.target) levels_high[site] = levels_low[site];
        const int i =
            model.index(levels_low[0], levels_low[1], levels_low[2]);
        const int j =
            model.index(levels_high[0], levels_high[1], levels_high[2]);
        if (blocked[i] || blocked[j]) continue;
        h(i, j) += amp;
        h(j, i) += std::conj(amp);
      }
  }
  return h;
}

Eigen::MatrixXcd evolve(const Eigen::MatrixXcd& hamiltonian,
                        double duration) {
  if (hamiltonian.rows() != hamiltonian.cols())
    throw StructureError("evolve: Hamiltonian must be square");
  const double scale = std::max(hamiltonian.norm(), 1e-300);
  if ((hamiltonian - hamiltonian.adjoint()).norm() > 1e-12 * scale)
    throw StructureError("evolve: Hamiltonian is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hamiltonian);
  if (solver.info() != Eigen::Success)
    throw StructureError("evolve: eigensolver failed");
  Eigen::VectorXcd phases(hamiltonian.rows());
  for (Eigen::Index k = 0; k < phases.size(); ++k)
    phases(k) = std::polar(1.0, -solver.eigenvalues()(k) * duration);
  return solver.eigenvectors() * phases.asDiagonal() *
         solver.eigenvectors().adjoint();
}

Eigen::MatrixXcd propagate(const SystemModel& model,
                           const PulseSequence& sequence,
                           const InteractionSpec& interaction) {
  sequence.validate(model);

  std::vector<double> edges;
  for (const auto& p : sequence.pulses) {
    edges.push_back(p.start);
    edges.push_back(p.end());
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](double a, double b) {
                            return std::abs(a - b) < 1e-12;
                          }),
              edges.end());

  Eigen::MatrixXcd u =
      Eigen::MatrixXcd::Identity(model.dim(), model.dim());
  for (size_t k = 0; k + 1 < edges.size(); ++k) {
    const double t0 = edges[k], t1 = edges[k + 1];
    const double mid = 0.5 * (t0 + t1);
    std::vector<PulseSpec> active;
    for (const auto& p : sequence.pulses)
      if (p.start <= mid && mid <= p.end()) active.push_back(p);
    u = evolve(build_hamiltonian(model, active, interaction), t1 - t0) * u;
  }
  return u;
}

double fidelity(const Eigen::MatrixXcd& u_sim,
                const Eigen::MatrixXcd& u_ideal) {
  if (u_sim.rows() != u_ideal.rows() || u_sim.cols() != u_ideal.cols())
    throw StructureError("fidelity: dimension mismatch");
  return std::abs((u_ideal.adjoint() * u_sim).trace()) / u_sim.rows();
}

double worst_overlap(const Eigen::MatrixXcd& u_sim,
                     const Eigen::MatrixXcd& u_ideal) {
  if (u_sim.rows() != u_ideal.rows() || u_sim.cols() != u_ideal.cols())
    throw StructureError("worst_overlap: dimension mismatch");
  const Eigen::MatrixXcd m = u_ideal.adjoint() * u_sim;
  double worst = 1.0;
  for (Eigen::Index k = 0; k < m.rows(); ++k)
    worst = std::min(worst, std::abs(m(k, k)));
  return worst;
}

Eigen::MatrixXcd remove_global_phase(const Eigen::MatrixXcd& u_sim,
                                     const Eigen::MatrixXcd& u_ideal) {
  const Complex tr = (u_ideal.adjoint() * u_sim).trace();
  if (std::abs(tr) < 1e-300) return u_sim;
  return u_sim * std::polar(1.0, -std::arg(tr));
}

namespace {

GateResult finish(const SystemModel& model, const Eigen::MatrixXcd& u,
                  const Eigen::MatrixXcd& projector,
                  const Eigen::MatrixXcd& frame_pre,
                  const Eigen::MatrixXcd& frame_post,
                  const Eigen::MatrixXcd& ideal) {
  GateResult result;
  result.propagator = u;
  result.raw_gate = projector * u * projector.transpose();
  result.adjusted_gate = frame_post * result.raw_gate * frame_pre;
  result.ideal = ideal;
  result.fidelity_raw = fidelity(result.raw_gate, ideal);
  result.fidelity_adjusted = fidelity(result.adjusted_gate, ideal);
  result.worst_overlap_adjusted = worst_overlap(
      remove_global_phase(result.adjusted_gate, ideal), ideal);
  result.leakage = 0;
  for (Eigen::Index k = 0; k < result.raw_gate.cols(); ++k)
    result.leakage = std::max(
        result.leakage, 1.0 - result.raw_gate.col(k).squaredNorm());
  result.unitarity_defect =
      (u.adjoint() * u -
       Eigen::MatrixXcd::Identity(model.dim(), model.dim()))
          .norm();
  return result;
}

// Projector rows are the computational states |c1 c2 t>, index
// c1*4 + c2*2 + t; qubit value v maps to site level v.
Eigen::MatrixXcd computational_projector(const SystemModel& model,
                                         int c1_site, int c2_site,
                                         int t_site) {
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(8, model.dim());
  for (int c1 = 0; c1 < 2; ++c1)
    for (int c2 = 0; c2 < 2; ++c2)
      for (int t = 0; t < 2; ++t) {
        int lev[3];
        lev[c1_site] = c1;
        lev[c2_site] = c2;
        lev[t_site] = t;
        p(c1 * 4 + c2 * 2 + t, model.index(lev[0], lev[1], lev[2])) = 1;
      }
  return p;
}

Eigen::MatrixXcd kron3(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b,
                       const Eigen::Matrix2cd& c) {
  Eigen::MatrixXcd out(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      out(i, j) = a(i >> 2, j >> 2) * b((i >> 1) & 1, (j >> 1) & 1) *
                  c(i & 1, j & 1);
  return out;
}

}  // namespace

GateResult run_toffoli_protocol(double omega,
                                const InteractionSpec& interaction,
                                bool swap_controls) {
  if (!(omega > 0))
    throw StructureError("run_toffoli_protocol: omega must be positive");
  const SystemModel model = SystemModel::atoms();
  const int c1_site = swap_controls ? 2 : 0;
  const int c2_site = swap_controls ? 0 : 2;
  const int t_site = 1;

  PulseSequence seq;
  double t = 0;
  auto add = [&](int site, int low, double area) {
    PulseSpec p{site, low, model.addressed_level(site), omega, area, 0.0, t};
    t = p.end();
    seq.pulses.push_back(p);
  };
  add(c1_site, 0, M_PI);  // step A: excite both controls g <-> r
  add(c2_site, 0, M_PI);
  add(t_site, 0, M_PI);   // step B: swap g/q on the target through r2
  add(t_site, 1, M_PI);
  add(t_site, 0, M_PI);
  add(c1_site, 0, M_PI);  // step C: de-excite the controls
  add(c2_site, 0, M_PI);

  const Eigen::MatrixXcd u = propagate(model, seq, interaction);
  const Eigen::MatrixXcd projector =
      computational_projector(model, c1_site, c2_site, t_site);

  // Deterministic frame phases: each control picks up -1 on value 0 from
  // its pi-pi pair; the target phases are undone by diag(1,-1) on both
  // sides.
  const Eigen::Matrix2cd id2 = Eigen::Matrix2cd::Identity();
  Eigen::Matrix2cd zc, zt;
  zc << -1, 0, 0, 1;
  zt << 1, 0, 0, -1;
  const Eigen::MatrixXcd frame_pre = kron3(id2, id2, zt);
  const Eigen::MatrixXcd frame_post = kron3(zc, zc, zt);

  Eigen::MatrixXcd ideal = Eigen::MatrixXcd::Identity(8, 8);
  ideal(6, 6) = ideal(7, 7) = 0;
  ideal(6, 7) = ideal(7, 6) = 1;

  return finish(model, u, projector, frame_pre, frame_post, ideal);
}

GateResult run_ccphase_protocol(double omega,
                                const InteractionSpec& interaction) {
  if (!(omega > 0))
    throw StructureError("run_ccphase_protocol: omega must be positive");
  const SystemModel model = SystemModel::registers();

  PulseSequence seq;
  double t = 0;
  auto add = [&](int site, double area) {
    PulseSpec p{site, 1, 2, omega, area, 0.0, t};
    t = p.end();
    seq.pulses.push_back(p);
  };
  add(0, M_PI);        // step A: excite |q> of both controls
  add(2, M_PI);
  add(1, 2 * M_PI);    // step B: 2 pi on the target ensemble
  add(0, M_PI);        // step C
  add(2, M_PI);

  const Eigen::MatrixXcd u = propagate(model, seq, interaction);
  const Eigen::MatrixXcd projector =
      computational_projector(model, 0, 2, 1);

  // Each control with value 1 returns from its pi-pi pair with -1.
  const Eigen::Matrix2cd id2 = Eigen::Matrix2cd::Identity();
  Eigen::Matrix2cd zq;
  zq << 1, 0, 0, -1;
  const Eigen::MatrixXcd frame_pre = Eigen::MatrixXcd::Identity(8, 8);
  const Eigen::MatrixXcd frame_post = kron3(zq, zq, id2);

  Eigen::MatrixXcd ideal = Eigen::MatrixXcd::Identity(8, 8);
  ideal(1, 1) = -1;  // |c1 c2 t> = |001>

  return finish(model, u, projector, frame_pre, frame_post, ideal);
}

}  // namespace ryd::gatesim
