#pragma once

#include <complex>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ryd/geometry.hpp"
#include "ryd/orbital.hpp"

namespace ryd::coupling {

using Complex = std::complex<double>;

/// One atom slot in a product state: either the ground-state marker or a
/// Rydberg orbital.
struct AtomState {
  bool is_ground = true;
  OrbitalState orbital{1, 0, 0};

  static AtomState ground() { return AtomState{}; }
  static AtomState rydberg(const OrbitalState& o) { return {false, o}; }

  bool operator==(const AtomState& other) const {
    if (is_ground != other.is_ground) return false;
    return is_ground || orbital == other.orbital;
  }
  std::string label() const { return is_ground ? "g" : orbital.label(); }
};

/// Three-atom product state |a1; a2; a3>.
struct ProductBasisState {
  std::array<AtomState, 3> atoms;
  bool operator==(const ProductBasisState&) const = default;
  std::string label() const;
};

enum class Subspace { sp, pd, spd };
const char* subspace_name(Subspace s);

/// Degenerate-subspace bases in canonical order (orderings first, m values
/// ascending within an ordering): sp -> 6, pd -> 30, spd -> 90 states.
std::vector<ProductBasisState> build_subspace_basis(Subspace kind, int n);

/// Memoizing source for radial integrals; thread safe.
class RadialSource {
 public:
  double integral(int n, int l, int n_prime, int l_prime) const;

 private:
  mutable std::mutex mutex_;
  mutable std::map<std::array<int, 4>, double> cache_;
};

/// Single-pair matrix element of the dipole-dipole operator between
/// two-atom bra/ket states, in Hartree (lengths in bohr). Exact zero when
/// either single-atom transition violates the selection rules.
Complex pair_matrix_element(const AtomState& bra_i, const AtomState& bra_j,
                            const AtomState& ket_i, const AtomState& ket_j,
                            const PairGeometry& pair,
                            const RadialSource& radial);

struct InteractionMatrix {
  std::vector<ProductBasisState> basis;
  Eigen::MatrixXcd entries;                 // Hartree, Hermitian
  std::optional<Subspace> kind;
  std::optional<double> prefactor_hartree;  // sp/pd only: single scalar
                                            // e^2 R_rad^2 / (4 pi eps0 R^3)
};

/// Sums pair elements over the pairs (1,2), (1,3), (2,3) with spectator
/// matching. OpenMP-parallel over matrix entries.
InteractionMatrix assemble_interaction_matrix(
    const std::vector<ProductBasisState>& basis, const Geometry& geometry,
    const RadialSource& radial,
    std::optional<Subspace> kind = std::nullopt,
    const EnergyModel& model = EnergyModel::hydrogenic());

/// Serial reference implementation; kept for testing and benchmarking.
InteractionMatrix assemble_interaction_matrix_ref(
    const std::vector<ProductBasisState>& basis, const Geometry& geometry,
    const RadialSource& radial,
    std::optional<Subspace> kind = std::nullopt,
    const EnergyModel& model = EnergyModel::hydrogenic());

struct ShiftSpectrum {
  std::optional<Subspace> kind;
  std::vector<double> hartree;        // ascending
  std::vector<double> dimensionless;  // empty unless a single prefactor
                                      // applies (sp, pd)
  std::vector<double> inv_cm() const;
  std::vector<double> mhz() const;
  /// Magnitudes of the nonzero eigenvalues (threshold 1e-8 of the
  /// spectral norm), ascending.
  std::vector<double> nonzero_magnitudes_mhz() const;
  std::vector<double> nonzero_magnitudes_dimensionless() const;
};

/// Eigenvalues of the Hermitian interaction matrix, ascending. Rejects
/// input whose Hermiticity defect exceeds 1e-12 relative.
ShiftSpectrum eigen_shifts(const InteractionMatrix& matrix);

/// True iff all dipole-dipole elements between the |ns, nd> and |nd, ns>
/// two-atom manifolds vanish (below 1e-14 of the sp coupling scale at the
/// same distance).
bool uncoupled_state_check(int n, const PairGeometry& pair,
                           const RadialSource& radial);

/// Plain-text dump: basis labels header, then one "re im" pair per entry,
/// row major.
std::string matrix_dump(const InteractionMatrix& matrix);

}  // namespace ryd::coupling
