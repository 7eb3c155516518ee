#include "ryd/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ryd/angular.hpp"
#include "ryd/hydrogenics.hpp"
#include "ryd/units.hpp"

namespace ryd::coupling {

std::string ProductBasisState::label() const {
  std::string s = "|";
  for (int i = 0; i < 3; ++i) {
    if (i) s += ";";
    s += atoms[i].label();
  }
  return s + ">";
}

const char* subspace_name(Subspace s) {
  switch (s) {
    case Subspace::sp: return "sp";
    case Subspace::pd: return "pd";
    case Subspace::spd: return "spd";
  }
  return "?";
}

std::vector<ProductBasisState> build_subspace_basis(Subspace kind, int n) {
  if (n < 3)
    throw StructureError("build_subspace_basis: need n >= 3 for s, p, d");
  std::vector<ProductBasisState> basis;
  auto g = AtomState::ground;
  auto ryd = [n](int l, int m) {
    return AtomState::rydberg(OrbitalState{n, l, m});
  };

  switch (kind) {
    case Subspace::sp:
      // Orderings {|ns;np;g>, |np;ns;g>}, m_p ascending within each.
      for (int mp = -1; mp <= 1; ++mp)
        basis.push_back({{ryd(0, 0), ryd(1, mp), g()}});
      for (int mp = -1; mp <= 1; ++mp)
        basis.push_back({{ryd(1, mp), ryd(0, 0), g()}});
      break;
    case Subspace::pd:
      for (int mp = -1; mp <= 1; ++mp)
        for (int md = -2; md <= 2; ++md)
          basis.push_back({{g(), ryd(1, mp), ryd(2, md)}});
      for (int md = -2; md <= 2; ++md)
        for (int mp = -1; mp <= 1; ++mp)
          basis.push_back({{g(), ryd(2, md), ryd(1, mp)}});
      break;
    case Subspace::spd: {
      // Orderings as permutations of (s, p, d) over the atoms, in
      // lexicographic permutation order; m values ascending, slower index
      // on the lower-l orbital.
      static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                          {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
      for (const auto& perm : perms)
        for (int mp = -1; mp <= 1; ++mp)
          for (int md = -2; md <= 2; ++md) {
            ProductBasisState st{{g(), g(), g()}};
            for (int atom = 0; atom < 3; ++atom) {
              const int l = perm[atom];
              const int m = l == 0 ? 0 : (l == 1 ? mp : md);
              st.atoms[atom] = ryd(l, m);
            }
            basis.push_back(st);
          }
      break;
    }
  }
  return basis;
}

double RadialSource::integral(int n, int l, int n_prime, int l_prime) const {
  std::array<int, 4> key{n, l, n_prime, l_prime};
  if (n_prime < n || (n_prime == n && l_prime < l))
    key = {n_prime, l_prime, n, l};  // symmetric under bra/ket swap
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const double v =
      hydro::radial_integral_closed(key[0], key[1], key[2], key[3]).value;
  std::lock_guard lock(mutex_);
  cache_.emplace(key, v);
  return v;
}

Complex pair_matrix_element(const AtomState& bra_i, const AtomState& bra_j,
                            const AtomState& ket_i, const AtomState& ket_j,
                            const PairGeometry& pair,
                            const RadialSource& radial) {
  // The ground marker carries no dipole within the truncated basis.
  if (bra_i.is_ground || bra_j.is_ground || ket_i.is_ground ||
      ket_j.is_ground)
    return {0, 0};
  const auto& bi = bra_i.orbital;
  const auto& bj = bra_j.orbital;
  const auto& ki = ket_i.orbital;
  const auto& kj = ket_j.orbital;
  if (!angular::selection_rule_allowed(bi.l, bi.m, ki.l, ki.m)) return {0, 0};
  if (!angular::selection_rule_allowed(bj.l, bj.m, kj.l, kj.m)) return {0, 0};

  const double rad_i = radial.integral(bi.n, bi.l, ki.n, ki.l);
  const double rad_j = radial.integral(bj.n, bj.l, kj.n, kj.l);

  const Eigen::Vector3cd ai =
      angular::angular_vector_integral(bi.l, bi.m, ki.l, ki.m).value;
  const Eigen::Vector3cd aj =
      angular::angular_vector_integral(bj.l, bj.m, kj.l, kj.m).value;
  const Eigen::Vector3cd u = pair.unit.cast<Complex>();

  // Plain (unconjugated) dot products, as in the dipole-dipole operator.
  const Complex dot = ai(0) * aj(0) + ai(1) * aj(1) + ai(2) * aj(2);
  const Complex ai_u = ai(0) * u(0) + ai(1) * u(1) + ai(2) * u(2);
  const Complex aj_u = aj(0) * u(0) + aj(1) * u(1) + aj(2) * u(2);

  const double r3 = pair.distance * pair.distance * pair.distance;
  return rad_i * rad_j / r3 * (dot - 3.0 * ai_u * aj_u);
}

namespace {

double unperturbed_energy(const ProductBasisState& state,
                          const EnergyModel& model) {
  double e = 0;
  for (const auto& a : state.atoms)
    if (!a.is_ground) e += energy_level(a.orbital.n, a.orbital.l, model);
  return e;
}

Complex matrix_entry(const std::vector<ProductBasisState>& basis, int a,
                     int b, const Geometry& geometry,
                     const RadialSource& radial) {
  static constexpr int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  Complex total{0, 0};
  for (const auto& pr : pairs) {
    const int i = pr[0], j = pr[1];
    const int spectator = 3 - i - j;
    if (!(basis[a].atoms[spectator] == basis[b].atoms[spectator])) continue;
    total += pair_matrix_element(basis[a].atoms[i], basis[a].atoms[j],
                                 basis[b].atoms[i], basis[b].atoms[j],
                                 geometry.pair(i, j), radial);
  }
  return total;
}

std::optional<double> subspace_prefactor(
    const std::vector<ProductBasisState>& basis, std::optional<Subspace> kind,
    const Geometry& geometry, const RadialSource& radial) {
  if (!kind || *kind == Subspace::spd) return std::nullopt;
  const int n = basis.front().atoms[kind == Subspace::sp ? 0 : 1].orbital.n;
  if (*kind == Subspace::sp) {
    const double r = radial.integral(n, 0, n, 1);
    const double d = geometry.pair(0, 1).distance;
    return r * r / (d * d * d);
  }
  const double r = radial.integral(n, 1, n, 2);
  const double d = geometry.pair(1, 2).distance;
  return r * r / (d * d * d);
}

void check_degeneracy(const std::vector<ProductBasisState>& basis,
                      const EnergyModel& model) {
  const double e0 = unperturbed_energy(basis.front(), model);
  for (const auto& st : basis) {
    const double e = unperturbed_energy(st, model);
    if (std::abs(e - e0) > 1e-12 * std::max(1.0, std::abs(e0)))
      throw StructureError(
          "assemble_interaction_matrix: basis is not degenerate (" +
          st.label() + " differs); first-order theory does not apply");
  }
}

InteractionMatrix assemble_impl(const std::vector<ProductBasisState>& basis,
                                const Geometry& geometry,
                                const RadialSource& radial,
                                std::optional<Subspace> kind,
                                const EnergyModel& model, bool parallel) {
  if (basis.empty())
    throw StructureError("assemble_interaction_matrix: empty basis");
  if (model.kind == EnergyModelKind::hydrogenic) check_degeneracy(basis, model);

  const int dim = static_cast<int>(basis.size());
  InteractionMatrix result;
  result.basis = basis;
  result.kind = kind;
  result.entries = Eigen::MatrixXcd::Zero(dim, dim);

  // Warm the radial cache serially so worker threads only read.
  for (const auto& st : basis)
    for (const auto& a : st.atoms)
      if (!a.is_ground && a.orbital.l + 1 < a.orbital.n)
        radial.integral(a.orbital.n, a.orbital.l, a.orbital.n,
                        a.orbital.l + 1);

#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int a = 0; a < dim; ++a) {
    for (int b = a; b < dim; ++b) {
      const Complex v = matrix_entry(basis, a, b, geometry, radial);
      result.entries(a, b) = v;
      result.entries(b, a) = std::conj(v);
    }
  }

  result.prefactor_hartree = subspace_prefactor(basis, kind, geometry, radial);
  return result;
}

}  // namespace

InteractionMatrix assemble_interaction_matrix(
    const std::vector<ProductBasisState>& basis, const Geometry& geometry,
    const RadialSource& radial, std::optional<Subspace> kind,
    const EnergyModel& model) {
  return assemble_impl(basis, geometry, radial, kind, model, true);
}

InteractionMatrix assemble_interaction_matrix_ref(
    const std::vector<ProductBasisState>& basis, const Geometry& geometry,
    const RadialSource& radial, std::optional<Subspace> kind,
    const EnergyModel& model) {
  return assemble_impl(basis, geometry, radial, kind, model, false);
}

std::vector<double> ShiftSpectrum::inv_cm() const {
  std::vector<double> out(hartree.size());
  std::transform(hartree.begin(), hartree.end(), out.begin(),
                 [](double h) { return h * units::hartree_to_inv_cm; });
  return out;
}

std::vector<double> ShiftSpectrum::mhz() const {
  std::vector<double> out(hartree.size());
  std::transform(hartree.begin(), hartree.end(), out.begin(),
                 [](double h) { return h * units::hartree_to_mhz; });
  return out;
}

namespace {
std::vector<double> nonzero_magnitudes(const std::vector<double>& values) {
  double norm = 0;
  for (double v : values) norm = std::max(norm, std::abs(v));
  std::vector<double> out;
  for (double v : values)
    if (std::abs(v) > 1e-8 * norm) out.push_back(std::abs(v));
  std::sort(out.begin(), out.end());
  return out;
}
}  // namespace

std::vector<double> ShiftSpectrum::nonzero_magnitudes_mhz() const {
  return nonzero_magnitudes(mhz());
}

std::vector<double> ShiftSpectrum::nonzero_magnitudes_dimensionless() const {
  return nonzero_magnitudes(dimensionless);
}

ShiftSpectrum eigen_shifts(const InteractionMatrix& matrix) {
  const auto& h = matrix.entries;
  const double scale = std::max(h.norm(), 1e-300);
  if ((h - h.adjoint()).norm() > 1e-12 * scale)
    throw StructureError("eigen_shifts: input is not Hermitian");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success)
    throw StructureError("eigen_shifts: eigensolver failed");

  ShiftSpectrum spectrum;
  spectrum.kind = matrix.kind;
  spectrum.hartree.assign(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + h.rows());
  std::sort(spectrum.hartree.begin(), spectrum.hartree.end());
  if (matrix.prefactor_hartree) {
    spectrum.dimensionless.resize(spectrum.hartree.size());
    std::transform(spectrum.hartree.begin(), spectrum.hartree.end(),
                   spectrum.dimensionless.begin(),
                   [p = *matrix.prefactor_hartree](double h) { return h / p; });
  }
  return spectrum;
}

bool uncoupled_state_check(int n, const PairGeometry& pair,
                           const RadialSource& radial) {
  // Reference scale: the strongest sp coupling at the same distance.
  const double rsp = radial.integral(n, 0, n, 1);
  const double scale = rsp * rsp /
                       (pair.distance * pair.distance * pair.distance);

  double worst = 0;
  for (int md = -2; md <= 2; ++md)
    for (int md2 = -2; md2 <= 2; ++md2) {
      const auto bra_i = AtomState::rydberg({n, 0, 0});
      const auto bra_j = AtomState::rydberg({n, 2, md});
      const auto ket_i = AtomState::rydberg({n, 2, md2});
      const auto ket_j = AtomState::rydberg({n, 0, 0});
      worst = std::max(worst, std::abs(pair_matrix_element(
                                  bra_i, bra_j, ket_i, ket_j, pair, radial)));
    }
  return worst < 1e-14 * std::abs(scale);
}

std::string matrix_dump(const InteractionMatrix& matrix) {
  std::ostringstream os;
  os.precision(17);
  os << "# interaction matrix, " << matrix.basis.size() << " states, row "
     << "major, entries in hartree as 're im' pairs\n# basis:";
  for (const auto& st : matrix.basis) os << " " << st.label();
  os << "\n";
  for (Eigen::Index a = 0; a < matrix.entries.rows(); ++a) {
    for (Eigen::Index b = 0; b < matrix.entries.cols(); ++b) {
      if (b) os << "  ";
      os << matrix.entries(a, b).real() << " " << matrix.entries(a, b).imag();
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace ryd::coupling
