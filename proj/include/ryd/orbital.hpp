#pragma once

#include <map>
#include <string>

#include "ryd/errors.hpp"

namespace ryd {

/// Quantum numbers (n, l, m) of a hydrogenic level. Invalid combinations
/// are rejected at construction.
struct OrbitalState {
  int n;
  int l;
  int m;

  OrbitalState(int n_, int l_, int m_) : n(n_), l(l_), m(m_) {
    if (n < 1) throw StructureError("OrbitalState: n must be >= 1");
    if (l < 0 || l > n - 1)
      throw StructureError("OrbitalState: need 0 <= l <= n-1");
    if (m < -l || m > l) throw StructureError("OrbitalState: need |m| <= l");
  }

  bool operator==(const OrbitalState&) const = default;
  auto operator<=>(const OrbitalState&) const = default;

  std::string label() const;
};

/// Spectroscopic letter for l (s, p, d, f, then g, h, ...).
char orbital_letter(int l);
/// Inverse of orbital_letter; returns -1 for unknown letters.
int orbital_letter_to_l(char c);

enum class EnergyModelKind { hydrogenic, quantum_defect };

/// Unperturbed level energies: -Z^2 / (2 n^2) in hydrogenic mode,
/// -Z^2 / (2 (n - delta_l)^2) with configured defects otherwise.
struct EnergyModel {
  EnergyModelKind kind = EnergyModelKind::hydrogenic;
  double Z = 1.0;
  std::map<int, double> defects;  // l -> delta_l, quantum-defect mode only

  static EnergyModel hydrogenic(double Z = 1.0) {
    return EnergyModel{EnergyModelKind::hydrogenic, Z, {}};
  }
  static EnergyModel quantum_defect(std::map<int, double> defects,
                                    double Z = 1.0) {
    return EnergyModel{EnergyModelKind::quantum_defect, Z,
                       std::move(defects)};
  }
};

/// Level energy in Hartree.
double energy_level(int n, int l, const EnergyModel& model);

}  // namespace ryd
