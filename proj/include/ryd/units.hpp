#pragma once

// Atomic units internally (hbar = m_e = e = 4*pi*eps0 = 1): energies in
// Hartree, lengths in Bohr radii. Conversion constants live here and
// nowhere else.
namespace ryd::units {

inline constexpr double hartree_to_inv_cm = 219474.6313632;   // CODATA
inline constexpr double inv_cm_to_mhz = 29979.2458;           // c in cm * MHz
inline constexpr double hartree_to_mhz = hartree_to_inv_cm * inv_cm_to_mhz;
inline constexpr double bohr_radius_m = 5.29177210903e-11;
inline constexpr double micron_to_bohr = 1.0e-6 / bohr_radius_m;

}  // namespace ryd::units
