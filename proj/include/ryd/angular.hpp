#pragma once

#include <complex>

#include <Eigen/Core>

namespace ryd::angular {

using Complex = std::complex<double>;

// Artifact scope covers s through f with margin.
inline constexpr int kMaxL = 10;

/// Spherical harmonic Y_lm(theta, phi), Condon-Shortley phase, unit
/// normalization over the sphere.
Complex sph_harm(int l, int m, double theta, double phi);

/// Dipole selection rules: l' = l +- 1 and |m' - m| <= 1.
bool selection_rule_allowed(int l, int m, int l_prime, int m_prime);

/// Cartesian components of \int dOmega e_r Y*_{lm} Y_{l'm'}.
struct AngularVectorIntegral {
  int l, m;
  int l_prime, m_prime;
  Eigen::Vector3cd value;  // (x, y, z)
};

/// Production path: closed-form ladder coefficients.
AngularVectorIntegral angular_vector_integral(int l, int m, int l_prime,
                                              int m_prime);

/// Oracle path: product Gauss-Legendre (cos theta) x trapezoid (phi)
/// quadrature, exact for these bandlimited integrands at the node counts
/// used.
AngularVectorIntegral angular_vector_integral_quadrature(int l, int m,
                                                         int l_prime,
                                                         int m_prime);

/// \int dOmega Y*_{lm} Y_{l'm'} on the oracle grid (orthonormality
/// checks).
Complex harmonic_overlap_quadrature(int l, int m, int l_prime, int m_prime);

}  // namespace ryd::angular
