#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "ryd/orbital.hpp"

namespace ryd::hydro {

using BigFloat = boost::multiprecision::cpp_bin_float_50;

// Largest p + k accepted by the exact-coefficient Laguerre evaluator.
inline constexpr int kLaguerreCapacity = 200;

/// Associated Laguerre polynomial L_p^k(x) in the old Messiah convention,
/// which carries [(p+k)!]^2 prefactors relative to the modern
/// normalization. Coefficients are computed in exact integer arithmetic
/// and evaluated in extended precision.
double laguerre_eval(int p, int k, double x);

/// Radial wavefunction R_nl(r), r in units of the screened Bohr radius
/// a = a0/Z, result in units a^{-3/2}. Accurate to >= 12 significant
/// digits for n <= 60.
double radial_wavefunction(const OrbitalState& state, double r);
double radial_wavefunction(int n, int l, double r);

/// Extended-precision evaluator backing both the public wavefunction and
/// the quadrature oracle.
BigFloat radial_wavefunction_hp(int n, int l, const BigFloat& r);

/// Radial integral \int_0^inf r^3 R_nl R_n'l' dr, in units of a.
struct RadialIntegral {
  int n, l;
  int n_prime, l_prime;
  double value;
};

/// Closed-form double sum evaluated with exact rational arithmetic for
/// all factorial products; floating conversion happens only at the end.
RadialIntegral radial_integral_closed(int n, int l, int n_prime, int l_prime);

/// Independent oracle: composite Gauss-Legendre quadrature on graded
/// panels, relative accuracy target rel_tol. Throws AccuracyError if
/// refinement stalls.
RadialIntegral radial_integral_quadrature(int n, int l, int n_prime,
                                          int l_prime,
                                          double rel_tol = 1e-10);

/// \int_0^inf r^2 R_nl R_n'l dr (same-l overlap; 1 for n = n').
double radial_overlap_quadrature(int n, int l, int n_prime,
                                 double rel_tol = 1e-10);

}  // namespace ryd::hydro
