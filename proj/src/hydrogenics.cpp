#include "ryd/hydrogenics.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ryd/errors.hpp"

namespace ryd::hydro {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

namespace {

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Coefficients of the Messiah-convention L_p^k: the s-th coefficient is
// (-1)^s [(p+k)!]^2 / ((p-s)! (k+s)! s!).
std::vector<BigRat> laguerre_coefficients(int p, int k) {
  BigInt pk2 = factorial(p + k);
  pk2 *= pk2;
  std::vector<BigRat> coeffs;
  coeffs.reserve(p + 1);
  for (int s = 0; s <= p; ++s) {
    BigRat c(pk2, factorial(p - s) * factorial(k + s) * factorial(s));
    if (s % 2 != 0) c = -c;
    coeffs.push_back(std::move(c));
  }
  return coeffs;
}

void check_laguerre_args(int p, int k) {
  if (p < 0 || k < 0)
    throw StructureError("laguerre_eval: p and k must be non-negative");
  if (p + k > kLaguerreCapacity)
    throw CapacityError("laguerre_eval: p + k exceeds exact-coefficient "
                        "capacity of " + std::to_string(kLaguerreCapacity));
}

}  // namespace

double laguerre_eval(int p, int k, double x) {
  check_laguerre_args(p, k);
  auto coeffs = laguerre_coefficients(p, k);
  BigFloat acc = 0;
  BigFloat xf = x;
  for (int s = p; s >= 0; --s) acc = acc * xf + BigFloat(coeffs[s]);
  return acc.convert_to<double>();
}

BigFloat radial_wavefunction_hp(int n, int l, const BigFloat& r) {
  // R_nl = (2/n^2) sqrt((n-l-1)! / (n+l)!) x^l e^{-x/2} Lhat(x) with
  // x = 2r/n and Lhat the modern-normalized associated Laguerre. This is
  // the Messiah form with the [(n+l)!]^3 normalization folded into the
  // polynomial prefactor.
  if (r < 0) throw StructureError("radial_wavefunction: r must be >= 0");
  const int p = n - l - 1;
  const int k = 2 * l + 1;
  const BigFloat x = 2 * r / n;

  // Upward recurrence for Lhat_j^k(x); follows the dominant solution.
  BigFloat lm1 = 1;                 // Lhat_0
  BigFloat lcur = 1 + k - x;        // Lhat_1
  if (p == 0) lcur = lm1;
  for (int j = 1; j < p; ++j) {
    BigFloat next = ((2 * j + k + 1 - x) * lcur - (j + k) * lm1) / (j + 1);
    lm1 = lcur;
    lcur = next;
  }

  BigFloat norm = 2 / (BigFloat(n) * n) *
                  sqrt(BigFloat(BigRat(factorial(p), factorial(n + l))));
  return norm * pow(x, l) * exp(-x / 2) * lcur;
}

double radial_wavefunction(int n, int l, double r) {
  OrbitalState check(n, l, 0);  // validates n, l
  return radial_wavefunction_hp(n, l, BigFloat(r)).convert_to<double>();
}

double radial_wavefunction(const OrbitalState& state, double r) {
  return radial_wavefunction(state.n, state.l, r);
}

RadialIntegral radial_integral_closed(int n, int l, int n_prime,
                                      int l_prime) {
  OrbitalState{n, l, 0};
  OrbitalState{n_prime, l_prime, 0};
  if (n + l > kLaguerreCapacity || n_prime + l_prime > kLaguerreCapacity)
    throw CapacityError("radial_integral_closed: quantum numbers exceed "
                        "the exact-arithmetic budget");

  // Double sum over the two Laguerre expansions; every term is rational.
  BigRat sum = 0;
  for (int r = 0; r <= n - l - 1; ++r) {
    for (int s = 0; s <= n_prime - l_prime - 1; ++s) {
      BigRat term(BigInt(1), BigInt(1));
      BigRat base(-2, n + n_prime);
      for (int i = 0; i < r + s; ++i) term *= base;
      term *= BigRat(BigInt(pow(BigInt(n), s)) * pow(BigInt(n_prime), r),
                     factorial(r) * factorial(s));
      term *= BigRat(factorial(3 + l + l_prime + r + s),
                     factorial(n - l - r - 1) * factorial(2 * l + r + 1) *
                         factorial(n_prime - l_prime - s - 1) *
                         factorial(2 * l_prime + s + 1));
      sum += term;
    }
  }

  BigRat pref_rat(pow(BigInt(2), l + l_prime + 2) *
                      pow(BigInt(n), 2 + l_prime) *
                      pow(BigInt(n_prime), 2 + l),
                  pow(BigInt(n + n_prime), 4 + l + l_prime));
  BigInt under_root = factorial(n + l) * factorial(n_prime + l_prime) *
                      factorial(n - l - 1) * factorial(n_prime - l_prime - 1);

  BigFloat value = BigFloat(pref_rat) * sqrt(BigFloat(under_root)) *
                   BigFloat(sum);
  return {n, l, n_prime, l_prime, value.convert_to<double>()};
}

namespace {

// 32-point Gauss-Legendre nodes/weights on [-1, 1], computed once by
// Newton iteration on the Legendre polynomial.
struct GaussRule {
  std::vector<double> nodes, weights;
};

const GaussRule& gauss32() {
  static const GaussRule rule = [] {
    constexpr int N = 32;
    GaussRule r;
    r.nodes.resize(N);
    r.weights.resize(N);
    for (int i = 0; i < N / 2; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (N + 0.5));
      double pp = 0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1, p1 = x;
        for (int j = 2; j <= N; ++j) {
          double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        pp = N * (x * p1 - p0) / (x * x - 1);
        double dx = p1 / pp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      r.nodes[i] = -x;
      r.nodes[N - 1 - i] = x;
      r.weights[i] = r.weights[N - 1 - i] = 2.0 / ((1 - x * x) * pp * pp);
    }
    return r;
  }();
  return rule;
}

// Composite quadrature of r^power * R_nl * R_n'l' on [0, r_max] with the
// given number of uniform panels; accumulation in extended precision.
// Also returns the L1 mass of the integrand, the natural scale for
// judging convergence of near-cancelling (e.g. orthogonal) integrands.
struct Quadrature {
  BigFloat value;
  BigFloat mass;
};

Quadrature composite_integral(int n, int l, int n_prime, int l_prime,
                              int power, double r_max, int panels) {
  const auto& g = gauss32();
  Quadrature total{0, 0};
  const double h = r_max / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = p * h;
    BigFloat panel = 0, panel_mass = 0;
    for (size_t i = 0; i < g.nodes.size(); ++i) {
      BigFloat r = a + (g.nodes[i] + 1) * (h / 2);
      BigFloat f = radial_wavefunction_hp(n, l, r) *
                   radial_wavefunction_hp(n_prime, l_prime, r) *
                   pow(r, power);
      panel += g.weights[i] * f;
      panel_mass += g.weights[i] * fabs(f);
    }
    total.value += panel * (h / 2);
    total.mass += panel_mass * (h / 2);
  }
  return total;
}

double adaptive_integral(int n, int l, int n_prime, int l_prime, int power,
                         double rel_tol) {
  const int nmax = std::max(n, n_prime);
  // r_max: beyond both the classical turning region (~2 nmax^2) and deep
  // into the exponential tail so the truncation is < 1e-14 relative.
  const double r_max =
      4.0 * nmax * nmax + 60.0 / (1.0 / n + 1.0 / n_prime);
  int panels = std::max(32, 3 * nmax);

  Quadrature coarse = composite_integral(n, l, n_prime, l_prime, power,
                                         r_max, panels);
  double achieved = HUGE_VAL;
  for (int round = 0; round < 3; ++round) {
    panels *= 2;
    Quadrature fine = composite_integral(n, l, n_prime, l_prime, power,
                                         r_max, panels);
    // Near-cancelling integrands converge relative to their L1 mass, not
    // their (possibly zero) value.
    BigFloat scale = fmax(fabs(fine.value),
                          fmax(1e-6 * fine.mass, BigFloat(1e-300)));
    achieved = (fabs(fine.value - coarse.value) / scale).convert_to<double>();
    if (achieved < rel_tol) return fine.value.convert_to<double>();
    coarse = fine;
  }
  throw AccuracyError("radial quadrature did not converge to requested "
                      "tolerance",
                      achieved);
}

}  // namespace

RadialIntegral radial_integral_quadrature(int n, int l, int n_prime,
                                          int l_prime, double rel_tol) {
  OrbitalState{n, l, 0};
  OrbitalState{n_prime, l_prime, 0};
  double v = adaptive_integral(n, l, n_prime, l_prime, 3, rel_tol);
  return {n, l, n_prime, l_prime, v};
}

double radial_overlap_quadrature(int n, int l, int n_prime, double rel_tol) {
  OrbitalState{n, l, 0};
  OrbitalState{n_prime, l, 0};
  return adaptive_integral(n, l, n_prime, l, 2, rel_tol);
}

}  // namespace ryd::hydro
