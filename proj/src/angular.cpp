#include "ryd/angular.hpp"

#include <cmath>
#include <vector>

#include "ryd/errors.hpp"

namespace ryd::angular {

namespace {

void check_lm(int l, int m) {
  if (l < 0 || l > kMaxL)
    throw StructureError("angular: need 0 <= l <= " + std::to_string(kMaxL));
  if (m < -l || m > l) throw StructureError("angular: need |m| <= l");
}

// Normalized associated Legendre P~_l^m(x) (including the sqrt((2l+1)/4pi
// ...) factor and Condon-Shortley phase), m >= 0, by stable upward
// recurrence in l.
double normalized_plm(int l, int m, double x) {
  double pmm = 1.0 / std::sqrt(4.0 * M_PI);
  if (m > 0) {
    const double s = std::sqrt((1.0 - x) * (1.0 + x));
    for (int i = 1; i <= m; ++i)
      pmm *= -std::sqrt((2.0 * i + 1.0) / (2.0 * i)) * s;
  }
  if (l == m) return pmm;
  double pmmp1 = x * std::sqrt(2.0 * m + 3.0) * pmm;
  if (l == m + 1) return pmmp1;
  double pll = 0;
  for (int ll = m + 2; ll <= l; ++ll) {
    double a = std::sqrt((4.0 * ll * ll - 1.0) /
                         (double(ll) * ll - double(m) * m));
    double b = std::sqrt(((ll - 1.0) * (ll - 1.0) - double(m) * m) /
                         (4.0 * (ll - 1.0) * (ll - 1.0) - 1.0));
    pll = a * (x * pmmp1 - b * pmm);
    pmm = pmmp1;
    pmmp1 = pll;
  }
  return pll;
}

// Ladder coefficients for multiplying a harmonic by components of e_r:
//   cos(theta) Y_{l,m} = A(l,m) Y_{l+1,m} + A(l-1,m) Y_{l-1,m}
//   sin(theta) e^{+i phi} Y_{l,m} = -B(l,m) Y_{l+1,m+1}
//                                   + B(l-1,-m-1) Y_{l-1,m+1}
//   sin(theta) e^{-i phi} Y_{l,m} = B(l,-m) Y_{l+1,m-1}
//                                   - B(l-1,m-1) Y_{l-1,m-1}
double coef_a(int l, int m) {
  if (l < 0) return 0;
  return std::sqrt(((l + 1.0) * (l + 1.0) - double(m) * m) /
                   ((2.0 * l + 1.0) * (2.0 * l + 3.0)));
}
double coef_b(int l, int m) {
  if (l < 0) return 0;
  double num = (l + m + 1.0) * (l + m + 2.0);
  if (num <= 0) return 0;
  return std::sqrt(num / ((2.0 * l + 1.0) * (2.0 * l + 3.0)));
}

}  // namespace

Complex sph_harm(int l, int m, double theta, double phi) {
  check_lm(l, m);
  if (theta < 0 || theta > M_PI)
    throw StructureError("sph_harm: need 0 <= theta <= pi");
  const int am = std::abs(m);
  double plm = normalized_plm(l, am, std::cos(theta));
  Complex y = plm * std::polar(1.0, am * phi);
  if (m < 0) {
    // Y_{l,-m} = (-1)^m conj(Y_{l,m})
    y = std::conj(y);
    if (am % 2 != 0) y = -y;
  }
  return y;
}

bool selection_rule_allowed(int l, int m, int l_prime, int m_prime) {
  check_lm(l, m);
  check_lm(l_prime, m_prime);
  return std::abs(l - l_prime) == 1 && std::abs(m - m_prime) <= 1;
}

AngularVectorIntegral angular_vector_integral(int l, int m, int l_prime,
                                              int m_prime) {
  check_lm(l, m);
  check_lm(l_prime, m_prime);
  // Expand e_r Y_{l'm'} on harmonics and project onto Y_{lm}. The z
  // component survives only for m = m', the x/y components only for
  // m = m' +- 1.
  double iz = 0, ip = 0, im = 0;
  if (m == m_prime) {
    if (l == l_prime + 1) iz = coef_a(l_prime, m_prime);
    if (l == l_prime - 1) iz = coef_a(l_prime - 1, m_prime);
  }
  if (m == m_prime + 1) {
    if (l == l_prime + 1) ip = -coef_b(l_prime, m_prime);
    if (l == l_prime - 1) ip = coef_b(l_prime - 1, -m_prime - 1);
  }
  if (m == m_prime - 1) {
    if (l == l_prime + 1) im = coef_b(l_prime, -m_prime);
    if (l == l_prime - 1) im = -coef_b(l_prime - 1, m_prime - 1);
  }
  Eigen::Vector3cd v;
  v(0) = Complex(0.5 * (ip + im), 0.0);
  v(1) = Complex(0.0, -0.5 * (ip - im));
  v(2) = Complex(iz, 0.0);
  return {l, m, l_prime, m_prime, v};
}

namespace {

// Shared oracle grid: Gauss-Legendre in cos(theta), uniform trapezoid in
// phi. Node counts cover the bandwidth of e_r Y* Y exactly.
template <typename F>
auto quadrature_sum(int l, int l_prime, F&& f) {
  const int nt = std::max(24, 2 * (l + l_prime + 2));
  const int np = std::max(16, 2 * (l + l_prime + 2) + 4);

  // Gauss-Legendre nodes on [-1, 1] by Newton iteration.
  std::vector<double> x(nt), w(nt);
  for (int i = 0; i < (nt + 1) / 2; ++i) {
    double xi = std::cos(M_PI * (i + 0.75) / (nt + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = xi;
      for (int j = 2; j <= nt; ++j) {
        double p2 = ((2 * j - 1) * xi * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = nt * (xi * p1 - p0) / (xi * xi - 1);
      double dx = p1 / pp;
      xi -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    x[i] = -xi;
    x[nt - 1 - i] = xi;
    w[i] = w[nt - 1 - i] = 2.0 / ((1 - xi * xi) * pp * pp);
  }

  using R = decltype(f(0.0, 0.0));
  R acc{};
  const double dphi = 2.0 * M_PI / np;
  for (int i = 0; i < nt; ++i) {
    const double theta = std::acos(x[i]);
    R row{};
    for (int j = 0; j < np; ++j) row += f(theta, j * dphi);
    acc += w[i] * dphi * row;
  }
  return acc;
}

}  // namespace

AngularVectorIntegral angular_vector_integral_quadrature(int l, int m,
                                                         int l_prime,
                                                         int m_prime) {
  check_lm(l, m);
  check_lm(l_prime, m_prime);
  Eigen::Vector3cd v = quadrature_sum(l, l_prime, [&](double th, double ph) {
    Complex pair = std::conj(sph_harm(l, m, th, ph)) *
                   sph_harm(l_prime, m_prime, th, ph);
    Eigen::Vector3cd er(std::sin(th) * std::cos(ph),
                        std::sin(th) * std::sin(ph), std::cos(th));
    return Eigen::Vector3cd(er * pair);
  });
  return {l, m, l_prime, m_prime, v};
}

Complex harmonic_overlap_quadrature(int l, int m, int l_prime, int m_prime) {
  check_lm(l, m);
  check_lm(l_prime, m_prime);
  return quadrature_sum(l, l_prime, [&](double th, double ph) {
    return std::conj(sph_harm(l, m, th, ph)) *
           sph_harm(l_prime, m_prime, th, ph);
  });
}

}  // namespace ryd::angular
