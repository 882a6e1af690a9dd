#pragma once

#include <utility>
#include <vector>

#include "cdscat/types.hpp"

/// Special functions: Legendre functions, spherical harmonics, Riccati-Bessel
/// and Riccati-Hankel functions, Clebsch-Gordan coefficients.
///
/// Conventions: associated Legendre functions carry the Condon-Shortley phase,
/// spherical harmonics are orthonormal on the unit sphere, psi_l(x) = x j_l(x)
/// and xi^(1,2)_l(x) = x h^(1,2)_l(x).
namespace cdscat::specfun {

/// P_l^m(x) with Condon-Shortley phase. Throws DomainError if |m| > l or |x| > 1.
double assoc_legendre(int l, int m, double x);

/// Orthonormal spherical harmonic Y_{l,m}(theta, phi).
complex spherical_harmonic(int l, int m, double theta, double phi);

/// Polar-angle factors of every Y_{l,m} with l <= l_max at a single theta.
///
/// Y_{l,m}(theta, phi) = value(l, m) * exp(i m phi). The table also holds the
/// theta-derivative and m/sin(theta) times the value; the latter is evaluated
/// through a recurrence on P/sin(theta) so it stays finite on the z axis.
class AngularTable {
 public:
  AngularTable(int l_max, double theta);

  int l_max() const noexcept { return l_max_; }
  double value(int l, int m) const { return value_[index(l, m)]; }
  double dtheta(int l, int m) const { return dtheta_[index(l, m)]; }
  double m_over_sin(int l, int m) const { return m_over_sin_[index(l, m)]; }

 private:
  static std::size_t index(int l, int m) { return static_cast<std::size_t>(l * l + l + m); }

  int l_max_;
  std::vector<double> value_;
  std::vector<double> dtheta_;
  std::vector<double> m_over_sin_;
};

/// Values and argument derivatives for orders 0..l_max.
template <class T>
struct RiccatiTable {
  std::vector<T> value;
  std::vector<T> derivative;
};

/// psi_l and psi_l' for l = 0..l_max. Upward recurrence when |x| > l_max,
/// otherwise a downward continued-fraction (Miller) sweep anchored on j_0/j_1.
RiccatiTable<double> riccati_bessel_table(int l_max, double x);
RiccatiTable<complex> riccati_bessel_table(int l_max, complex x);

std::pair<double, double> riccati_bessel(int l, double x);
std::pair<complex, complex> riccati_bessel(int l, complex x);

/// xi^(q)_l and its derivative for l = 0..l_max, q = 1 (outgoing) or 2 (incoming).
/// Requires x > 0.
RiccatiTable<complex> riccati_hankel_table(int q, int l_max, double x);
std::pair<complex, complex> riccati_hankel(int q, int l, double x);

/// Spherical Bessel j_l(x); j_l(0) is the limit value delta_{l,0}.
double spherical_bessel_j(int l, double x);
std::vector<double> spherical_bessel_j_table(int l_max, double x);

/// Clebsch-Gordan coefficients <alpha, beta | l1, m1, l2, m2> for every alpha,
/// with beta = m1 + m2, computed by downward recurrence from alpha = l1 + l2.
struct CgColumn {
  int l1 = 0, m1 = 0, l2 = 0, m2 = 0;
  int beta = 0;
  std::vector<double> values;  // indexed by alpha in [0, l1 + l2]

  double operator[](int alpha) const {
    return alpha < 0 || alpha >= static_cast<int>(values.size()) ? 0.0 : values[alpha];
  }
};

CgColumn clebsch_gordan_column(int l1, int m1, int l2, int m2);

/// Gaunt-type coefficient used by the scalar translation blocks:
/// sqrt((2l1+1)(2l2+1) / (4 pi (2 alpha+1))) <alpha,beta|l1,m1,l2,m2> <alpha,0|l1,0,l2,0>.
double a_coeff(int alpha, int beta, int l1, int m1, int l2, int m2);

}  // namespace cdscat::specfun
