#pragma once

// Independent reference implementations used only by the tests.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

inline long double factorial(int n) {
  long double f = 1.0L;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

/// Racah closed form for <j1 m1 j2 m2 | J M> (integer arguments).
inline double clebsch_gordan(int j1, int m1, int j2, int m2, int J, int M) {
  if (M != m1 + m2) return 0.0;
  if (J < std::abs(j1 - j2) || J > j1 + j2 || std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(M) > J) return 0.0;
  const long double pre = std::sqrt((2 * J + 1) * factorial(J + j1 - j2) * factorial(J - j1 + j2) *
                                    factorial(j1 + j2 - J) / factorial(j1 + j2 + J + 1));
  const long double norm = std::sqrt(factorial(J + M) * factorial(J - M) * factorial(j1 - m1) * factorial(j1 + m1) *
                                     factorial(j2 - m2) * factorial(j2 + m2));
  long double sum = 0.0L;
  for (int k = 0; k <= j1 + j2 + J; ++k) {
    const int d[6] = {k, j1 + j2 - J - k, j1 - m1 - k, j2 + m2 - k, J - j2 + m1 + k, J - j1 - m2 + k};
    bool ok = true;
    for (int v : d) ok = ok && v >= 0;
    if (!ok) continue;
    long double den = 1.0L;
    for (int v : d) den *= factorial(v);
    sum += ((k % 2) ? -1.0L : 1.0L) / den;
  }
  return static_cast<double>(pre * norm * sum);
}

/// Power series of j_l(z), long double.
template <class T>
T spherical_bessel_series(int l, T z) {
  T prefactor = 1.0L;
  for (int i = 0; i < l; ++i) prefactor *= z;
  long double dfact = 1.0L;
  for (int i = 1; i <= 2 * l + 1; i += 2) dfact *= i;
  prefactor /= dfact;
  T term = 1.0L, sum = 1.0L;
  const T h = -z * z / 2.0L;
  for (int k = 1; k < 200; ++k) {
    term *= h / (static_cast<long double>(k) * (2.0L * l + 2.0L * k + 1.0L));
    sum += term;
    if (std::abs(term) < 1e-30L * std::abs(sum)) break;
  }
  return prefactor * sum;
}

/// Determinant by cofactor expansion along the first row.
inline std::complex<double> laplace_det(const Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.rows();
  if (n == 1) return m(0, 0);
  std::complex<double> det = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::MatrixXcd minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r) {
      Eigen::Index c2 = 0;
      for (Eigen::Index c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, c2++) = m(r, c);
      }
    }
    det += ((j % 2) ? -1.0 : 1.0) * m(0, j) * laplace_det(minor);
  }
  return det;
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace oracle
