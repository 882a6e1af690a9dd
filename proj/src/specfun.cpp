#include "cdscat/specfun.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "cdscat/errors.hpp"

namespace cdscat::specfun {

namespace {

void check_lm(int l, int m) {
  if (l < 0 || std::abs(m) > l) {
    throw DomainError("invalid spherical mode (l=" + std::to_string(l) + ", m=" + std::to_string(m) + ")");
  }
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

// sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!)
double ylm_norm(int l, int m) {
  return std::sqrt((2.0 * l + 1.0) / (4.0 * pi)) *
         std::exp(0.5 * (log_factorial(l - m) - log_factorial(l + m)));
}

double parity(int m) { return (m % 2 == 0) ? 1.0 : -1.0; }

template <class T>
T sinc(T x) {
  if (std::abs(x) < 1e-3) {
    const T x2 = x * x;
    return T(1.0) - x2 / 6.0 + x2 * x2 / 120.0 - x2 * x2 * x2 / 5040.0;
  }
  return std::sin(x) / x;
}

// j_1(x) = sin x / x^2 - cos x / x, series near the origin.
template <class T>
T bessel_j1(T x) {
  if (std::abs(x) < 1e-2) {
    const T x2 = x * x;
    return x / 3.0 * (T(1.0) - x2 / 10.0 + x2 * x2 / 280.0 - x2 * x2 * x2 / 15120.0);
  }
  return std::sin(x) / (x * x) - std::cos(x) / x;
}

template <class T>
std::vector<T> bessel_j_table(int l_max, T x) {
  std::vector<T> j(static_cast<std::size_t>(l_max) + 1, T(0.0));
  if (x == T(0.0)) {
    j[0] = T(1.0);
    return j;
  }
  j[0] = sinc(x);
  if (l_max == 0) return j;
  const T j1 = bessel_j1(x);
  const double ax = std::abs(x);

  if (ax > l_max) {
    j[1] = j1;
    for (int l = 1; l < l_max; ++l) {
      j[l + 1] = (2.0 * l + 1.0) / x * j[l] - j[l - 1];
    }
    return j;
  }

  // Downward continued fraction for r_l = j_l / j_{l-1}.
  const int start = l_max + 40 + static_cast<int>(2.0 * ax);
  std::vector<T> ratio(static_cast<std::size_t>(l_max) + 2, T(0.0));
  T r = T(0.0);
  for (int l = start; l >= 1; --l) {
    T denom = (2.0 * l + 1.0) - x * r;
    if (denom == T(0.0)) denom = T(1e-300);
    r = x / denom;
    if (l <= l_max) ratio[l] = r;
  }
  if (std::abs(j[0]) >= std::abs(j1)) {
    for (int l = 1; l <= l_max; ++l) j[l] = ratio[l] * j[l - 1];
  } else {
    j[1] = j1;
    for (int l = 2; l <= l_max; ++l) j[l] = ratio[l] * j[l - 1];
  }
  return j;
}

template <class T>
RiccatiTable<T> riccati_from_bessel(int l_max, T x) {
  RiccatiTable<T> out;
  const auto j = bessel_j_table(l_max, x);
  out.value.resize(j.size());
  out.derivative.resize(j.size());
  for (int l = 0; l <= l_max; ++l) {
    out.value[l] = x * j[l];
    out.derivative[l] = (l == 0) ? std::cos(x) : x * j[l - 1] - static_cast<double>(l) * j[l];
  }
  return out;
}

}  // namespace

double assoc_legendre(int l, int m, double x) {
  check_lm(l, m);
  if (!(std::abs(x) <= 1.0)) throw DomainError("assoc_legendre: |x| > 1");
  const AngularTable table(l, std::acos(x));
  return table.value(l, m) / ylm_norm(l, m);
}

complex spherical_harmonic(int l, int m, double theta, double phi) {
  check_lm(l, m);
  const AngularTable table(l, theta);
  return table.value(l, m) * std::exp(I * (static_cast<double>(m) * phi));
}

AngularTable::AngularTable(int l_max, double theta) : l_max_(l_max) {
  if (l_max < 0) throw DomainError("AngularTable: negative l_max");
  const std::size_t size = static_cast<std::size_t>((l_max + 1) * (l_max + 1));
  value_.assign(size, 0.0);
  dtheta_.assign(size, 0.0);
  m_over_sin_.assign(size, 0.0);

  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double p00 = 1.0 / std::sqrt(4.0 * pi);

  // m = 0: plain normalized Legendre recurrence.
  {
    double prev2 = 0.0, prev = p00;
    value_[index(0, 0)] = p00;
    for (int l = 1; l <= l_max; ++l) {
      const double ll = l;
      const double a = std::sqrt((4.0 * ll * ll - 1.0) / (ll * ll));
      const double b = (l >= 2) ? std::sqrt((ll - 1.0) * (ll - 1.0) * (2.0 * ll + 1.0) / ((2.0 * ll - 3.0) * ll * ll)) : 0.0;
      const double cur = a * c * prev - b * prev2;
      value_[index(l, 0)] = cur;
      prev2 = prev;
      prev = cur;
    }
  }

  // m >= 1: recur on u = P / sin(theta), which has no pole.
  std::vector<double> u(static_cast<std::size_t>(l_max) + 1, 0.0);
  double u_diag = 0.0;
  for (int m = 1; m <= l_max; ++m) {
    const double mm = m;
    u_diag = (m == 1) ? -std::sqrt(1.5) * p00 : -std::sqrt((2.0 * mm + 1.0) / (2.0 * mm)) * s * u_diag;
    std::fill(u.begin(), u.end(), 0.0);
    u[m] = u_diag;
    if (m + 1 <= l_max) u[m + 1] = std::sqrt(2.0 * mm + 3.0) * c * u_diag;
    for (int l = m + 2; l <= l_max; ++l) {
      const double ll = l;
      const double a = std::sqrt((4.0 * ll * ll - 1.0) / (ll * ll - mm * mm));
      const double b = std::sqrt(((ll - 1.0) * (ll - 1.0) - mm * mm) * (2.0 * ll + 1.0) / ((2.0 * ll - 3.0) * (ll * ll - mm * mm)));
      u[l] = a * c * u[l - 1] - b * u[l - 2];
    }
    for (int l = m; l <= l_max; ++l) {
      const double ll = l;
      const double lower = (l - 1 >= m) ? u[l - 1] : 0.0;
      const double dth = ll * c * u[l] - std::sqrt((2.0 * ll + 1.0) * (ll - mm) * (ll + mm) / (2.0 * ll - 1.0)) * lower;
      const double sign = parity(m);
      value_[index(l, m)] = s * u[l];
      dtheta_[index(l, m)] = dth;
      m_over_sin_[index(l, m)] = mm * u[l];
      value_[index(l, -m)] = sign * s * u[l];
      dtheta_[index(l, -m)] = sign * dth;
      m_over_sin_[index(l, -m)] = -sign * mm * u[l];
      if (m == 1) {
        // d/dtheta of the m = 0 function is sqrt(l(l+1)) times the m = 1 one.
        dtheta_[index(l, 0)] = std::sqrt(ll * (ll + 1.0)) * s * u[l];
      }
    }
  }
}

RiccatiTable<double> riccati_bessel_table(int l_max, double x) {
  if (l_max < 0) throw DomainError("riccati_bessel: negative order");
  return riccati_from_bessel(l_max, x);
}

RiccatiTable<complex> riccati_bessel_table(int l_max, complex x) {
  if (l_max < 0) throw DomainError("riccati_bessel: negative order");
  return riccati_from_bessel(l_max, x);
}

std::pair<double, double> riccati_bessel(int l, double x) {
  const auto t = riccati_bessel_table(l, x);
  return {t.value[l], t.derivative[l]};
}

std::pair<complex, complex> riccati_bessel(int l, complex x) {
  const auto t = riccati_bessel_table(l, x);
  return {t.value[l], t.derivative[l]};
}

RiccatiTable<complex> riccati_hankel_table(int q, int l_max, double x) {
  if (q != 1 && q != 2) throw DomainError("riccati_hankel: q must be 1 or 2");
  if (l_max < 0) throw DomainError("riccati_hankel: negative order");
  if (!(x > 0.0)) throw DomainError("riccati_hankel: argument must be positive");

  const auto j = bessel_j_table(l_max, x);
  // y_l by upward recurrence, which is stable for the irregular solution.
  std::vector<double> y(static_cast<std::size_t>(l_max) + 1);
  y[0] = -std::cos(x) / x;
  if (l_max >= 1) y[1] = -std::cos(x) / (x * x) - std::sin(x) / x;
  for (int l = 1; l < l_max; ++l) y[l + 1] = (2.0 * l + 1.0) / x * y[l] - y[l - 1];

  const double sign = (q == 1) ? 1.0 : -1.0;
  RiccatiTable<complex> out;
  out.value.resize(j.size());
  out.derivative.resize(j.size());
  for (int l = 0; l <= l_max; ++l) {
    const complex h(j[l], sign * y[l]);
    out.value[l] = x * h;
    if (l == 0) {
      out.derivative[l] = std::exp(sign * I * x);
    } else {
      const complex h_prev(j[l - 1], sign * y[l - 1]);
      out.derivative[l] = x * h_prev - static_cast<double>(l) * h;
    }
  }
  return out;
}

std::pair<complex, complex> riccati_hankel(int q, int l, double x) {
  const auto t = riccati_hankel_table(q, l, x);
  return {t.value[l], t.derivative[l]};
}

double spherical_bessel_j(int l, double x) {
  if (l < 0) throw DomainError("spherical_bessel_j: negative order");
  return bessel_j_table(l, x)[l];
}

std::vector<double> spherical_bessel_j_table(int l_max, double x) {
  if (l_max < 0) throw DomainError("spherical_bessel_j: negative order");
  return bessel_j_table(l_max, x);
}

CgColumn clebsch_gordan_column(int l1, int m1, int l2, int m2) {
  check_lm(l1, m1);
  check_lm(l2, m2);
  CgColumn col{l1, m1, l2, m2, m1 + m2, {}};
  const int top = l1 + l2;
  const int beta = m1 + m2;
  col.values.assign(static_cast<std::size_t>(top) + 1, 0.0);

  const double top_value = std::exp(
      0.5 * (log_factorial(top + beta) + log_factorial(top - beta) - log_factorial(l1 + m1) -
             log_factorial(l1 - m1) - log_factorial(l2 + m2) - log_factorial(l2 - m2)) +
      0.5 * (log_factorial(2 * l1) + log_factorial(2 * l2) - log_factorial(2 * l1 + 2 * l2)));
  col.values[top] = top_value;

  const double b = beta;
  const double casimir_diff = static_cast<double>(l1 * (l1 + 1) - l2 * (l2 + 1));
  auto xi = [&](int alpha) {
    const double a1 = alpha + 1.0;
    const double dl = l2 - l1;
    const double sl = l1 + l2 + 1.0;
    return (a1 * a1 - b * b) * (a1 * a1 - dl * dl) * (sl * sl - a1 * a1) / (a1 * a1 * (4.0 * a1 * a1 - 1.0));
  };

  const int lowest = std::max(std::abs(beta), std::abs(l1 - l2));
  for (int alpha = top - 1; alpha >= lowest; --alpha) {
    const double zeta = (m1 - m2) - b * casimir_diff / ((alpha + 1.0) * (alpha + 2.0));
    const double xi_a = xi(alpha);
    double v = zeta / std::sqrt(xi_a) * col.values[alpha + 1];
    if (alpha + 2 <= top) v -= std::sqrt(xi(alpha + 1) / xi_a) * col.values[alpha + 2];
    col.values[alpha] = v;
  }
  return col;
}

double a_coeff(int alpha, int beta, int l1, int m1, int l2, int m2) {
  if (beta != m1 + m2) throw DomainError("a_coeff: beta must equal m1 + m2");
  const auto col = clebsch_gordan_column(l1, m1, l2, m2);
  const auto col0 = clebsch_gordan_column(l1, 0, l2, 0);
  return std::sqrt((2.0 * l1 + 1.0) * (2.0 * l2 + 1.0) / (4.0 * pi * (2.0 * alpha + 1.0))) * col[alpha] * col0[alpha];
}

}  // namespace cdscat::specfun
