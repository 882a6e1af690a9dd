#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cdscat/em_core.hpp"
#include "cdscat/errors.hpp"
#include "cdscat/specfun.hpp"
#include "oracles.hpp"

using namespace cdscat;
using namespace cdscat::specfun;

TEST_CASE("associated Legendre closed forms") {
  for (double x : {-0.9, -0.3, 0.0, 0.4, 0.95}) {
    const double s = std::sqrt(1.0 - x * x);
    CHECK(assoc_legendre(0, 0, x) == doctest::Approx(1.0));
    CHECK(assoc_legendre(1, 1, x) == doctest::Approx(-s).epsilon(1e-14));
    CHECK(assoc_legendre(2, 1, x) == doctest::Approx(-3.0 * x * s).epsilon(1e-14));
    CHECK(assoc_legendre(3, 0, x) == doctest::Approx(0.5 * (5 * x * x * x - 3 * x)).epsilon(1e-13));
    CHECK(assoc_legendre(2, -1, x) == doctest::Approx(0.5 * x * s).epsilon(1e-14));
  }
  CHECK_THROWS_AS(assoc_legendre(2, 3, 0.1), DomainError);
  CHECK_THROWS_AS(assoc_legendre(2, 1, 1.5), DomainError);
}

TEST_CASE("spherical harmonics are orthonormal under product quadrature") {
  const int l_max = 6;
  std::vector<double> xs, ws;
  gauss_legendre(2 * l_max + 2, xs, ws);
  const int n_phi = 4 * l_max + 4;
  const int n = (l_max + 1) * (l_max + 1);
  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t it = 0; it < xs.size(); ++it) {
    const double theta = std::acos(xs[it]);
    for (int ip = 0; ip < n_phi; ++ip) {
      const double phi = 2.0 * pi * ip / n_phi;
      Eigen::VectorXcd y(n);
      for (int l = 0; l <= l_max; ++l)
        for (int m = -l; m <= l; ++m) y[l * l + l + m] = spherical_harmonic(l, m, theta, phi);
      gram += ws[it] * (2.0 * pi / n_phi) * y * y.adjoint();
    }
  }
  CHECK(oracle::max_abs(gram - Eigen::MatrixXcd::Identity(n, n)) < 1e-13);
}

TEST_CASE("angular table: derivative and pole-safe m/sin") {
  const int l_max = 10;
  const double theta = 0.7, h = 1e-5;
  const AngularTable t(l_max, theta), tp(l_max, theta + h), tm(l_max, theta - h);
  for (int l = 0; l <= l_max; ++l) {
    for (int m = -l; m <= l; ++m) {
      const double fd = (tp.value(l, m) - tm.value(l, m)) / (2 * h);
      CHECK(t.dtheta(l, m) == doctest::Approx(fd).epsilon(1e-7).scale(1.0));
      CHECK(t.m_over_sin(l, m) == doctest::Approx(m * t.value(l, m) / std::sin(theta)).epsilon(1e-12).scale(1.0));
    }
  }
  // On the axis only |m| = 1 survives: m/sin * Y -> limit of the near-axis value.
  const AngularTable pole(l_max, 0.0), near(l_max, 1e-7);
  for (int l = 1; l <= l_max; ++l) {
    for (int m : {-1, 1}) {
      CHECK(std::isfinite(pole.m_over_sin(l, m)));
      CHECK(pole.m_over_sin(l, m) == doctest::Approx(near.m_over_sin(l, m)).epsilon(1e-6));
    }
    CHECK(pole.m_over_sin(l, 0) == 0.0);
  }
}

TEST_CASE("spherical Bessel functions against the power series") {
  const long double ref = oracle::spherical_bessel_series(5, 10.0L);
  CHECK(spherical_bessel_j(5, 10.0) == doctest::Approx(static_cast<double>(ref)).epsilon(1e-14));
  CHECK(spherical_bessel_j(5, 10.0) == doctest::Approx(-0.05553451162145218).epsilon(1e-13));
  for (int l : {0, 1, 3, 8, 20, 30}) {
    for (double x : {1e-3, 0.3, 2.0, 7.5, 15.0}) {
      const double r = static_cast<double>(oracle::spherical_bessel_series(l, static_cast<long double>(x)));
      CAPTURE(l);
      CAPTURE(x);
      CHECK(spherical_bessel_j(l, x) == doctest::Approx(r).epsilon(1e-12).scale(0.0));
    }
  }
  CHECK(spherical_bessel_j(0, 0.0) == 1.0);
  CHECK(spherical_bessel_j(3, 0.0) == 0.0);
}

TEST_CASE("Riccati-Bessel derivative and complex argument") {
  for (double x : {0.2, 4.0, 25.0}) {
    const auto t = riccati_bessel_table(20, x);
    const double h = 1e-6 * std::max(1.0, x);
    for (int l = 0; l <= 20; ++l) {
      const double fd = (riccati_bessel(l, x + h).first - riccati_bessel(l, x - h).first) / (2 * h);
      CHECK(t.derivative[l] == doctest::Approx(fd).epsilon(1e-6).scale(1e-12));
    }
  }
  for (complex z : {complex(0.5, 0.3), complex(3.0, -1.2), complex(0.0, 2.0)}) {
    for (int l : {0, 1, 4, 9}) {
      const std::complex<long double> zl(z.real(), z.imag());
      const auto j = oracle::spherical_bessel_series(l, zl);
      const complex ref(static_cast<double>((zl * j).real()), static_cast<double>((zl * j).imag()));
      CHECK(std::abs(riccati_bessel(l, z).first - ref) < 1e-13 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("Riccati-Hankel Wronskian and psi = (xi1 + xi2)/2") {
  for (double x : {0.5, 3.0, 15.0}) {
    const auto psi = riccati_bessel_table(20, x);
    const auto xi1 = riccati_hankel_table(1, 20, x);
    const auto xi2 = riccati_hankel_table(2, 20, x);
    for (int l = 0; l <= 20; ++l) {
      const complex w = psi.value[l] * xi1.derivative[l] - psi.derivative[l] * xi1.value[l];
      CHECK(std::abs(w - I) < 1e-10);
      const complex mean = 0.5 * (xi1.value[l] + xi2.value[l]);
      CHECK(std::abs(mean - psi.value[l]) <= 1e-12 * std::max(1.0, std::abs(xi1.value[l])));
    }
  }
  CHECK_THROWS_AS(riccati_hankel_table(1, 3, 0.0), DomainError);
}

TEST_CASE("Clebsch-Gordan recurrence matches the Racah formula") {
  double worst = 0.0;
  for (int l1 = 0; l1 <= 4; ++l1)
    for (int l2 = 0; l2 <= 4; ++l2)
      for (int m1 = -l1; m1 <= l1; ++m1)
        for (int m2 = -l2; m2 <= l2; ++m2) {
          const CgColumn col = clebsch_gordan_column(l1, m1, l2, m2);
          for (int alpha = 0; alpha <= l1 + l2; ++alpha) {
            worst = std::max(worst, std::abs(col[alpha] - oracle::clebsch_gordan(l1, m1, l2, m2, alpha, m1 + m2)));
          }
        }
  CHECK(worst <= 1e-12);
}

TEST_CASE("Clebsch-Gordan columns stay orthonormal at larger l") {
  for (int l1 : {8, 15}) {
    const int l2 = 11;
    double sum = 0.0;
    for (int m1 = -l1; m1 <= l1; ++m1) {
      const int m2 = 3 - m1;
      if (std::abs(m2) > l2) continue;
      const double c = clebsch_gordan_column(l1, m1, l2, m2)[l1 + l2 - 2];
      sum += c * c;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("a_coeff validates beta") {
  CHECK_THROWS_AS(a_coeff(2, 1, 1, 0, 1, 0), DomainError);
  CHECK(std::isfinite(a_coeff(2, 1, 1, 1, 1, 0)));
}
