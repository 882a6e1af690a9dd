#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cdscat/errors.hpp"
#include "cdscat/geometry.hpp"
#include "cdscat/scattering.hpp"
#include "cdscat/tasks.hpp"
#include "oracles.hpp"

using namespace cdscat;

namespace {

DipoleEnsemble single(complex alpha0) { return DipoleEnsemble({{Vec3::Zero(), BarePolarizability{alpha0}}}); }

double unitarity_defect(const DipoleEnsemble& e, double k, int l_max) {
  const MatrixXc s = scattering_matrix(collective_diffusion(e, k, l_max));
  return oracle::max_abs(MatrixXc::Identity(s.rows(), s.cols()) - s.adjoint() * s);
}

}  // namespace

TEST_CASE("single dipole at the origin: D = k^3 alpha Q F") {
  const int l_max = 4;
  const double k = 1.3;
  const complex alpha0(0.7, 0.2);
  const complex alpha = dressed_polarizability(alpha0, k);
  const MatrixXc d = collective_diffusion(single(alpha0), k, l_max);
  CHECK(oracle::max_abs(d - k * k * k * alpha * q_matrix(l_max) * f_matrix(l_max)) < 1e-14);
}

TEST_CASE("lossless single dipole: S is unitary") {
  for (double alpha0 : {0.1, 2.0, 40.0}) CHECK(unitarity_defect(single(alpha0), 1.0, 8) <= 1e-12);
}

TEST_CASE("lossless ensemble: S is unitary") {
  const DipoleEnsemble e({{Vec3(0.0, 0.0, 0.0), ClausiusMossotti{0.2, 6.0}},
                          {Vec3(0.8, 0.1, 0.0), ClausiusMossotti{0.25, 9.0}},
                          {Vec3(-0.2, -0.6, 0.5), BarePolarizability{0.3}}});
  CHECK(unitarity_defect(e, 1.0, 12) <= 1e-11);
}

TEST_CASE("lossy single dipole: three equal absorption eigenvalues") {
  const double k = 1.0;
  const complex alpha0(1.5, 0.4);
  const complex alpha = dressed_polarizability(alpha0, k);
  const double expected = 2.0 * k * k * k / (3.0 * pi) * (alpha.imag() - k * k * k * std::norm(alpha) / (6.0 * pi));
  const int l_max = 8;
  const AbsorptionModes dense = absorption_modes(absorption_operator(scattering_matrix(collective_diffusion(single(alpha0), k, l_max))).matrix);
  CHECK(dense.rank == 3);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(dense.eigenvalues[i] - expected) <= 1e-12);
  CHECK(std::abs(dense.eigenvalues[3]) <= 1e-12);
}

TEST_CASE("absorption operator: S form, D form and low-rank spectrum agree") {
  const DipoleEnsemble e({{Vec3(0.0, 0.0, 0.0), ClausiusMossotti{0.4, complex(5.0, 1.0)}},
                          {Vec3(1.2, 0.0, 0.3), ClausiusMossotti{0.4, 10.0}},
                          {Vec3(-0.3, 1.0, -0.2), ClausiusMossotti{0.3, complex(3.0, 0.2)}}});
  const double k = 1.1;
  const int l_max = 10;
  const DiffusionFactors factors = diffusion_factors(e, k, l_max);
  const MatrixXc d = factors.diffusion();
  const AbsorptionOperator from_s = absorption_operator(scattering_matrix(d));
  const MatrixXc from_d = absorption_from_diffusion(d);
  CHECK(from_s.hermitian_defect < 1e-13);
  CHECK(oracle::max_abs(from_s.matrix - from_d) < 1e-13);

  const AbsorptionModes dense = absorption_modes(from_d);
  const AbsorptionModes low = absorption_modes(factors);
  CHECK(dense.rank == 6);  // two lossy dipoles
  CHECK(low.rank == dense.rank);
  for (int i = 0; i < dense.rank; ++i) CHECK(low.eigenvalues[i] == doctest::Approx(dense.eigenvalues[i]).epsilon(1e-10));
  CHECK(oracle::max_abs(low.reconstruct(d.rows()) - dense.reconstruct(d.rows())) < 1e-12);
  // Orthonormal, phase-fixed eigenvectors.
  const MatrixXc v = low.eigenvectors.leftCols(low.rank);
  CHECK(oracle::max_abs(v.adjoint() * v - MatrixXc::Identity(low.rank, low.rank)) < 1e-12);
}

TEST_CASE("multiple scattering enters at second order") {
  auto residual = [](double s) {
    const DipoleEnsemble e({{Vec3(0, 0, 0), BarePolarizability{complex(0.3, 0.1) * s}},
                            {Vec3(0.9, 0.2, 0.0), BarePolarizability{complex(0.5, 0.0) * s}},
                            {Vec3(0.1, -0.8, 0.4), BarePolarizability{complex(0.2, 0.05) * s}}});
    const DiffusionFactors f = diffusion_factors(e, 1.0, 6);
    return oracle::max_abs(f.diffusion() - f.single_scattering());
  };
  const double r1 = residual(0.1), r2 = residual(0.05), r3 = residual(0.025);
  CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.05));
  CHECK(r2 / r3 == doctest::Approx(4.0).epsilon(0.03));
}

TEST_CASE("rank equals three times the number of absorbing dipoles") {
  ShellSpec spec;
  spec.solid = PlatonicSolid::Cube;
  spec.sphere_radius = 0.8;
  spec.shell_radius = pi;
  const AbsorptionModes m = absorption_modes(diffusion_factors(build_shell(spec), 1.0, 12));
  CHECK(m.rank == 3);
  spec.eps_shell = complex(10.0, 0.3);
  const AbsorptionModes all = absorption_modes(diffusion_factors(build_shell(spec), 1.0, 12));
  CHECK(all.rank == 27);
}

TEST_CASE("absorbed fraction of a plane wave") {
  const double k = 1.0;
  const int l_max = 8;
  const AbsorptionModes m = absorption_modes(diffusion_factors(single(complex(1.0, 0.5)), k, l_max));
  const SphericalFieldCoeffs pw = plane_wave_coeffs(l_max);
  const AbsorbedFraction af = absorbed_fraction(m, pw);
  // Only the A, l = 1 part of the plane wave reaches a dipole at the origin.
  const MatrixXc a1 = identity_a1(l_max);
  const double share = (a1 * pw.coeffs).squaredNorm() / pw.coeffs.squaredNorm();
  CHECK(af.fraction == doctest::Approx(m.eigenvalues[0] * share).epsilon(1e-12));
  CHECK(af.input_norm == doctest::Approx(pw.coeffs.norm()));
  CHECK_THROWS_AS(absorbed_fraction(m, SphericalFieldCoeffs(FieldKind::Free, l_max)), DomainError);
  CHECK_THROWS_AS(absorbed_fraction(m, plane_wave_coeffs(3)), DomainError);
}

TEST_CASE("multipole weights of absorbing modes") {
  const int l_max = 10;
  const AbsorptionModes iso = absorption_modes(diffusion_factors(single(complex(1.0, 0.5)), 1.0, l_max));
  for (int i = 0; i < 3; ++i) {
    double total = 0.0, a1 = 0.0;
    for (const auto& w : multipole_weights(iso.eigenvectors.col(i), l_max)) {
      total += w.weight;
      if (w.block == Block::A && w.l == 1) a1 = w.weight;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a1 == doctest::Approx(1.0).epsilon(1e-12));
  }

  ShellSpec spec;
  spec.solid = PlatonicSolid::Octahedron;
  spec.sphere_radius = 0.8;
  spec.shell_radius = pi;
  const AbsorptionModes shell = absorption_modes(diffusion_factors(build_shell(spec), 1.0, l_max));
  double higher = 0.0;
  for (const auto& w : multipole_weights(shell.eigenvectors.col(0), l_max))
    if (w.l > 1) higher += w.weight;
  CHECK(higher > 1e-3);
}
