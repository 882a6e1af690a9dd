#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cdscat/em_core.hpp"
#include "cdscat/translation.hpp"
#include "oracles.hpp"

using namespace cdscat;

namespace {

MatrixXc translation(const Vec3& rho, double k, int l_max) {
  const auto [tb, tc] = t_b_c_blocks(rho, k, l_max);
  return assemble_translation(tb, tc);
}

/// Rows and columns with l <= l_low in both blocks.
MatrixXc low_block(const MatrixXc& t, int l_max, int l_low) {
  const int h = ModeIndex::block_size(l_max), hl = ModeIndex::block_size(l_low);
  MatrixXc out(2 * hl, 2 * hl);
  out << t.block(0, 0, hl, hl), t.block(0, h, hl, hl), t.block(h, 0, hl, hl), t.block(h, h, hl, hl);
  return out;
}

VectorXc low_vector(const VectorXc& v, int l_max, int l_low) {
  const int h = ModeIndex::block_size(l_max), hl = ModeIndex::block_size(l_low);
  VectorXc out(2 * hl);
  out << v.segment(0, hl), v.segment(h, hl);
  return out;
}

}  // namespace

TEST_CASE("zero translation is the identity") {
  const int l_max = 6;
  const MatrixXc t = translation(Vec3::Zero(), 1.0, l_max);
  CHECK(oracle::max_abs(t - MatrixXc::Identity(t.rows(), t.cols())) < 1e-13);
}

TEST_CASE("translated coefficients describe the field about the new origin") {
  const int l_max = 24;
  const double k = 1.0;
  const Vec3 r_i(0.4, -0.3, 0.5);
  SphericalFieldCoeffs phi(FieldKind::Free, l_max);
  // Band-limited field: l <= 3 about the global origin.
  for (int l = 1; l <= 3; ++l)
    for (int m = -l; m <= l; ++m) {
      phi.a(l, m) = complex(0.3 * l - 0.1 * m, 0.2 * m);
      phi.b(l, m) = complex(-0.1 * l, 0.05 * (l + m));
    }
  const SphericalFieldCoeffs local(FieldKind::Free, l_max, translation_pair(r_i, k, l_max).to_local.matrix * phi.coeffs);
  for (const Vec3& p : {Vec3(0.1, 0.2, -0.1), Vec3(-0.3, 0.0, 0.4)}) {
    const CVec3 global = eval_field(phi, r_i + p, k, FieldComponent::E);
    const CVec3 about_ri = eval_field(local, p, k, FieldComponent::E);
    CHECK((global - about_ri).norm() < 1e-11);
  }
}

TEST_CASE("translation group property on the low-order block") {
  const int l_max = 30, l_low = 4;
  const double k = 1.0;
  const Vec3 a(0.2, -0.1, 0.3), b(-0.15, 0.25, 0.1);
  const MatrixXc prod = translation(a, k, l_max) * translation(b, k, l_max);
  const MatrixXc direct = translation(a + b, k, l_max);
  CHECK(oracle::max_abs(low_block(prod, l_max, l_low) - low_block(direct, l_max, l_low)) < 1e-12);
}

TEST_CASE("plane wave picks up exp(ikz) under T_i0") {
  const int l_max = 30, l_low = 8;
  const double k = 1.0;
  const Vec3 r_i(0.3, -0.2, 0.5);
  const VectorXc pw = plane_wave_coeffs(l_max).coeffs;
  const VectorXc moved = translation_pair(r_i, k, l_max).to_local.matrix * pw;
  const VectorXc expected = std::exp(I * k * r_i.z()) * pw;
  CHECK(oracle::max_abs(low_vector(moved - expected, l_max, l_low)) < 1e-12);
}

TEST_CASE("fast operators agree with the full products") {
  const int l_max = 7;
  const double k = 1.3;
  const Vec3 r_i(0.5, 0.9, -0.7);
  const TranslationPair tp = translation_pair(r_i, k, l_max);
  CHECK(oracle::max_abs(local_field_operator(r_i, k, l_max) - f_matrix(l_max) * tp.to_local.matrix) < 1e-13);
  CHECK(oracle::max_abs(dipole_emission_operator(r_i, k, l_max) - tp.to_global.matrix * q_matrix(l_max)) < 1e-13);
  CHECK((to_local_displacement(r_i) + r_i).norm() == 0.0);
  CHECK((to_global_displacement(r_i) - r_i).norm() == 0.0);
}

TEST_CASE("restricted blocks are leading sub-matrices") {
  const Vec3 rho(0.3, 0.4, -0.2);
  const auto [tb, tc] = t_b_c_blocks(rho, 1.1, 6);
  const TranslationBlocks r = translation_blocks(rho, 1.1, 2, 5);
  const int rows = ModeIndex::block_size(2), cols = ModeIndex::block_size(5);
  CHECK(oracle::max_abs(r.tb - tb.topLeftCorner(rows, cols)) < 1e-14);
  CHECK(oracle::max_abs(r.tc - tc.topLeftCorner(rows, cols)) < 1e-14);
}

namespace {

/// Pair with k |r1 - r2| = pi, centred at c.
double cdos_error(int l_max, const Vec3& c) {
  const double k = 1.0;
  const Vec3 u = Vec3(1, 1, 1).normalized();
  const Vec3 r1 = c + (pi / 2) * u, r2 = c - (pi / 2) * u;
  const MatrixXc lhs = local_field_operator(r1, k, l_max) * dipole_emission_operator(r2, k, l_max);
  const CMat3 g = green_tensor(r1, r2, k);
  const MatrixXc rhs = I * g.imag().cast<complex>();
  return oracle::max_abs(lhs - rhs);
}

}  // namespace

TEST_CASE("cross density of states identity") {
  // Off-centre pair (|r_i| ~ 6-8 / k) keeps the truncation error above round-off up to l_max = 16.
  const Vec3 c(6.0, 3.0, -1.8);
  const double e8 = cdos_error(8, c), e12 = cdos_error(12, c), e16 = cdos_error(16, c);
  CAPTURE(e8);
  CAPTURE(e12);
  CAPTURE(e16);
  CHECK(e16 <= 1e-6);
  CHECK(e12 < e8);
  CHECK(e16 < e12);
  CHECK(cdos_error(16, Vec3::Zero()) < 1e-14);
}
