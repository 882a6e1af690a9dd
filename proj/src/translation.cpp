#include "cdscat/translation.hpp"

#include <algorithm>
#include <cmath>

#include "cdscat/em_core.hpp"
#include "cdscat/errors.hpp"
#include "cdscat/specfun.hpp"

namespace cdscat {

namespace {

double sign_of(int m) { return (m % 2 == 0) ? 1.0 : -1.0; }

complex i_pow(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

/// u_{alpha,beta}(rho) = j_alpha(k rho) Y_{alpha,beta}(theta_rho, phi_rho), alpha <= alpha_max.
class RegularWaves {
 public:
  RegularWaves(const Vec3& rho, double k, int alpha_max)
      : alpha_max_(alpha_max), values_(static_cast<std::size_t>((alpha_max + 1) * (alpha_max + 1))) {
    const double r = rho.norm();
    const double theta = (r == 0.0) ? 0.0 : std::acos(std::clamp(rho.z() / r, -1.0, 1.0));
    const double phi = (r == 0.0) ? 0.0 : std::atan2(rho.y(), rho.x());
    const auto j = specfun::spherical_bessel_j_table(alpha_max, k * r);
    const specfun::AngularTable ang(alpha_max, theta);
    for (int a = 0; a <= alpha_max; ++a) {
      for (int b = -a; b <= a; ++b) {
        values_[a * a + a + b] = j[a] * ang.value(a, b) * std::exp(I * (static_cast<double>(b) * phi));
      }
    }
  }

  complex operator()(int alpha, int beta) const {
    if (alpha > alpha_max_ || std::abs(beta) > alpha) return 0.0;
    return values_[alpha * alpha + alpha + beta];
  }

 private:
  int alpha_max_;
  std::vector<complex> values_;
};

}  // namespace

TranslationBlocks translation_blocks(const Vec3& rho, double k, int row_l_max, int col_l_max) {
  if (row_l_max < 1 || col_l_max < 1) throw DomainError("translation_blocks: l_max must be >= 1");
  const int rows = ModeIndex::block_size(row_l_max);
  const int cols = ModeIndex::block_size(col_l_max);
  const RegularWaves u(rho, k, row_l_max + col_l_max);

  TranslationBlocks out{MatrixXc::Zero(rows, cols), MatrixXc::Zero(rows, cols), MatrixXc::Zero(rows, cols)};

  for (int l1 = 1; l1 <= row_l_max; ++l1) {
    for (int l2 = 1; l2 <= col_l_max; ++l2) {
      const auto cg0 = specfun::clebsch_gordan_column(l1, 0, l2, 0);
      const double gaunt_norm = std::sqrt((2.0 * l1 + 1.0) * (2.0 * l2 + 1.0) / (4.0 * pi));
      const double c1 = l1 * (l1 + 1.0), c2 = l2 * (l2 + 1.0);
      const double tb_norm = 1.0 / (2.0 * std::sqrt(c1 * c2));
      const complex prefactor_l = 4.0 * pi * i_pow(l2 - l1);
      const int alpha_lo = std::abs(l1 - l2);
      const int alpha_hi = l1 + l2;
      for (int m1 = -l1; m1 <= l1; ++m1) {
        for (int m2 = -l2; m2 <= l2; ++m2) {
          const int beta = m2 - m1;
          const auto cg = specfun::clebsch_gordan_column(l1, -m1, l2, m2);
          complex sum_a = 0.0, sum_b = 0.0;
          for (int alpha = std::max(alpha_lo, std::abs(beta)); alpha <= alpha_hi; ++alpha) {
            if ((alpha + l1 + l2) % 2 != 0) continue;  // <alpha,0|l1,0,l2,0> = 0
            const double a = gaunt_norm / std::sqrt(2.0 * alpha + 1.0) * cg[alpha] * cg0[alpha];
            const complex term = i_pow(alpha) * a * u(alpha, beta);
            sum_a += term;
            sum_b += (c1 + c2 - alpha * (alpha + 1.0)) * tb_norm * term;
          }
          const int r = ModeIndex::in_block(l1, m1);
          const int c = ModeIndex::in_block(l2, m2);
          out.ta(r, c) = sign_of(m1) * prefactor_l * sum_a;
          out.tb(r, c) = sign_of(m1) * prefactor_l * sum_b;
        }
      }
    }
  }

  const complex kx = k * rho.x(), ky = k * rho.y(), kz = k * rho.z();
  for (int l1 = 1; l1 <= row_l_max; ++l1) {
    for (int m1 = -l1; m1 <= l1; ++m1) {
      const int r = ModeIndex::in_block(l1, m1);
      for (int l2 = 1; l2 <= col_l_max; ++l2) {
        const double norm = 1.0 / std::sqrt(l1 * (l1 + 1.0) * l2 * (l2 + 1.0));
        for (int m2 = -l2; m2 <= l2; ++m2) {
          const double lam_p = std::sqrt(static_cast<double>((l2 - m2) * (l2 + m2 + 1)));
          const double lam_m = std::sqrt(static_cast<double>((l2 + m2) * (l2 - m2 + 1)));
          const complex ta_up = (m2 + 1 <= l2) ? out.ta(r, ModeIndex::in_block(l2, m2 + 1)) : complex(0.0);
          const complex ta_dn = (m2 - 1 >= -l2) ? out.ta(r, ModeIndex::in_block(l2, m2 - 1)) : complex(0.0);
          const complex ta_0 = out.ta(r, ModeIndex::in_block(l2, m2));
          const complex vx = (lam_p * ta_up + lam_m * ta_dn) / 2.0;
          const complex vy = (lam_p * ta_up - lam_m * ta_dn) / (2.0 * I);
          const complex vz = static_cast<double>(m2) * ta_0;
          out.tc(r, ModeIndex::in_block(l2, m2)) = -I * norm * (kx * vx + ky * vy + kz * vz);
        }
      }
    }
  }
  return out;
}

MatrixXc t_a_block(const Vec3& rho, double k, int l_max) { return translation_blocks(rho, k, l_max, l_max).ta; }

std::pair<MatrixXc, MatrixXc> t_b_c_blocks(const Vec3& rho, double k, int l_max) {
  auto blocks = translation_blocks(rho, k, l_max, l_max);
  return {std::move(blocks.tb), std::move(blocks.tc)};
}

MatrixXc assemble_translation(const MatrixXc& tb, const MatrixXc& tc) {
  const Eigen::Index r = tb.rows(), c = tb.cols();
  MatrixXc t(2 * r, 2 * c);
  t.topLeftCorner(r, c) = tb;
  t.topRightCorner(r, c) = I * tc;
  t.bottomLeftCorner(r, c) = -I * tc;
  t.bottomRightCorner(r, c) = tb;
  return t;
}

// The block formulas with argument rho give the coefficients of E(r - rho).
// Re-expanding about r_i therefore uses rho = -r_i, and carrying a field
// emitted around r_i back to the origin uses rho = +r_i.
Vec3 to_local_displacement(const Vec3& r_i) { return -r_i; }
Vec3 to_global_displacement(const Vec3& r_i) { return r_i; }

TranslationPair translation_pair(const Vec3& r_i, double k, int l_max) {
  const Vec3 local = to_local_displacement(r_i);
  const Vec3 global = to_global_displacement(r_i);
  auto [tb_l, tc_l] = t_b_c_blocks(local, k, l_max);
  auto [tb_g, tc_g] = t_b_c_blocks(global, k, l_max);
  return {TranslationOperator{local, k, l_max, assemble_translation(tb_l, tc_l)},
          TranslationOperator{global, k, l_max, assemble_translation(tb_g, tc_g)}};
}

MatrixXc local_field_operator(const Vec3& r_i, double k, int l_max) {
  // Only the (A, l = 1) rows of T_{i0} reach F.
  const auto blocks = translation_blocks(to_local_displacement(r_i), k, 1, l_max);
  const int half = ModeIndex::block_size(l_max);
  MatrixXc rows(3, 2 * half);
  rows.leftCols(half) = blocks.tb;
  rows.rightCols(half) = I * blocks.tc;
  return f_matrix(1).leftCols(3) * rows;
}

MatrixXc dipole_emission_operator(const Vec3& r_i, double k, int l_max) {
  // Q only feeds the (A, l = 1) columns of T_{0i}.
  const auto blocks = translation_blocks(to_global_displacement(r_i), k, l_max, 1);
  const int half = ModeIndex::block_size(l_max);
  MatrixXc cols(2 * half, 3);
  cols.topRows(half) = blocks.tb;
  cols.bottomRows(half) = -I * blocks.tc;
  return cols * q_matrix(1).topRows(3);
}

}  // namespace cdscat
