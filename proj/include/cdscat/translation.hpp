#pragma once

#include "cdscat/types.hpp"

/// Translation-addition operators for vector spherical modes.
///
/// A translation operator maps the coefficients of a field (free or outgoing)
/// expanded about one origin onto the coefficients of the same field expanded
/// about a displaced origin. Its layout over the [A; B] coefficient vector is
///
///     [ T^B    i T^C ]
///     [ -i T^C  T^B  ]
///
/// with T^B, T^C built from the scalar blocks T^A. The free->free and
/// outgoing->outgoing blocks coincide, so one set serves both.
namespace cdscat {

/// Scalar translation block T^A(rho), (N/2) x (N/2).
MatrixXc t_a_block(const Vec3& rho, double k, int l_max);

/// (T^B(rho), T^C(rho)).
std::pair<MatrixXc, MatrixXc> t_b_c_blocks(const Vec3& rho, double k, int l_max);

/// Blocks restricted to rows with l1 <= row_l_max and columns with
/// l2 <= col_l_max. Since the (l, m) order starts at l = 1, the restricted
/// blocks are the leading sub-matrices of the full ones.
struct TranslationBlocks {
  MatrixXc ta, tb, tc;
};
TranslationBlocks translation_blocks(const Vec3& rho, double k, int row_l_max, int col_l_max);

/// [[tb, i tc], [-i tc, tb]].
MatrixXc assemble_translation(const MatrixXc& tb, const MatrixXc& tc);

struct TranslationOperator {
  Vec3 rho;
  double k;
  int l_max;
  MatrixXc matrix;
};

/// T_{i0} re-expands a free field given about the global origin around the
/// point r_i; T_{0i} re-expands an outgoing field emitted around r_i about the
/// global origin.
struct TranslationPair {
  TranslationOperator to_local;   // T_{i0}
  TranslationOperator to_global;  // T_{0i}
};
TranslationPair translation_pair(const Vec3& r_i, double k, int l_max);

/// Displacement argument of the block formulas for T_{i0} and T_{0i}.
Vec3 to_local_displacement(const Vec3& r_i);
Vec3 to_global_displacement(const Vec3& r_i);

/// F T_{i0}: the electric field at r_i of a free field, 3 x N.
MatrixXc local_field_operator(const Vec3& r_i, double k, int l_max);

/// T_{0i} Q: outgoing coefficients about the origin of a unit dipole at r_i, N x 3.
MatrixXc dipole_emission_operator(const Vec3& r_i, double k, int l_max);

}  // namespace cdscat
