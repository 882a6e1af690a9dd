#pragma once

#include "cdscat/cdm.hpp"

/// Collective diffusion / scattering / absorption operators in spherical modes.
namespace cdscat {

/// D = emission * [I - X]^{-1} * incident_stack, kept in factored form.
///
/// emission       N_sph x 3N, blocks k^3 alpha_i T_{0i} Q
/// incident_stack 3N x N_sph, blocks F T_{i0}
/// excitation     [I - X]^{-1} incident_stack
struct DiffusionFactors {
  MatrixXc emission;
  MatrixXc incident_stack;
  MatrixXc excitation;
  double condition_number = 0.0;

  MatrixXc diffusion() const { return emission * excitation; }
  /// Single-scattering term (I - X)^{-1} -> I.
  MatrixXc single_scattering() const { return emission * incident_stack; }
};

DiffusionFactors diffusion_factors(const DipoleEnsemble& ensemble, double k, int l_max);

/// Collective diffusion matrix D (outgoing coefficients of phi_sca from phi_inc).
MatrixXc collective_diffusion(const DipoleEnsemble& ensemble, double k, int l_max);

/// S = I + 2 D.
MatrixXc scattering_matrix(const MatrixXc& diffusion);

struct AbsorptionOperator {
  MatrixXc matrix;         // (A + A^dagger)/2
  double hermitian_defect;  // max |A - A^dagger| before symmetrization
};

/// A = I - S^dagger S, symmetrized.
AbsorptionOperator absorption_operator(const MatrixXc& scattering);

/// A = -2 (D + D^dagger) - 4 D^dagger D.
MatrixXc absorption_from_diffusion(const MatrixXc& diffusion);

struct AbsorptionModes {
  Eigen::VectorXd eigenvalues;  // descending
  MatrixXc eigenvectors;        // orthonormal columns, matching eigenvalues
  int rank = 0;                 // eigenvalues above rank_tol * largest

  /// Sum_k lambda_k v_k v_k^dagger.
  MatrixXc reconstruct(int size) const;
};

/// Eigendecomposition of a Hermitian absorption operator. Each eigenvector is
/// rotated so that its first significant component is real and positive.
AbsorptionModes absorption_modes(const MatrixXc& absorption, double rank_tol = 1e-10);

/// Same spectrum computed inside the at most 6N-dimensional subspace spanned by
/// the columns of the emission factor and the rows of the excitation factor,
/// which contains the range of A. Only the eigenpairs of that subspace are
/// returned; every other eigenvalue is exactly zero.
AbsorptionModes absorption_modes(const DiffusionFactors& factors, double rank_tol = 1e-10);

struct AbsorbedFraction {
  double fraction;    // phi^dagger A phi for phi normalized to unit norm
  double input_norm;  // ||phi|| before normalization
};

/// Sum_k lambda_k |v_k^dagger phi|^2 for the normalized incident field.
AbsorbedFraction absorbed_fraction(const AbsorptionModes& modes, const SphericalFieldCoeffs& phi_inc);

}  // namespace cdscat
