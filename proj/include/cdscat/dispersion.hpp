#pragma once

#include <vector>

#include "cdscat/cdm.hpp"

/// Collective radiative corrections and dispersion (Casimir-Polder) energies.
namespace cdscat {

/// hbar c in eV m.
inline constexpr double hbar_c_ev_m = 1.973269804e-7;
inline constexpr double joule_per_ev = 1.602176634e-19;

/// ln det(I - M) from the LU pivots. An odd row permutation adds -i pi or
/// +i pi so that ln det(I - M*) is the conjugate of ln det(I - M).
complex log_det_identity_minus(const MatrixXc& m);

/// Delta(omega) = ln det[I - Y] - ln det[I - X] at real wavenumber k
/// (principal branch for a single call).
complex phase_shift(const DipoleEnsemble& ensemble, double k);

/// Delta along a frequency scan with the imaginary part unwrapped between
/// successive points.
std::vector<complex> phase_shift_scan(const DipoleEnsemble& ensemble, const std::vector<double>& ks);

/// ln det[I - X(i kappa)], real. Throws SignError if the determinant is not positive.
double energy_integrand(const DipoleEnsemble& ensemble, double kappa, const StructureOptions& options = {});

struct QuadratureConfig {
  int nodes = 40;
  /// kappa_0 of the map kappa = kappa_0 (1 + t)/(1 - t); <= 0 selects 1/d_min.
  double scale = 0.0;
  bool check_convergence = true;
  double convergence_tol = 1e-8;
  /// Metres per length unit of the positions (1e-9 for nm).
  double length_unit_m = 1e-9;
  StructureOptions structure;
};

struct EnergyResult {
  double e_collective_ev = 0.0;
  double e_pairwise_ev = 0.0;
  double e_collective_j = 0.0;
  double e_pairwise_j = 0.0;
  int nodes = 0;
  double scale = 0.0;
  std::vector<double> node_kappa;
  std::vector<double> node_integrand;
  bool converged = false;
  double refinement_change = 0.0;  // |E(2n) - E(n)| / |E(n)|

  double relative_deviation() const;  // |E - E_PW| / |E|
};

/// hbar c / (2 pi) times the integral over kappa of the integrand on a given
/// grid, in eV.
double integrate_energy(const DipoleEnsemble& ensemble, int nodes, double scale, const QuadratureConfig& config,
                        std::vector<double>* kappa_out = nullptr, std::vector<double>* integrand_out = nullptr);

/// Collective energy, pairwise energy and quadrature diagnostics.
EnergyResult dispersion_energy(const DipoleEnsemble& ensemble, const QuadratureConfig& config = {});

/// Sum of the two-body energies over all pairs, on the grid of the full ensemble.
double pairwise_energy(const DipoleEnsemble& ensemble, const QuadratureConfig& config = {});

/// kappa_0 actually used for an ensemble.
double resolve_scale(const DipoleEnsemble& ensemble, const QuadratureConfig& config);

}  // namespace cdscat
