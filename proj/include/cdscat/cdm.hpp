#pragma once

#include <vector>

#include "cdscat/em_core.hpp"

/// Coupled dipole model: structure matrix, exciting fields, scattered field.
namespace cdscat {

struct Dipole {
  Vec3 position;
  PolarizabilityModel model;
};

/// N point dipoles about the global origin (0, 0, 0).
class DipoleEnsemble {
 public:
  DipoleEnsemble() = default;
  explicit DipoleEnsemble(std::vector<Dipole> dipoles);

  std::size_t size() const noexcept { return dipoles_.size(); }
  const Dipole& operator[](std::size_t i) const { return dipoles_[i]; }
  const std::vector<Dipole>& dipoles() const noexcept { return dipoles_; }
  auto begin() const { return dipoles_.begin(); }
  auto end() const { return dipoles_.end(); }

  /// Smallest centre-to-centre distance; +inf for N = 1.
  double min_separation() const;

  /// Sub-ensemble made of the listed members.
  DipoleEnsemble subset(const std::vector<std::size_t>& members) const;

 private:
  std::vector<Dipole> dipoles_;
};

enum class StructureVariant { X, Y };

struct StructureOptions {
  ImagFreqPolarizability imag_polarizability = ImagFreqPolarizability::Bare;
};

/// Polarizability entering the structure matrix: dressed at real frequency,
/// bare (or dressed, on request) at imaginary frequency.
complex effective_polarizability(const PolarizabilityModel& model, const Frequency& f,
                                 const StructureOptions& options = {});

/// 3N x 3N inter-dipole coupling; diagonal 3 x 3 blocks are zero.
struct StructureMatrix {
  MatrixXc entries;  // 3N x 3N
  Frequency frequency = Frequency::real(1.0);
  StructureVariant variant = StructureVariant::X;
};

/// X blocks (i != i'): k^3 alpha_{i'} G0(r_i, r_{i'})/k.
/// Y blocks: k^3 alpha_{i'} / (1 + i k^3 alpha_{i'} / 3 pi) G0*(r_i, r_{i'})/k.
/// At imaginary frequency the X blocks are real: -kappa^3 alpha_{i'} G0(i kappa)/kappa.
StructureMatrix structure_matrix(const DipoleEnsemble& ensemble, const Frequency& f,
                                 StructureVariant variant = StructureVariant::X,
                                 const StructureOptions& options = {});

/// LU factorization of I - X, reusable across right-hand sides.
///
/// Throws ResonanceError when the smallest pivot relative to the largest is
/// below pivot_tolerance.
class ExcitingFieldSolver {
 public:
  explicit ExcitingFieldSolver(const StructureMatrix& x, double pivot_tolerance = 1e-12);
  explicit ExcitingFieldSolver(const MatrixXc& x, double pivot_tolerance = 1e-12);

  VectorXc solve(const VectorXc& incident) const;
  MatrixXc solve(const MatrixXc& incident) const;

  /// 1-norm condition estimate of I - X.
  double condition_number() const noexcept { return condition_; }
  /// log det(I - X), summing the logs of the pivots (principal branch per pivot).
  complex log_determinant() const;

 private:
  Eigen::PartialPivLU<MatrixXc> lu_;
  double condition_ = 0.0;
};

/// [I - X]^{-1} incident.
VectorXc solve_exciting_fields(const StructureMatrix& x, const VectorXc& incident);

/// Stacked F T_{i0} phi_inc = E_inc(r_i), length 3N. phi_inc must be a free field.
VectorXc incident_vector_from_modes(const DipoleEnsemble& ensemble, const SphericalFieldCoeffs& phi_inc, double k);

/// E_sca(r) = sum_i k^3 alpha_i G0(r, r_i)/k E_i with dressed alpha_i.
CVec3 scattered_field_at_point(const DipoleEnsemble& ensemble, const VectorXc& exciting, const Vec3& point, double k);

}  // namespace cdscat
