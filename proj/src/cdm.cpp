#include "cdscat/cdm.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cdscat/errors.hpp"
#include "cdscat/translation.hpp"

namespace cdscat {

DipoleEnsemble::DipoleEnsemble(std::vector<Dipole> dipoles) : dipoles_(std::move(dipoles)) {
  if (dipoles_.empty()) throw DomainError("DipoleEnsemble: needs at least one dipole");
  for (std::size_t i = 0; i < dipoles_.size(); ++i) {
    for (std::size_t j = i + 1; j < dipoles_.size(); ++j) {
      if ((dipoles_[i].position - dipoles_[j].position).norm() == 0.0) {
        throw CoincidenceError("DipoleEnsemble: dipoles " + std::to_string(i) + " and " + std::to_string(j) +
                               " share a position");
      }
    }
  }
}

double DipoleEnsemble::min_separation() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dipoles_.size(); ++i)
    for (std::size_t j = i + 1; j < dipoles_.size(); ++j)
      best = std::min(best, (dipoles_[i].position - dipoles_[j].position).norm());
  return best;
}

DipoleEnsemble DipoleEnsemble::subset(const std::vector<std::size_t>& members) const {
  std::vector<Dipole> picked;
  picked.reserve(members.size());
  for (auto i : members) picked.push_back(dipoles_.at(i));
  return DipoleEnsemble(std::move(picked));
}

complex effective_polarizability(const PolarizabilityModel& model, const Frequency& f,
                                 const StructureOptions& options) {
  const complex alpha0 = bare_polarizability(model, f);
  if (!f.is_imaginary()) return dressed_polarizability(alpha0, f.wavenumber());
  if (options.imag_polarizability == ImagFreqPolarizability::Dressed) {
    return dressed_polarizability_imag(alpha0, f.wavenumber());
  }
  return alpha0;
}

StructureMatrix structure_matrix(const DipoleEnsemble& ensemble, const Frequency& f, StructureVariant variant,
                                 const StructureOptions& options) {
  const std::size_t n = ensemble.size();
  const double k = f.wavenumber();
  if (!(k > 0.0)) throw DomainError("structure_matrix: frequency must be positive");
  if (f.is_imaginary() && variant == StructureVariant::Y) {
    throw DomainError("structure_matrix: the Y variant is defined at real frequency only");
  }

  std::vector<complex> k3_alpha(n);
  for (std::size_t i = 0; i < n; ++i) {
    k3_alpha[i] = k * k * k * effective_polarizability(ensemble[i].model, f, options);
  }

  StructureMatrix x{MatrixXc::Zero(3 * n, 3 * n), f, variant};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const Vec3& ri = ensemble[i].position;
      const Vec3& rj = ensemble[j].position;
      auto block = x.entries.block<3, 3>(3 * i, 3 * j);
      if (f.is_imaginary()) {
        block = (-k3_alpha[j] * green_tensor_imag_freq(ri, rj, k).cast<complex>()).eval();
      } else if (variant == StructureVariant::X) {
        block = k3_alpha[j] * green_tensor(ri, rj, k);
      } else {
        const complex weight = k3_alpha[j] / (1.0 + I * k3_alpha[j] / (3.0 * pi));
        block = weight * green_tensor(ri, rj, k).conjugate();
      }
    }
  }
  return x;
}

ExcitingFieldSolver::ExcitingFieldSolver(const StructureMatrix& x, double pivot_tolerance)
    : ExcitingFieldSolver(x.entries, pivot_tolerance) {}

ExcitingFieldSolver::ExcitingFieldSolver(const MatrixXc& x, double pivot_tolerance) {
  const MatrixXc system = MatrixXc::Identity(x.rows(), x.cols()) - x;
  lu_.compute(system);
  const auto pivots = lu_.matrixLU().diagonal().cwiseAbs();
  const double rcond = lu_.rcond();
  condition_ = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (pivots.size() > 0 && !(pivots.minCoeff() > pivot_tolerance * pivots.maxCoeff())) {
    throw ResonanceError("I - X is singular to working precision (condition number ~ " +
                             std::to_string(condition_) + "); collective resonance",
                         condition_);
  }
}

VectorXc ExcitingFieldSolver::solve(const VectorXc& incident) const { return lu_.solve(incident); }
MatrixXc ExcitingFieldSolver::solve(const MatrixXc& incident) const { return lu_.solve(incident); }

complex ExcitingFieldSolver::log_determinant() const {
  complex sum = 0.0;
  const auto diag = lu_.matrixLU().diagonal();
  for (Eigen::Index i = 0; i < diag.size(); ++i) sum += std::log(diag[i]);
  if (lu_.permutationP().determinant() < 0) sum += I * pi;
  return sum;
}

VectorXc solve_exciting_fields(const StructureMatrix& x, const VectorXc& incident) {
  return ExcitingFieldSolver(x).solve(incident);
}

VectorXc incident_vector_from_modes(const DipoleEnsemble& ensemble, const SphericalFieldCoeffs& phi_inc, double k) {
  if (phi_inc.kind != FieldKind::Free) throw DomainError("incident_vector_from_modes: incident field must be free");
  VectorXc out(3 * ensemble.size());
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    out.segment<3>(3 * i) = local_field_operator(ensemble[i].position, k, phi_inc.l_max) * phi_inc.coeffs;
  }
  return out;
}

CVec3 scattered_field_at_point(const DipoleEnsemble& ensemble, const VectorXc& exciting, const Vec3& point,
                               double k) {
  if (exciting.size() != static_cast<Eigen::Index>(3 * ensemble.size())) {
    throw DomainError("scattered_field_at_point: exciting vector has the wrong length");
  }
  CVec3 total = CVec3::Zero();
  const Frequency f = Frequency::real(k);
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    const complex k3_alpha = k * k * k * effective_polarizability(ensemble[i].model, f);
    total += k3_alpha * green_tensor(point, ensemble[i].position, k) * exciting.segment<3>(3 * i);
  }
  return total;
}

}  // namespace cdscat
