#include "cdscat/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cdscat/errors.hpp"
#include "cdscat/translation.hpp"

namespace cdscat {

DiffusionFactors diffusion_factors(const DipoleEnsemble& ensemble, double k, int l_max) {
  const ModeIndex idx(l_max);
  const std::size_t n = ensemble.size();
  const Frequency f = Frequency::real(k);

  DiffusionFactors out;
  out.emission = MatrixXc::Zero(idx.size(), 3 * n);
  out.incident_stack = MatrixXc::Zero(3 * n, idx.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& r = ensemble[i].position;
    const complex k3_alpha = k * k * k * effective_polarizability(ensemble[i].model, f);
    out.emission.middleCols<3>(3 * i) = k3_alpha * dipole_emission_operator(r, k, l_max);
    out.incident_stack.middleRows<3>(3 * i) = local_field_operator(r, k, l_max);
  }
  const ExcitingFieldSolver solver(structure_matrix(ensemble, f));
  out.excitation = solver.solve(out.incident_stack);
  out.condition_number = solver.condition_number();
  return out;
}

MatrixXc collective_diffusion(const DipoleEnsemble& ensemble, double k, int l_max) {
  return diffusion_factors(ensemble, k, l_max).diffusion();
}

MatrixXc scattering_matrix(const MatrixXc& diffusion) {
  return MatrixXc::Identity(diffusion.rows(), diffusion.cols()) + 2.0 * diffusion;
}

AbsorptionOperator absorption_operator(const MatrixXc& scattering) {
  const MatrixXc raw = MatrixXc::Identity(scattering.rows(), scattering.cols()) - scattering.adjoint() * scattering;
  const double defect = (raw - raw.adjoint()).cwiseAbs().maxCoeff();
  return {(raw + raw.adjoint()) / 2.0, defect};
}

MatrixXc absorption_from_diffusion(const MatrixXc& diffusion) {
  return -2.0 * (diffusion + diffusion.adjoint()) - 4.0 * diffusion.adjoint() * diffusion;
}

MatrixXc AbsorptionModes::reconstruct(int size) const {
  MatrixXc a = MatrixXc::Zero(size, size);
  for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) {
    a += eigenvalues[k] * eigenvectors.col(k) * eigenvectors.col(k).adjoint();
  }
  return a;
}

namespace {

void fix_phase(Eigen::Ref<VectorXc> v) {
  const double largest = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-8 * largest) {
      v *= std::conj(v[i]) / std::abs(v[i]);
      return;
    }
  }
}

AbsorptionModes sorted_modes(const Eigen::VectorXd& values, const MatrixXc& vectors, double rank_tol) {
  std::vector<Eigen::Index> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] > values[b]; });

  AbsorptionModes out;
  out.eigenvalues.resize(values.size());
  out.eigenvectors.resize(vectors.rows(), values.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.eigenvalues[k] = values[order[k]];
    out.eigenvectors.col(k) = vectors.col(order[k]);
    fix_phase(out.eigenvectors.col(k));
  }
  const double top = values.size() > 0 ? out.eigenvalues[0] : 0.0;
  out.rank = 0;
  if (top > 0.0) {
    for (Eigen::Index k = 0; k < out.eigenvalues.size(); ++k) {
      if (out.eigenvalues[k] > rank_tol * top) ++out.rank;
    }
  }
  return out;
}

}  // namespace

AbsorptionModes absorption_modes(const MatrixXc& absorption, double rank_tol) {
  Eigen::SelfAdjointEigenSolver<MatrixXc> eig(absorption);
  return sorted_modes(eig.eigenvalues(), eig.eigenvectors(), rank_tol);
}

AbsorptionModes absorption_modes(const DiffusionFactors& factors, double rank_tol) {
  const MatrixXc& emission = factors.emission;
  const MatrixXc right = factors.excitation.adjoint();
  MatrixXc span(emission.rows(), emission.cols() + right.cols());
  span << emission, right;

  Eigen::BDCSVD<MatrixXc> svd(span, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Eigen::Index r = 0;
  const double cutoff = sv.size() > 0 ? 1e-13 * sv[0] : 0.0;
  while (r < sv.size() && sv[r] > cutoff) ++r;
  if (r == 0) return {};
  const MatrixXc basis = svd.matrixU().leftCols(r);

  // W^dagger A W with D = emission * excitation.
  const MatrixXc we = basis.adjoint() * emission;        // r x 3N
  const MatrixXc mw = factors.excitation * basis;        // 3N x r
  const MatrixXc d_small = we * mw;                      // W^dagger D W
  const MatrixXc gram = emission.adjoint() * emission;   // 3N x 3N
  MatrixXc a_small = -2.0 * (d_small + d_small.adjoint()) - 4.0 * mw.adjoint() * gram * mw;
  a_small = (a_small + a_small.adjoint()).eval() / 2.0;

  Eigen::SelfAdjointEigenSolver<MatrixXc> eig(a_small);
  return sorted_modes(eig.eigenvalues(), basis * eig.eigenvectors(), rank_tol);
}

AbsorbedFraction absorbed_fraction(const AbsorptionModes& modes, const SphericalFieldCoeffs& phi_inc) {
  const double norm = phi_inc.coeffs.norm();
  if (norm == 0.0) throw DomainError("absorbed_fraction: incident field has zero norm");
  if (modes.eigenvectors.rows() != 0 && modes.eigenvectors.rows() != phi_inc.coeffs.size()) {
    throw DomainError("absorbed_fraction: mode basis and incident field sizes differ");
  }
  const VectorXc phi = phi_inc.coeffs / norm;
  double total = 0.0;
  for (Eigen::Index k = 0; k < modes.eigenvalues.size(); ++k) {
    total += modes.eigenvalues[k] * std::norm(modes.eigenvectors.col(k).dot(phi));
  }
  return {total, norm};
}

}  // namespace cdscat
