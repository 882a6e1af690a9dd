#include "cdscat/dispersion.hpp"

#include <cmath>
#include <limits>

#include "cdscat/errors.hpp"
#include "cdscat/parallel.hpp"

namespace cdscat {

complex log_det_identity_minus(const MatrixXc& m) {
  const MatrixXc system = MatrixXc::Identity(m.rows(), m.cols()) - m;
  const Eigen::PartialPivLU<MatrixXc> lu(system);
  const auto diag = lu.matrixLU().diagonal();
  complex sum = 0.0;
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    if (diag[i] == complex(0.0)) throw ResonanceError("I - X is exactly singular", std::numeric_limits<double>::infinity());
    sum += std::log(diag[i]);
  }
  if (lu.permutationP().determinant() < 0) sum += (sum.imag() <= 0.0 ? I : -I) * pi;
  return sum;
}

complex phase_shift(const DipoleEnsemble& ensemble, double k) {
  const Frequency f = Frequency::real(k);
  const auto x = structure_matrix(ensemble, f, StructureVariant::X);
  const auto y = structure_matrix(ensemble, f, StructureVariant::Y);
  // Factorizations double as the resonance check.
  ExcitingFieldSolver check_x(x.entries);
  ExcitingFieldSolver check_y(y.entries);
  return log_det_identity_minus(y.entries) - log_det_identity_minus(x.entries);
}

std::vector<complex> phase_shift_scan(const DipoleEnsemble& ensemble, const std::vector<double>& ks) {
  std::vector<complex> out;
  out.reserve(ks.size());
  for (double k : ks) {
    complex delta = phase_shift(ensemble, k);
    if (!out.empty()) {
      const double jump = delta.imag() - out.back().imag();
      delta -= I * (2.0 * pi * std::round(jump / (2.0 * pi)));
    }
    out.push_back(delta);
  }
  return out;
}

double energy_integrand(const DipoleEnsemble& ensemble, double kappa, const StructureOptions& options) {
  if (!(kappa > 0.0)) throw DomainError("energy_integrand: kappa must be positive");
  if (ensemble.size() < 2) return 0.0;
  const auto x = structure_matrix(ensemble, Frequency::imaginary(kappa), StructureVariant::X, options);
  const Eigen::MatrixXd xr = x.entries.real();
  // Weak coupling: LU loses the relative precision of ln det once |X| << 1, so sum -tr(X^n)/n directly.
  const double q = std::min(xr.cwiseAbs().colwise().sum().maxCoeff(), xr.cwiseAbs().rowwise().sum().maxCoeff());
  if (q <= 0.5) {
    const double dim = static_cast<double>(xr.rows());
    Eigen::MatrixXd power = xr;
    double sum = -power.trace(), qn = q;
    for (int n = 2; n <= 200; ++n) {
      power = power * xr;
      sum -= power.trace() / n;
      qn *= q;
      if (dim * qn * q / ((n + 1) * (1.0 - q)) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
  }
  const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(xr.rows(), xr.cols()) - xr;
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
  const auto diag = lu.matrixLU().diagonal();
  double log_abs = 0.0;
  int sign = static_cast<int>(lu.permutationP().determinant());
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    if (diag[i] == 0.0) throw SignError("det(I - X(i xi)) vanishes");
    if (diag[i] < 0.0) sign = -sign;
    log_abs += std::log(std::abs(diag[i]));
  }
  if (sign <= 0) {
    throw SignError("det(I - X(i xi)) <= 0 at kappa = " + std::to_string(kappa) + "; the log is not real");
  }
  return log_abs;
}

double resolve_scale(const DipoleEnsemble& ensemble, const QuadratureConfig& config) {
  if (config.scale > 0.0) return config.scale;
  const double d = ensemble.min_separation();
  return std::isfinite(d) ? 1.0 / d : 1.0;
}

double integrate_energy(const DipoleEnsemble& ensemble, int nodes, double scale, const QuadratureConfig& config,
                        std::vector<double>* kappa_out, std::vector<double>* integrand_out) {
  if (nodes < 1) throw DomainError("integrate_energy: need at least one node");
  std::vector<double> t, w;
  gauss_legendre(nodes, t, w);
  std::vector<double> kappa(nodes), value(nodes), jacobian(nodes);
  for (int i = 0; i < nodes; ++i) {
    kappa[i] = scale * (1.0 + t[i]) / (1.0 - t[i]);
    jacobian[i] = 2.0 * scale / ((1.0 - t[i]) * (1.0 - t[i]));
  }
  parallel_for(static_cast<std::size_t>(nodes), [&](std::size_t i) {
    value[i] = energy_integrand(ensemble, kappa[i], config.structure);
  });
  double integral = 0.0;
  for (int i = 0; i < nodes; ++i) integral += w[i] * jacobian[i] * value[i];
  if (kappa_out) *kappa_out = kappa;
  if (integrand_out) *integrand_out = value;
  return hbar_c_ev_m / config.length_unit_m * integral / (2.0 * pi);
}

double pairwise_energy(const DipoleEnsemble& ensemble, const QuadratureConfig& config) {
  if (ensemble.size() < 2) throw DomainError("pairwise_energy: needs at least two dipoles");
  const double scale = resolve_scale(ensemble, config);
  double total = 0.0;
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    for (std::size_t j = i + 1; j < ensemble.size(); ++j) {
      total += integrate_energy(ensemble.subset({i, j}), config.nodes, scale, config);
    }
  }
  return total;
}

double EnergyResult::relative_deviation() const {
  return e_collective_ev == 0.0 ? 0.0 : std::abs(e_collective_ev - e_pairwise_ev) / std::abs(e_collective_ev);
}

EnergyResult dispersion_energy(const DipoleEnsemble& ensemble, const QuadratureConfig& config) {
  EnergyResult r;
  r.nodes = config.nodes;
  r.scale = resolve_scale(ensemble, config);
  if (ensemble.size() < 2) {
    r.converged = true;
    return r;
  }
  r.e_collective_ev = integrate_energy(ensemble, config.nodes, r.scale, config, &r.node_kappa, &r.node_integrand);
  r.e_pairwise_ev = ensemble.size() == 2 ? r.e_collective_ev : pairwise_energy(ensemble, config);
  if (config.check_convergence) {
    const double refined = integrate_energy(ensemble, 2 * config.nodes, r.scale, config);
    r.refinement_change = r.e_collective_ev == 0.0 ? std::abs(refined)
                                                   : std::abs(refined - r.e_collective_ev) / std::abs(r.e_collective_ev);
    r.converged = r.refinement_change < config.convergence_tol;
  }
  r.e_collective_j = r.e_collective_ev * joule_per_ev;
  r.e_pairwise_j = r.e_pairwise_ev * joule_per_ev;
  return r;
}

}  // namespace cdscat
