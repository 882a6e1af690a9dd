#include "cdscat/tasks.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "cdscat/errors.hpp"
#include "cdscat/parallel.hpp"

namespace cdscat {

using nlohmann::json;

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

double top_eigenvalue(const AbsorptionModes& m) { return m.eigenvalues.size() > 0 ? m.eigenvalues[0] : 0.0; }

double eigenvalue_or_zero(const AbsorptionModes& m, Eigen::Index i) {
  return i < m.eigenvalues.size() ? m.eigenvalues[i] : 0.0;
}

ShellSpec with_radius(ShellSpec spec, double a) {
  spec.shell_radius = a;
  return spec;
}

std::string diagnostic(const Error& e) {
  if (const auto* r = dynamic_cast<const ResonanceError*>(&e)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "; condition=%.3e", r->condition_number());
    return std::string("resonance: ") + e.what() + buf;
  }
  if (dynamic_cast<const SignError*>(&e)) return std::string("sign: ") + e.what();
  if (dynamic_cast<const SingularityError*>(&e)) return std::string("singularity: ") + e.what();
  if (dynamic_cast<const OverlapError*>(&e)) return std::string("overlap: ") + e.what();
  return std::string("error: ") + e.what();
}

using Rows = std::vector<std::vector<Cell>>;

/// Runs fn over the scan; a node that throws yields failed(value, diagnostic).
template <class Fn, class Failed>
Rows map_nodes(const std::vector<double>& nodes, Fn fn, Failed failed, std::size_t& failures) {
  std::vector<Rows> per_node(nodes.size());
  std::vector<char> bad(nodes.size(), 0);
  parallel_for(nodes.size(), [&](std::size_t i) {
    try {
      per_node[i] = fn(nodes[i]);
    } catch (const Error& e) {
      per_node[i] = {failed(nodes[i], diagnostic(e))};
      bad[i] = 1;
    }
  });
  Rows out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    failures += bad[i];
    for (auto& r : per_node[i]) out.push_back(std::move(r));
  }
  return out;
}

const char* block_name(Block b) { return b == Block::A ? "A" : "B"; }

TaskResult absorption_scan(const RunConfig& c) {
  TaskResult r;
  r.table.columns = {"ka", "a", "A_max", "A_isolated", "relative_change", "eigenvalue_1", "eigenvalue_2",
                     "eigenvalue_3", "rank", "condition_number", "l_max", "diagnostic"};
  const double k = c.wavenumber;
  const long long lm = c.l_max;
  r.table.rows = map_nodes(
      c.scan_values(),
      [&](double ka) -> Rows {
        const ShellAbsorption s = shell_absorption(with_radius(c.shell(), ka / k), k, c.l_max);
        return {{ka, ka / k, s.a_max, s.a_isolated, s.relative_change, eigenvalue_or_zero(s.modes, 0),
                 eigenvalue_or_zero(s.modes, 1), eigenvalue_or_zero(s.modes, 2), static_cast<long long>(s.modes.rank),
                 s.condition_number, lm, std::string()}};
      },
      [&](double ka, std::string d) -> std::vector<Cell> {
        return {ka, ka / k, nan, nan, nan, nan, nan, nan, 0LL, nan, lm, std::move(d)};
      },
      r.failed_rows);
  r.metadata["units"] = {{"ka", "dimensionless"}, {"a", "length unit of the geometry (1/wavenumber)"},
                         {"A_max", "absorbed fraction"}};
  return r;
}

TaskResult absorption_modes_task(const RunConfig& c) {
  TaskResult r;
  r.table.columns = {"ka", "mode", "eigenvalue", "block", "l", "weight", "l_max", "diagnostic"};
  const double k = c.wavenumber;
  const long long lm = c.l_max;
  r.table.rows = map_nodes(
      c.scan_values(),
      [&](double ka) -> Rows {
        const ShellAbsorption s = shell_absorption(with_radius(c.shell(), ka / k), k, c.l_max);
        Rows rows;
        const Eigen::Index count = std::min<Eigen::Index>(3, s.modes.eigenvalues.size());
        for (Eigen::Index m = 0; m < count; ++m) {
          for (const auto& w : multipole_weights(s.modes.eigenvectors.col(m), c.l_max)) {
            rows.push_back({ka, static_cast<long long>(m + 1), s.modes.eigenvalues[m], std::string(block_name(w.block)),
                            static_cast<long long>(w.l), w.weight, lm, std::string()});
          }
        }
        return rows;
      },
      [&](double ka, std::string d) -> std::vector<Cell> {
        return {ka, 0LL, nan, std::string(), 0LL, nan, lm, std::move(d)};
      },
      r.failed_rows);
  r.metadata["units"] = {{"ka", "dimensionless"}, {"weight", "sum of |coefficient|^2 over m, unit-norm mode"}};
  return r;
}

TaskResult plane_wave_task(const RunConfig& c) {
  TaskResult r;
  r.table.columns = {"ka", "fraction_collective", "fraction_isolated", "relative_change", "eigen_change",
                     "projection_change", "l_max", "diagnostic"};
  const double k = c.wavenumber;
  const long long lm = c.l_max;
  r.table.rows = map_nodes(
      c.scan_values(),
      [&](double ka) -> Rows {
        const PlaneWaveAbsorption p = plane_wave_absorption(with_radius(c.shell(), ka / k), k, c.l_max);
        return {{ka, p.fraction_collective, p.fraction_isolated, p.relative_change, p.eigen_change,
                 p.projection_change, lm, std::string()}};
      },
      [&](double ka, std::string d) -> std::vector<Cell> { return {ka, nan, nan, nan, nan, nan, lm, std::move(d)}; },
      r.failed_rows);
  r.metadata["incident_field"] = "plane wave exp(ikz) x, coefficients normalized to unit norm";
  r.metadata["units"] = {{"ka", "dimensionless"}, {"fraction", "absorbed fraction of the normalized input"}};
  return r;
}

LatticeSpec with_step(LatticeSpec spec, double step) {
  spec.step = step;
  return spec;
}

TaskResult dispersion_task(const RunConfig& c, bool pairwise) {
  TaskResult r;
  if (pairwise) {
    r.table.columns = {"step_nm", "N", "E_collective_eV", "E_pairwise_eV", "E_collective_J", "E_pairwise_J",
                       "relative_deviation", "converged", "refinement_change", "kappa0_per_nm", "quadrature_nodes",
                       "diagnostic"};
  } else {
    r.table.columns = {"step_nm", "N", "E_collective_eV", "E_collective_J", "converged", "refinement_change",
                       "kappa0_per_nm", "quadrature_nodes", "diagnostic"};
  }
  const long long n = c.lattice().total();
  const long long qn = c.quadrature.nodes;
  r.table.rows = map_nodes(
      c.scan_values(),
      [&](double step) -> Rows {
        const DipoleEnsemble e = build_lattice(with_step(c.lattice(), step));
        if (pairwise) {
          const EnergyResult er = dispersion_energy(e, c.quadrature);
          return {{step, n, er.e_collective_ev, er.e_pairwise_ev, er.e_collective_j, er.e_pairwise_j,
                   er.relative_deviation(), static_cast<long long>(er.converged), er.refinement_change, er.scale, qn,
                   std::string()}};
        }
        EnergyResult er;
        er.scale = resolve_scale(e, c.quadrature);
        er.e_collective_ev = integrate_energy(e, c.quadrature.nodes, er.scale, c.quadrature);
        if (c.quadrature.check_convergence) {
          const double refined = integrate_energy(e, 2 * c.quadrature.nodes, er.scale, c.quadrature);
          const double base = std::abs(er.e_collective_ev);
          er.refinement_change = base == 0.0 ? std::abs(refined) : std::abs(refined - er.e_collective_ev) / base;
          er.converged = er.refinement_change < c.quadrature.convergence_tol;
        }
        return {{step, n, er.e_collective_ev, er.e_collective_ev * joule_per_ev, static_cast<long long>(er.converged),
                 er.refinement_change, er.scale, qn, std::string()}};
      },
      [&](double step, std::string d) -> std::vector<Cell> {
        if (pairwise) return {step, n, nan, nan, nan, nan, nan, 0LL, nan, nan, qn, std::move(d)};
        return {step, n, nan, nan, 0LL, nan, nan, qn, std::move(d)};
      },
      r.failed_rows);
  r.metadata["units"] = {{"step", "nm, centre to centre"}, {"energy", "eV and J"}, {"kappa0", "1/nm"}};
  r.metadata["quadrature_map"] = "kappa = kappa0 (1 + t)/(1 - t), Gauss-Legendre in t";
  return r;
}

TaskResult convergence_task(const RunConfig& c) {
  TaskResult r;
  r.table.columns = {"l_max", "observable", "relative_change", "diagnostic"};
  const std::vector<int>& ls = c.convergence_l_max;
  std::vector<double> value(ls.size(), nan);
  std::vector<std::string> diag(ls.size());
  const double k = c.wavenumber;
  parallel_for(ls.size(), [&](std::size_t i) {
    try {
      if (c.is_shell()) {
        value[i] = shell_absorption(c.shell(), k, ls[i]).relative_change;
      } else {
        const DipoleEnsemble e = build_lattice(c.lattice());
        value[i] = integrate_energy(e, c.quadrature.nodes, resolve_scale(e, c.quadrature), c.quadrature);
      }
    } catch (const Error& e) {
      diag[i] = diagnostic(e);
    }
  });
  for (std::size_t i = 0; i < ls.size(); ++i) {
    double change = nan;
    if (i > 0) change = std::abs(value[i] - value[i - 1]) / std::abs(value[i]);
    if (!diag[i].empty()) ++r.failed_rows;
    r.table.rows.push_back({static_cast<long long>(ls[i]), value[i], change, diag[i]});
  }
  r.metadata["observable"] = c.is_shell() ? "(A - A0)/A0 at the configured shell radius"
                                          : "E_collective in eV (independent of l_max)";
  return r;
}

void write_cell(const Cell& cell, std::ostream& out) {
  if (const auto* d = std::get_if<double>(&cell)) {
    if (std::isnan(*d)) {
      out << "nan";
    } else {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", *d);
      out << buf;
    }
  } else if (const auto* i = std::get_if<long long>(&cell)) {
    out << *i;
  } else {
    const std::string& s = std::get<std::string>(cell);
    if (s.find_first_of(",\"\n") == std::string::npos) {
      out << s;
    } else {
      out << '"';
      for (char ch : s) out << (ch == '"' ? "\"\"" : std::string(1, ch));
      out << '"';
    }
  }
}

}  // namespace

ShellAbsorption shell_absorption(const ShellSpec& spec, double k, int l_max) {
  ShellAbsorption s;
  const DiffusionFactors factors = diffusion_factors(build_shell(spec), k, l_max);
  s.modes = absorption_modes(factors);
  s.condition_number = factors.condition_number;
  s.isolated_modes = absorption_modes(diffusion_factors(central_absorber(spec), k, l_max));
  s.a_max = top_eigenvalue(s.modes);
  s.a_isolated = top_eigenvalue(s.isolated_modes);
  if (!(s.a_isolated > 0.0)) throw DomainError("shell_absorption: the central sphere does not absorb");
  s.relative_change = (s.a_max - s.a_isolated) / s.a_isolated;
  return s;
}

PlaneWaveAbsorption plane_wave_absorption(const ShellAbsorption& s, int l_max) {
  const SphericalFieldCoeffs phi = plane_wave_coeffs(l_max);
  PlaneWaveAbsorption p;
  p.fraction_collective = absorbed_fraction(s.modes, phi).fraction;
  p.fraction_isolated = absorbed_fraction(s.isolated_modes, phi).fraction;
  p.relative_change = (p.fraction_collective - p.fraction_isolated) / p.fraction_isolated;
  p.eigen_change = s.relative_change;
  p.projection_change = (1.0 + p.relative_change) / (1.0 + p.eigen_change) - 1.0;
  return p;
}

PlaneWaveAbsorption plane_wave_absorption(const ShellSpec& spec, double k, int l_max) {
  return plane_wave_absorption(shell_absorption(spec, k, l_max), l_max);
}

std::vector<MultipoleWeight> multipole_weights(const VectorXc& mode, int l_max) {
  const ModeIndex idx(l_max);
  if (mode.size() != idx.size()) throw DomainError("multipole_weights: size does not match l_max");
  std::vector<MultipoleWeight> out;
  for (Block b : {Block::A, Block::B}) {
    for (int l = 1; l <= l_max; ++l) {
      double w = 0.0;
      for (int m = -l; m <= l; ++m) w += std::norm(mode[idx.index(b, l, m)]);
      out.push_back({b, l, w});
    }
  }
  return out;
}

TaskResult run_task(const RunConfig& config) {
  TaskResult r;
  switch (config.task) {
    case TaskKind::AbsorptionScan: r = absorption_scan(config); break;
    case TaskKind::AbsorptionModes: r = absorption_modes_task(config); break;
    case TaskKind::PlaneWaveAbsorption: r = plane_wave_task(config); break;
    case TaskKind::DispersionEnergy: r = dispersion_task(config, false); break;
    case TaskKind::PairwiseCompare: r = dispersion_task(config, true); break;
    case TaskKind::ConvergenceCheck: r = convergence_task(config); break;
  }
  r.task = config.task;
  r.metadata["config"] = to_json(config);
  r.metadata["conventions"] = {
      {"real_frequency_polarizability", "dressed, alpha0 / (1 - i k^3 alpha0 / 6 pi)"},
      {"imaginary_frequency_polarizability",
       config.quadrature.structure.imag_polarizability == ImagFreqPolarizability::Bare ? "bare" : "dressed"},
      {"mode_order", "A block then B block; index l^2 - 1 + m + l within a block"},
      {"field_units", "P0 / sqrt(eps0) = 1"},
      {"lattice_length_unit", "nm"},
      {"shell_orientation", "octahedron on axes, cube on diagonals, icosahedral family in golden-ratio frame"}};
  r.metadata["failed_rows"] = r.failed_rows;
  return r;
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      write_cell(row[i], out);
    }
    out << '\n';
  }
}

json to_json(const TaskResult& result) {
  json rows = json::array();
  for (const auto& row : result.table.rows) {
    json jr = json::array();
    for (const auto& cell : row) {
      if (const auto* d = std::get_if<double>(&cell)) {
        jr.push_back(std::isfinite(*d) ? json(*d) : json(nullptr));
      } else if (const auto* i = std::get_if<long long>(&cell)) {
        jr.push_back(*i);
      } else {
        jr.push_back(std::get<std::string>(cell));
      }
    }
    rows.push_back(std::move(jr));
  }
  return {{"task", to_string(result.task)}, {"metadata", result.metadata}, {"columns", result.table.columns},
          {"rows", rows}};
}

}  // namespace cdscat
