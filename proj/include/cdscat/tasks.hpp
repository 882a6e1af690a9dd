#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cdscat/config.hpp"
#include "cdscat/scattering.hpp"

/// Study drivers behind the CLI tasks.
namespace cdscat {

/// Largest absorption eigenvalue of a shell and of its isolated centre.
struct ShellAbsorption {
  double a_max = 0.0;
  double a_isolated = 0.0;
  double relative_change = 0.0;  // (A - A0)/A0
  AbsorptionModes modes;
  AbsorptionModes isolated_modes;
  double condition_number = 0.0;
};

ShellAbsorption shell_absorption(const ShellSpec& spec, double k, int l_max);

/// Absorbed fraction of the plane wave e^{ikz} x for the shell and for the
/// isolated centre. projection_change isolates the change of the normalized
/// projection onto the absorbing modes: (1 + relative_change)/(1 + eigen_change) - 1.
struct PlaneWaveAbsorption {
  double fraction_collective = 0.0;
  double fraction_isolated = 0.0;
  double relative_change = 0.0;
  double eigen_change = 0.0;
  double projection_change = 0.0;
};

PlaneWaveAbsorption plane_wave_absorption(const ShellSpec& spec, double k, int l_max);
PlaneWaveAbsorption plane_wave_absorption(const ShellAbsorption& absorption, int l_max);

/// |v|^2 summed per (block, l) for one mode vector.
struct MultipoleWeight {
  Block block;
  int l;
  double weight;
};
std::vector<MultipoleWeight> multipole_weights(const VectorXc& mode, int l_max);

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct TaskResult {
  TaskKind task = TaskKind::AbsorptionScan;
  Table table;
  nlohmann::json metadata;
  std::size_t failed_rows = 0;
};

/// Runs the configured task. Numerical failures at a scan node give a NaN row
/// with a diagnostic; scan nodes run on the worker pool, rows stay in scan order.
TaskResult run_task(const RunConfig& config);

/// Header row, then one line per row; doubles with 17 significant digits.
void write_csv(const Table& table, std::ostream& out);
nlohmann::json to_json(const TaskResult& result);

}  // namespace cdscat
