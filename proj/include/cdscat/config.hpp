#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cdscat/dispersion.hpp"
#include "cdscat/geometry.hpp"

/// Declarative run configuration (JSON).
namespace cdscat {

inline constexpr int schema_version = 1;

enum class TaskKind {
  AbsorptionScan,
  AbsorptionModes,
  PlaneWaveAbsorption,
  DispersionEnergy,
  PairwiseCompare,
  ConvergenceCheck
};

std::string to_string(TaskKind task);
TaskKind task_from_string(const std::string& name);

enum class Spacing { Linear, Log };

/// Sampled axis: ka for shell geometries, centre-to-centre step (nm) for lattices.
struct ScanAxis {
  double start = 0.0;
  double stop = 0.0;
  int nodes = 1;
  Spacing spacing = Spacing::Linear;

  std::vector<double> values() const;
};

using GeometrySpec = std::variant<ShellSpec, LatticeSpec>;

struct RunConfig {
  std::string name;
  TaskKind task = TaskKind::AbsorptionScan;
  GeometrySpec geometry = ShellSpec{};
  /// Wavenumber of the shell studies, in inverse length units of the shell spec.
  double wavenumber = 1.0;
  int l_max = 16;
  /// Without a scan the task runs once at the geometry's own a or step.
  ScanAxis scan_axis;
  bool has_scan = false;
  std::vector<int> convergence_l_max{8, 12, 16, 20, 24};
  QuadratureConfig quadrature;
  std::string output_stem;
  bool write_csv = true;
  bool write_json = true;

  bool is_shell() const { return std::holds_alternative<ShellSpec>(geometry); }
  const ShellSpec& shell() const { return std::get<ShellSpec>(geometry); }
  const LatticeSpec& lattice() const { return std::get<LatticeSpec>(geometry); }

  /// Scan values, or the single default node.
  std::vector<double> scan_values() const;
};

/// Parses and validates. Throws ConfigError with the offending key.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

/// Normalized echo of a configuration, written into every output.
nlohmann::json to_json(const RunConfig& config);

/// JSON Schema (draft 2020-12) for the config document.
nlohmann::json config_schema();

}  // namespace cdscat
