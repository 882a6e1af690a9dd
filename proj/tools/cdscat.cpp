// cdscat: batch driver for collective scattering, absorption modes and
// dispersion energies.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "cdscat/config.hpp"
#include "cdscat/errors.hpp"
#include "cdscat/parallel.hpp"
#include "cdscat/tasks.hpp"

namespace {

constexpr int exit_config = 2;
constexpr int exit_numerical = 3;

int run(const std::string& path, const std::string& out_dir) {
  const cdscat::RunConfig config = cdscat::load_config(path);
  const cdscat::TaskResult result = cdscat::run_task(config);

  std::filesystem::create_directories(out_dir);
  const std::filesystem::path base = std::filesystem::path(out_dir) / config.output_stem;
  if (config.write_csv) {
    std::ofstream csv(base.string() + ".csv", std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write " + base.string() + ".csv");
    cdscat::write_csv(result.table, csv);
  }
  if (config.write_json) {
    std::ofstream js(base.string() + ".json", std::ios::binary);
    if (!js) throw std::runtime_error("cannot write " + base.string() + ".json");
    js << cdscat::to_json(result).dump(2) << '\n';
  }
  std::cerr << cdscat::to_string(config.task) << ": " << result.table.rows.size() << " rows, " << result.failed_rows
            << " failed -> " << base.string() << '\n';
  if (result.failed_rows > 0 && result.failed_rows == result.table.rows.size()) return exit_numerical;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collective scattering matrix, absorption modes and dispersion energies of point-dipole ensembles"};
  app.require_subcommand(1);
  unsigned threads = 1;
  std::string out_dir = "out";
  app.add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "Run the task of a config file");
  run_cmd->add_option("config", config_path, "Config JSON")->required();
  auto* validate_cmd = app.add_subcommand("validate", "Check a config file and print its normalized form");
  validate_cmd->add_option("config", config_path, "Config JSON")->required();
  app.add_subcommand("schema", "Print the config JSON Schema");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_config;
  }
  cdscat::set_thread_count(threads);

  try {
    if (app.got_subcommand("schema")) {
      std::cout << cdscat::config_schema().dump(2) << '\n';
      return 0;
    }
    if (app.got_subcommand("validate")) {
      std::cout << cdscat::to_json(cdscat::load_config(config_path)).dump(2) << '\n';
      return 0;
    }
    return run(config_path, out_dir);
  } catch (const cdscat::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_config;
  } catch (const cdscat::Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return exit_numerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
