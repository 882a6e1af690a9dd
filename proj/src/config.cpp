#include "cdscat/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "cdscat/errors.hpp"

namespace cdscat {

using nlohmann::json;

namespace {

constexpr double hbar_c_ev_nm = 197.3269804;

const std::vector<std::pair<TaskKind, std::string>>& task_names() {
  static const std::vector<std::pair<TaskKind, std::string>> names{
      {TaskKind::AbsorptionScan, "AbsorptionScan"},
      {TaskKind::AbsorptionModes, "AbsorptionModes"},
      {TaskKind::PlaneWaveAbsorption, "PlaneWaveAbsorption"},
      {TaskKind::DispersionEnergy, "DispersionEnergy"},
      {TaskKind::PairwiseCompare, "PairwiseCompare"},
      {TaskKind::ConvergenceCheck, "ConvergenceCheck"},
  };
  return names;
}

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : obj.items()) {
    if (!ok.count(item.key())) throw ConfigError(where + ": unknown key '" + item.key() + "'");
  }
}

double get_number(const json& obj, const char* key, const std::string& where, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(where + "." + key + ": not finite");
  return x;
}

int get_int(const json& obj, const char* key, const std::string& where, int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

std::string get_string(const json& obj, const char* key, const std::string& where, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

complex get_complex(const json& obj, const char* key, const std::string& where, complex fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ConfigError(where + "." + key + ": expected a number or [re, im]");
}

json complex_json(complex z) { return json::array({z.real(), z.imag()}); }

ShellSpec parse_shell(const json& g) {
  check_keys(g, "geometry", {"type", "solid", "shell_radius", "sphere_radius", "eps_shell", "eps_center"});
  ShellSpec s;
  s.solid = platonic_solid_from_string(get_string(g, "solid", "geometry", "cube"));
  s.shell_radius = get_number(g, "shell_radius", "geometry", pi);
  s.sphere_radius = get_number(g, "sphere_radius", "geometry", 0.8);
  s.eps_shell = get_complex(g, "eps_shell", "geometry", s.eps_shell);
  s.eps_center = get_complex(g, "eps_center", "geometry", s.eps_center);
  if (!(s.sphere_radius > 0.0)) throw ConfigError("geometry.sphere_radius must be positive");
  if (!(s.shell_radius > 2.0 * s.sphere_radius)) throw ConfigError("geometry.shell_radius must exceed 2 sphere_radius");
  return s;
}

PolarizabilityModel parse_material(const json& m, double radius) {
  check_keys(m, "geometry.material", {"model", "plasma_energy_ev", "epsilon", "alpha0"});
  const std::string model = get_string(m, "model", "geometry.material", "plasma");
  if (model == "plasma") {
    const double ev = get_number(m, "plasma_energy_ev", "geometry.material", 9.0);
    if (!(ev > 0.0)) throw ConfigError("geometry.material.plasma_energy_ev must be positive");
    return PlasmaSphere{radius, ev / hbar_c_ev_nm};
  }
  if (model == "clausius_mossotti") {
    if (!m.contains("epsilon")) throw ConfigError("geometry.material.epsilon is required");
    return ClausiusMossotti{radius, get_complex(m, "epsilon", "geometry.material", 1.0)};
  }
  if (model == "bare") {
    if (!m.contains("alpha0")) throw ConfigError("geometry.material.alpha0 is required");
    return BarePolarizability{get_complex(m, "alpha0", "geometry.material", 0.0)};
  }
  throw ConfigError("geometry.material.model: unknown model '" + model + "'");
}

LatticeSpec parse_lattice(const json& g) {
  check_keys(g, "geometry", {"type", "dim", "counts", "step", "sphere_radius", "material"});
  LatticeSpec s;
  s.dim = get_int(g, "dim", "geometry", 1);
  if (s.dim < 1 || s.dim > 3) throw ConfigError("geometry.dim must be 1, 2 or 3");
  if (!g.contains("counts") || !g.at("counts").is_array() || static_cast<int>(g.at("counts").size()) != s.dim) {
    throw ConfigError("geometry.counts: expected an array of dim integers");
  }
  for (int d = 0; d < s.dim; ++d) {
    const json& c = g.at("counts")[d];
    if (!c.is_number_integer() || c.get<int>() < 1) throw ConfigError("geometry.counts: entries must be positive integers");
    s.counts[d] = c.get<int>();
  }
  s.step = get_number(g, "step", "geometry", 100.0);
  s.sphere_radius = get_number(g, "sphere_radius", "geometry", 20.0);
  if (!(s.sphere_radius > 0.0)) throw ConfigError("geometry.sphere_radius must be positive");
  s.model = parse_material(g.contains("material") ? g.at("material") : json::object(), s.sphere_radius);
  if (s.total() > 1 && !(s.step > 2.0 * s.sphere_radius)) throw ConfigError("geometry.step must exceed 2 sphere_radius");
  return s;
}

json material_json(const PolarizabilityModel& model) {
  return std::visit(
      [](const auto& m) -> json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PlasmaSphere>) {
          return {{"model", "plasma"}, {"plasma_energy_ev", m.plasma_wavenumber * hbar_c_ev_nm}};
        } else if constexpr (std::is_same_v<T, ClausiusMossotti>) {
          return {{"model", "clausius_mossotti"}, {"epsilon", complex_json(m.epsilon)}};
        } else {
          return {{"model", "bare"}, {"alpha0", complex_json(m.alpha0)}};
        }
      },
      model);
}

}  // namespace

std::string to_string(TaskKind task) {
  for (const auto& [kind, name] : task_names()) {
    if (kind == task) return name;
  }
  return "unknown";
}

TaskKind task_from_string(const std::string& name) {
  for (const auto& [kind, n] : task_names()) {
    if (n == name) return kind;
  }
  throw ConfigError("unknown task '" + name + "'");
}

std::vector<double> ScanAxis::values() const {
  std::vector<double> v(nodes);
  if (nodes == 1) {
    v[0] = start;
    return v;
  }
  for (int i = 0; i < nodes; ++i) {
    const double t = static_cast<double>(i) / (nodes - 1);
    v[i] = spacing == Spacing::Linear ? start + t * (stop - start) : start * std::pow(stop / start, t);
  }
  return v;
}

std::vector<double> RunConfig::scan_values() const {
  if (has_scan) return scan_axis.values();
  if (is_shell()) return {shell().shell_radius * wavenumber};
  return {lattice().step};
}

RunConfig parse_config(const json& doc) {
  check_keys(doc, "config",
             {"schema_version", "name", "task", "geometry", "wavenumber", "l_max", "scan", "convergence_l_max",
              "quadrature", "output"});
  if (!doc.contains("schema_version") || !doc.at("schema_version").is_number_integer()) {
    throw ConfigError("schema_version is required");
  }
  if (doc.at("schema_version").get<int>() != schema_version) {
    throw ConfigError("unsupported schema_version " + doc.at("schema_version").dump());
  }
  RunConfig c;
  c.name = get_string(doc, "name", "config", "run");
  if (!doc.contains("task")) throw ConfigError("task is required");
  c.task = task_from_string(get_string(doc, "task", "config", ""));

  if (!doc.contains("geometry")) throw ConfigError("geometry is required");
  const json& g = doc.at("geometry");
  if (!g.is_object()) throw ConfigError("geometry: expected an object");
  const std::string type = get_string(g, "type", "geometry", "");
  if (type == "shell") {
    c.geometry = parse_shell(g);
  } else if (type == "lattice") {
    c.geometry = parse_lattice(g);
  } else {
    throw ConfigError("geometry.type must be 'shell' or 'lattice'");
  }

  const bool shell_task = c.task == TaskKind::AbsorptionScan || c.task == TaskKind::AbsorptionModes ||
                          c.task == TaskKind::PlaneWaveAbsorption;
  const bool lattice_task = c.task == TaskKind::DispersionEnergy || c.task == TaskKind::PairwiseCompare;
  if (shell_task && !c.is_shell()) throw ConfigError(to_string(c.task) + " needs a shell geometry");
  if (lattice_task && c.is_shell()) throw ConfigError(to_string(c.task) + " needs a lattice geometry");

  c.wavenumber = get_number(doc, "wavenumber", "config", 1.0);
  if (!(c.wavenumber > 0.0)) throw ConfigError("wavenumber must be positive");
  c.l_max = get_int(doc, "l_max", "config", 16);
  if (c.l_max < 1 || c.l_max > 32) throw ConfigError("l_max must lie in [1, 32]");

  if (doc.contains("scan")) {
    const json& s = doc.at("scan");
    check_keys(s, "scan", {"start", "stop", "nodes", "spacing"});
    if (!s.contains("start") || !s.contains("stop")) throw ConfigError("scan.start and scan.stop are required");
    c.scan_axis.start = get_number(s, "start", "scan", 0.0);
    c.scan_axis.stop = get_number(s, "stop", "scan", 0.0);
    c.scan_axis.nodes = get_int(s, "nodes", "scan", 1);
    const std::string spacing = get_string(s, "spacing", "scan", "linear");
    if (spacing == "linear") {
      c.scan_axis.spacing = Spacing::Linear;
    } else if (spacing == "log") {
      c.scan_axis.spacing = Spacing::Log;
    } else {
      throw ConfigError("scan.spacing must be 'linear' or 'log'");
    }
    if (c.scan_axis.nodes < 1) throw ConfigError("scan.nodes must be at least 1");
    if (!(c.scan_axis.start > 0.0) || !(c.scan_axis.stop >= c.scan_axis.start)) {
      throw ConfigError("scan: need 0 < start <= stop");
    }
    c.has_scan = true;
  } else if (c.task == TaskKind::AbsorptionScan) {
    c.scan_axis = {1.0, 8.0, 141, Spacing::Linear};
    c.has_scan = true;
  }
  if (doc.contains("convergence_l_max")) {
    const json& v = doc.at("convergence_l_max");
    if (!v.is_array() || v.empty()) throw ConfigError("convergence_l_max: expected a nonempty array");
    c.convergence_l_max.clear();
    for (const auto& x : v) {
      if (!x.is_number_integer() || x.get<int>() < 1 || x.get<int>() > 32) {
        throw ConfigError("convergence_l_max: entries must be integers in [1, 32]");
      }
      c.convergence_l_max.push_back(x.get<int>());
    }
  }

  if (doc.contains("quadrature")) {
    const json& q = doc.at("quadrature");
    check_keys(q, "quadrature", {"nodes", "scale", "check_convergence", "imag_polarizability"});
    c.quadrature.nodes = get_int(q, "nodes", "quadrature", 40);
    if (c.quadrature.nodes < 2) throw ConfigError("quadrature.nodes must be at least 2");
    c.quadrature.scale = get_number(q, "scale", "quadrature", 0.0);
    if (q.contains("check_convergence")) {
      if (!q.at("check_convergence").is_boolean()) throw ConfigError("quadrature.check_convergence: expected a boolean");
      c.quadrature.check_convergence = q.at("check_convergence").get<bool>();
    }
    const std::string pol = get_string(q, "imag_polarizability", "quadrature", "bare");
    if (pol == "bare") {
      c.quadrature.structure.imag_polarizability = ImagFreqPolarizability::Bare;
    } else if (pol == "dressed") {
      c.quadrature.structure.imag_polarizability = ImagFreqPolarizability::Dressed;
    } else {
      throw ConfigError("quadrature.imag_polarizability must be 'bare' or 'dressed'");
    }
  }
  c.quadrature.length_unit_m = 1e-9;

  c.output_stem = c.name;
  if (doc.contains("output")) {
    const json& o = doc.at("output");
    check_keys(o, "output", {"stem", "formats"});
    c.output_stem = get_string(o, "stem", "output", c.name);
    if (o.contains("formats")) {
      const json& f = o.at("formats");
      if (!f.is_array() || f.empty()) throw ConfigError("output.formats: expected a nonempty array");
      c.write_csv = c.write_json = false;
      for (const auto& x : f) {
        const std::string fmt = x.is_string() ? x.get<std::string>() : "";
        if (fmt == "csv") {
          c.write_csv = true;
        } else if (fmt == "json") {
          c.write_json = true;
        } else {
          throw ConfigError("output.formats: entries must be 'csv' or 'json'");
        }
      }
    }
  }
  if (c.output_stem.empty() || c.output_stem.find('/') != std::string::npos) {
    throw ConfigError("output.stem must be a nonempty file name without '/'");
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

json to_json(const RunConfig& c) {
  json doc{{"schema_version", schema_version}, {"name", c.name}, {"task", to_string(c.task)},
           {"wavenumber", c.wavenumber}, {"l_max", c.l_max}, {"convergence_l_max", c.convergence_l_max}};
  if (c.is_shell()) {
    const ShellSpec& s = c.shell();
    doc["geometry"] = {{"type", "shell"},
                       {"solid", to_string(s.solid)},
                       {"shell_radius", s.shell_radius},
                       {"sphere_radius", s.sphere_radius},
                       {"eps_shell", complex_json(s.eps_shell)},
                       {"eps_center", complex_json(s.eps_center)}};
  } else {
    const LatticeSpec& s = c.lattice();
    doc["geometry"] = {{"type", "lattice"},
                       {"dim", s.dim},
                       {"counts", std::vector<int>(s.counts.begin(), s.counts.begin() + s.dim)},
                       {"step", s.step},
                       {"sphere_radius", s.sphere_radius},
                       {"material", material_json(s.model)}};
  }
  if (c.has_scan) {
    doc["scan"] = {{"start", c.scan_axis.start},
                   {"stop", c.scan_axis.stop},
                   {"nodes", c.scan_axis.nodes},
                   {"spacing", c.scan_axis.spacing == Spacing::Linear ? "linear" : "log"}};
  }
  doc["quadrature"] = {
      {"nodes", c.quadrature.nodes},
      {"scale", c.quadrature.scale},
      {"check_convergence", c.quadrature.check_convergence},
      {"imag_polarizability",
       c.quadrature.structure.imag_polarizability == ImagFreqPolarizability::Bare ? "bare" : "dressed"}};
  json formats = json::array();
  if (c.write_csv) formats.push_back("csv");
  if (c.write_json) formats.push_back("json");
  doc["output"] = {{"stem", c.output_stem}, {"formats", formats}};
  return doc;
}

json config_schema() {
  const json cplx = {{"oneOf", json::array({{{"type", "number"}},
                                            {{"type", "array"},
                                             {"items", {{"type", "number"}}},
                                             {"minItems", 2},
                                             {"maxItems", 2}}})}};
  json tasks = json::array();
  for (const auto& [kind, name] : task_names()) tasks.push_back(name);

  const json shell = {
      {"type", "object"},
      {"additionalProperties", false},
      {"required", {"type"}},
      {"properties",
       {{"type", {{"const", "shell"}}},
        {"solid", {{"enum", {"tetrahedron", "octahedron", "cube", "icosahedron", "dodecahedron"}}}},
        {"shell_radius", {{"type", "number"}, {"exclusiveMinimum", 0}}},
        {"sphere_radius", {{"type", "number"}, {"exclusiveMinimum", 0}}},
        {"eps_shell", cplx},
        {"eps_center", cplx}}}};
  const json lattice = {
      {"type", "object"},
      {"additionalProperties", false},
      {"required", {"type", "dim", "counts"}},
      {"properties",
       {{"type", {{"const", "lattice"}}},
        {"dim", {{"enum", {1, 2, 3}}}},
        {"counts", {{"type", "array"}, {"items", {{"type", "integer"}, {"minimum", 1}}}, {"minItems", 1}, {"maxItems", 3}}},
        {"step", {{"type", "number"}, {"exclusiveMinimum", 0}, {"description", "centre-to-centre, nm"}}},
        {"sphere_radius", {{"type", "number"}, {"exclusiveMinimum", 0}, {"description", "nm"}}},
        {"material",
         {{"type", "object"},
          {"additionalProperties", false},
          {"properties",
           {{"model", {{"enum", {"plasma", "clausius_mossotti", "bare"}}}},
            {"plasma_energy_ev", {{"type", "number"}, {"exclusiveMinimum", 0}}},
            {"epsilon", cplx},
            {"alpha0", cplx}}}}}}}};

  return {
      {"$schema", "https://json-schema.org/draft/2020-12/schema"},
      {"title", "cdscat run configuration"},
      {"type", "object"},
      {"additionalProperties", false},
      {"required", {"schema_version", "task", "geometry"}},
      {"properties",
       {{"schema_version", {{"const", schema_version}}},
        {"name", {{"type", "string"}}},
        {"task", {{"enum", tasks}}},
        {"geometry", {{"oneOf", json::array({shell, lattice})}}},
        {"wavenumber", {{"type", "number"}, {"exclusiveMinimum", 0}}},
        {"l_max", {{"type", "integer"}, {"minimum", 1}, {"maximum", 32}}},
        {"scan",
         {{"type", "object"},
          {"additionalProperties", false},
          {"required", {"start", "stop"}},
          {"properties",
           {{"start", {{"type", "number"}, {"exclusiveMinimum", 0}}},
            {"stop", {{"type", "number"}, {"exclusiveMinimum", 0}}},
            {"nodes", {{"type", "integer"}, {"minimum", 1}}},
            {"spacing", {{"enum", {"linear", "log"}}}}}}}},
        {"convergence_l_max",
         {{"type", "array"}, {"items", {{"type", "integer"}, {"minimum", 1}, {"maximum", 32}}}, {"minItems", 1}}},
        {"quadrature",
         {{"type", "object"},
          {"additionalProperties", false},
          {"properties",
           {{"nodes", {{"type", "integer"}, {"minimum", 2}}},
            {"scale", {{"type", "number"}, {"minimum", 0}, {"description", "kappa_0 in 1/nm; 0 selects 1/d_min"}}},
            {"check_convergence", {{"type", "boolean"}}},
            {"imag_polarizability", {{"enum", {"bare", "dressed"}}}}}}}},
        {"output",
         {{"type", "object"},
          {"additionalProperties", false},
          {"properties",
           {{"stem", {{"type", "string"}}},
            {"formats", {{"type", "array"}, {"items", {{"enum", {"csv", "json"}}}}, {"minItems", 1}}}}}}}}}};
}

}  // namespace cdscat
