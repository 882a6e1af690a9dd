#include "cdscat/geometry.hpp"

#include <cmath>

#include "cdscat/errors.hpp"

namespace cdscat {

std::string to_string(PlatonicSolid solid) {
  switch (solid) {
    case PlatonicSolid::Tetrahedron: return "tetrahedron";
    case PlatonicSolid::Octahedron: return "octahedron";
    case PlatonicSolid::Cube: return "cube";
    case PlatonicSolid::Icosahedron: return "icosahedron";
    case PlatonicSolid::Dodecahedron: return "dodecahedron";
  }
  return "unknown";
}

PlatonicSolid platonic_solid_from_string(const std::string& name) {
  for (auto s : {PlatonicSolid::Tetrahedron, PlatonicSolid::Octahedron, PlatonicSolid::Cube,
                 PlatonicSolid::Icosahedron, PlatonicSolid::Dodecahedron}) {
    if (to_string(s) == name) return s;
  }
  throw ConfigError("unknown Platonic solid '" + name + "'");
}

int vertex_count(PlatonicSolid solid) {
  switch (solid) {
    case PlatonicSolid::Tetrahedron: return 4;
    case PlatonicSolid::Octahedron: return 6;
    case PlatonicSolid::Cube: return 8;
    case PlatonicSolid::Icosahedron: return 12;
    case PlatonicSolid::Dodecahedron: return 20;
  }
  return 0;
}

std::vector<Vec3> platonic_vertices(PlatonicSolid solid) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> v;
  switch (solid) {
    case PlatonicSolid::Tetrahedron:
      v = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
      break;
    case PlatonicSolid::Octahedron:
      v = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
      break;
    case PlatonicSolid::Cube:
      for (int sx : {-1, 1})
        for (int sy : {-1, 1})
          for (int sz : {-1, 1}) v.emplace_back(sx, sy, sz);
      break;
    case PlatonicSolid::Icosahedron:
      for (int s1 : {-1, 1})
        for (int s2 : {-1, 1}) {
          v.emplace_back(0, s1, s2 * phi);
          v.emplace_back(s1, s2 * phi, 0);
          v.emplace_back(s2 * phi, 0, s1);
        }
      break;
    case PlatonicSolid::Dodecahedron:
      for (int sx : {-1, 1})
        for (int sy : {-1, 1})
          for (int sz : {-1, 1}) v.emplace_back(sx, sy, sz);
      for (int s1 : {-1, 1})
        for (int s2 : {-1, 1}) {
          v.emplace_back(0, s1 / phi, s2 * phi);
          v.emplace_back(s1 / phi, s2 * phi, 0);
          v.emplace_back(s2 * phi, 0, s1 / phi);
        }
      break;
  }
  for (auto& p : v) p.normalize();
  return v;
}

DipoleEnsemble build_shell(const ShellSpec& spec) {
  if (!(spec.sphere_radius > 0.0)) throw DomainError("build_shell: sphere radius must be positive");
  if (!(spec.shell_radius > 2.0 * spec.sphere_radius)) {
    throw OverlapError("build_shell: shell radius must exceed twice the sphere radius");
  }
  std::vector<Dipole> dipoles;
  dipoles.push_back({Vec3::Zero(), ClausiusMossotti{spec.sphere_radius, spec.eps_center}});
  for (const Vec3& u : platonic_vertices(spec.solid)) {
    dipoles.push_back({spec.shell_radius * u, ClausiusMossotti{spec.sphere_radius, spec.eps_shell}});
  }
  return DipoleEnsemble(std::move(dipoles));
}

DipoleEnsemble central_absorber(const ShellSpec& spec) {
  return DipoleEnsemble({{Vec3::Zero(), ClausiusMossotti{spec.sphere_radius, spec.eps_center}}});
}

int LatticeSpec::total() const {
  int n = 1;
  for (int d = 0; d < dim; ++d) n *= counts[d];
  return n;
}

DipoleEnsemble build_lattice(const LatticeSpec& spec) {
  if (spec.dim < 1 || spec.dim > 3) throw DomainError("build_lattice: dim must be 1, 2 or 3");
  for (int d = 0; d < spec.dim; ++d) {
    if (spec.counts[d] < 1) throw DomainError("build_lattice: counts must be positive");
  }
  if (!(spec.sphere_radius > 0.0)) throw DomainError("build_lattice: sphere radius must be positive");
  if (spec.total() > 1 && !(spec.step > 2.0 * spec.sphere_radius)) {
    throw OverlapError("build_lattice: step must exceed twice the sphere radius");
  }
  std::array<int, 3> n{1, 1, 1};
  for (int d = 0; d < spec.dim; ++d) n[d] = spec.counts[d];

  std::vector<Dipole> dipoles;
  for (int iz = 0; iz < n[2]; ++iz)
    for (int iy = 0; iy < n[1]; ++iy)
      for (int ix = 0; ix < n[0]; ++ix) {
        const Vec3 p((ix - (n[0] - 1) / 2.0) * spec.step, (iy - (n[1] - 1) / 2.0) * spec.step,
                     (iz - (n[2] - 1) / 2.0) * spec.step);
        dipoles.push_back({p, spec.model});
      }
  return DipoleEnsemble(std::move(dipoles));
}

}  // namespace cdscat
