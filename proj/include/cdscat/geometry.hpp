#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "cdscat/cdm.hpp"

/// Study geometries: Platonic shells around a central absorber, and lattices.
namespace cdscat {

enum class PlatonicSolid { Tetrahedron, Octahedron, Cube, Icosahedron, Dodecahedron };

std::string to_string(PlatonicSolid solid);
PlatonicSolid platonic_solid_from_string(const std::string& name);
int vertex_count(PlatonicSolid solid);

/// Unit-norm vertices. Orientation: octahedron on the axes, cube and
/// tetrahedron on the (+-1, +-1, +-1) diagonals, icosahedron and dodecahedron
/// in the golden-ratio frame.
std::vector<Vec3> platonic_vertices(PlatonicSolid solid);

struct ShellSpec {
  PlatonicSolid solid = PlatonicSolid::Cube;
  double shell_radius = 1.0;   // a
  double sphere_radius = 0.1;  // R
  complex eps_shell{10.0, 0.0};
  complex eps_center = default_center_permittivity();

  static complex default_center_permittivity() {
    const complex n(std::sqrt(10.0), 0.1);
    return n * n;
  }
};

/// Central sphere at the origin plus one sphere per vertex at distance a.
/// Throws OverlapError unless a > 2R.
DipoleEnsemble build_shell(const ShellSpec& spec);

/// The central absorber alone.
DipoleEnsemble central_absorber(const ShellSpec& spec);

struct LatticeSpec {
  int dim = 1;
  std::array<int, 3> counts{1, 1, 1};
  double step = 1.0;
  double sphere_radius = 0.1;
  PolarizabilityModel model = BarePolarizability{0.0};

  int total() const;
};

/// Axis-aligned lattice centred on the origin (x first, then y, then z).
/// Throws OverlapError unless step > 2R.
DipoleEnsemble build_lattice(const LatticeSpec& spec);

}  // namespace cdscat
