#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "cdscat/errors.hpp"
#include "cdscat/geometry.hpp"

using namespace cdscat;

namespace {

struct SolidFacts {
  PlatonicSolid solid;
  int vertices;
  int degree;
  double edge_cosine;  // cos of the central angle subtended by an edge
};

const SolidFacts facts[] = {
    {PlatonicSolid::Tetrahedron, 4, 3, -1.0 / 3.0},
    {PlatonicSolid::Octahedron, 6, 4, 0.0},
    {PlatonicSolid::Cube, 8, 3, 1.0 / 3.0},
    {PlatonicSolid::Icosahedron, 12, 5, 1.0 / std::sqrt(5.0)},
    {PlatonicSolid::Dodecahedron, 20, 3, std::sqrt(5.0) / 3.0},
};

}  // namespace

TEST_CASE("Platonic vertices: counts, norms, centroid and nearest-neighbour shell") {
  for (const auto& f : facts) {
    CAPTURE(to_string(f.solid));
    const auto v = platonic_vertices(f.solid);
    REQUIRE(static_cast<int>(v.size()) == f.vertices);
    CHECK(vertex_count(f.solid) == f.vertices);
    Vec3 centroid = Vec3::Zero();
    for (const auto& p : v) {
      CHECK(std::abs(p.norm() - 1.0) <= 1e-15);
      centroid += p;
    }
    CHECK(centroid.norm() < 1e-14);
    // Every vertex has `degree` nearest neighbours at the edge angle, none closer.
    for (std::size_t i = 0; i < v.size(); ++i) {
      int neighbours = 0;
      for (std::size_t j = 0; j < v.size(); ++j) {
        if (i == j) continue;
        const double c = v[i].dot(v[j]);
        CHECK(c <= f.edge_cosine + 1e-12);
        if (std::abs(c - f.edge_cosine) < 1e-12) ++neighbours;
      }
      CHECK(neighbours == f.degree);
    }
  }
}

TEST_CASE("octahedron sits on the axes, cube on the diagonals") {
  for (const auto& p : platonic_vertices(PlatonicSolid::Octahedron)) CHECK(p.cwiseAbs().maxCoeff() == doctest::Approx(1.0));
  for (const auto& p : platonic_vertices(PlatonicSolid::Cube))
    for (int c = 0; c < 3; ++c) CHECK(std::abs(p[c]) == doctest::Approx(1.0 / std::sqrt(3.0)));
}

TEST_CASE("solid names round-trip") {
  for (const auto& f : facts) CHECK(platonic_solid_from_string(to_string(f.solid)) == f.solid);
  CHECK_THROWS_AS(platonic_solid_from_string("sphere"), ConfigError);
}

TEST_CASE("shell construction") {
  ShellSpec spec;
  spec.solid = PlatonicSolid::Cube;
  spec.shell_radius = pi;
  spec.sphere_radius = 0.8;
  const DipoleEnsemble e = build_shell(spec);
  REQUIRE(e.size() == 9);
  CHECK(e[0].position.norm() == 0.0);
  for (std::size_t i = 1; i < e.size(); ++i) CHECK(e[i].position.norm() == doctest::Approx(pi));
  const auto* centre = std::get_if<ClausiusMossotti>(&e[0].model);
  REQUIRE(centre);
  CHECK(std::abs(centre->epsilon - complex(10.0 - 0.01, 2.0 * 0.1 * std::sqrt(10.0))) < 1e-14);
  const auto* shell = std::get_if<ClausiusMossotti>(&e[1].model);
  REQUIRE(shell);
  CHECK(shell->epsilon == complex(10.0, 0.0));

  const DipoleEnsemble alone = central_absorber(spec);
  CHECK(alone.size() == 1);

  spec.shell_radius = 0.1 * spec.sphere_radius;
  CHECK_THROWS_AS(build_shell(spec), OverlapError);
  spec.shell_radius = 2.0 * spec.sphere_radius;
  CHECK_THROWS_AS(build_shell(spec), OverlapError);
}

TEST_CASE("lattices are centred and axis aligned") {
  LatticeSpec s;
  s.dim = 1;
  s.counts = {3, 1, 1};
  s.step = 100.0;
  s.sphere_radius = 20.0;
  s.model = BarePolarizability{1.0};
  const DipoleEnsemble chain = build_lattice(s);
  REQUIRE(chain.size() == 3);
  CHECK(chain[0].position.isApprox(Vec3(-100, 0, 0)));
  CHECK(chain[1].position.norm() == 0.0);
  CHECK(chain[2].position.isApprox(Vec3(100, 0, 0)));

  s.dim = 2;
  s.counts = {3, 3, 1};
  const DipoleEnsemble square = build_lattice(s);
  CHECK(square.size() == 9);
  CHECK(square.min_separation() == doctest::Approx(100.0));
  for (std::size_t i = 0; i < square.size(); ++i) CHECK(square[i].position.z() == 0.0);

  s.dim = 3;
  s.counts = {2, 2, 2};
  const DipoleEnsemble cube = build_lattice(s);
  CHECK(cube.size() == 8);
  CHECK(s.total() == 8);
  for (std::size_t i = 0; i < cube.size(); ++i) CHECK(cube[i].position.cwiseAbs().isApprox(Vec3(50, 50, 50)));

  s.step = 40.0;
  CHECK_THROWS_AS(build_lattice(s), OverlapError);
}
