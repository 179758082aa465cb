#include "qtrace/quiver.hpp"
#include "qtrace/surface.hpp"

#include <doctest.h>

using namespace qtrace;

namespace {

Seed two_vertex_seed() {
  Seed s;
  s.names = {"1", "2"};
  s.is_mutable = {true, true};
  s.twoQ = {{0, 2}, {-2, 0}};
  return s;
}

}  // namespace

TEST_CASE("mutation reverses incident arrows") {
  Seed s = two_vertex_seed();
  Seed m = mutate_seed(s, 0);
  CHECK(m.twoQ[0][1] == -2);  // Q'(1,2) = -1
}

TEST_CASE("mutation correction term") {
  // Q(1,2) = 1, Q(2,3) = 1, Q(1,3) = 0; mutate at 2 -> Q'(1,3) = 1
  Seed s;
  s.names = {"1", "2", "3"};
  s.is_mutable = {true, true, true};
  s.twoQ = {{0, 2, 0}, {-2, 0, 2}, {0, -2, 0}};
  Seed m = mutate_seed(s, 1);
  CHECK(m.twoQ[0][2] == 2);
  CHECK(m.twoQ[0][1] == -2);
  CHECK(m.twoQ[1][2] == -2);
}

TEST_CASE("mutation at a frozen vertex is rejected") {
  Seed s = two_vertex_seed();
  s.is_mutable[1] = false;
  CHECK_THROWS_AS(mutate_seed(s, 1), MutationAtFrozenVertex);
}

TEST_CASE("involutivity and antisymmetry on the quadrilateral seed") {
  TriSurface p4 = triangulate_polygon(build_polygon(4), {{1, 3}});
  for (int n = 2; n <= 4; ++n) {
    Lattice lat = build_lattice(p4, n);
    for (int k = 0; k < lat.nv(); ++k) {
      if (!lat.seed.is_mutable[k]) continue;
      Seed m = mutate_seed(lat.seed, k);
      m.check_invariants();
      CHECK(mutate_seed(m, k) == lat.seed);
    }
  }
}
