#include "qtrace/surface.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace qtrace;

namespace {

std::set<std::pair<int, int>> diagonal_set(const TriSurface& s) {
  std::set<std::pair<int, int>> d;
  for (const auto& e : s.edges)
    if (!e.boundary) d.insert({e.a, e.b});
  return d;
}

}  // namespace

TEST_CASE("polygon construction") {
  CHECK_THROWS_AS(build_polygon(2), PolygonTooSmall);
  TriSurface p3 = build_polygon(3);
  CHECK(p3.edges.size() == 3);
  for (const auto& e : p3.edges) CHECK(e.boundary);
  CHECK(build_polygon(4).edges.size() == 4);
  CHECK(build_polygon(5).edges.size() == 5);
}

TEST_CASE("triangulations of the quadrilateral and triangle") {
  TriSurface p4 = build_polygon(4);
  TriSurface lam = triangulate_polygon(p4, {{1, 3}});
  TriSurface lamp = triangulate_polygon(p4, {{0, 2}});
  CHECK(lam.faces.size() == 2);
  CHECK(lamp.faces.size() == 2);
  CHECK(triangulate_polygon(build_polygon(3), {}).faces.size() == 1);
  CHECK_THROWS_AS(triangulate_polygon(p4, {}), NotATriangulation);
  CHECK_THROWS_AS(triangulate_polygon(p4, {{1, 3}, {0, 2}}), NotATriangulation);
  CHECK_THROWS_AS(triangulate_polygon(build_polygon(5), {{0, 2}, {1, 3}}), NotATriangulation);
}

TEST_CASE("flips") {
  TriSurface lam = triangulate_polygon(build_polygon(4), {{1, 3}});
  TriSurface f = flip(lam, 1, 3);
  CHECK(diagonal_set(f) == std::set<std::pair<int, int>>{{0, 2}});
  TriSurface ff = flip(f, 0, 2);
  CHECK(diagonal_set(ff) == diagonal_set(lam));
  CHECK_THROWS_AS(flip(lam, 0, 1), FlipNotAllowed);
}

TEST_CASE("flip graph of the pentagon is the 5-cycle") {
  // brute force: triangulations of P5 = pairs of non-crossing diagonals
  TriSurface p5 = build_polygon(5);
  std::vector<std::set<std::pair<int, int>>> tris;
  std::vector<std::pair<int, int>> diags;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 2; b < 5; ++b)
      if (!(a == 0 && b == 4)) diags.push_back({a, b});
  CHECK(diags.size() == 5);
  for (size_t x = 0; x < diags.size(); ++x)
    for (size_t y = x + 1; y < diags.size(); ++y) {
      try {
        TriSurface t = triangulate_polygon(p5, {diags[x], diags[y]});
        tris.push_back(diagonal_set(t));
      } catch (const NotATriangulation&) {
      }
    }
  CHECK(tris.size() == 5);  // Catalan C_3
  // each triangulation flips to exactly two of the others
  for (const auto& t : tris) {
    std::set<std::set<std::pair<int, int>>> nbrs;
    std::vector<std::pair<int, int>> ds(t.begin(), t.end());
    TriSurface ts = triangulate_polygon(p5, ds);
    for (auto [a, b] : t) nbrs.insert(diagonal_set(flip(ts, a, b)));
    CHECK(nbrs.size() == 2);
    for (const auto& nb : nbrs) CHECK(std::count(tris.begin(), tris.end(), nb) == 1);
  }
}

TEST_CASE("lattice vertex counts") {
  TriSurface lam = triangulate_polygon(build_polygon(4), {{1, 3}});
  CHECK(build_lattice(lam, 3).nv() == 12);  // 5 edges x 2 + 2 faces x 1
  CHECK(build_lattice(lam, 4).nv() == 21);  // 5 x 3 + 2 x 3
  Lattice t2 = build_lattice(triangulate_polygon(build_polygon(3), {}), 2);
  CHECK(t2.nv() == 3);
  for (int v = 0; v < 3; ++v) CHECK(!t2.seed.is_mutable[v]);
  // the three midpoint vertices form a quiver 3-cycle of interior arrows
  int nonzero = 0;
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v)
      if (t2.seed.twoQ[u][v] != 0) {
        CHECK(std::abs(t2.seed.twoQ[u][v]) == 2);
        ++nonzero;
      }
  CHECK(nonzero == 6);
}

TEST_CASE("half-arrow chains cancel along the internal edge") {
  TriSurface lam = triangulate_polygon(build_polygon(4), {{1, 3}});
  for (int n = 2; n <= 4; ++n) {
    Lattice lat = build_lattice(lam, n);
    auto chain = lat.edge_vertex_order(1, 3);
    for (size_t t = 0; t + 1 < chain.size(); ++t)
      CHECK(lat.seed.twoQ[chain[t]][chain[t + 1]] == 0);
  }
}

TEST_CASE("H agrees with Q at mutable columns") {
  TriSurface lam = triangulate_polygon(build_polygon(4), {{1, 3}});
  for (int n = 2; n <= 4; ++n) {
    Lattice lat = build_lattice(lam, n);
    for (int v = 0; v < lat.nv(); ++v)
      for (int k = 0; k < lat.nv(); ++k)
        if (lat.seed.is_mutable[k]) CHECK(2 * lat.H[v][k] == lat.seed.twoQ[v][k]);
  }
}

TEST_CASE("flip mutation sequence stage sizes") {
  TriSurface lam = triangulate_polygon(build_polygon(4), {{1, 3}});
  std::vector<std::vector<int>> expect = {{1}, {2, 2}, {3, 4, 3}, {4, 6, 6, 4}};
  for (int n = 2; n <= 5; ++n) {
    Lattice lat = build_lattice(lam, n);
    auto stages = flip_mutation_sequence(lat, 1, 3);
    REQUIRE(stages.size() == static_cast<size_t>(n - 1));
    int total = 0;
    for (int i = 0; i <= n - 2; ++i) {
      CHECK(static_cast<int>(stages[i].size()) == expect[n - 2][i]);
      CHECK(static_cast<int>(stages[i].size()) == (i + 1) * (n - 1 - i));
      total += static_cast<int>(stages[i].size());
    }
    CHECK(total == (n * n * n - n) / 6);
  }
}

TEST_CASE("cutting the quadrilateral along its diagonal") {
  TriSurface lamp = triangulate_polygon(build_polygon(4), {{0, 2}});
  for (int n = 2; n <= 4; ++n) {
    Lattice lat = build_lattice(lamp, n);
    CutLattice cut = cut_edge(lat, 0, 2);
    CHECK(cut.cut.surf.faces.size() == 2);
    CHECK(cut.cut.surf.corners.size() == 6);  // two triangles
    CHECK(cut.cut.nv() == lat.nv() + (n - 1));
    // pr is two-to-one exactly over the diagonal vertices
    std::vector<int> count(lat.nv(), 0);
    for (int w = 0; w < cut.cut.nv(); ++w) ++count[cut.pr[w]];
    auto on_diag = lat.edge_vertex_order(0, 2);
    for (int v = 0; v < lat.nv(); ++v) {
      bool diag = std::find(on_diag.begin(), on_diag.end(), v) != on_diag.end();
      CHECK(count[v] == (diag ? 2 : 1));
    }
    // vertices over the cut edge become frozen; the pieces' interior vertices
    // stay mutable, (n-1)(n-2)/2 per triangle
    int mutable_count = 0;
    for (int w = 0; w < cut.cut.nv(); ++w) {
      if (cut.cut.seed.is_mutable[w]) ++mutable_count;
      bool over_diag = std::find(on_diag.begin(), on_diag.end(), cut.pr[w]) != on_diag.end();
      if (over_diag) CHECK(!cut.cut.seed.is_mutable[w]);
    }
    CHECK(mutable_count == (n - 1) * (n - 2));
    CHECK_THROWS_AS(cut_edge(lat, 0, 1), CannotCutBoundary);
  }
}

TEST_CASE("Q additivity under cutting") {
  // cut a pentagon fan along one diagonal: pieces keep mutable vertices for n>=2
  TriSurface fan = triangulate_polygon(build_polygon(5), {{0, 2}, {0, 3}});
  for (int n = 2; n <= 3; ++n) {
    Lattice lat = build_lattice(fan, n);
    CutLattice cut = cut_edge(lat, 0, 3);
    std::vector<std::vector<int>> pre(lat.nv());
    for (int w = 0; w < cut.cut.nv(); ++w) pre[cut.pr[w]].push_back(w);
    for (int u_cut = 0; u_cut < cut.cut.nv(); ++u_cut) {
      if (!cut.cut.seed.is_mutable[u_cut]) continue;
      int u = cut.pr[u_cut];
      for (int v = 0; v < lat.nv(); ++v) {
        int sum = 0;
        for (int w : pre[v]) sum += cut.cut.seed.twoQ[u_cut][w];
        CHECK(lat.seed.twoQ[u][v] == sum);
      }
    }
  }
}
