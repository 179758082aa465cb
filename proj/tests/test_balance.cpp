#include "qtrace/balance.hpp"

#include <doctest.h>

#include <random>

using namespace qtrace;

namespace {

Lattice triangle(int n) { return build_lattice(triangulate_polygon(build_polygon(3), {}), n); }

// independent generator of balanced vectors: per-face coefficients of the
// coordinate functions, chosen consistently across glued edges by brute
// force, plus a random multiple of n
Exp random_balanced(const Lattice& lat, std::mt19937& rng) {
  const int n = lat.n;
  std::uniform_int_distribution<int> coef(0, n - 1), extra(-1, 1);
  Exp k(lat.nv(), 0);
  std::vector<bool> assigned(lat.nv(), false);
  for (const auto& fv : lat.face_vertices) {
    // try coefficient triples until compatible with already-assigned vertices
    for (int tries = 0;; ++tries) {
      REQUIRE(tries < 4096);
      int a = coef(rng), b = coef(rng), c = coef(rng);
      bool ok = true;
      for (const auto& [bary, vid] : fv) {
        int want = (a * bary[0] + b * bary[1] + c * bary[2]) % n;
        if (assigned[vid] && (k[vid] - want) % n != 0) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      for (const auto& [bary, vid] : fv) {
        if (!assigned[vid]) {
          k[vid] = (a * bary[0] + b * bary[1] + c * bary[2]) % n;
          assigned[vid] = true;
        }
      }
      break;
    }
  }
  for (int v = 0; v < lat.nv(); ++v) k[v] += n * extra(rng);
  return k;
}

}  // namespace

TEST_CASE("balancedness on the triangle, n = 2") {
  Lattice lat = triangle(2);
  Exp zero(lat.nv(), 0);
  CHECK(is_balanced(lat, zero));
  // midpoints of the sides e1 = {p0,p1}, e2 = {p1,p2}, e3 = {p2,p0}
  auto m12 = lat.edge_vertex_order(1, 2)[0];
  auto m20 = lat.edge_vertex_order(2, 0)[0];
  Exp k(lat.nv(), 0);
  k[m12] = 1;
  k[m20] = 1;
  BalanceWitness w;
  CHECK(is_balanced(lat, k, &w));
  REQUIRE(w.per_face.size() == 1);
  // one midpoint alone is not balanced
  for (int v = 0; v < lat.nv(); ++v) {
    Exp e(lat.nv(), 0);
    e[v] = 1;
    CHECK(!is_balanced(lat, e));
  }
}

TEST_CASE("balanced implies H-balanced and mutable-balanced") {
  std::mt19937 rng(7);
  for (int n = 2; n <= 4; ++n) {
    for (const char* which : {"P3", "P4"}) {
      Lattice lat = which[1] == '3'
                        ? triangle(n)
                        : build_lattice(triangulate_polygon(build_polygon(4), {{1, 3}}), n);
      for (int it = 0; it < 40; ++it) {
        Exp k = random_balanced(lat, rng);
        REQUIRE(is_balanced(lat, k));
        CHECK(is_balanced_via_H(lat, k));
        CHECK(is_mutable_balanced(lat.seed, n, k));
      }
    }
  }
}

TEST_CASE("balanced vectors form a subgroup") {
  std::mt19937 rng(11);
  Lattice lat = build_lattice(triangulate_polygon(build_polygon(4), {{0, 2}}), 3);
  for (int it = 0; it < 30; ++it) {
    Exp x = random_balanced(lat, rng), y = random_balanced(lat, rng);
    Exp sum(lat.nv()), neg(lat.nv());
    for (int v = 0; v < lat.nv(); ++v) {
      sum[v] = x[v] + y[v];
      neg[v] = -x[v];
    }
    CHECK(is_balanced(lat, sum));
    CHECK(is_balanced(lat, neg));
  }
}

TEST_CASE("mutable-balanced basics") {
  Lattice lat = build_lattice(triangulate_polygon(build_polygon(4), {{1, 3}}), 3);
  Exp zero(lat.nv(), 0);
  CHECK(is_mutable_balanced(lat.seed, 3, zero));
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int it = 0; it < 20; ++it) {
    Exp t(lat.nv());
    for (auto& v : t) v = 3 * d(rng);  // n Z^V is mutable-balanced
    CHECK(is_mutable_balanced(lat.seed, 3, t));
  }
  // direct congruence evaluation agrees
  for (int it = 0; it < 50; ++it) {
    Exp t(lat.nv());
    for (auto& v : t) v = d(rng);
    bool expect = true;
    for (int u = 0; u < lat.nv(); ++u) {
      if (!lat.seed.is_mutable[u]) continue;
      long s = 0;
      for (int v = 0; v < lat.nv(); ++v) s += lat.seed.twoQ[u][v] / 2 * t[v];
      if (s % 3 != 0) expect = false;
    }
    CHECK(is_mutable_balanced(lat.seed, 3, t) == expect);
  }
}
