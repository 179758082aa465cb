#pragma once

#include "qtrace/quiver.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qtrace {

struct PolygonTooSmall : std::runtime_error {
  explicit PolygonTooSmall(int k)
      : std::runtime_error("polygon needs at least 3 sides, got " + std::to_string(k)) {}
};
struct NotATriangulation : std::runtime_error {
  explicit NotATriangulation(const std::string& why) : std::runtime_error("not a triangulation: " + why) {}
};
struct FlipNotAllowed : std::runtime_error {
  explicit FlipNotAllowed(const std::string& why) : std::runtime_error("flip not allowed: " + why) {}
};
struct CannotCutBoundary : std::runtime_error {
  CannotCutBoundary() : std::runtime_error("cannot cut along a boundary edge") {}
};

/// Planar point with exact integer coordinates. All lattice, dual-network and
/// path geometry is integral by construction (polygon corners are scaled by
/// 6n before barycentric subdivision), so orientation tests are exact.
struct Point {
  std::int64_t x = 0, y = 0;
  bool operator==(const Point& o) const { return x == o.x && y == o.y; }
  bool operator<(const Point& o) const { return x != o.x ? x < o.x : y < o.y; }
};

inline std::int64_t cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}
bool on_segment(const Point& p, const Point& a, const Point& b);
bool segments_cross_open(const Point& a, const Point& b, const Point& c, const Point& d);

/// Edge of a triangulated surface, as an unordered pair of corner ids.
struct SurfEdge {
  int a = 0, b = 0;   // a < b
  bool boundary = false;
  bool operator==(const SurfEdge& o) const { return a == o.a && b == o.b; }
};

/// Combinatorial triangulated pb surface with a planar embedding per face.
/// Faces store their corner triple in clockwise order (negative orientation in
/// the coordinate plane); the quiver arrow direction along a face boundary is
/// the stored cyclic order. Cutting
/// produces multiple planar components, translated apart so that vertex
/// positions stay globally unique.
struct TriSurface {
  std::vector<Point> corners;
  std::vector<std::array<int, 3>> faces;  // clockwise corner triples
  std::vector<SurfEdge> edges;            // boundary sides + diagonals
  std::vector<std::string> corner_names;
  bool triangulated = false;
  int polygon_k = 0;                      // >0 when built as a polygon

  int edge_index(int a, int b) const;
  bool has_edge(int a, int b) const { return edge_index(a, b) >= 0; }
  std::vector<int> faces_with_edge(int a, int b) const;
};

/// Ideal polygon P_k: k punctures on the boundary circle, k boundary edges,
/// no triangulation yet. Side i joins corners i and i+1 (mod k).
TriSurface build_polygon(int k);

/// Attach a triangulation given by k-3 pairwise non-crossing diagonals.
TriSurface triangulate_polygon(const TriSurface& s, const std::vector<std::pair<int, int>>& diagonals);

/// Flip the internal edge e = {a,b}: replace by the other diagonal of the
/// quadrilateral formed by the two adjacent faces.
TriSurface flip(const TriSurface& s, int a, int b);

/// Small-vertex lattice of the n-triangulation: the Fock-Goncharov quiver
/// Gamma_lambda glued from the faces, its exchange matrix Q_lambda (stored as
/// 2Q inside a Seed) and the matrix H_lambda used by the balancedness test.
struct Lattice {
  TriSurface surf;
  int n = 2;
  std::vector<Point> pos;                       // vertex id -> position
  std::map<Point, int> id_of;                   // position -> vertex id
  // per face: barycentric coords (i,j,k), i+j+k = n, corners excluded -> id
  std::vector<std::map<std::array<int, 3>, int>> face_vertices;
  Seed seed;
  std::vector<std::vector<int>> H;

  int nv() const { return static_cast<int>(pos.size()); }
  Point face_point(int fi, int i, int j, int k) const;  // barycentric -> plane
  /// Ordered edge vertices along edge {a,b}, from corner a to corner b.
  std::vector<int> edge_vertex_order(int a, int b) const;
};

Lattice build_lattice(const TriSurface& s, int n);

/// Staged vertex sets V^{(0)},...,V^{(n-2)} of the flip mutation sequence at
/// internal edge e = {a,b}; mutating the stages in order realizes the flip,
/// with (n^3-n)/6 mutations in total. Within a stage any order is valid; a
/// fixed lexicographic order by quadrilateral coordinates is returned.
std::vector<std::vector<int>> flip_mutation_sequence(const Lattice& lat, int a, int b);

/// Result of cutting a lattice along an internal edge.
struct CutLattice {
  Lattice cut;              // lattice of the cut surface (components translated apart)
  std::vector<int> pr;      // cut vertex id -> original vertex id (two-to-one over e)
  std::vector<int> piece;   // cut vertex id -> component index (0/1 sides of e)
};

CutLattice cut_edge(const Lattice& lat, int a, int b);

}  // namespace qtrace
