#pragma once

#include "qtrace/balance.hpp"
#include "qtrace/surface.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtrace {

struct InconsistentOutAssignment : std::runtime_error {
  explicit InconsistentOutAssignment(const std::string& why)
      : std::runtime_error("inconsistent out-assignment: " + why) {}
};
struct DegenerateGeometry : std::runtime_error {
  DegenerateGeometry() : std::runtime_error("lattice vertex lies on a path polyline") {}
};

/// Left-turn directed network dual to the n-triangulation: one vertex per
/// small triangle (up-triangles 2-in/1-out, down-triangles 1-in/2-out) and one
/// port vertex per small edge lying on an edge of the triangulation (degree 1
/// on boundary edges, one in + one out on internal edges). A dual edge
/// crossing a small edge parallel to the out-side of its face points toward
/// that side; all others point away from their parallel side.
class Network {
 public:
  enum class Kind { UpTri, DownTri, Port };

  struct Vertex {
    Point pos;
    Kind kind;
    int big_edge = -1;  // for ports: index into lattice surf.edges
  };

  /// Directed path as a sequence of network vertex ids.
  using Path = std::vector<int>;

  /// Build with the out-assignment rooted toward the face adjacent to the
  /// global sink side {sa,sb} (each face's out-side points toward that face).
  Network(const Lattice& lat, int sa, int sb);

  /// Build with an explicit out-assignment: face index -> its out side, given
  /// as an edge index into lat.surf.edges.
  Network(const Lattice& lat, const std::vector<int>& out_side_of_face);

  const Lattice& lattice() const { return *lat_; }
  int vertex_count() const { return static_cast<int>(verts_.size()); }
  const Vertex& vertex(int v) const { return verts_[v]; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  int in_degree(int v) const;
  int out_degree(int v) const;
  bool is_acyclic() const;

  /// Ports on the big edge {a,b}, ordered by distance from corner `near`.
  std::vector<int> ports_on_edge(int a, int b, int near) const;

  /// All directed paths between two port vertices, lexicographic by vertex id
  /// sequence. Finite by acyclicity.
  std::vector<Path> enumerate_paths(int src_port, int dst_port) const;

  /// Indicator vector over the lattice of small vertices strictly on the left
  /// of the path (region closed through the polygon corner `pocket`).
  Exp left_exponent(const Path& p, Point pocket_corner) const;

 private:
  void build(const Lattice& lat, const std::vector<int>& out_side_of_face);
  const Lattice* lat_ = nullptr;
  std::vector<Vertex> verts_;
  std::vector<std::pair<int, int>> edges_;
  std::map<int, std::vector<int>> adj_;
};

/// Out-assignment rooted toward the face containing the sink side; every other
/// face's out-side is its side toward the root in the face tree.
std::vector<int> rooted_out_assignment(const Lattice& lat, int sa, int sb);

}  // namespace qtrace
