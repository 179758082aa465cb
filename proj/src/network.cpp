#include "qtrace/network.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace qtrace {

std::vector<int> rooted_out_assignment(const Lattice& lat, int sa, int sb) {
  const TriSurface& s = lat.surf;
  if (sa > sb) std::swap(sa, sb);
  int sink = s.edge_index(sa, sb);
  if (sink < 0) throw InconsistentOutAssignment("sink side is not an edge");
  auto rootf = s.faces_with_edge(sa, sb);
  if (rootf.size() != 1 || !s.edges[sink].boundary)
    throw InconsistentOutAssignment("sink side must be a boundary edge");
  const int nf = static_cast<int>(s.faces.size());
  std::vector<int> out(nf, -1);
  out[rootf[0]] = sink;
  std::queue<int> q;
  q.push(rootf[0]);
  while (!q.empty()) {
    int fi = q.front();
    q.pop();
    const auto& f = s.faces[fi];
    for (int sd = 0; sd < 3; ++sd) {
      int a = f[sd], b = f[(sd + 1) % 3];
      int ei = s.edge_index(std::min(a, b), std::max(a, b));
      if (s.edges[ei].boundary) continue;
      for (int fj : s.faces_with_edge(std::min(a, b), std::max(a, b)))
        if (fj != fi && out[fj] < 0) {
          out[fj] = ei;  // the side of fj toward the root
          q.push(fj);
        }
    }
  }
  // faces not reached stay at -1: on a cut (disconnected) surface the network
  // is built only over the sink side's component
  return out;
}

Network::Network(const Lattice& lat, int sa, int sb) { build(lat, rooted_out_assignment(lat, sa, sb)); }
Network::Network(const Lattice& lat, const std::vector<int>& out) { build(lat, out); }

namespace {

struct BaryTriple {
  std::array<int, 3> a, b, c;
};

// the one or two small triangles of the face containing the small edge (b1,b2)
std::vector<std::array<std::array<int, 3>, 3>> adjacent_small_triangles(const std::array<int, 3>& b1,
                                                                        const std::array<int, 3>& b2) {
  static const int moves[6][3] = {{-1, 1, 0}, {0, -1, 1}, {1, 0, -1}, {1, -1, 0}, {0, 1, -1}, {-1, 0, 1}};
  std::vector<std::array<std::array<int, 3>, 3>> out;
  std::set<std::array<std::array<int, 3>, 3>> seen;
  for (const auto& mv : moves) {
    std::array<int, 3> t3{b1[0] + mv[0], b1[1] + mv[1], b1[2] + mv[2]};
    if (t3[0] < 0 || t3[1] < 0 || t3[2] < 0) continue;
    // t3 must be a lattice neighbour of both b1 and b2
    std::array<int, 3> d2{b2[0] - t3[0], b2[1] - t3[1], b2[2] - t3[2]};
    std::array<int, 3> sd2 = d2;
    std::sort(sd2.begin(), sd2.end());
    if (t3 == b2 || !(sd2 == std::array<int, 3>{-1, 0, 1})) continue;
    std::array<std::array<int, 3>, 3> tri{b1, b2, t3};
    std::sort(tri.begin(), tri.end());
    if (seen.insert(tri).second) out.push_back(tri);
  }
  return out;
}

}  // namespace

void Network::build(const Lattice& lat, const std::vector<int>& out_side_of_face) {
  lat_ = &lat;
  const TriSurface& s = lat.surf;
  const int n = lat.n;
  if (out_side_of_face.size() != s.faces.size())
    throw InconsistentOutAssignment("out-assignment size mismatch");
  // flow consistency: each internal edge between active faces is declared
  // "out" by exactly one of them
  for (int ei = 0; ei < static_cast<int>(s.edges.size()); ++ei) {
    if (s.edges[ei].boundary) continue;
    auto fs = s.faces_with_edge(s.edges[ei].a, s.edges[ei].b);
    int cnt = 0, active = 0;
    for (int fi : fs) {
      if (out_side_of_face[fi] < 0) continue;
      ++active;
      if (out_side_of_face[fi] == ei) ++cnt;
    }
    if (active > 0 && cnt != 1)
      throw InconsistentOutAssignment("internal edge must be out for exactly one face");
  }

  std::map<Point, int> tri_vid, port_vid;
  auto tri_id = [&](const std::array<std::array<int, 3>, 3>& tri, int fi) {
    Point p0 = lat.face_point(fi, tri[0][0], tri[0][1], tri[0][2]);
    Point p1 = lat.face_point(fi, tri[1][0], tri[1][1], tri[1][2]);
    Point p2 = lat.face_point(fi, tri[2][0], tri[2][1], tri[2][2]);
    Point c{(p0.x + p1.x + p2.x) / 3, (p0.y + p1.y + p2.y) / 3};
    auto it = tri_vid.find(c);
    if (it != tri_vid.end()) return it->second;
    // up-triangles (same orientation as the face) have componentwise-minimal
    // barycentrics summing to n-1, down-triangles to n-2
    int minsum = 0;
    for (int comp = 0; comp < 3; ++comp)
      minsum += std::min({tri[0][comp], tri[1][comp], tri[2][comp]});
    int vid = static_cast<int>(verts_.size());
    verts_.push_back({c, minsum == lat.n - 1 ? Kind::UpTri : Kind::DownTri, -1});
    tri_vid.emplace(c, vid);
    return vid;
  };
  auto port_id = [&](Point mid, int big_edge) {
    auto it = port_vid.find(mid);
    if (it != port_vid.end()) return it->second;
    int vid = static_cast<int>(verts_.size());
    verts_.push_back({mid, Kind::Port, big_edge});
    port_vid.emplace(mid, vid);
    return vid;
  };

  for (int fi = 0; fi < static_cast<int>(s.faces.size()); ++fi) {
    if (out_side_of_face[fi] < 0) continue;  // face outside the active component
    const auto& f = s.faces[fi];
    for (int side = 0; side < 3; ++side) {
      // iterate the small edges parallel to `side`, once per (face, edge)
      for (int t = 1; t <= n; ++t)
        for (int r = 0; r <= n - t; ++r) {
          std::array<int, 3> b1{}, b2{};
          if (side == 0) {
            b1 = {t, r, n - t - r};
            b2 = {t - 1, r + 1, n - t - r};
          } else if (side == 1) {
            b1 = {r, t, n - t - r};
            b2 = {r, t - 1, n - t - r + 1};
          } else {
            b1 = {r, n - t - r, t};
            b2 = {r + 1, n - t - r, t - 1};
          }
          Point P1 = lat.face_point(fi, b1[0], b1[1], b1[2]);
          Point P2 = lat.face_point(fi, b2[0], b2[1], b2[2]);
          bool on_side = (side == 0 ? b1[2] == 0 && b2[2] == 0
                          : side == 1 ? b1[0] == 0 && b2[0] == 0
                                      : b1[1] == 0 && b2[1] == 0);
          // endpoints of this dual edge: adjacent triangles and, if the small
          // edge lies on the big side, a port
          auto tris = adjacent_small_triangles(b1, b2);
          struct End {
            bool is_port;
            Point pos;
            std::array<std::array<int, 3>, 3> tri;
          };
          std::vector<End> ends;
          for (const auto& tri : tris) {
            Point p0 = lat.face_point(fi, tri[0][0], tri[0][1], tri[0][2]);
            Point p1 = lat.face_point(fi, tri[1][0], tri[1][1], tri[1][2]);
            Point p2 = lat.face_point(fi, tri[2][0], tri[2][1], tri[2][2]);
            ends.push_back({false, Point{(p0.x + p1.x + p2.x) / 3, (p0.y + p1.y + p2.y) / 3}, tri});
          }
          int big_edge = -1;
          if (on_side) {
            int ca = f[side], cb = f[(side + 1) % 3];
            big_edge = s.edge_index(std::min(ca, cb), std::max(ca, cb));
            ends.push_back({true, Point{(P1.x + P2.x) / 2, (P1.y + P2.y) / 2}, {}});
          }
          if (ends.size() != 2) throw std::logic_error("small edge without two dual endpoints");
          // orientation: relative distance from the line of the parallel side
          int ca = f[side], cb = f[(side + 1) % 3];
          Point A{6 * n * s.corners[ca].x, 6 * n * s.corners[ca].y};
          Point B{6 * n * s.corners[cb].x, 6 * n * s.corners[cb].y};
          auto d0 = std::abs(cross(A, B, ends[0].pos));
          auto d1 = std::abs(cross(A, B, ends[1].pos));
          int near = d0 <= d1 ? 0 : 1;
          int far = 1 - near;
          int src, dst;
          bool toward = (out_side_of_face[fi] == s.edge_index(std::min(ca, cb), std::max(ca, cb)));
          const End& se = toward ? ends[far] : ends[near];
          const End& de = toward ? ends[near] : ends[far];
          src = se.is_port ? port_id(se.pos, big_edge) : tri_id(se.tri, fi);
          dst = de.is_port ? port_id(de.pos, big_edge) : tri_id(de.tri, fi);
          // dual edges crossing internal big edges are built once per face;
          // dedupe by (src,dst)
          if (std::find(edges_.begin(), edges_.end(), std::make_pair(src, dst)) == edges_.end()) {
            edges_.emplace_back(src, dst);
            adj_[src].push_back(dst);
          }
        }
    }
  }
  for (auto& [v, nbrs] : adj_) std::sort(nbrs.begin(), nbrs.end());
}

int Network::in_degree(int v) const {
  int d = 0;
  for (const auto& [a, b] : edges_)
    if (b == v) ++d;
  return d;
}

int Network::out_degree(int v) const {
  auto it = adj_.find(v);
  return it == adj_.end() ? 0 : static_cast<int>(it->second.size());
}

bool Network::is_acyclic() const {
  const int nv = vertex_count();
  std::vector<int> state(nv, 0);
  std::vector<std::pair<int, size_t>> stack;
  for (int s0 = 0; s0 < nv; ++s0) {
    if (state[s0]) continue;
    stack.push_back({s0, 0});
    state[s0] = 1;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      auto it = adj_.find(v);
      size_t deg = (it == adj_.end()) ? 0 : it->second.size();
      if (i == deg) {
        state[v] = 2;
        stack.pop_back();
        continue;
      }
      int w = it->second[i++];
      if (state[w] == 1) return false;
      if (state[w] == 0) {
        state[w] = 1;
        stack.push_back({w, 0});
      }
    }
  }
  return true;
}

std::vector<int> Network::ports_on_edge(int a, int b, int near) const {
  if (a > b) std::swap(a, b);
  int ei = lat_->surf.edge_index(a, b);
  std::vector<int> ps;
  for (int v = 0; v < vertex_count(); ++v)
    if (verts_[v].kind == Kind::Port && verts_[v].big_edge == ei) ps.push_back(v);
  Point c{6 * lat_->n * lat_->surf.corners[near].x, 6 * lat_->n * lat_->surf.corners[near].y};
  std::sort(ps.begin(), ps.end(), [&](int x, int y) {
    auto d = [&](int v) {
      auto dx = verts_[v].pos.x - c.x, dy = verts_[v].pos.y - c.y;
      return dx * dx + dy * dy;
    };
    return d(x) < d(y);
  });
  return ps;
}

std::vector<Network::Path> Network::enumerate_paths(int src_port, int dst_port) const {
  std::vector<Path> out;
  Path cur{src_port};
  // iterative DFS emitting lexicographically ordered paths
  struct Frame {
    int v;
    size_t next = 0;
  };
  std::vector<Frame> st{{src_port, 0}};
  while (!st.empty()) {
    Frame& f = st.back();
    if (f.v == dst_port && f.next == 0) {
      out.push_back(cur);
    }
    auto it = adj_.find(f.v);
    size_t deg = (it == adj_.end()) ? 0 : it->second.size();
    if (f.next == deg) {
      st.pop_back();
      cur.pop_back();
      continue;
    }
    int w = it->second[f.next++];
    st.push_back({w, 0});
    cur.push_back(w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Exp Network::left_exponent(const Path& p, Point pocket_corner) const {
  std::vector<Point> poly;
  for (int v : p) poly.push_back(verts_[v].pos);
  poly.push_back(pocket_corner);
  auto winding_inside = [&](const Point& q) {
    long w = 0;
    const size_t m = poly.size();
    for (size_t i = 0; i < m; ++i) {
      const Point &a = poly[i], &b = poly[(i + 1) % m];
      if (a.y <= q.y) {
        if (b.y > q.y && cross(a, b, q) > 0) ++w;
      } else {
        if (b.y <= q.y && cross(a, b, q) < 0) --w;
      }
    }
    return w != 0;
  };
  Exp k(lat_->nv(), 0);
  for (int vid = 0; vid < lat_->nv(); ++vid) {
    const Point& q = lat_->pos[vid];
    for (size_t i = 0; i + 1 < poly.size() - 1; ++i)
      if (on_segment(q, poly[i], poly[i + 1])) throw DegenerateGeometry();
    bool onwalk = on_segment(q, poly[poly.size() - 2], pocket_corner) ||
                  on_segment(q, pocket_corner, poly[0]);
    k[vid] = (onwalk || winding_inside(q)) ? 1 : 0;
  }
  return k;
}

}  // namespace qtrace
