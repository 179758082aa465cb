#include "qtrace/surface.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>
#include <set>

namespace qtrace {

bool on_segment(const Point& p, const Point& a, const Point& b) {
  if (cross(a, b, p) != 0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool segments_cross_open(const Point& a, const Point& b, const Point& c, const Point& d) {
  auto sgn = [](std::int64_t v) { return (v > 0) - (v < 0); };
  int d1 = sgn(cross(a, b, c)), d2 = sgn(cross(a, b, d));
  int d3 = sgn(cross(c, d, a)), d4 = sgn(cross(c, d, b));
  return d1 * d2 < 0 && d3 * d4 < 0;
}

int TriSurface::edge_index(int a, int b) const {
  if (a > b) std::swap(a, b);
  for (int i = 0; i < static_cast<int>(edges.size()); ++i)
    if (edges[i].a == a && edges[i].b == b) return i;
  return -1;
}

std::vector<int> TriSurface::faces_with_edge(int a, int b) const {
  std::vector<int> out;
  for (int fi = 0; fi < static_cast<int>(faces.size()); ++fi) {
    const auto& f = faces[fi];
    bool ha = (f[0] == a || f[1] == a || f[2] == a);
    bool hb = (f[0] == b || f[1] == b || f[2] == b);
    if (ha && hb) out.push_back(fi);
  }
  return out;
}

TriSurface build_polygon(int k) {
  if (k < 3) throw PolygonTooSmall(k);
  TriSurface s;
  s.polygon_k = k;
  // corners on a parabola: convex position, integral, no three collinear
  for (int t = 0; t < k; ++t) {
    s.corners.push_back({t, static_cast<std::int64_t>(t) * t});
    s.corner_names.push_back("p" + std::to_string(t));
  }
  for (int i = 0; i < k; ++i) s.edges.push_back({std::min(i, (i + 1) % k), std::max(i, (i + 1) % k), true});
  return s;
}

namespace {

std::array<int, 3> clockwise(const std::vector<Point>& corners, int a, int b, int c) {
  if (cross(corners[a], corners[b], corners[c]) > 0) std::swap(b, c);
  return {a, b, c};
}

}  // namespace

TriSurface triangulate_polygon(const TriSurface& s, const std::vector<std::pair<int, int>>& diagonals) {
  if (s.polygon_k < 3) throw NotATriangulation("not a polygon");
  const int k = s.polygon_k;
  TriSurface r = s;
  std::set<std::pair<int, int>> diag;
  for (auto [a, b] : diagonals) {
    if (a > b) std::swap(a, b);
    if (a < 0 || b >= k || a == b) throw NotATriangulation("bad corner index");
    int gap = (b - a) % k;
    if (gap == 1 || gap == k - 1) throw NotATriangulation("side given as diagonal");
    if (!diag.insert({a, b}).second) throw NotATriangulation("repeated diagonal");
  }
  if (static_cast<int>(diag.size()) != k - 3) throw NotATriangulation("need exactly k-3 diagonals");
  for (auto it = diag.begin(); it != diag.end(); ++it)
    for (auto jt = std::next(it); jt != diag.end(); ++jt)
      if (segments_cross_open(s.corners[it->first], s.corners[it->second],
                              s.corners[jt->first], s.corners[jt->second]))
        throw NotATriangulation("crossing diagonals");
  for (auto [a, b] : diag) r.edges.push_back({a, b, false});
  // faces: corner triples all of whose edges are present; for corners in
  // convex position these are exactly the triangulation faces
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      for (int c = b + 1; c < k; ++c)
        if (r.has_edge(a, b) && r.has_edge(b, c) && r.has_edge(a, c))
          r.faces.push_back(clockwise(r.corners, a, b, c));
  if (static_cast<int>(r.faces.size()) != k - 2) throw NotATriangulation("face count mismatch");
  r.triangulated = true;
  return r;
}

TriSurface flip(const TriSurface& s, int a, int b) {
  if (a > b) std::swap(a, b);
  int ei = s.edge_index(a, b);
  if (ei < 0) throw FlipNotAllowed("no such edge");
  if (s.edges[ei].boundary) throw FlipNotAllowed("boundary edge");
  auto adj = s.faces_with_edge(a, b);
  if (adj.size() != 2) throw FlipNotAllowed("edge not shared by two faces");
  int w = -1, e = -1;
  for (int c : s.faces[adj[0]])
    if (c != a && c != b) w = c;
  for (int c : s.faces[adj[1]])
    if (c != a && c != b) e = c;
  if (s.has_edge(std::min(w, e), std::max(w, e))) throw FlipNotAllowed("would create a self-folded triangle");
  TriSurface r = s;
  r.faces.erase(r.faces.begin() + std::max(adj[0], adj[1]));
  r.faces.erase(r.faces.begin() + std::min(adj[0], adj[1]));
  r.faces.push_back(clockwise(r.corners, w, e, a));
  r.faces.push_back(clockwise(r.corners, w, e, b));
  r.edges.erase(r.edges.begin() + ei);
  r.edges.push_back({std::min(w, e), std::max(w, e), false});
  return r;
}

Point Lattice::face_point(int fi, int i, int j, int k) const {
  const auto& f = surf.faces[fi];
  const Point &A = surf.corners[f[0]], &B = surf.corners[f[1]], &C = surf.corners[f[2]];
  return {6 * (i * A.x + j * B.x + k * C.x), 6 * (i * A.y + j * B.y + k * C.y)};
}

std::vector<int> Lattice::edge_vertex_order(int a, int b) const {
  const Point &A = surf.corners[a], &B = surf.corners[b];
  std::vector<int> out;
  for (int t = 1; t < n; ++t) {
    Point p{6 * ((n - t) * A.x + t * B.x), 6 * ((n - t) * A.y + t * B.y)};
    out.push_back(id_of.at(p));
  }
  return out;
}

namespace {

bool is_face_corner(const std::array<int, 3>& b, int n) {
  return b == std::array<int, 3>{n, 0, 0} || b == std::array<int, 3>{0, n, 0} ||
         b == std::array<int, 3>{0, 0, n};
}

// small edges of the n-triangulation of one face, oriented along the stored
// cyclic corner order; item = (from, to, parallel side index)
struct SmallEdge {
  std::array<int, 3> from, to;
  int side;
};

std::vector<SmallEdge> face_small_edges(int n) {
  std::vector<SmallEdge> out;
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j <= n - i; ++j) out.push_back({{i, j, n - i - j}, {i - 1, j + 1, n - i - j}, 0});
  for (int j = 1; j <= n; ++j)
    for (int i = 0; i <= n - j; ++i) out.push_back({{i, j, n - i - j}, {i, j - 1, n - i - j + 1}, 1});
  for (int k = 1; k <= n; ++k)
    for (int i = 0; i <= n - k; ++i) out.push_back({{i, n - i - k, k}, {i + 1, n - i - k, k - 1}, 2});
  return out;
}

bool bary_on_side(const std::array<int, 3>& b, int side) {
  // side 0 = corners {0,1}: k == 0; side 1 = {1,2}: i == 0; side 2 = {2,0}: j == 0
  return side == 0 ? b[2] == 0 : side == 1 ? b[0] == 0 : b[1] == 0;
}

}  // namespace

Lattice build_lattice(const TriSurface& s, int n) {
  if (!s.triangulated) throw std::invalid_argument("build_lattice: surface is not triangulated");
  if (n < 2) throw std::invalid_argument("build_lattice: n must be >= 2");
  Lattice lat;
  lat.surf = s;
  lat.n = n;
  for (int fi = 0; fi < static_cast<int>(s.faces.size()); ++fi) {
    std::map<std::array<int, 3>, int> fv;
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n - i; ++j) {
        int k = n - i - j;
        std::array<int, 3> b{i, j, k};
        if (is_face_corner(b, n)) continue;
        Point p = [&] {
          const auto& f = s.faces[fi];
          const Point &A = s.corners[f[0]], &B = s.corners[f[1]], &C = s.corners[f[2]];
          return Point{6 * (i * A.x + j * B.x + k * C.x), 6 * (i * A.y + j * B.y + k * C.y)};
        }();
        auto it = lat.id_of.find(p);
        int vid;
        if (it == lat.id_of.end()) {
          vid = lat.nv();
          lat.id_of.emplace(p, vid);
          lat.pos.push_back(p);
        } else {
          vid = it->second;
        }
        fv[b] = vid;
      }
    lat.face_vertices.push_back(std::move(fv));
  }

  const int nv = lat.nv();
  lat.seed.names.resize(nv);
  lat.seed.is_mutable.assign(nv, true);
  lat.seed.twoQ.assign(nv, std::vector<int>(nv, 0));
  // frozen = lies on a boundary edge of the surface
  for (const auto& e : s.edges) {
    if (!e.boundary) continue;
    const Point &A = s.corners[e.a], &B = s.corners[e.b];
    Point A6{6 * n * A.x, 6 * n * A.y}, B6{6 * n * B.x, 6 * n * B.y};
    for (int v = 0; v < nv; ++v)
      if (on_segment(lat.pos[v], A6, B6)) lat.seed.is_mutable[v] = false;
  }
  for (int v = 0; v < nv; ++v)
    lat.seed.names[v] = "v" + std::to_string(v);

  // glued signed adjacency: boundary-of-face arrows carry weight 1/2 (one unit
  // of 2Q), interior arrows weight 1; half-arrow chains on glued edges cancel
  const auto edges_tpl = face_small_edges(n);
  for (int fi = 0; fi < static_cast<int>(s.faces.size()); ++fi) {
    const auto& fv = lat.face_vertices[fi];
    for (const auto& se : edges_tpl) {
      if (is_face_corner(se.from, n) || is_face_corner(se.to, n)) continue;
      int v = fv.at(se.from), w = fv.at(se.to);
      bool on_side = bary_on_side(se.from, se.side) && bary_on_side(se.to, se.side);
      int wt2 = on_side ? 1 : 2;
      lat.seed.twoQ[v][w] += wt2;
      lat.seed.twoQ[w][v] -= wt2;
    }
  }

  // H: override rows/columns within each boundary edge
  std::vector<std::vector<int>> twoH = lat.seed.twoQ;
  for (int fi = 0; fi < static_cast<int>(s.faces.size()); ++fi) {
    const auto& f = s.faces[fi];
    const auto& fv = lat.face_vertices[fi];
    for (int side = 0; side < 3; ++side) {
      int ca = f[side], cb = f[(side + 1) % 3];
      int ei = s.edge_index(ca, cb);
      if (ei < 0 || !s.edges[ei].boundary) continue;
      std::vector<int> chain;  // along the stored (arrow) direction
      for (int t = 1; t < n; ++t) {
        std::array<int, 3> b{};
        b[side] = n - t;
        b[(side + 1) % 3] = t;
        chain.push_back(fv.at(b));
      }
      for (int x : chain)
        for (int y : chain) twoH[x][y] = 0;
      for (int x : chain) twoH[x][x] = -2;
      for (size_t t = 0; t + 1 < chain.size(); ++t) twoH[chain[t]][chain[t + 1]] = 2;
    }
  }
  lat.H.assign(nv, std::vector<int>(nv, 0));
  for (int u = 0; u < nv; ++u)
    for (int v = 0; v < nv; ++v) {
      if (twoH[u][v] % 2 != 0) throw std::logic_error("H_lambda not integral");
      lat.H[u][v] = twoH[u][v] / 2;
    }
  lat.seed.check_invariants();
  return lat;
}

std::vector<std::vector<int>> flip_mutation_sequence(const Lattice& lat, int a, int b) {
  const TriSurface& s = lat.surf;
  if (a > b) std::swap(a, b);
  int ei = s.edge_index(a, b);
  if (ei < 0 || s.edges[ei].boundary) throw FlipNotAllowed("flip sequence needs an internal edge");
  auto adj = s.faces_with_edge(a, b);
  if (adj.size() != 2) throw FlipNotAllowed("edge not shared by two faces");
  int w = -1, e = -1;
  for (int c : s.faces[adj[0]])
    if (c != a && c != b) w = c;
  for (int c : s.faces[adj[1]])
    if (c != a && c != b) e = c;
  const int n = lat.n;
  // quadrilateral coordinates: x = signed distance from the line of the
  // flipped edge (W side negative), y = position along it
  std::map<int, std::pair<int, int>> coord;
  for (int t = 0; t < 2; ++t) {
    int fi = adj[t];
    int x_corner = (t == 0) ? w : e;
    int x_sign = (t == 0) ? -1 : 1;
    const auto& f = s.faces[fi];
    int iS = -1, iN = -1, iX = -1;
    for (int p = 0; p < 3; ++p) {
      if (f[p] == a) iS = p;
      else if (f[p] == b) iN = p;
      else iX = p;
    }
    (void)x_corner;
    for (const auto& [bary, vid] : lat.face_vertices[fi]) {
      int aS = bary[iS], aN = bary[iN], aX = bary[iX];
      if (!(aX == 0 || (aS > 0 && aN > 0 && aX > 0))) continue;  // on e or interior
      coord[vid] = {x_sign * aX, aN - aS};
    }
  }
  std::vector<std::vector<int>> stages;
  for (int i = 0; i <= n - 2; ++i) {
    std::vector<std::tuple<int, int, int>> st;
    for (const auto& [vid, xy] : coord) {
      int dx = std::abs(xy.first), dy = std::abs(xy.second);
      if (dx <= i && (i - dx) % 2 == 0 && dy <= n - 2 - i && (n - 2 - i - dy) % 2 == 0)
        st.emplace_back(xy.first, xy.second, vid);
    }
    std::sort(st.begin(), st.end());
    std::vector<int> ids;
    for (auto& [x, y, vid] : st) ids.push_back(vid);
    stages.push_back(std::move(ids));
  }
  return stages;
}

CutLattice cut_edge(const Lattice& lat, int a, int b) {
  const TriSurface& s = lat.surf;
  if (a > b) std::swap(a, b);
  int ei = s.edge_index(a, b);
  if (ei < 0 || s.edges[ei].boundary) throw CannotCutBoundary();
  const int nf = static_cast<int>(s.faces.size());
  // split faces into the two sides of e by adjacency not using e
  std::vector<int> side(nf, -1);
  auto adj = s.faces_with_edge(a, b);
  if (adj.size() != 2) throw CannotCutBoundary();
  for (int t = 0; t < 2; ++t) {
    std::queue<int> q;
    if (side[adj[t]] >= 0) continue;
    side[adj[t]] = t;
    q.push(adj[t]);
    while (!q.empty()) {
      int fi = q.front();
      q.pop();
      for (const auto& ed : s.edges) {
        if (ed.boundary || (ed.a == a && ed.b == b)) continue;
        auto fs = s.faces_with_edge(ed.a, ed.b);
        if (fs.size() != 2) continue;
        if (fs[0] == fi || fs[1] == fi) {
          int fj = (fs[0] == fi) ? fs[1] : fs[0];
          if (side[fj] < 0) {
            side[fj] = side[fi];
            q.push(fj);
          }
        }
      }
    }
  }
  for (int fi = 0; fi < nf; ++fi)
    if (side[fi] < 0) throw std::logic_error("cut_edge: disconnected surface");

  // piece 1 gets fresh copies of all its corners, translated to the right
  std::int64_t span = 0;
  for (const auto& p : s.corners) span = std::max(span, p.x);
  std::int64_t shift = span + 2;

  TriSurface cs;
  cs.triangulated = true;
  std::vector<std::map<int, int>> cmap(2);  // old corner -> new corner, per piece
  auto get_corner = [&](int piece, int c) {
    auto it = cmap[piece].find(c);
    if (it != cmap[piece].end()) return it->second;
    int nc = static_cast<int>(cs.corners.size());
    Point p = s.corners[c];
    if (piece == 1) p.x += shift;
    cs.corners.push_back(p);
    cs.corner_names.push_back(s.corner_names.empty() ? "c" + std::to_string(nc)
                                                     : s.corner_names[c] + (piece ? "''" : "'"));
    cmap[piece][c] = nc;
    return nc;
  };
  for (int fi = 0; fi < nf; ++fi) {
    const auto& f = s.faces[fi];
    cs.faces.push_back({get_corner(side[fi], f[0]), get_corner(side[fi], f[1]), get_corner(side[fi], f[2])});
  }
  // edges: every face side, once; the cut edge becomes boundary in both pieces
  for (int fi = 0; fi < nf; ++fi) {
    const auto& of = s.faces[fi];
    const auto& nf3 = cs.faces[fi];
    for (int sdi = 0; sdi < 3; ++sdi) {
      int oa = of[sdi], ob = of[(sdi + 1) % 3];
      int na = nf3[sdi], nb = nf3[(sdi + 1) % 3];
      if (na > nb) std::swap(na, nb);
      if (cs.edge_index(na, nb) >= 0) continue;
      int oi = s.edge_index(std::min(oa, ob), std::max(oa, ob));
      bool is_cut = (std::min(oa, ob) == a && std::max(oa, ob) == b);
      cs.edges.push_back({na, nb, s.edges[oi].boundary || is_cut});
    }
  }

  CutLattice out;
  out.cut = build_lattice(cs, lat.n);
  out.pr.assign(out.cut.nv(), -1);
  out.piece.assign(out.cut.nv(), -1);
  std::int64_t lshift = 6 * static_cast<std::int64_t>(lat.n) * shift;
  for (int v = 0; v < out.cut.nv(); ++v) {
    Point p = out.cut.pos[v];
    auto it = lat.id_of.find(p);
    if (it != lat.id_of.end()) {
      out.pr[v] = it->second;
      out.piece[v] = 0;
    } else {
      Point q{p.x - lshift, p.y};
      out.pr[v] = lat.id_of.at(q);
      out.piece[v] = 1;
    }
  }
  return out;
}

}  // namespace qtrace
