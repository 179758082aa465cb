#include "qtrace/trace.hpp"

#include <algorithm>

namespace qtrace {

TraceContext make_trace_context(const Lattice& lat, std::shared_ptr<const Seed> seed, int corner) {
  const TriSurface& s = lat.surf;
  int k = s.polygon_k;
  if (k < 3) throw UnsupportedArc("corner arcs need a polygon surface");
  if (corner < 0 || corner >= k) throw UnsupportedArc("corner index out of range");
  TraceContext ctx;
  ctx.lat = &lat;
  ctx.seed = std::move(seed);
  ctx.corner = corner;
  ctx.src_a = corner;
  ctx.src_b = (corner + 1) % k;
  ctx.snk_a = (corner + k - 1) % k;
  ctx.snk_b = corner;
  ctx.net = std::make_shared<Network>(lat, ctx.snk_a, ctx.snk_b);
  ctx.alphas = ctx.net->ports_on_edge(ctx.src_a, ctx.src_b, corner);
  ctx.betas = ctx.net->ports_on_edge(ctx.snk_a, ctx.snk_b, corner);
  ctx.K.assign(lat.nv(), 0);
  for (int t = 0; t < lat.n; ++t) {
    auto ps = ctx.net->enumerate_paths(ctx.alphas[t], ctx.betas[t]);
    if (ps.size() != 1)
      throw std::logic_error("diagonal path set N(ii) is not a single path");
    Exp kv = ctx.net->left_exponent(ps[0], ctx.pocket());
    for (int v = 0; v < lat.nv(); ++v) ctx.K[v] += kv[v];
  }
  return ctx;
}

TorusElement corner_arc_trace(const TraceContext& ctx, int i, int j) {
  const Lattice& lat = *ctx.lat;
  const int n = lat.n;
  if (i < 1 || i > n || j < 1 || j > n) throw UnsupportedArc("state out of range");
  TorusElement tr(ctx.seed);
  for (const auto& p : ctx.net->enumerate_paths(ctx.alphas[i - 1], ctx.betas[j - 1])) {
    Exp kv = ctx.net->left_exponent(p, ctx.pocket());
    Exp t(lat.nv());
    for (int v = 0; v < lat.nv(); ++v) t[v] = n * kv[v] + ctx.K[v];
    tr.add_term(t, Laurent(1));
  }
  return tr;
}

TorusElement corner_arc_trace(const Lattice& lat, std::shared_ptr<const Seed> seed, const CornerArc& arc) {
  auto ctx = make_trace_context(lat, std::move(seed), arc.corner);
  return corner_arc_trace(ctx, arc.i, arc.j);
}

TorusElement split_element(const TorusElement& A, const CutLattice& cut,
                           std::shared_ptr<const Seed> cut_seed) {
  TorusElement r(std::move(cut_seed));
  const int ncut = cut.cut.nv();
  for (const auto& [t, c] : A.terms()) {
    Exp tt(ncut, 0);
    for (int w = 0; w < ncut; ++w) tt[w] = t[cut.pr[w]];
    r.add_term(tt, c);
  }
  return r;
}

bool check_split_compatibility(const Lattice& lat, int diag_a, int diag_b, int corner, int i, int j,
                               std::string* why) {
  const int n = lat.n;
  auto seed = std::make_shared<Seed>(lat.seed);
  auto ctx = make_trace_context(lat, seed, corner);
  TorusElement tr = corner_arc_trace(ctx, i, j);

  CutLattice cut = cut_edge(lat, diag_a, diag_b);
  auto cut_seed = std::make_shared<Seed>(cut.cut.seed);
  TorusElement lhs = split_element(tr, cut, cut_seed);

  // the diagonal's two copies in the cut surface bound the alpha piece
  // (containing the source side) and the beta piece (containing the sink side)
  const TriSurface& cs = cut.cut.surf;
  auto find_corner = [&](int orig, int piece) {
    for (int c = 0; c < static_cast<int>(cs.corners.size()); ++c) {
      Point want = lat.surf.corners[orig];
      if (piece == 1) {
        std::int64_t span = 0;
        for (const auto& p : lat.surf.corners) span = std::max(span, p.x);
        want.x += span + 2;
      }
      if (cs.corners[c] == want) return c;
    }
    throw std::logic_error("cut corner not found");
  };
  // which piece holds the source side? probe via a lattice vertex on it
  auto side_vertex_piece = [&](int a, int b) {
    auto order = lat.edge_vertex_order(a, b);
    int orig = order.front();
    for (int w = 0; w < cut.cut.nv(); ++w)
      if (cut.pr[w] == orig) return cut.piece[w];
    throw std::logic_error("side vertex not found in cut");
  };
  int k = lat.surf.polygon_k;
  int src_a = corner, src_b = (corner + 1) % k;
  int snk_a = (corner + k - 1) % k, snk_b = corner;
  int piece_alpha = side_vertex_piece(src_a, src_b);
  int piece_beta = side_vertex_piece(snk_a, snk_b);
  if (piece_alpha == piece_beta) throw UnsupportedArc("diagonal does not separate the arc's sides");
  if (diag_a != corner && diag_b != corner)
    throw UnsupportedArc("separating diagonal must pass through the arc's corner");

  // trace contexts on the pieces: alpha piece from the source side to the cut
  // edge, beta piece from the cut edge to the sink side; ports on the cut edge
  // are ordered from (the copies of) the shared corner
  auto corner_of = [&](int orig, int piece) { return find_corner(orig, piece); };
  int ca_a = corner_of(src_a, piece_alpha), ca_b = corner_of(src_b, piece_alpha);
  int cdx_a = corner_of(diag_a, piece_alpha), cdx_b = corner_of(diag_b, piece_alpha);
  int cb_a = corner_of(snk_a, piece_beta), cb_b = corner_of(snk_b, piece_beta);
  int cdy_a = corner_of(diag_a, piece_beta), cdy_b = corner_of(diag_b, piece_beta);
  int near_alpha = corner_of(corner, piece_alpha);
  int near_beta = corner_of(corner, piece_beta);

  Network netA(cut.cut, cdx_a, cdx_b);  // alpha piece: sink = cut edge
  Network netB(cut.cut, cb_a, cb_b);    // beta piece: sink = original sink side
  auto alphasA = netA.ports_on_edge(ca_a, ca_b, corner_of(corner, piece_alpha));
  auto gammasA = netA.ports_on_edge(cdx_a, cdx_b, near_alpha);
  auto gammasB = netB.ports_on_edge(cdy_a, cdy_b, near_beta);
  auto betasB = netB.ports_on_edge(cb_a, cb_b, corner_of(corner, piece_beta));
  Point pocketA = {6 * n * cut.cut.surf.corners[corner_of(corner, piece_alpha)].x,
                   6 * n * cut.cut.surf.corners[corner_of(corner, piece_alpha)].y};
  Point pocketB = {6 * n * cut.cut.surf.corners[corner_of(corner, piece_beta)].x,
                   6 * n * cut.cut.surf.corners[corner_of(corner, piece_beta)].y};

  auto piece_K = [&](Network& net, const std::vector<int>& srcs, const std::vector<int>& dsts,
                     Point pocket) {
    Exp K(cut.cut.nv(), 0);
    for (int t = 0; t < n; ++t) {
      auto ps = net.enumerate_paths(srcs[t], dsts[t]);
      if (ps.size() != 1) throw std::logic_error("piece N(ii) not unique");
      Exp kv = net.left_exponent(ps[0], pocket);
      for (int v = 0; v < cut.cut.nv(); ++v) K[v] += kv[v];
    }
    return K;
  };
  Exp KA = piece_K(netA, alphasA, gammasA, pocketA);
  Exp KB = piece_K(netB, gammasB, betasB, pocketB);

  auto piece_trace = [&](Network& net, int sp, int dp, const Exp& K, Point pocket) {
    TorusElement tr2(cut_seed);
    for (const auto& p : net.enumerate_paths(sp, dp)) {
      Exp kv = net.left_exponent(p, pocket);
      Exp t(cut.cut.nv());
      for (int v = 0; v < cut.cut.nv(); ++v) t[v] = n * kv[v] + K[v];
      tr2.add_term(t, Laurent(1));
    }
    return tr2;
  };

  TorusElement rhs(cut_seed);
  for (int t = 1; t <= n; ++t) {
    TorusElement trA = piece_trace(netA, alphasA[i - 1], gammasA[t - 1], KA, pocketA);
    TorusElement trB = piece_trace(netB, gammasB[t - 1], betasB[j - 1], KB, pocketB);
    rhs = rhs + trA * trB;
  }
  if (lhs == rhs) return true;
  if (why) *why = "lhs = " + lhs.str() + "\nrhs = " + rhs.str();
  return false;
}

}  // namespace qtrace
