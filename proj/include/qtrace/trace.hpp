#pragma once

#include "qtrace/network.hpp"
#include "qtrace/torus.hpp"

#include <memory>
#include <stdexcept>

namespace qtrace {

struct UnsupportedArc : std::runtime_error {
  explicit UnsupportedArc(const std::string& why) : std::runtime_error("unsupported arc: " + why) {}
};

/// Corner arc of a polygon: runs from the side (corner, corner+1) to the side
/// (corner-1, corner) around the shared corner, with states 1 <= j <= i <= n
/// at its start and end. The family index 0,1,2 corresponds to the arcs
/// a, b, c (consecutive corners of the polygon).
struct CornerArc {
  int corner = 0;
  int i = 1, j = 1;
};

/// Shared context for the quantum traces of one arc family on one lattice:
/// the network with its source/sink ports and the normalizer exponent
/// K = sum_i k(p_i) over the unique diagonal paths.
struct TraceContext {
  const Lattice* lat = nullptr;
  std::shared_ptr<const Seed> seed;
  std::shared_ptr<Network> net;
  int src_a = 0, src_b = 0;    // source side corners
  int snk_a = 0, snk_b = 0;    // sink side corners
  int corner = 0;              // shared corner
  std::vector<int> alphas, betas;
  Exp K;

  Point pocket() const {
    const Point& c = lat->surf.corners[corner];
    return {6 * lat->n * c.x, 6 * lat->n * c.y};
  }
};

/// Networks, port labels and K for the corner-arc family at `corner`.
TraceContext make_trace_context(const Lattice& lat, std::shared_ptr<const Seed> seed, int corner);

/// Quantum trace of a corner arc as a Weyl-ordered path sum:
///   tr(arc_{ij}) = sum_{p: alpha_i -> beta_j} Z^{ n k(p) + K }.
/// Zero when i < j (no paths). Every summand exponent is balanced.
TorusElement corner_arc_trace(const TraceContext& ctx, int i, int j);
TorusElement corner_arc_trace(const Lattice& lat, std::shared_ptr<const Seed> seed, const CornerArc& arc);

/// Splitting homomorphism on torus elements for the cut along an internal
/// edge: Weyl monomials map to Weyl monomials with the exponent duplicated
/// over the two copies of each cut vertex; coefficients are unchanged.
TorusElement split_element(const TorusElement& A, const CutLattice& cut,
                           std::shared_ptr<const Seed> cut_seed);

/// Verifies S_e(tr_{lambda'}(a_ij)) == sum_t tr_alpha(a_it) * tr_beta(a_tj)
/// on the quadrilateral with the separating diagonal; on failure *why holds
/// the differing elements.
bool check_split_compatibility(const Lattice& lat, int diag_a, int diag_b, int corner, int i, int j,
                               std::string* why = nullptr);

}  // namespace qtrace
