#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qtrace {

struct MutationAtFrozenVertex : std::runtime_error {
  explicit MutationAtFrozenVertex(int k)
      : std::runtime_error("mutation requested at frozen vertex " + std::to_string(k)) {}
};

/// Cluster X-seed: ordered vertices with mutable/frozen roles and the exchange
/// matrix stored as 2Q (integer), so half-integer weights between frozen
/// vertices stay exact. 2Q is antisymmetric, and 2Q(u,v) is even whenever u or
/// v is mutable.
struct Seed {
  std::vector<std::string> names;      // vertex labels, index = vertex id
  std::vector<bool> is_mutable;
  std::vector<std::vector<int>> twoQ;  // dense, antisymmetric

  int size() const { return static_cast<int>(names.size()); }

  bool operator==(const Seed& o) const {
    return names == o.names && is_mutable == o.is_mutable && twoQ == o.twoQ;
  }

  void check_invariants() const {
    const int n = size();
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        if (twoQ[u][v] != -twoQ[v][u])
          throw std::logic_error("Seed: 2Q not antisymmetric");
        if ((is_mutable[u] || is_mutable[v]) && twoQ[u][v] % 2 != 0)
          throw std::logic_error("Seed: half-arrow at a mutable vertex");
      }
  }
};

/// Matrix mutation at a mutable vertex k:
///   Q'(u,v) = -Q(u,v)                                       if k in {u,v}
///   Q'(u,v) = Q(u,v) + (Q(u,k)|Q(k,v)| + |Q(u,k)|Q(k,v))/2  otherwise.
/// Vertex roles are unchanged. Involutive.
Seed mutate_seed(const Seed& s, int k);

}  // namespace qtrace
