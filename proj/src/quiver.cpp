#include "qtrace/quiver.hpp"

#include <cstdlib>

namespace qtrace {

Seed mutate_seed(const Seed& s, int k) {
  if (k < 0 || k >= s.size() || !s.is_mutable[k]) throw MutationAtFrozenVertex(k);
  Seed r = s;
  const int n = s.size();
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == k || v == k) {
        r.twoQ[u][v] = -s.twoQ[u][v];
      } else {
        // On 2Q the correction term is (2Q(u,k)|2Q(k,v)| + |2Q(u,k)|2Q(k,v))/4;
        // both factors are even since k is mutable, so this is exact.
        int c = s.twoQ[u][k] * std::abs(s.twoQ[k][v]) + std::abs(s.twoQ[u][k]) * s.twoQ[k][v];
        r.twoQ[u][v] = s.twoQ[u][v] + c / 4;
      }
    }
  }
  return r;
}

}  // namespace qtrace
