#include "qtrace/balance.hpp"

namespace qtrace {

namespace {
int mod(int a, int n) {
  int r = a % n;
  return r < 0 ? r + n : r;
}
}  // namespace

bool is_balanced(const Lattice& lat, const Exp& k, BalanceWitness* witness) {
  const int n = lat.n;
  if (witness) witness->per_face.clear();
  for (const auto& fv : lat.face_vertices) {
    bool found = false;
    std::array<int, 3> w{};
    for (int a = 0; a < n && !found; ++a)
      for (int b = 0; b < n && !found; ++b)
        for (int c = 0; c < n && !found; ++c) {
          bool ok = true;
          for (const auto& [bary, vid] : fv) {
            if (mod(k[vid] - (a * bary[0] + b * bary[1] + c * bary[2]), n) != 0) {
              ok = false;
              break;
            }
          }
          if (ok) {
            found = true;
            w = {a, b, c};
          }
        }
    if (!found) return false;
    if (witness) witness->per_face.push_back(w);
  }
  return true;
}

bool is_balanced_via_H(const Lattice& lat, const Exp& k) {
  const int n = lat.n, nv = lat.nv();
  for (int u = 0; u < nv; ++u) {
    long s = 0;
    for (int v = 0; v < nv; ++v) s += static_cast<long>(k[v]) * lat.H[v][u];
    if (mod(static_cast<int>(s % n), n) != 0) return false;
  }
  return true;
}

bool is_mutable_balanced(const Seed& seed, int n, const Exp& t) {
  const int nv = seed.size();
  for (int u = 0; u < nv; ++u) {
    if (!seed.is_mutable[u]) continue;
    long s = 0;
    for (int v = 0; v < nv; ++v) s += static_cast<long>(seed.twoQ[u][v]) * t[v];
    if (s % (2 * n) != 0) return false;
  }
  return true;
}

}  // namespace qtrace
