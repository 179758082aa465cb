#pragma once

#include "qtrace/surface.hpp"

#include <array>
#include <optional>
#include <vector>

namespace qtrace {

/// Exponent vectors are dense integer vectors indexed by lattice vertex id.
using Exp = std::vector<int>;

inline std::string str_of(const Exp& t) {
  std::string s = "[";
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t[i]);
  }
  return s + "]";
}

/// Per-face witness of balancedness: k == a*k1 + b*k2 + c*k3 (mod n) on the
/// face, with (a,b,c) the barycentric coordinate functions' multipliers.
struct BalanceWitness {
  std::vector<std::array<int, 3>> per_face;
};

/// Membership in the balanced lattice B_lambda: on every face the pullback of
/// k lies mod n in the span of the coordinate functions k1, k2, k3. Decided
/// by brute force over (Z/n)^3 per face; this is the authoritative test.
bool is_balanced(const Lattice& lat, const Exp& k, BalanceWitness* witness = nullptr);

/// Necessary condition for balancedness: k * H_lambda == 0 mod n.
bool is_balanced_via_H(const Lattice& lat, const Exp& k);

/// Mutable-balanced test for a seed: sum_v Q(u,v) t_v == 0 mod n at every
/// mutable vertex u.
bool is_mutable_balanced(const Seed& seed, int n, const Exp& t);

}  // namespace qtrace
