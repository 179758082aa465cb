#pragma once

#include "qtrace/torus.hpp"
#include "qtrace/trace.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qtrace {

struct NotMutableBalanced : std::runtime_error {
  explicit NotMutableBalanced(const std::string& why)
      : std::runtime_error("not mutable-balanced: " + why) {}
};

/// Exponent transport of the monomial isomorphism nu'_k into the target seed:
///   t'_k = -t_k + sum_{v != k} [Q(v,k)]_+ t_v,   t'_v = t_v otherwise,
/// with Q the exchange matrix of the seed being mapped into.
Exp nu_prime_exponent(const Exp& t, int k, const Seed& target);

/// The integer m with nu^{#omega}_k(Z^t) = Z^t F^q(X_k, m), i.e.
/// m = (1/n) sum_v Q(k,v) t_v; throws NotMutableBalanced if n does not divide.
int adjoint_multiplicity(const Exp& t, int k, const Seed& seed, int n);

/// Per-step record of a mutate-and-divide application.
struct StepCertificate {
  int vertex = -1;
  std::vector<int> m_values;     // per input term, after exponent transport
  int denominator_degree = 0;    // number of cleared binomial factors M
  bool mutable_balanced = true;  // every term exponent mutable-balanced
  bool divisible = true;
};

/// One n-th root quantum mutation nu^omega_k applied to a Laurent polynomial:
/// transport exponents by nu'_k, multiply in the F^q(X_k, m_t) factors with
/// denominators cleared across terms, and divide the cleared factors back out
/// exactly. Throws NotDivisible if the result is not a Laurent polynomial.
TorusElement mutate_polynomial(const TorusElement& P, int k, std::shared_ptr<const Seed> target,
                               int n, StepCertificate* cert = nullptr);

/// A flip of triangulations realized as a staged mutation sequence:
/// D_0 = seed(from), D_i = mu_{v_i}(D_{i-1}), D_r = seed(to) under the
/// canonical vertex identification (checked at construction).
struct FlipPlan {
  std::shared_ptr<const Lattice> from, to;
  int edge_a = 0, edge_b = 0;                     // flipped edge of `from`
  std::vector<std::vector<int>> stages;           // vertex ids of `from`
  std::vector<int> seq;                           // flattened stage order
  std::vector<std::shared_ptr<const Seed>> seeds; // D_0 .. D_r
  std::vector<int> ident;                         // `to` vertex id -> `from` vertex id

  int length() const { return static_cast<int>(seq.size()); }
};

/// Build the plan for the flip of `from` at edge {a,b}. `to` must carry the
/// flipped triangulation (any vertex numbering). A custom flattening of the
/// stages may be supplied (must respect stage boundaries).
FlipPlan make_flip_plan(std::shared_ptr<const Lattice> from, std::shared_ptr<const Lattice> to,
                        int a, int b, const std::vector<int>* custom_seq = nullptr);

/// Vertex identification between two lattices with identical vertex position
/// sets (e.g. the same triangulation built twice): id in `a` -> id in `b`.
std::vector<int> identify_by_position(const Lattice& a, const Lattice& b);

/// Theta^omega along the plan: takes an element over `to`, returns the image
/// over `from`, folding nu^omega over the sequence in reverse order.
/// Certificates for each step are appended to *steps when given; a step
/// failure rethrows with the step index in the message.
TorusElement theta_apply(const FlipPlan& plan, const TorusElement& P,
                         std::vector<StepCertificate>* steps = nullptr);

struct CaseResult {
  std::string key;
  bool pass = false;
  std::string detail;
  std::vector<StepCertificate> steps;
  bool endpoints_balanced = true;
  bool intermediate_mbl = true;
  bool star_invariant = true;
  int lhs_terms = 0, rhs_terms = 0;
};

struct VerificationReport {
  std::string what;
  int n = 0;
  bool ok = false;
  double seconds = 0.0;
  std::vector<CaseResult> cases;
};

/// Naturality on the quadrilateral: Theta(tr_{lambda'}(arc_ij)) == tr_lambda(arc_ij)
/// for all 1 <= j <= i <= n and the requested arc families (corners 0,1,2 for
/// a,b,c). `threads` <= 1 runs sequentially.
VerificationReport verify_naturality(int n, const std::vector<int>& arc_corners, int threads = 1,
                                     unsigned shuffle_seed = 0);

/// Consistency on the quadrilateral: Theta_{ll'} . Theta_{l'l} == id on all
/// corner-arc traces of lambda.
VerificationReport verify_roundtrip(int n, int threads = 1);

/// Pentagon consistency: the composite of the five flip Thetas around the
/// P5 cycle is the identity on a corner-arc trace.
VerificationReport verify_pentagon(int n);

/// Splitting compatibility on the quadrilateral for all 1 <= j <= i <= n.
VerificationReport verify_splitting(int n);

}  // namespace qtrace
