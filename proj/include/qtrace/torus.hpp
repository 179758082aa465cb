#pragma once

#include "qtrace/balance.hpp"
#include "qtrace/coeff.hpp"
#include "qtrace/quiver.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>

namespace qtrace {

struct SeedMismatch : std::runtime_error {
  SeedMismatch() : std::runtime_error("torus elements live over different seeds") {}
};

class TorusElement;

struct NotDivisible : std::runtime_error {
  explicit NotDivisible(std::string why) : std::runtime_error("not divisible: " + std::move(why)) {}
};

/// Element of the n-th root quantum torus over a seed, stored in the
/// Weyl-ordered basis: a finite sum  sum_t c_t(u) Z^t.  The product law
///   Z^t Z^s = u^{Lambda2(t,s)} Z^{t+s},   Lambda2(t,s) = sum 2Q(v,w) t_v s_w,
/// is forced by Z_v Z_w = omega^{2Q(v,w)} Z_w Z_v with u = omega^{1/2};
/// Weyl monomials are star-invariant, so star acts by conjugating
/// coefficients termwise.
class TorusElement {
 public:
  TorusElement() = default;
  explicit TorusElement(std::shared_ptr<const Seed> seed) : seed_(std::move(seed)) {}

  static TorusElement weyl_monomial(std::shared_ptr<const Seed> seed, const Exp& t,
                                    Laurent c = Laurent(1));
  static TorusElement unit(std::shared_ptr<const Seed> seed) {
    return weyl_monomial(std::move(seed), {}, Laurent(1));
  }

  const std::shared_ptr<const Seed>& seed() const { return seed_; }
  const std::map<Exp, Laurent>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int term_count() const { return static_cast<int>(terms_.size()); }

  void add_term(const Exp& t, const Laurent& c);

  TorusElement operator+(const TorusElement& o) const;
  TorusElement operator*(const TorusElement& o) const;
  TorusElement operator-() const;
  bool operator==(const TorusElement& o) const;
  bool operator!=(const TorusElement& o) const { return !(*this == o); }

  /// Ring anti-automorphism: conjugates every coefficient (u -> u^{-1}).
  TorusElement star() const;

  /// u-exponent of the commutation scalar: Z^t Z^s = u^{lam2(t,s)} Z^{t+s}.
  long lam2(const Exp& t, const Exp& s) const;

  /// Exact right division by the binomial (1 + alpha Z^a), alpha a unit.
  /// Returns N' with *this == N' * (1 + alpha Z^a); throws NotDivisible with
  /// the offending remainder description otherwise.
  TorusElement right_divide_binomial(const Exp& a, const Laurent& alpha) const;

  std::string str() const;

 private:
  std::shared_ptr<const Seed> seed_;
  std::map<Exp, Laurent> terms_;
};

}  // namespace qtrace
