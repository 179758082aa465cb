#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qtrace {

using BigInt = boost::multiprecision::cpp_int;

/// Exact Laurent polynomial in the formal variable u = omega^{1/2}, with
/// arbitrary-precision integer coefficients. Every quantum scalar in the
/// engine (omega^{2Q}, q^{2r-1}, omega^{m/2}, ...) is an integer power of u;
/// for the n-th root torus, q = u^{2n^2}.
///
/// Invariants: no zero coefficients are stored; equality is termwise.
class Laurent {
 public:
  Laurent() = default;
  Laurent(long c) {  // NOLINT: implicit by design, mirrors integer literals
    if (c != 0) terms_[0] = c;
  }
  explicit Laurent(BigInt c) {
    if (c != 0) terms_[0] = std::move(c);
  }

  /// c * u^k
  static Laurent monomial(long k, BigInt c = 1) {
    Laurent r;
    if (c != 0) r.terms_[k] = std::move(c);
    return r;
  }
  static Laurent u_pow(long k) { return monomial(k); }

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const { return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1; }

  /// True iff of the form +-u^k, the only invertible elements of Z[u^{+-1}].
  bool is_unit() const {
    if (terms_.size() != 1) return false;
    const BigInt& c = terms_.begin()->second;
    return c == 1 || c == -1;
  }

  /// Inverse of a unit +-u^k; throws std::domain_error otherwise.
  Laurent unit_inverse() const {
    if (!is_unit()) throw std::domain_error("Laurent::unit_inverse: not a unit");
    return monomial(-terms_.begin()->first, terms_.begin()->second);
  }

  Laurent& operator+=(const Laurent& o) {
    for (const auto& [e, c] : o.terms_) {
      auto it = terms_.find(e);
      if (it == terms_.end()) {
        terms_.emplace(e, c);
      } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
      }
    }
    return *this;
  }
  Laurent& operator-=(const Laurent& o) { return *this += -o; }

  Laurent operator-() const {
    Laurent r;
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
  }

  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }

  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (const auto& [e1, c1] : a.terms_)
      for (const auto& [e2, c2] : b.terms_) {
        long e = e1 + e2;
        auto it = r.terms_.find(e);
        if (it == r.terms_.end()) {
          BigInt c = c1 * c2;
          if (c != 0) r.terms_.emplace(e, std::move(c));
        } else {
          it->second += c1 * c2;
          if (it->second == 0) r.terms_.erase(it);
        }
      }
    return r;
  }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

  bool operator==(const Laurent& o) const { return terms_ == o.terms_; }
  bool operator!=(const Laurent& o) const { return !(*this == o); }

  /// Star conjugation u -> u^{-1}, termwise.
  Laurent conj() const {
    Laurent r;
    for (const auto& [e, c] : terms_) r.terms_[-e] = c;
    return r;
  }

  const std::map<long, BigInt>& terms() const { return terms_; }

  /// Human readable, e.g. "u^-2 + 3 - u^4".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
      std::string cs = c.str();
      if (!s.empty()) {
        if (cs[0] == '-') {
          s += " - ";
          cs = cs.substr(1);
        } else {
          s += " + ";
        }
      }
      if (e == 0) {
        s += cs;
      } else {
        if (cs == "1") cs.clear();
        else if (cs == "-1") cs = "-";
        s += cs + "u^" + std::to_string(e);
      }
    }
    return s;
  }

 private:
  std::map<long, BigInt> terms_;
};

}  // namespace qtrace
