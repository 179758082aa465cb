#include "qtrace/torus.hpp"

#include <algorithm>

namespace qtrace {

TorusElement TorusElement::weyl_monomial(std::shared_ptr<const Seed> seed, const Exp& t, Laurent c) {
  TorusElement e(std::move(seed));
  if (!c.is_zero()) {
    Exp tt = t;
    tt.resize(e.seed_->size(), 0);
    e.terms_.emplace(std::move(tt), std::move(c));
  }
  return e;
}

void TorusElement::add_term(const Exp& t, const Laurent& c) {
  if (c.is_zero()) return;
  Exp tt = t;
  tt.resize(seed_->size(), 0);
  auto it = terms_.find(tt);
  if (it == terms_.end()) {
    terms_.emplace(std::move(tt), c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

long TorusElement::lam2(const Exp& t, const Exp& s) const {
  const auto& twoQ = seed_->twoQ;
  long acc = 0;
  const int nv = seed_->size();
  for (int v = 0; v < nv; ++v) {
    if (t[v] == 0) continue;
    long row = 0;
    for (int w = 0; w < nv; ++w)
      if (s[w] != 0) row += static_cast<long>(twoQ[v][w]) * s[w];
    acc += static_cast<long>(t[v]) * row;
  }
  return acc;
}

TorusElement TorusElement::operator+(const TorusElement& o) const {
  if (seed_ != o.seed_ && !(seed_ && o.seed_ && *seed_ == *o.seed_)) throw SeedMismatch();
  TorusElement r = *this;
  for (const auto& [t, c] : o.terms_) r.add_term(t, c);
  return r;
}

TorusElement TorusElement::operator-() const {
  TorusElement r(seed_);
  for (const auto& [t, c] : terms_) r.terms_.emplace(t, -c);
  return r;
}

TorusElement TorusElement::operator*(const TorusElement& o) const {
  if (seed_ != o.seed_ && !(seed_ && o.seed_ && *seed_ == *o.seed_)) throw SeedMismatch();
  TorusElement r(seed_);
  const int nv = seed_->size();
  for (const auto& [t, ct] : terms_)
    for (const auto& [s, cs] : o.terms_) {
      Exp e(nv);
      for (int v = 0; v < nv; ++v) e[v] = t[v] + s[v];
      r.add_term(e, ct * cs * Laurent::u_pow(lam2(t, s)));
    }
  return r;
}

bool TorusElement::operator==(const TorusElement& o) const { return terms_ == o.terms_; }

TorusElement TorusElement::star() const {
  TorusElement r(seed_);
  for (const auto& [t, c] : terms_) r.terms_.emplace(t, c.conj());
  return r;
}

TorusElement TorusElement::right_divide_binomial(const Exp& a, const Laurent& alpha) const {
  if (!alpha.is_unit()) throw std::invalid_argument("divisor coefficient must be a unit +-u^k");
  const int nv = seed_->size();
  int piv = -1;
  for (int v = 0; v < nv; ++v)
    if (a[v] != 0) {
      piv = v;
      break;
    }
  if (piv < 0) throw std::invalid_argument("divisor exponent must be nonzero");

  // group terms by residue class of the exponent modulo Z*a
  struct Group {
    Exp base;
    std::map<long, Laurent> coeffs;  // shift j along a -> coefficient
  };
  std::map<Exp, Group> groups;
  for (const auto& [t, c] : terms_) {
    long j = t[piv] / a[piv];
    if ((t[piv] % a[piv]) * a[piv] < 0) --j;  // floor division
    Exp base(nv);
    for (int v = 0; v < nv; ++v) base[v] = t[v] - static_cast<int>(j) * a[v];
    auto& g = groups[base];
    g.base = base;
    g.coeffs[j] = c;
  }

  TorusElement out(seed_);
  for (auto& [key, g] : groups) {
    // per-group twist: Z^{base+ja} * (alpha Z^a) = alpha u^{lam2(base,a)} Z^{base+(j+1)a}
    Laurent beta = alpha * Laurent::u_pow(lam2(g.base, a));
    long lo = g.coeffs.begin()->first;
    long hi = g.coeffs.rbegin()->first;
    if (lo == hi) throw NotDivisible("isolated term " + str_of(g.base));
    Laurent prev;  // y_{j-1}
    for (long j = lo; j < hi; ++j) {
      auto it = g.coeffs.find(j);
      Laurent cj = (it == g.coeffs.end()) ? Laurent() : it->second;
      Laurent yj = cj - beta * prev;
      if (!yj.is_zero()) {
        Exp t(nv);
        for (int v = 0; v < nv; ++v) t[v] = g.base[v] + static_cast<int>(j) * a[v];
        out.terms_.emplace(std::move(t), yj);
      }
      prev = yj;
    }
    Laurent rem = g.coeffs.rbegin()->second - beta * prev;
    if (!rem.is_zero()) throw NotDivisible("remainder " + rem.str() + " at " + str_of(g.base));
  }
  return out;
}

std::string TorusElement::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [t, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")*Z^" + str_of(t);
  }
  return s;
}

}  // namespace qtrace
