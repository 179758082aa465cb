#include "qtrace/torus.hpp"

#include <doctest.h>

#include <memory>
#include <random>

using namespace qtrace;

namespace {

std::shared_ptr<const Seed> quad_seed(int n) {
  static std::map<int, std::shared_ptr<const Seed>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Lattice lat = build_lattice(triangulate_polygon(build_polygon(4), {{1, 3}}), n);
  auto s = std::make_shared<Seed>(lat.seed);
  cache[n] = s;
  return s;
}

Exp random_exp(int nv, std::mt19937& rng, int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> d(lo, hi);
  Exp t(nv);
  for (auto& v : t) v = d(rng);
  return t;
}

TorusElement random_element(const std::shared_ptr<const Seed>& s, std::mt19937& rng) {
  std::uniform_int_distribution<int> nterms(1, 3), coeffe(-4, 4);
  TorusElement e(s);
  int m = nterms(rng);
  for (int i = 0; i < m; ++i)
    e.add_term(random_exp(s->size(), rng), Laurent::monomial(coeffe(rng), 1 + (coeffe(rng) & 1)));
  return e;
}

}  // namespace

TEST_CASE("weyl monomial basics") {
  auto s = quad_seed(2);
  TorusElement one = TorusElement::unit(s);
  CHECK(one.term_count() == 1);
  std::mt19937 rng(5);
  TorusElement A = random_element(s, rng);
  CHECK(A * one == A);
  CHECK(one * A == A);
}

TEST_CASE("generator product picks up the half-integer twist") {
  // two frozen vertices joined by one half-arrow: 2Q(0,1) = 1
  auto s = std::make_shared<Seed>();
  s->names = {"v", "w"};
  s->is_mutable = {false, false};
  s->twoQ = {{0, 1}, {-1, 0}};
  TorusElement Zv = TorusElement::weyl_monomial(s, {1, 0});
  TorusElement Zw = TorusElement::weyl_monomial(s, {0, 1});
  TorusElement prod = Zv * Zw;
  REQUIRE(prod.term_count() == 1);
  CHECK(prod.terms().begin()->first == Exp{1, 1});
  CHECK(prod.terms().begin()->second == Laurent::u_pow(1));
}

TEST_CASE("commutation law") {
  auto s = quad_seed(2);
  std::mt19937 rng(17);
  for (int it = 0; it < 50; ++it) {
    Exp t = random_exp(s->size(), rng), u = random_exp(s->size(), rng);
    TorusElement Zt = TorusElement::weyl_monomial(s, t);
    TorusElement Zu = TorusElement::weyl_monomial(s, u);
    long l2 = Zt.lam2(t, u);
    CHECK(Zt * Zu == TorusElement::weyl_monomial(s, t) * Zu);
    // Z^t Z^u = u^{2 lam2} Z^u Z^t
    TorusElement lhs = Zt * Zu;
    TorusElement rhs = TorusElement::weyl_monomial(s, u, Laurent::u_pow(2 * l2)) * Zt;
    CHECK(lhs == rhs);
    // commutator scalar: Z^t Z^u Z^{-t} Z^{-u} = u^{2 lam2}
    Exp mt(t), mu(u);
    for (auto& v : mt) v = -v;
    for (auto& v : mu) v = -v;
    TorusElement comm = Zt * Zu * TorusElement::weyl_monomial(s, mt) * TorusElement::weyl_monomial(s, mu);
    REQUIRE(comm.term_count() == 1);
    CHECK(comm.terms().begin()->second == Laurent::u_pow(2 * l2));
  }
}

TEST_CASE("same-base binomials commute") {
  auto s = quad_seed(2);
  Exp a(s->size(), 0);
  a[3] = 2;
  TorusElement b1 = TorusElement::unit(s) + TorusElement::weyl_monomial(s, a, Laurent::u_pow(3));
  TorusElement b2 = TorusElement::unit(s) + TorusElement::weyl_monomial(s, a, Laurent::u_pow(-5));
  CHECK(b1 * b2 == b2 * b1);
}

TEST_CASE("associativity on random elements") {
  auto s = quad_seed(3);
  std::mt19937 rng(23);
  for (int it = 0; it < 30; ++it) {
    TorusElement A = random_element(s, rng), B = random_element(s, rng), C = random_element(s, rng);
    CHECK((A * B) * C == A * (B * C));
  }
}

TEST_CASE("star is an involutive anti-homomorphism fixing Weyl monomials") {
  auto s = quad_seed(2);
  std::mt19937 rng(31);
  Exp t = random_exp(s->size(), rng);
  TorusElement Zt = TorusElement::weyl_monomial(s, t);
  CHECK(Zt.star() == Zt);
  TorusElement scaled = TorusElement::weyl_monomial(s, t, Laurent::u_pow(1));
  CHECK(scaled.star() == TorusElement::weyl_monomial(s, t, Laurent::u_pow(-1)));
  for (int it = 0; it < 40; ++it) {
    TorusElement A = random_element(s, rng), B = random_element(s, rng);
    CHECK((A * B).star() == B.star() * A.star());
    CHECK(A.star().star() == A);
  }
}

TEST_CASE("binomial division round trips") {
  auto s = quad_seed(2);
  std::mt19937 rng(41);
  for (int it = 0; it < 60; ++it) {
    TorusElement P = random_element(s, rng);
    Exp a = random_exp(s->size(), rng, -2, 2);
    bool nonzero = false;
    for (int v : a) nonzero |= (v != 0);
    if (!nonzero) a[0] = 1;
    Laurent alpha = Laurent::monomial(it % 5 - 2, (it % 2) ? 1 : -1);
    TorusElement binom = TorusElement::unit(s) + TorusElement::weyl_monomial(s, a, alpha);
    TorusElement N = P * binom;
    CHECK(N.right_divide_binomial(a, alpha) == P);
  }
}

TEST_CASE("division failures carry the remainder") {
  auto s = quad_seed(2);
  Exp a(s->size(), 0), t(s->size(), 0), u(s->size(), 0);
  a[0] = 1;
  t[1] = 1;
  u[2] = 1;  // u not in t + Z a
  TorusElement N = TorusElement::weyl_monomial(s, t) + TorusElement::weyl_monomial(s, u);
  CHECK_THROWS_AS(N.right_divide_binomial(a, Laurent(1)), NotDivisible);
  CHECK_THROWS_AS(TorusElement::weyl_monomial(s, t).right_divide_binomial(a, Laurent(1)),
                  NotDivisible);
}

TEST_CASE("seed mismatch is rejected") {
  auto s2 = quad_seed(2), s3 = quad_seed(3);
  TorusElement A = TorusElement::unit(s2), B = TorusElement::unit(s3);
  CHECK_THROWS_AS(A * B, SeedMismatch);
}
