#include "qtrace/mutation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <thread>

namespace qtrace {

Exp nu_prime_exponent(const Exp& t, int k, const Seed& target) {
  if (k < 0 || k >= target.size() || !target.is_mutable[k]) throw MutationAtFrozenVertex(k);
  Exp r = t;
  long s = -static_cast<long>(t[k]);
  for (int v = 0; v < target.size(); ++v) {
    if (v == k) continue;
    int q2 = target.twoQ[v][k];
    if (q2 > 0) s += static_cast<long>(q2 / 2) * t[v];
  }
  r[k] = static_cast<int>(s);
  return r;
}

int adjoint_multiplicity(const Exp& t, int k, const Seed& seed, int n) {
  long s = 0;
  for (int v = 0; v < seed.size(); ++v) s += static_cast<long>(seed.twoQ[k][v]) * t[v];
  if (s % (2 * n) != 0)
    throw NotMutableBalanced("sum Q(k,v) t_v = " + std::to_string(s) + "/2 not divisible by n at vertex " +
                             std::to_string(k));
  return static_cast<int>(s / (2 * n));
}

TorusElement mutate_polynomial(const TorusElement& P, int k, std::shared_ptr<const Seed> target,
                               int n, StepCertificate* cert) {
  const Seed& tg = *target;
  const int nv = tg.size();
  const long q_exp = 2L * n * n;  // q = u^{2n^2}
  if (cert) {
    cert->vertex = k;
    cert->m_values.clear();
    cert->mutable_balanced = true;
    cert->divisible = true;
  }
  struct Term {
    Exp t;
    Laurent c;
    int m;
  };
  std::vector<Term> terms;
  int Mneg = 0;
  for (const auto& [t, c] : P.terms()) {
    Exp t2 = nu_prime_exponent(t, k, tg);
    int m = adjoint_multiplicity(t2, k, tg, n);  // throws NotMutableBalanced
    if (cert) cert->m_values.push_back(m);
    Mneg = std::max(Mneg, -m);
    terms.push_back({std::move(t2), c, m});
  }
  const int M = Mneg;
  if (cert) cert->denominator_degree = M;

  Exp xk(nv, 0);
  xk[k] = n;
  TorusElement unit_el = TorusElement::unit(target);
  auto binom = [&](long uexp) {
    // 1 + u^{uexp} X_k
    TorusElement b = unit_el;
    b.add_term(xk, Laurent::u_pow(uexp));
    return b;
  };

  TorusElement N(target);
  for (const auto& term : terms) {
    TorusElement e = TorusElement::weyl_monomial(target, term.t, term.c);
    if (term.m >= 0) {
      for (int r = 1; r <= term.m; ++r) e = e * binom(q_exp * (2 * r - 1));
      for (int r = 1; r <= M; ++r) e = e * binom(-q_exp * (2 * r - 1));
    } else {
      for (int r = -term.m + 1; r <= M; ++r) e = e * binom(-q_exp * (2 * r - 1));
    }
    N = N + e;
  }
  try {
    for (int r = 1; r <= M; ++r)
      N = N.right_divide_binomial(xk, Laurent::u_pow(-q_exp * (2 * r - 1)));
  } catch (const NotDivisible&) {
    if (cert) cert->divisible = false;
    throw;
  }
  return N;
}

std::vector<int> identify_by_position(const Lattice& a, const Lattice& b) {
  std::vector<int> m(a.nv(), -1);
  for (int v = 0; v < a.nv(); ++v) m[v] = b.id_of.at(a.pos[v]);
  return m;
}

FlipPlan make_flip_plan(std::shared_ptr<const Lattice> from, std::shared_ptr<const Lattice> to,
                        int a, int b, const std::vector<int>* custom_seq) {
  if (a > b) std::swap(a, b);
  FlipPlan plan;
  plan.from = from;
  plan.to = to;
  plan.edge_a = a;
  plan.edge_b = b;
  plan.stages = flip_mutation_sequence(*from, a, b);
  for (const auto& st : plan.stages)
    for (int v : st) plan.seq.push_back(v);
  if (custom_seq) {
    // must be a permutation respecting stage boundaries
    size_t off = 0;
    for (const auto& st : plan.stages) {
      std::vector<int> got(custom_seq->begin() + off, custom_seq->begin() + off + st.size());
      std::vector<int> want = st;
      std::sort(got.begin(), got.end());
      std::sort(want.begin(), want.end());
      if (got != want) throw std::invalid_argument("custom sequence does not respect stages");
      off += st.size();
    }
    plan.seq = *custom_seq;
  }
  const int n = from->n;
  const int r_expect = (n * n * n - n) / 6;
  if (static_cast<int>(plan.seq.size()) != r_expect)
    throw std::logic_error("flip sequence length != (n^3-n)/6");

  plan.seeds.push_back(std::make_shared<Seed>(from->seed));
  for (int k : plan.seq)
    plan.seeds.push_back(std::make_shared<Seed>(mutate_seed(*plan.seeds.back(), k)));

  // canonical identification to-id -> from-id: vertices inside the flip
  // quadrilateral are matched through abstract diamond coordinates, the rest
  // by surface position
  const TriSurface& fs = from->surf;
  auto adj = fs.faces_with_edge(a, b);
  int w = -1, e = -1;
  for (int c : fs.faces[adj[0]])
    if (c != a && c != b) w = c;
  for (int c : fs.faces[adj[1]])
    if (c != a && c != b) e = c;

  auto diamond = [&](const Lattice& lat, int Sa, int Sb, int Wa, int Ea) {
    // vertices of the two faces at edge {Sa,Sb} -> abstract coords
    std::map<std::pair<int, int>, int> out;
    for (int fi = 0; fi < static_cast<int>(lat.surf.faces.size()); ++fi) {
      const auto& f = lat.surf.faces[fi];
      bool hs = (f[0] == Sa || f[1] == Sa || f[2] == Sa);
      bool hn = (f[0] == Sb || f[1] == Sb || f[2] == Sb);
      if (!hs || !hn) continue;
      int iS = -1, iN = -1, iX = -1;
      for (int p = 0; p < 3; ++p) {
        if (f[p] == Sa) iS = p;
        else if (f[p] == Sb) iN = p;
        else iX = p;
      }
      int X = f[iX];
      for (const auto& [bary, vid] : lat.face_vertices[fi]) {
        int aS = bary[iS], aN = bary[iN], aX = bary[iX];
        if (!(aX == 0 || (aS > 0 && aN > 0 && aX > 0))) continue;
        // abstract square: Sa->(0,-1), Sb->(0,1), Wa->(-1,0), Ea->(1,0)
        int x = 0, y = 0;
        y += aN - aS;
        if (X == Wa) x -= aX;
        else if (X == Ea) x += aX;
        else throw std::logic_error("flip quadrilateral corner mismatch");
        out[{x, y}] = vid;
      }
    }
    return out;
  };
  auto from_quad = diamond(*from, a, b, w, e);
  // `to` carries the flipped edge {w,e}; its quadrilateral faces have third
  // corner a or b, mapped to the S/N slots of the same abstract square
  auto to_quad = [&] {
    std::map<std::pair<int, int>, int> out;
    for (int fi = 0; fi < static_cast<int>(to->surf.faces.size()); ++fi) {
      const auto& f = to->surf.faces[fi];
      // corners of `to` correspond to corners of `from` by position
      auto cid = [&](int c) {
        for (int oc = 0; oc < static_cast<int>(fs.corners.size()); ++oc)
          if (fs.corners[oc] == to->surf.corners[c]) return oc;
        return -1;
      };
      int c0 = cid(f[0]), c1 = cid(f[1]), c2 = cid(f[2]);
      int iW = -1, iE = -1, iX = -1;
      std::array<int, 3> cc{c0, c1, c2};
      for (int p = 0; p < 3; ++p) {
        if (cc[p] == w) iW = p;
        else if (cc[p] == e) iE = p;
        else iX = p;
      }
      if (iW < 0 || iE < 0) continue;
      for (const auto& [bary, vid] : to->face_vertices[fi]) {
        int aW = bary[iW], aE = bary[iE], aX = bary[iX];
        if (!(aX == 0 || (aW > 0 && aE > 0 && aX > 0))) continue;
        int x = aE - aW;
        int y = (cc[iX] == b) ? aX : -aX;
        out[{x, y}] = vid;
      }
    }
    return out;
  }();
  std::vector<int> quad_from_of_to(to->nv(), -1);
  for (const auto& [xy, vid] : to_quad) quad_from_of_to[vid] = from_quad.at(xy);
  plan.ident.assign(to->nv(), -1);
  for (int v = 0; v < to->nv(); ++v) {
    if (quad_from_of_to[v] >= 0) plan.ident[v] = quad_from_of_to[v];
    else plan.ident[v] = from->id_of.at(to->pos[v]);
  }

  // D_r must equal the seed built directly from the flipped triangulation
  const Seed& Dr = *plan.seeds.back();
  for (int u = 0; u < to->nv(); ++u) {
    if (to->seed.is_mutable[u] != Dr.is_mutable[plan.ident[u]])
      throw std::logic_error("flip plan: vertex roles differ at D_r");
    for (int v = 0; v < to->nv(); ++v)
      if (to->seed.twoQ[u][v] != Dr.twoQ[plan.ident[u]][plan.ident[v]])
        throw std::logic_error("flip plan: D_r != seed of flipped triangulation");
  }
  return plan;
}

TorusElement theta_apply(const FlipPlan& plan, const TorusElement& P,
                         std::vector<StepCertificate>* steps) {
  // transport exponents through the identification into D_r
  TorusElement cur(plan.seeds.back());
  const int nv = plan.from->nv();
  for (const auto& [t, c] : P.terms()) {
    Exp tt(nv, 0);
    for (int v = 0; v < static_cast<int>(t.size()); ++v) tt[plan.ident[v]] = t[v];
    cur.add_term(tt, c);
  }
  for (int step = plan.length(); step >= 1; --step) {
    StepCertificate cert;
    try {
      cur = mutate_polynomial(cur, plan.seq[step - 1], plan.seeds[step - 1], plan.from->n, &cert);
    } catch (const NotDivisible& ex) {
      if (steps) steps->push_back(cert);
      throw NotDivisible(std::string(ex.what()) + " (at step " + std::to_string(step) + ")");
    } catch (const NotMutableBalanced& ex) {
      if (steps) steps->push_back(cert);
      throw NotMutableBalanced(std::string(ex.what()) + " (at step " + std::to_string(step) + ")");
    }
    if (steps) steps->push_back(cert);
  }
  return cur;
}

namespace {

struct P4Setup {
  std::shared_ptr<Lattice> lam, lamp;
  std::shared_ptr<const Seed> seed_lam, seed_lamp;
  FlipPlan plan;  // flip of lam at {1,3} onto lamp {0,2}
};

P4Setup p4_setup(int n, const std::vector<int>* custom_seq = nullptr) {
  P4Setup s;
  TriSurface p4 = build_polygon(4);
  s.lam = std::make_shared<Lattice>(build_lattice(triangulate_polygon(p4, {{1, 3}}), n));
  s.lamp = std::make_shared<Lattice>(build_lattice(triangulate_polygon(p4, {{0, 2}}), n));
  s.seed_lam = std::make_shared<Seed>(s.lam->seed);
  s.seed_lamp = std::make_shared<Seed>(s.lamp->seed);
  s.plan = make_flip_plan(s.lam, s.lamp, 1, 3, custom_seq);
  return s;
}

void run_cases_parallel(std::vector<std::function<CaseResult()>>& jobs,
                        std::vector<CaseResult>& out, int threads) {
  out.resize(jobs.size());
  if (threads <= 1) {
    for (size_t i = 0; i < jobs.size(); ++i) out[i] = jobs[i]();
    return;
  }
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      out[i] = jobs[i]();
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

CaseResult naturality_case(const P4Setup& s, int corner, int i, int j) {
  CaseResult res;
  res.key = "arc" + std::string(1, static_cast<char>('a' + corner)) + "_" + std::to_string(i) + "_" +
            std::to_string(j);
  try {
    auto ctx_lam = make_trace_context(*s.lam, s.seed_lam, corner);
    auto ctx_lamp = make_trace_context(*s.lamp, s.seed_lamp, corner);
    TorusElement want = corner_arc_trace(ctx_lam, i, j);
    TorusElement input = corner_arc_trace(ctx_lamp, i, j);
    res.rhs_terms = input.term_count();
    res.lhs_terms = want.term_count();
    for (const auto& [t, c] : want.terms())
      if (!is_balanced(*s.lam, t)) res.endpoints_balanced = false;
    for (const auto& [t, c] : input.terms())
      if (!is_balanced(*s.lamp, t)) res.endpoints_balanced = false;
    TorusElement got = theta_apply(s.plan, input, &res.steps);
    for (const auto& cert : res.steps)
      if (!cert.mutable_balanced) res.intermediate_mbl = false;
    res.star_invariant = (got.star() == got);
    res.pass = (got == want) && res.endpoints_balanced && res.intermediate_mbl && res.star_invariant;
    if (got != want) res.detail = "theta image differs: got " + got.str() + ", want " + want.str();
  } catch (const std::exception& ex) {
    res.pass = false;
    res.detail = ex.what();
  }
  return res;
}

}  // namespace

VerificationReport verify_naturality(int n, const std::vector<int>& arc_corners, int threads,
                                     unsigned shuffle_seed) {
  auto t0 = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.what = "naturality";
  rep.n = n;
  std::vector<int> seq;
  const std::vector<int>* custom = nullptr;
  P4Setup s = p4_setup(n);
  if (shuffle_seed != 0) {
    // deterministic in-stage shuffle
    std::vector<int> shuffled;
    unsigned state = shuffle_seed;
    auto rnd = [&state](int m) {
      state = state * 1664525u + 1013904223u;
      return static_cast<int>((state >> 16) % static_cast<unsigned>(m));
    };
    for (auto st : s.plan.stages) {
      for (int t = static_cast<int>(st.size()) - 1; t > 0; --t) std::swap(st[t], st[rnd(t + 1)]);
      shuffled.insert(shuffled.end(), st.begin(), st.end());
    }
    seq = shuffled;
    custom = &seq;
    s = p4_setup(n, custom);
  }
  std::vector<std::function<CaseResult()>> jobs;
  for (int corner : arc_corners)
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= i; ++j)
        jobs.push_back([&s, corner, i, j] { return naturality_case(s, corner, i, j); });
  run_cases_parallel(jobs, rep.cases, threads);
  rep.ok = true;
  for (const auto& c : rep.cases) rep.ok = rep.ok && c.pass;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

VerificationReport verify_roundtrip(int n, int threads) {
  auto t0 = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.what = "roundtrip";
  rep.n = n;
  P4Setup s = p4_setup(n);
  // plan back: flip lamp at {0,2}; its flipped lattice equals lam up to ids
  auto lam2 = std::make_shared<Lattice>(build_lattice(flip(s.lamp->surf, 0, 2), n));
  FlipPlan back = make_flip_plan(s.lamp, lam2, 0, 2);
  auto to2 = identify_by_position(*s.lam, *lam2);
  auto seed2 = std::make_shared<Seed>(lam2->seed);

  std::vector<std::function<CaseResult()>> jobs;
  for (int corner = 0; corner < 3; ++corner)
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= i; ++j)
        jobs.push_back([&, corner, i, j] {
          CaseResult res;
          res.key = "rt_arc" + std::string(1, static_cast<char>('a' + corner)) + "_" +
                    std::to_string(i) + "_" + std::to_string(j);
          try {
            auto ctx = make_trace_context(*s.lam, s.seed_lam, corner);
            TorusElement tr = corner_arc_trace(ctx, i, j);
            // relabel tr over lam2's ids, pull back to lamp, then to lam
            TorusElement tr2(seed2);
            for (const auto& [t, c] : tr.terms()) {
              Exp tt(lam2->nv(), 0);
              for (int v = 0; v < s.lam->nv(); ++v) tt[to2[v]] = t[v];
              tr2.add_term(tt, c);
            }
            TorusElement mid = theta_apply(back, tr2, &res.steps);
            TorusElement got = theta_apply(s.plan, mid, &res.steps);
            res.pass = (got == tr);
            if (!res.pass) res.detail = "roundtrip differs";
          } catch (const std::exception& ex) {
            res.pass = false;
            res.detail = ex.what();
          }
          return res;
        });
  run_cases_parallel(jobs, rep.cases, threads);
  rep.ok = true;
  for (const auto& c : rep.cases) rep.ok = rep.ok && c.pass;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

VerificationReport verify_pentagon(int n) {
  auto t0 = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.what = "pentagon";
  rep.n = n;
  TriSurface p5 = build_polygon(5);
  // the pentagon cycle of flips: {02,03} -> {02,24} -> {14,24} -> {13,14} -> {03,13} -> {02,03}
  const std::vector<std::pair<int, int>> flip_at = {{0, 3}, {0, 2}, {2, 4}, {1, 4}, {1, 3}};
  std::vector<std::shared_ptr<Lattice>> lats;
  lats.push_back(std::make_shared<Lattice>(
      build_lattice(triangulate_polygon(p5, {{0, 2}, {0, 3}}), n)));
  for (int t = 0; t < 5; ++t)
    lats.push_back(std::make_shared<Lattice>(
        build_lattice(flip(lats.back()->surf, flip_at[t].first, flip_at[t].second), n)));
  std::vector<FlipPlan> plans;
  for (int t = 0; t < 5; ++t)
    plans.push_back(make_flip_plan(lats[t], lats[t + 1], flip_at[t].first, flip_at[t].second));

  CaseResult res;
  res.key = "pentagon_arc_a_2_1";
  try {
    auto seed0 = std::make_shared<Seed>(lats[0]->seed);
    auto ctx = make_trace_context(*lats[0], seed0, 0);
    TorusElement P0 = corner_arc_trace(ctx, std::min(2, n), 1);
    auto ident5 = identify_by_position(*lats[0], *lats[5]);
    auto seed5 = std::make_shared<Seed>(lats[5]->seed);
    TorusElement cur(seed5);
    for (const auto& [t, c] : P0.terms()) {
      Exp tt(lats[5]->nv(), 0);
      for (int v = 0; v < lats[0]->nv(); ++v) tt[ident5[v]] = t[v];
      cur.add_term(tt, c);
    }
    for (int t = 4; t >= 0; --t) cur = theta_apply(plans[t], cur, &res.steps);
    res.pass = (cur == P0);
    if (!res.pass) res.detail = "pentagon composite is not the identity";
  } catch (const std::exception& ex) {
    res.pass = false;
    res.detail = ex.what();
  }
  rep.cases.push_back(std::move(res));
  rep.ok = rep.cases[0].pass;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

VerificationReport verify_splitting(int n) {
  auto t0 = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.what = "splitting";
  rep.n = n;
  TriSurface p4 = build_polygon(4);
  Lattice lamp = build_lattice(triangulate_polygon(p4, {{0, 2}}), n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= i; ++j) {
      CaseResult res;
      res.key = "split_a_" + std::to_string(i) + "_" + std::to_string(j);
      try {
        std::string why;
        res.pass = check_split_compatibility(lamp, 0, 2, 0, i, j, &why);
        res.detail = why;
      } catch (const std::exception& ex) {
        res.pass = false;
        res.detail = ex.what();
      }
      rep.cases.push_back(std::move(res));
    }
  rep.ok = true;
  for (const auto& c : rep.cases) rep.ok = rep.ok && c.pass;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace qtrace
