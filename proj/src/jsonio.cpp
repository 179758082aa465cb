#include "qtrace/jsonio.hpp"

#include <sstream>

namespace qtrace {

json laurent_to_json(const Laurent& c) {
  json out = json::array();
  for (const auto& [e, v] : c.terms()) out.push_back(json::array({e, v.str()}));
  return out;
}

Laurent laurent_from_json(const json& j) {
  Laurent c;
  for (const auto& pair : j) {
    long e = pair.at(0).get<long>();
    BigInt v(pair.at(1).get<std::string>());
    c += Laurent::monomial(e, v);
  }
  return c;
}

json element_to_json(const TorusElement& e) {
  json terms = json::array();
  for (const auto& [t, c] : e.terms()) {
    json exps = json::object();
    for (size_t v = 0; v < t.size(); ++v)
      if (t[v] != 0) exps[std::to_string(v)] = t[v];
    terms.push_back({{"exponents", exps}, {"coeff", laurent_to_json(c)}});
  }
  return {{"terms", terms}};
}

TorusElement element_from_json(const json& j, std::shared_ptr<const Seed> seed) {
  TorusElement e(seed);
  for (const auto& term : j.at("terms")) {
    Exp t(seed->size(), 0);
    for (const auto& [k, v] : term.at("exponents").items()) t.at(std::stoul(k)) = v.get<int>();
    e.add_term(t, laurent_from_json(term.at("coeff")));
  }
  return e;
}

json seed_to_json(const Seed& s) {
  json twoq = json::array();
  for (const auto& row : s.twoQ)
    for (int v : row) twoq.push_back(v);
  return {{"vertices", s.names},
          {"mutable", std::vector<int>(s.is_mutable.begin(), s.is_mutable.end())},
          {"twoQ", twoq}};
}

json surface_to_json(const TriSurface& s) {
  json faces = json::array(), edges = json::array(), gluing = json::array();
  for (int ei = 0; ei < static_cast<int>(s.edges.size()); ++ei)
    edges.push_back({{"id", ei}, {"boundary", s.edges[ei].boundary}});
  // face sides reference edge ids, slot order = stored corner order
  std::map<int, std::vector<std::pair<int, int>>> edge_slots;
  for (int fi = 0; fi < static_cast<int>(s.faces.size()); ++fi) {
    const auto& f = s.faces[fi];
    json sides = json::array();
    for (int sd = 0; sd < 3; ++sd) {
      int a = f[sd], b = f[(sd + 1) % 3];
      int ei = s.edge_index(std::min(a, b), std::max(a, b));
      sides.push_back(ei);
      edge_slots[ei].push_back({fi, sd});
    }
    faces.push_back({{"id", fi}, {"sides", sides}});
  }
  for (const auto& [ei, slots] : edge_slots)
    if (slots.size() == 2)
      gluing.push_back(json::array(
          {slots[0].first, slots[0].second, slots[1].first, slots[1].second}));
  return {{"faces", faces}, {"edges", edges}, {"gluing", gluing}};
}

namespace {

json step_to_json(const StepCertificate& c) {
  return {{"vertex", c.vertex},
          {"m_values", c.m_values},
          {"denominator_degree", c.denominator_degree},
          {"mutable_balanced", c.mutable_balanced},
          {"divisible", c.divisible}};
}

}  // namespace

json report_to_json(const VerificationReport& rep) {
  json cases = json::array();
  for (const auto& c : rep.cases) {
    json steps = json::array();
    for (const auto& st : c.steps) steps.push_back(step_to_json(st));
    cases.push_back({{"case", c.key},
                     {"pass", c.pass},
                     {"detail", c.detail},
                     {"endpoints_balanced", c.endpoints_balanced},
                     {"intermediate_mutable_balanced", c.intermediate_mbl},
                     {"star_invariant", c.star_invariant},
                     {"terms_lambda", c.lhs_terms},
                     {"terms_lambda_prime", c.rhs_terms},
                     {"steps", steps}});
  }
  return {{"what", rep.what}, {"n", rep.n}, {"ok", rep.ok}, {"seconds", rep.seconds}, {"cases", cases}};
}

std::string lattice_dot(const Lattice& lat) {
  std::ostringstream os;
  os << "digraph quiver {\n  node [shape=circle];\n";
  for (int v = 0; v < lat.nv(); ++v)
    os << "  v" << v << " [pos=\"" << lat.pos[v].x << "," << lat.pos[v].y << "!\""
       << (lat.seed.is_mutable[v] ? "" : ", style=filled") << "];\n";
  for (int u = 0; u < lat.nv(); ++u)
    for (int v = 0; v < lat.nv(); ++v) {
      int q2 = lat.seed.twoQ[u][v];
      if (q2 > 0)
        os << "  v" << u << " -> v" << v << " [label=\"" << (q2 % 2 ? std::to_string(q2) + "/2"
                                                                    : std::to_string(q2 / 2))
           << "\"];\n";
    }
  os << "}\n";
  return os.str();
}

std::string network_dot(const Network& net, const TraceContext* ctx) {
  std::map<int, std::string> labels;
  if (ctx) {
    for (size_t i = 0; i < ctx->alphas.size(); ++i) labels[ctx->alphas[i]] = "a" + std::to_string(i + 1);
    for (size_t j = 0; j < ctx->betas.size(); ++j) labels[ctx->betas[j]] = "b" + std::to_string(j + 1);
    const TriSurface& s = ctx->lat->surf;
    for (int ei = 0; ei < static_cast<int>(s.edges.size()); ++ei) {
      if (s.edges[ei].boundary) continue;
      auto gs = net.ports_on_edge(s.edges[ei].a, s.edges[ei].b, ctx->corner);
      for (size_t t = 0; t < gs.size(); ++t) labels[gs[t]] = "g" + std::to_string(t + 1);
    }
  }
  std::ostringstream os;
  os << "digraph network {\n";
  for (int v = 0; v < net.vertex_count(); ++v) {
    const auto& vx = net.vertex(v);
    const char* shape = vx.kind == Network::Kind::Port ? "square"
                        : vx.kind == Network::Kind::UpTri ? "triangle"
                                                          : "invtriangle";
    os << "  n" << v << " [shape=" << shape << ", pos=\"" << vx.pos.x << "," << vx.pos.y << "!\"";
    if (vx.kind == Network::Kind::Port) {
      auto it = labels.find(v);
      os << ", label=\"" << (it != labels.end() ? it->second : "p" + std::to_string(vx.big_edge))
         << "\"";
    }
    os << "];\n";
  }
  for (const auto& [a, b] : net.edges()) os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace qtrace
