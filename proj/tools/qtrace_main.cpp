#include "qtrace/jsonio.hpp"
#include "qtrace/mutation.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>

namespace {

using namespace qtrace;

struct SurfaceSpec {
  std::string surface = "P4";
  std::string tri = "lambda";
  std::string diagonals;   // e.g. "0-2,0-3"
  std::string file;        // JSON {"polygon": k, "diagonals": [[a,b],...]}
};

int polygon_k_of(const std::string& name) {
  if (name.size() < 2 || (name[0] != 'P' && name[0] != 'p')) return -1;
  return std::atoi(name.c_str() + 1);
}

std::vector<std::pair<int, int>> parse_diagonals(const std::string& s) {
  std::vector<std::pair<int, int>> out;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t dash = s.find('-', pos);
    size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    if (dash == std::string::npos || dash > comma) throw std::invalid_argument("bad diagonal list");
    out.push_back({std::atoi(s.substr(pos, dash - pos).c_str()),
                   std::atoi(s.substr(dash + 1, comma - dash - 1).c_str())});
    pos = comma + 1;
  }
  return out;
}

TriSurface make_surface(const SurfaceSpec& spec) {
  if (!spec.file.empty()) {
    std::ifstream f(spec.file);
    json j = json::parse(f);
    TriSurface p = build_polygon(j.at("polygon").get<int>());
    std::vector<std::pair<int, int>> diags;
    for (const auto& d : j.value("diagonals", json::array()))
      diags.push_back({d.at(0).get<int>(), d.at(1).get<int>()});
    return triangulate_polygon(p, diags);
  }
  int k = polygon_k_of(spec.surface);
  if (k < 3) throw std::invalid_argument("unknown surface " + spec.surface);
  TriSurface p = build_polygon(k);
  std::vector<std::pair<int, int>> diags;
  if (!spec.diagonals.empty()) {
    diags = parse_diagonals(spec.diagonals);
  } else if (k == 4) {
    if (spec.tri == "lambda") diags = {{1, 3}};
    else if (spec.tri == "lambda-prime" || spec.tri == "lambdap" || spec.tri == "lambda'")
      diags = {{0, 2}};
    else throw std::invalid_argument("P4 triangulations are lambda and lambda-prime");
  } else if (k == 3) {
    // nothing to do
  } else {
    // fan from corner 0 by default
    for (int c = 2; c < k - 1; ++c) diags.push_back({0, c});
  }
  return triangulate_polygon(p, diags);
}

void write_output(const json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream os(path);
    os << j.dump(2) << "\n";
  }
}

int threads_from_env(int cli_threads) {
  if (cli_threads > 0) return cli_threads;
  if (const char* env = std::getenv("QTRACE_THREADS")) {
    int t = std::atoi(env);
    if (t > 0) return t;
  }
  return 1;
}

int arc_index(const std::string& arc) {
  if (arc == "a") return 0;
  if (arc == "b") return 1;
  if (arc == "c") return 2;
  throw std::invalid_argument("arc must be one of a, b, c");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact SL_n quantum trace / quantum torus mutation workbench"};
  app.require_subcommand(1);

  SurfaceSpec spec;
  int n = 2;
  std::string json_out, dot_out, arc = "a";
  int opt_i = 1, opt_j = 1, cli_threads = 0;
  unsigned shuffle_seed = 0;

  auto add_surface_opts = [&](CLI::App* cmd, bool with_tri = true) {
    cmd->add_option("--surface", spec.surface, "builtin polygon, e.g. P3, P4, P5");
    cmd->add_option("--surface-file", spec.file, "surface JSON: {polygon, diagonals}");
    if (with_tri) {
      cmd->add_option("--tri", spec.tri, "P4 triangulation: lambda | lambda-prime");
      cmd->add_option("--diagonals", spec.diagonals, "explicit diagonals, e.g. 0-2,0-3");
    }
    cmd->add_option("--n", n, "root order n >= 2")->check(CLI::Range(2, 16));
  };

  auto* cq = app.add_subcommand("quiver", "build the n-triangulation quiver and export it");
  add_surface_opts(cq);
  cq->add_option("--json", json_out, "write seed JSON here (default stdout)");
  cq->add_option("--dot", dot_out, "write Gamma_lambda DOT file");

  auto* cp = app.add_subcommand("paths", "enumerate network paths alpha_i -> beta_j");
  add_surface_opts(cp);
  cp->add_option("--arc", arc, "arc family a|b|c (selects the corner)");
  cp->add_option("--i", opt_i, "source state");
  cp->add_option("--j", opt_j, "sink state");
  cp->add_option("--json", json_out);
  cp->add_option("--dot", dot_out, "write network DOT file");

  auto* ct = app.add_subcommand("trace", "quantum trace of a corner arc as a path sum");
  add_surface_opts(ct);
  ct->add_option("--arc", arc);
  ct->add_option("--i", opt_i);
  ct->add_option("--j", opt_j);
  ct->add_option("--json", json_out);

  auto* cth = app.add_subcommand("theta", "apply Theta along a flip plan to an element");
  std::string plan_path, input_path;
  cth->add_option("--plan", plan_path, "plan JSON: {surface, n, diagonals, flip:[a,b]}")->required();
  cth->add_option("--input", input_path, "element JSON over the flipped triangulation")->required();
  cth->add_option("--json", json_out);

  auto* cv = app.add_subcommand("verify", "run a verification suite");
  cv->require_subcommand(1);
  auto* cvn = cv->add_subcommand("naturality", "Theta . tr_lambda' == tr_lambda on P4");
  add_surface_opts(cvn, false);
  std::string arc_sel = "all";
  cvn->add_option("--arc", arc_sel, "a|b|c|all");
  cvn->add_option("--json", json_out);
  cvn->add_option("--threads", cli_threads, "parallel cases (or env QTRACE_THREADS)");
  cvn->add_option("--shuffle-seed", shuffle_seed, "re-run with shuffled stage order");
  auto* cvp = cv->add_subcommand("pentagon", "P5 pentagon cycle is the identity");
  add_surface_opts(cvp, false);
  cvp->add_option("--json", json_out);
  auto* cvr = cv->add_subcommand("roundtrip", "P4 flip-and-back is the identity");
  add_surface_opts(cvr, false);
  cvr->add_option("--json", json_out);
  cvr->add_option("--threads", cli_threads);
  auto* cvs = cv->add_subcommand("splitting", "cutting compatibility of traces on P4");
  add_surface_opts(cvs, false);
  cvs->add_option("--json", json_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cq->parsed()) {
      Lattice lat = build_lattice(make_surface(spec), n);
      json j = seed_to_json(lat.seed);
      j["surface"] = surface_to_json(lat.surf);
      write_output(j, json_out);
      if (!dot_out.empty()) std::ofstream(dot_out) << lattice_dot(lat);
      return 0;
    }
    if (cp->parsed()) {
      Lattice lat = build_lattice(make_surface(spec), n);
      auto seed = std::make_shared<Seed>(lat.seed);
      auto ctx = make_trace_context(lat, seed, arc_index(arc));
      auto paths = ctx.net->enumerate_paths(ctx.alphas[opt_i - 1], ctx.betas[opt_j - 1]);
      json jp = json::array();
      for (const auto& p : paths) {
        Exp kv = ctx.net->left_exponent(p, ctx.pocket());
        json exps = json::object();
        for (size_t v = 0; v < kv.size(); ++v)
          if (kv[v]) exps[std::to_string(v)] = kv[v];
        jp.push_back({{"vertices", p}, {"edges", p.size() - 1}, {"left_exponent", exps}});
      }
      write_output({{"count", paths.size()}, {"paths", jp}}, json_out);
      if (!dot_out.empty()) std::ofstream(dot_out) << network_dot(*ctx.net, &ctx);
      return 0;
    }
    if (ct->parsed()) {
      Lattice lat = build_lattice(make_surface(spec), n);
      auto seed = std::make_shared<Seed>(lat.seed);
      TorusElement tr = corner_arc_trace(lat, seed, CornerArc{arc_index(arc), opt_i, opt_j});
      json j = element_to_json(tr);
      json certs = json::array();
      for (const auto& [t, c] : tr.terms()) {
        BalanceWitness w;
        bool bal = is_balanced(lat, t, &w);
        json faces = json::array();
        for (auto& abc : w.per_face) faces.push_back(json::array({abc[0], abc[1], abc[2]}));
        certs.push_back({{"balanced", bal}, {"balanced_via_H", is_balanced_via_H(lat, t)},
                         {"witness", faces}});
      }
      j["balancedness"] = certs;
      write_output(j, json_out);
      return 0;
    }
    if (cth->parsed()) {
      std::ifstream pf(plan_path);
      json pj = json::parse(pf);
      SurfaceSpec ps;
      ps.surface = pj.value("surface", "P4");
      int pn = pj.value("n", 2);
      if (pj.contains("diagonals")) {
        ps.diagonals.clear();
        for (const auto& d : pj["diagonals"])
          ps.diagonals += (ps.diagonals.empty() ? "" : ",") + std::to_string(d[0].get<int>()) + "-" +
                          std::to_string(d[1].get<int>());
      }
      int fa = pj.at("flip").at(0).get<int>(), fb = pj.at("flip").at(1).get<int>();
      auto from = std::make_shared<Lattice>(build_lattice(make_surface(ps), pn));
      auto to = std::make_shared<Lattice>(build_lattice(flip(from->surf, fa, fb), pn));
      FlipPlan plan = make_flip_plan(from, to, fa, fb);
      std::ifstream inf(input_path);
      TorusElement input = element_from_json(json::parse(inf), std::make_shared<Seed>(to->seed));
      std::vector<StepCertificate> steps;
      TorusElement out = theta_apply(plan, input, &steps);
      json j = element_to_json(out);
      json js = json::array();
      for (const auto& st : steps)
        js.push_back({{"vertex", st.vertex}, {"m_values", st.m_values},
                      {"denominator_degree", st.denominator_degree}});
      j["steps"] = js;
      write_output(j, json_out);
      return 0;
    }
    VerificationReport rep;
    if (cvn->parsed()) {
      if (polygon_k_of(spec.surface) != 4 && spec.file.empty())
        throw std::invalid_argument("naturality verification runs on P4");
      std::vector<int> arcs = arc_sel == "all" ? std::vector<int>{0, 1, 2}
                                               : std::vector<int>{arc_index(arc_sel)};
      rep = verify_naturality(n, arcs, threads_from_env(cli_threads), shuffle_seed);
    } else if (cvp->parsed()) {
      rep = verify_pentagon(n);
    } else if (cvr->parsed()) {
      rep = verify_roundtrip(n, threads_from_env(cli_threads));
    } else if (cvs->parsed()) {
      rep = verify_splitting(n);
    }
    for (const auto& c : rep.cases)
      std::cout << (c.pass ? "PASS " : "FAIL ") << c.key
                << (c.detail.empty() ? "" : "  [" + c.detail + "]") << "\n";
    std::cout << (rep.ok ? "OK" : "FAILED") << " " << rep.what << " n=" << rep.n << " ("
              << rep.cases.size() << " cases, " << rep.seconds << "s)\n";
    if (!json_out.empty()) write_output(report_to_json(rep), json_out);
    return rep.ok ? 0 : 1;
  } catch (const std::exception& ex) {
    json err = {{"error", ex.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  }
}
