#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "rlab/harness.hpp"

using namespace rlab;
using json = nlohmann::ordered_json;

namespace {

void emit(const json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_text(out, j.dump(2) + "\n");
  }
}

json edges_json(const std::vector<Edge>& es) {
  json a = json::array();
  for (auto [u, v] : es) a.push_back({u, v});
  return a;
}

json attack_json(const AttackReport& a) {
  return {{"goal", a.goal},         {"delta_h", a.delta_h},   {"h_edges", a.h.m()},       {"success", a.success},
          {"presumed_dead", a.presumed_dead}, {"bound", a.bound}, {"vacuous", a.vacuous}, {"bound_met", a.bound_met},
          {"rounds", a.rounds},     {"decider", a.decider},   {"transcript_hash", a.transcript_hash}};
}

DegreeSequence read_degrees(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  DegreeSequence ds;
  for (int x; in >> x;) ds.degrees.push_back(x);
  if (!in.eof()) throw ValidationError("degree file must hold integers");
  return ds;
}

double resolve_lambda(const Graph& g, double given, bool compute, bool* verified) {
  if (compute || given < 0) {
    *verified = true;
    return lambda(g).lambda;
  }
  *verified = false;
  return given;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rlab: local resilience and Maker-Breaker experiments on random regular graphs"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  std::string out;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "master seed");
    sub->add_option("--out", out, "output file (stdout when absent)");
  };

  // generate
  auto* gen = app.add_subcommand("generate", "sample a random graph");
  std::string model = "regular", degrees_file, method_name = "auto";
  int n = 0, d = 0, d1 = 0, d2 = 0;
  double p = 0;
  gen->add_option("--model", model)->check(CLI::IsMember({"regular", "degseq", "union", "two-ham", "gnp", "strategy"}));
  gen->add_option("--n", n);
  gen->add_option("--d", d);
  gen->add_option("--d1", d1);
  gen->add_option("--d2", d2);
  gen->add_option("--p", p);
  gen->add_option("--degrees", degrees_file);
  gen->add_option("--method", method_name)->check(CLI::IsMember({"auto", "exact", "approx"}));
  common(gen);

  // spectral
  auto* spec = app.add_subcommand("spectral", "second adjacency eigenvalue");
  std::string in;
  double tol = 1e-8;
  spec->add_option("--in", in)->required();
  spec->add_option("--tol", tol);
  common(spec);

  // attack / certify
  auto* atk = app.add_subcommand("attack", "constructive deletion attack");
  std::string kind, out_h;
  int k = 1;
  atk->add_option("--kind", kind)->required()->check(CLI::IsMember({"trivial", "partition", "matching"}));
  atk->add_option("--in", in)->required();
  atk->add_option("--k", k, "connectivity target of the trivial attack");
  atk->add_option("--out-h", out_h, "edge list of the removed subgraph");
  common(atk);

  auto* cert = app.add_subcommand("certify", "deterministic resilience certificate");
  double lam_given = -1, epsilon = 0.5;
  bool compute_lambda = false;
  cert->add_option("--kind", kind)->required()->check(CLI::IsMember({"econn", "vconn", "pm"}));
  cert->add_option("--in", in)->required();
  cert->add_option("--lambda", lam_given);
  cert->add_flag("--compute-lambda", compute_lambda);
  cert->add_option("--epsilon", epsilon);
  common(cert);

  // ham / boosters
  auto* ham = app.add_subcommand("ham", "decide Hamiltonicity");
  std::string mode = "heuristic";
  ham->add_option("--in", in)->required();
  ham->add_option("--mode", mode)->check(CLI::IsMember({"exact", "heuristic"}));
  common(ham);

  auto* boost = app.add_subcommand("boosters", "booster edges of a graph");
  std::string bmode = "witnessed";
  boost->add_option("--in", in)->required();
  boost->add_option("--mode", bmode)->check(CLI::IsMember({"exact", "witnessed"}));
  common(boost);

  // resilience
  auto* res = app.add_subcommand("resilience", "estimate Hamiltonicity resilience");
  std::string property = "ham";
  int samples = 5, workers = 1, restarts = kHamRestarts;
  res->add_option("--property", property)->check(CLI::IsMember({"ham"}));
  res->add_option("--model", model)->check(CLI::IsMember({"regular", "binomial"}));
  res->add_option("--n", n)->required();
  res->add_option("--d", d);
  res->add_option("--p", p);
  res->add_option("--epsilon", epsilon);
  res->add_option("--samples", samples);
  res->add_option("--workers", workers);
  res->add_option("--restarts", restarts);
  common(res);

  // game
  auto* game = app.add_subcommand("game", "play one Maker-Breaker Hamiltonicity game");
  std::string board_file, maker = "three-phase", breaker = "random";
  std::vector<std::string> decomp;
  bool full_board = false;
  game->add_option("--board", board_file)->required();
  game->add_option("--decomp", decomp, "C1,C2,G12,G2 edge lists")->delimiter(',');
  game->add_option("--maker", maker)->check(CLI::IsMember({"three-phase", "greedy-booster"}));
  game->add_option("--breaker", breaker)->check(CLI::IsMember(breaker_names()));
  game->add_option("--d1", d1, "degree of C1+C2+G12 (default: from the parts)");
  game->add_flag("--full-board", full_board, "play until every edge is claimed");
  common(game);

  // experiment / report
  auto* exp = app.add_subcommand("experiment", "run a configured sweep");
  std::string config_file, csv_out;
  int exp_workers = 0;
  exp->add_option("--config", config_file)->required();
  exp->add_option("--workers", exp_workers);
  exp->add_option("--csv", csv_out, "per-row CSV (overrides the config)");
  auto* exp_seed = exp->add_option("--seed", seed, "overrides the config seed");
  exp->add_option("--out", out, "run record JSON (overrides the config)");

  auto* rep = app.add_subcommand("report", "summary and plot tables from a run record");
  std::string run_file, format = "csv";
  rep->add_option("--run", run_file)->required();
  rep->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  rep->add_option("--out", out, "output directory")->required();
  rep->add_option("--seed", seed, "unused; accepted for uniformity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      auto method = method_name == "exact" ? GenMethod::Exact : method_name == "approx" ? GenMethod::Approx : GenMethod::Auto;
      if (out.empty()) throw ValidationError("generate needs --out");
      json j{{"model", model}, {"seed", seed}};
      Graph g;
      auto part = [&](int i, const Graph& h) { save_graph(out + ".part" + std::to_string(i), h); };
      if (model == "regular") {
        GenInfo info;
        g = gen_regular(n, d, seed, method, &info);
        j["method"] = info.method;
        j["attempts"] = info.attempts;
      } else if (model == "degseq") {
        if (degrees_file.empty()) throw ValidationError("degseq needs --degrees");
        GenInfo info;
        g = gen_degree_sequence(read_degrees(degrees_file), seed, method, &info);
        j["method"] = info.method;
      } else if (model == "gnp") {
        g = gen_binomial(n, p, seed);
      } else if (model == "union") {
        auto u = gen_union(n, d1, d2, seed, method);
        g = u.g;
        part(1, u.g1), part(2, u.g2);
      } else if (model == "two-ham") {
        auto t = gen_two_hamilton_cycles(n, seed);
        g = t.g;
        part(1, t.c1), part(2, t.c2);
        j["attempts"] = t.attempts;
      } else {
        auto b = gen_union_strategy(n, d1, d2, seed, method);
        g = b.g;
        part(1, b.cycles.c1), part(2, b.cycles.c2), part(3, b.g12), part(4, b.g2);
      }
      save_graph(out, g);
      j["n"] = g.n();
      j["m"] = g.m();
      j["file"] = out;
      std::cout << j.dump() << "\n";
    } else if (spec->parsed()) {
      Graph g = load_graph(in);
      auto r = lambda(g, tol);
      emit({{"n", g.n()}, {"d", g.regular_degree()}, {"lambda", r.lambda}, {"lambda2", r.lambda2},
            {"lambdan", r.lambdan}, {"method", r.method}},
           out);
    } else if (atk->parsed()) {
      Graph g = load_graph(in);
      AttackReport a = kind == "trivial" ? trivial_attack(g, k)
                       : kind == "partition" ? partition_attack(g, seed)
                                             : matching_attack(g, seed);
      if (!out_h.empty()) save_graph(out_h, a.h);
      emit(attack_json(a), out);
    } else if (cert->parsed()) {
      Graph g = load_graph(in);
      bool verified = false;
      double lam = resolve_lambda(g, lam_given, compute_lambda, &verified);
      Certificate c = kind == "pm" ? matching_certificate(g, lam, verified)
                                   : conn_certificate(g, lam, kind == "econn" ? ConnKind::Edge : ConnKind::Vertex, epsilon,
                                                      verified);
      emit({{"property", c.property}, {"tolerated_delta", c.tolerated_delta}, {"lambda", c.lambda},
            {"lambda_verified", c.lambda_verified}, {"density_checked", c.density_checked}, {"valid", c.valid},
            {"conditional", c.conditional}, {"reason", c.reason}},
           out);
    } else if (ham->parsed()) {
      Graph g = load_graph(in);
      HamResult h = mode == "exact" ? is_hamiltonian_exact(g) : decide_hamiltonicity(g, kHamRestarts, seed);
      emit({{"status", to_string(h.status)}, {"cycle", h.cycle}, {"proof", h.proof}, {"nodes", h.nodes}}, out);
    } else if (boost->parsed()) {
      Graph g = load_graph(in);
      BoosterSet b = bmode == "exact" ? boosters_exact(g) : boosters_witnessed(g, true, seed);
      emit({{"mode", bmode}, {"exact", b.exact}, {"path_length", b.path_length}, {"host_hamiltonian", b.host_hamiltonian},
            {"count", b.pairs.size()}, {"boosters", edges_json(b.pairs)}},
           out);
    } else if (res->parsed()) {
      GenSpec gs{model, n, d, p};
      auto params = ResilienceParams::make(epsilon, static_cast<int>(std::lround(gs.degree())));
      auto est = estimate_resilience(gs, params, samples, seed, workers, kAllAttacks, restarts);
      json s = json::array();
      for (const auto& x : est.samples) {
        json tr = json::array();
        for (const auto& [r, reps] : x.transcript) {
          json runs = json::array();
          for (const auto& a : reps) runs.push_back(attack_json(a));
          tr.push_back({{"r", r}, {"attacks", runs}});
        }
        s.push_back({{"seed", x.seed},
                     {"attack_upper", x.attack_upper},
                     {"upper_attack", x.upper_attack},
                     {"first_kill", x.first_kill},
                     {"empirical_lower", x.empirical_lower},
                     {"certified_lower", x.certified_lower},
                     {"certified_by", x.certified_by},
                     {"lambda", x.lambda},
                     {"matching_upper", x.matching_upper},
                     {"matching_vacuous", x.matching_vacuous},
                     {"sandwich_ok", x.sandwich_ok},
                     {"transcript", tr}});
      }
      emit({{"property", property},
            {"model", model},
            {"n", n},
            {"degree", gs.degree()},
            {"epsilon", epsilon},
            {"target", est.target},
            {"attack_upper", est.attack_upper},
            {"empirical_lower", est.empirical_lower},
            {"certified_lower", est.certified_lower},
            {"survive_rate", est.survive_rate},
            {"sandwich_ok", est.sandwich_ok},
            {"samples", s}},
           out);
    } else if (game->parsed()) {
      Graph board = load_graph(board_file);
      Decomposition dec{Graph(board.n()), Graph(board.n()), Graph(board.n()), Graph(board.n())};
      if (maker == "three-phase") {
        if (decomp.size() != 4) throw ValidationError("three-phase needs --decomp C1,C2,G12,G2");
        dec = {load_graph(decomp[0]), load_graph(decomp[1]), load_graph(decomp[2]), load_graph(decomp[3])};
        dec.validate(board);
        if (d1 == 0) d1 = 4 + dec.g12.max_degree();
      }
      GameOptions opt;
      opt.early_stop = !full_board;
      auto o = play_decomposed(board, dec, d1, maker, breaker, seed, opt);
      auto j = transcript_json(o.result, maker, breaker);
      j["seed"] = seed;
      if (maker == "three-phase")
        j["budgets"] = {{"k", o.stats.k},
                        {"connectivity_moves", o.stats.conn_moves},
                        {"degree_moves", o.stats.degree_moves},
                        {"booster_moves", o.stats.booster_moves},
                        {"fallback_moves", o.stats.fallback_moves},
                        {"within_budget", o.budgets_ok}};
      emit(j, out);
    } else if (exp->parsed()) {
      auto c = load_config(config_file);
      if (exp_seed->count()) c.seed = seed, c.has_seed = true;
      if (exp_workers > 0) c.workers = exp_workers;
      if (!out.empty()) c.json = out;
      if (!csv_out.empty()) c.csv = csv_out;
      auto run = run_experiment(c);
      persist(run);
      if (c.csv.empty() && c.json.empty()) std::cout << rows_csv(run);
      for (const auto& f : run.failures) std::cerr << "errored row: " << f << "\n";
    } else if (rep->parsed()) {
      std::ifstream f(run_file);
      if (!f) throw ValidationError("cannot open " + run_file);
      nlohmann::ordered_json j;
      try {
        j = nlohmann::ordered_json::parse(f);
      } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("run record: ") + e.what());
      }
      for (const auto& path : write_report(run_from_json(j), out, format)) std::cout << path << "\n";
    }
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "runtime failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
