#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#define BOOST_BIND_GLOBAL_PLACEHOLDERS
#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/json_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <nlohmann/json.hpp>

#include "game.hpp"
#include "resilience_ham.hpp"
#include "rng.hpp"
#include "spectral.hpp"

namespace rlab {

inline constexpr const char* kCodeVersion = "rlab 0.1.0";

using Row = nlohmann::ordered_json;

// --- games on decomposed boards ------------------------------------------------------

struct GameOutcome {
  GameResult result;
  ThreePhaseMaker::Stats stats;
  bool budgets_ok = true;
  bool phase1_ok = true;
};

inline std::unique_ptr<Strategy> make_maker(const std::string& name, const Graph& board, const Decomposition& d,
                                            int d1, std::uint64_t seed) {
  if (name == "three-phase") return std::make_unique<ThreePhaseMaker>(board, d, d1, seed);
  if (name == "greedy-booster") return std::make_unique<GreedyBoosterMaker>(seed);
  throw ValidationError("unknown maker '" + name + "'");
}

/// One game on a decomposed board; budget checks apply to the three-phase maker.
inline GameOutcome play_decomposed(const Graph& board, const Decomposition& d, int d1, const std::string& maker_name,
                                   const std::string& breaker_name, std::uint64_t seed, const GameOptions& opt = {}) {
  auto maker = make_maker(maker_name, board, d, d1, derive_seed(seed, "maker"));
  auto breaker = make_breaker(breaker_name, derive_seed(seed, "breaker"));
  GameOutcome out;
  out.result = play(board, *maker, *breaker, opt, seed);
  if (auto* t = dynamic_cast<ThreePhaseMaker*>(maker.get())) {
    out.stats = t->stats();
    const long long n = board.n();
    out.budgets_ok = out.stats.conn_moves <= n && out.stats.degree_moves <= out.stats.k * n &&
                     out.stats.booster_moves <= n && out.stats.length_failures == 0;
    if (out.result.winner == Player::Maker) out.phase1_ok = t->phase1_holds(replay(board, out.result.moves));
  }
  return out;
}

// --- configuration -----------------------------------------------------------------

struct ExperimentConfig {
  std::string kind;  ///< resilience | game | spectral
  std::uint64_t seed = 0;
  bool has_seed = false;
  int samples = 1;
  int workers = 1;
  std::string model = "regular";
  std::vector<int> n, d, d1, d2;
  std::vector<double> p, eps;
  std::vector<std::string> makers{"three-phase"}, breakers;
  int restarts = kHamRestarts;
  bool full_board = false;
  std::string csv, json;

  /// Canonical form used for the config hash; worker count and output paths excluded.
  nlohmann::ordered_json canonical() const {
    nlohmann::ordered_json j;
    j["kind"] = kind;
    j["seed"] = seed;
    j["samples"] = samples;
    j["model"] = model;
    j["n"] = n;
    j["d"] = d;
    j["p"] = p;
    j["eps"] = eps;
    j["d1"] = d1;
    j["d2"] = d2;
    j["makers"] = makers;
    j["breakers"] = breakers;
    j["restarts"] = restarts;
    j["full_board"] = full_board;
    return j;
  }
  std::string hash() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical().dump())));
    return buf;
  }

  void validate() const {
    static const std::set<std::string> kinds{"resilience", "game", "spectral"};
    if (!kinds.count(kind)) throw ValidationError("unknown experiment kind '" + kind + "'");
    if (!has_seed) throw ValidationError("config needs a seed");
    if (samples < 1) throw ValidationError("samples must be at least 1");
    if (workers < 1) throw ValidationError("workers must be at least 1");
    if (n.empty()) throw ValidationError("sweep over n is empty");
    if (kind == "game") {
      if (d1.empty() || d2.empty()) throw ValidationError("game sweep needs d1 and d2");
      if (makers.empty() || breakers.empty()) throw ValidationError("game sweep needs makers and breakers");
      for (auto& b : breakers) make_breaker(b, 0);
      for (auto& m : makers)
        if (m != "three-phase" && m != "greedy-booster") throw ValidationError("unknown maker '" + m + "'");
      return;
    }
    if (model != "regular" && model != "binomial") throw ValidationError("unknown model '" + model + "'");
    if (model == "regular" && d.empty()) throw ValidationError("sweep over d is empty");
    if (model == "binomial" && p.empty()) throw ValidationError("sweep over p is empty");
    if (kind == "spectral" && model != "regular") throw ValidationError("spectral sweeps need the regular model");
    if (kind == "resilience" && eps.empty()) throw ValidationError("sweep over eps is empty");
  }
};

namespace detail {

namespace pt = boost::property_tree;

template <class T>
T parse_scalar(const std::string& s, const std::string& key) {
  std::istringstream is(boost::algorithm::trim_copy(s));
  T v{};
  if (!(is >> v) || !is.eof()) {
    if constexpr (std::is_same_v<T, std::string>) return boost::algorithm::trim_copy(s);
    throw ValidationError("bad value '" + s + "' for " + key);
  }
  return v;
}

/// A list is either a JSON array or a comma-separated string.
template <class T>
std::optional<std::vector<T>> get_list(const pt::ptree& root, const std::string& path) {
  auto node = root.get_child_optional(pt::ptree::path_type(path, '.'));
  if (!node) return std::nullopt;
  std::vector<T> out;
  if (!node->empty()) {
    for (auto& [k, child] : *node) out.push_back(parse_scalar<T>(child.data(), path));
    return out;
  }
  std::vector<std::string> parts;
  std::string data = node->data();
  if (boost::algorithm::trim_copy(data).empty()) return out;
  boost::algorithm::split(parts, data, boost::is_any_of(","));
  for (auto& s : parts) out.push_back(parse_scalar<T>(s, path));
  return out;
}

template <class T>
std::optional<T> get_one(const pt::ptree& root, const std::string& path) {
  auto v = root.get_optional<std::string>(pt::ptree::path_type(path, '.'));
  if (!v) return std::nullopt;
  return parse_scalar<T>(*v, path);
}

inline ExperimentConfig config_from_tree(const pt::ptree& t) {
  static const std::map<std::string, std::set<std::string>> known{
      {"experiment", {"kind", "seed", "samples", "workers", "restarts", "full_board"}},
      {"generator", {"model", "n", "d", "p"}},
      {"sweep", {"eps"}},
      {"game", {"d1", "d2", "makers", "breakers"}},
      {"output", {"csv", "json"}}};
  for (auto& [section, body] : t) {
    auto it = known.find(section);
    if (it == known.end()) throw ValidationError("unknown config section [" + section + "]");
    for (auto& [key, v] : body)
      if (!it->second.count(key)) throw ValidationError("unknown key '" + key + "' in [" + section + "]");
  }
  ExperimentConfig c;
  c.kind = get_one<std::string>(t, "experiment.kind").value_or("");
  if (auto s = get_one<std::uint64_t>(t, "experiment.seed")) c.seed = *s, c.has_seed = true;
  c.samples = get_one<int>(t, "experiment.samples").value_or(1);
  c.workers = get_one<int>(t, "experiment.workers").value_or(1);
  c.restarts = get_one<int>(t, "experiment.restarts").value_or(kHamRestarts);
  c.full_board = get_one<std::string>(t, "experiment.full_board").value_or("false") == "true";
  c.model = get_one<std::string>(t, "generator.model").value_or("regular");
  c.n = get_list<int>(t, "generator.n").value_or(std::vector<int>{});
  c.d = get_list<int>(t, "generator.d").value_or(std::vector<int>{});
  c.p = get_list<double>(t, "generator.p").value_or(std::vector<double>{});
  c.eps = get_list<double>(t, "sweep.eps").value_or(std::vector<double>{0.5});
  c.d1 = get_list<int>(t, "game.d1").value_or(std::vector<int>{});
  c.d2 = get_list<int>(t, "game.d2").value_or(std::vector<int>{});
  if (auto m = get_list<std::string>(t, "game.makers")) c.makers = *m;
  c.breakers = get_list<std::string>(t, "game.breakers").value_or(breaker_names());
  c.csv = get_one<std::string>(t, "output.csv").value_or("");
  c.json = get_one<std::string>(t, "output.json").value_or("");
  return c;
}

}  // namespace detail

/// `[section]` / `key = value` text; lists are comma-separated.
inline ExperimentConfig parse_config_ini(const std::string& text) {
  boost::property_tree::ptree t;
  std::istringstream is(text);
  try {
    boost::property_tree::read_ini(is, t);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  return detail::config_from_tree(t);
}

/// Same sections as objects; lists may be arrays.
inline ExperimentConfig parse_config_json(const std::string& text) {
  boost::property_tree::ptree t;
  std::istringstream is(text);
  try {
    boost::property_tree::read_json(is, t);
  } catch (const boost::property_tree::json_parser_error& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  return detail::config_from_tree(t);
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  auto text = ss.str();
  auto first = text.find_first_not_of(" \t\r\n");
  return first != std::string::npos && text[first] == '{' ? parse_config_json(text) : parse_config_ini(text);
}

// --- sweep and rows ----------------------------------------------------------------

struct SweepPoint {
  int n = 0, d = 0, d1 = 0, d2 = 0;
  double p = 0, eps = 0;
  std::string maker, breaker;
};

inline std::vector<SweepPoint> sweep_points(const ExperimentConfig& c) {
  std::vector<SweepPoint> out;
  if (c.kind == "game") {
    for (int n : c.n)
      for (int a : c.d1)
        for (int b : c.d2)
          for (auto& m : c.makers)
            for (auto& br : c.breakers) {
              SweepPoint s;
              s.n = n, s.d1 = a, s.d2 = b, s.d = a + b, s.maker = m, s.breaker = br;
              out.push_back(s);
            }
    return out;
  }
  std::vector<double> eps = c.kind == "resilience" ? c.eps : std::vector<double>{0};
  for (int n : c.n) {
    if (c.model == "binomial") {
      for (double p : c.p)
        for (double e : eps) out.push_back({n, 0, 0, 0, p, e, {}, {}});
    } else {
      for (int d : c.d)
        for (double e : eps) out.push_back({n, d, 0, 0, 0, e, {}, {}});
    }
  }
  return out;
}

inline std::vector<std::string> columns_for(const std::string& kind) {
  if (kind == "resilience")
    return {"sweep", "sample", "seed", "model", "n", "d", "p", "eps", "attack_upper", "first_kill", "empirical_lower",
            "certified_lower", "certified_by", "upper_attack", "lambda", "sandwich_ok", "error"};
  if (kind == "game")
    return {"sweep",   "sample", "seed",     "n",          "d1",           "d2",           "maker",         "breaker",
            "winner",  "reason", "moves",    "verified",   "conn_moves",   "degree_moves", "booster_moves", "budgets_ok",
            "error"};
  if (kind == "spectral") return {"sweep", "sample", "seed", "n", "d", "lambda", "ramanujan_excess", "error"};
  throw ValidationError("unknown experiment kind '" + kind + "'");
}

inline Row run_sample(const ExperimentConfig& c, const SweepPoint& pt, std::uint64_t seed) {
  Row r;
  if (c.kind == "resilience") {
    GenSpec spec{c.model, pt.n, pt.d, pt.p};
    auto params = ResilienceParams::make(pt.eps, static_cast<int>(std::lround(spec.degree())));
    auto s = resilience_sample(spec, params, seed, kAllAttacks, c.restarts);
    r["model"] = c.model, r["n"] = pt.n, r["d"] = pt.d, r["p"] = pt.p, r["eps"] = pt.eps;
    r["attack_upper"] = s.attack_upper, r["first_kill"] = s.first_kill, r["empirical_lower"] = s.empirical_lower;
    r["certified_lower"] = s.certified_lower, r["certified_by"] = s.certified_by, r["upper_attack"] = s.upper_attack;
    r["lambda"] = s.lambda, r["sandwich_ok"] = s.sandwich_ok;
  } else if (c.kind == "game") {
    auto b = gen_union_strategy(pt.n, pt.d1, pt.d2, derive_seed(seed, "board"));
    GameOptions opt;
    opt.early_stop = !c.full_board;
    opt.final_restarts = c.restarts;
    auto o = play_decomposed(b.g, Decomposition::from(b), pt.d1, pt.maker, pt.breaker, seed, opt);
    r["n"] = pt.n, r["d1"] = pt.d1, r["d2"] = pt.d2, r["maker"] = pt.maker, r["breaker"] = pt.breaker;
    r["winner"] = to_string(o.result.winner), r["reason"] = o.result.reason;
    r["moves"] = o.result.moves.size(), r["verified"] = o.result.verified;
    r["conn_moves"] = o.stats.conn_moves, r["degree_moves"] = o.stats.degree_moves;
    r["booster_moves"] = o.stats.booster_moves, r["budgets_ok"] = o.budgets_ok && o.phase1_ok;
  } else {
    Graph g = gen_regular(pt.n, pt.d, seed);
    double lam = lambda(g).lambda;
    r["n"] = pt.n, r["d"] = pt.d, r["lambda"] = lam;
    r["ramanujan_excess"] = lam - 2 * std::sqrt(std::max(0, pt.d - 1));
  }
  return r;
}

// --- running -----------------------------------------------------------------------

struct RunRecord {
  ExperimentConfig config;
  std::string config_hash;
  std::string code_version = kCodeVersion;
  std::vector<std::string> columns;
  std::vector<Row> rows;
  std::vector<std::string> failures;  ///< "sweep i sample j: message"
  std::vector<std::string> stream_labels;
  double wall_clock = 0;
};

/// Child seed for (sweep point, sample); documented so other implementations reproduce it.
inline std::uint64_t child_seed(std::uint64_t master, std::size_t sweep, int sample) {
  return derive_seed(master, static_cast<std::uint64_t>(sweep), static_cast<std::uint64_t>(sample));
}

inline RunRecord run_experiment(const ExperimentConfig& c) {
  c.validate();
  const auto t0 = std::chrono::steady_clock::now();
  RunRecord rec;
  rec.config = c;
  rec.config_hash = c.hash();
  rec.columns = columns_for(c.kind);
  rec.stream_labels = {"child = splitmix-hash(master_seed, sweep_index, sample_index)", kRngName};
  const auto points = sweep_points(c);
  const std::size_t total = points.size() * static_cast<std::size_t>(c.samples);
  rec.rows.resize(total);
  std::vector<std::string> errors(total);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < total;) {
      const std::size_t sp = i / c.samples;
      const int sample = static_cast<int>(i % c.samples);
      const auto seed = child_seed(c.seed, sp, sample);
      Row body;
      try {
        body = run_sample(c, points[sp], seed);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      } catch (...) {
        errors[i] = "unknown failure";
      }
      Row r;
      r["sweep"] = sp, r["sample"] = sample, r["seed"] = seed;
      for (auto& [k, v] : body.items()) r[k] = v;
      r["error"] = errors[i];
      rec.rows[i] = std::move(r);
    }
  };
  std::vector<std::thread> pool;
  const auto threads = std::min<std::size_t>(static_cast<std::size_t>(c.workers), std::max<std::size_t>(total, 1));
  for (std::size_t w = 1; w < threads; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < total; ++i)
    if (!errors[i].empty())
      rec.failures.push_back("sweep " + std::to_string(i / c.samples) + " sample " + std::to_string(i % c.samples) + ": " +
                             errors[i]);
  rec.wall_clock = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

// --- output ------------------------------------------------------------------------

namespace detail {

inline std::string csv_cell(const nlohmann::ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  }
  if (v.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v.get<double>());
    return buf;
  }
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

}  // namespace detail

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::ordered_json>> rows;
};

inline std::string to_csv(const Table& t) {
  std::string out = boost::algorithm::join(t.columns, ",") + "\n";
  for (const auto& r : t.rows) {
    std::vector<std::string> cells;
    for (const auto& v : r) cells.push_back(detail::csv_cell(v));
    out += boost::algorithm::join(cells, ",") + "\n";
  }
  return out;
}

inline Table rows_table(const RunRecord& run) {
  Table t{"rows", run.columns, {}};
  for (const auto& r : run.rows) {
    std::vector<nlohmann::ordered_json> cells;
    for (const auto& c : run.columns) cells.push_back(r.contains(c) ? r[c] : nlohmann::ordered_json());
    t.rows.push_back(std::move(cells));
  }
  return t;
}

inline std::string rows_csv(const RunRecord& run) { return to_csv(rows_table(run)); }

inline nlohmann::ordered_json run_json(const RunRecord& run) {
  nlohmann::ordered_json j;
  j["config_hash"] = run.config_hash;
  j["code_version"] = run.code_version;
  j["config"] = run.config.canonical();
  j["stream_labels"] = run.stream_labels;
  j["columns"] = run.columns;
  j["rows"] = run.rows;
  j["failures"] = run.failures;
  j["wall_clock_seconds"] = run.wall_clock;
  return j;
}

inline RunRecord run_from_json(const nlohmann::ordered_json& j) {
  RunRecord r;
  try {
    const auto& c = j.at("config");
    r.config.kind = c.at("kind").get<std::string>();
    r.config.seed = c.at("seed").get<std::uint64_t>();
    r.config.has_seed = true;
    r.config.samples = c.at("samples").get<int>();
    r.config.model = c.at("model").get<std::string>();
    r.config.n = c.at("n").get<std::vector<int>>();
    r.config.d = c.at("d").get<std::vector<int>>();
    r.config.p = c.at("p").get<std::vector<double>>();
    r.config.eps = c.at("eps").get<std::vector<double>>();
    r.config.d1 = c.at("d1").get<std::vector<int>>();
    r.config.d2 = c.at("d2").get<std::vector<int>>();
    r.config.makers = c.at("makers").get<std::vector<std::string>>();
    r.config.breakers = c.at("breakers").get<std::vector<std::string>>();
    r.config_hash = j.at("config_hash").get<std::string>();
    r.code_version = j.at("code_version").get<std::string>();
    r.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& row : j.at("rows")) r.rows.push_back(row);
    r.failures = j.at("failures").get<std::vector<std::string>>();
    r.wall_clock = j.value("wall_clock_seconds", 0.0);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("run record: ") + e.what());
  }
  return r;
}

namespace detail {

inline double quantile(std::vector<double> v, double q) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  double pos = q * (v.size() - 1);
  auto lo = static_cast<std::size_t>(std::floor(pos));
  auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - lo) * (v[hi] - v[lo]);
}

inline bool ok_row(const Row& r) { return r.value("error", std::string()).empty(); }

}  // namespace detail

/// Per sweep point: mean and quantiles of every numeric column.
inline Table summary_table(const RunRecord& run) {
  Table t{"summary", {"sweep", "metric", "count", "errors", "mean", "q10", "q50", "q90"}, {}};
  std::map<long long, std::vector<const Row*>> by;
  for (const auto& r : run.rows) by[r.value("sweep", 0LL)].push_back(&r);
  static const std::set<std::string> skip{"sweep", "sample", "seed"};
  for (auto& [sp, rows] : by) {
    int errors = 0;
    for (auto* r : rows) errors += !detail::ok_row(*r);
    for (const auto& col : run.columns) {
      if (skip.count(col)) continue;
      std::vector<double> vals;
      bool numeric = false;
      for (auto* r : rows) {
        if (!detail::ok_row(*r) || !r->contains(col)) continue;
        const auto& v = (*r)[col];
        if (v.is_number()) numeric = true, vals.push_back(v.get<double>());
        else if (v.is_boolean()) numeric = true, vals.push_back(v.get<bool>() ? 1.0 : 0.0);
      }
      if (!numeric) continue;
      double mean = 0;
      for (double x : vals) mean += x;
      mean /= vals.size();
      t.rows.push_back({sp, col, vals.size(), errors, mean, detail::quantile(vals, 0.1), detail::quantile(vals, 0.5),
                        detail::quantile(vals, 0.9)});
    }
  }
  return t;
}

/// Plot-ready table: resilience by d, game win rates maker x breaker, spectral lambda by d.
inline Table plot_table(const RunRecord& run) {
  const auto& kind = run.config.kind;
  if (kind == "resilience") {
    Table t{"resilience",
            {"d", "attack_upper_mean", "empirical_lower", "certified_lower", "n", "eps", "samples", "errors"},
            {}};
    std::map<long long, std::vector<const Row*>> by;
    for (const auto& r : run.rows) by[r.value("sweep", 0LL)].push_back(&r);
    for (auto& [sp, rows] : by) {
      double up = 0;
      int ok = 0, errors = 0, emp = INT32_MAX, cert = INT32_MAX;
      Row first;
      for (auto* r : rows) {
        if (!detail::ok_row(*r)) {
          ++errors;
          continue;
        }
        if (!ok) first = *r;
        ++ok;
        up += (*r)["attack_upper"].get<double>();
        emp = std::min(emp, (*r)["empirical_lower"].get<int>());
        cert = std::min(cert, (*r)["certified_lower"].get<int>());
      }
      if (!ok) {
        t.rows.push_back({nullptr, nullptr, nullptr, nullptr, nullptr, nullptr, 0, errors});
        continue;
      }
      double d = first["model"] == "binomial" ? first["n"].get<double>() * first["p"].get<double>() : first["d"].get<double>();
      t.rows.push_back({d, up / ok, emp, cert, first["n"], first["eps"], ok, errors});
    }
    return t;
  }
  if (kind == "game") {
    Table t{"winrate", {"maker"}, {}};
    for (const auto& b : run.config.breakers) t.columns.push_back(b);
    for (const auto& m : run.config.makers) {
      std::vector<nlohmann::ordered_json> row{m};
      for (const auto& b : run.config.breakers) {
        int games = 0, wins = 0;
        for (const auto& r : run.rows)
          if (detail::ok_row(r) && r["maker"] == m && r["breaker"] == b) ++games, wins += r["winner"] == "maker";
        row.push_back(games ? nlohmann::ordered_json(static_cast<double>(wins) / games) : nlohmann::ordered_json());
      }
      if (!run.rows.empty()) t.rows.push_back(std::move(row));
    }
    return t;
  }
  Table t{"spectral", {"d", "n", "lambda_mean", "lambda_q90", "samples"}, {}};
  std::map<long long, std::vector<const Row*>> by;
  for (const auto& r : run.rows) by[r.value("sweep", 0LL)].push_back(&r);
  for (auto& [sp, rows] : by) {
    std::vector<double> lam;
    Row first;
    for (auto* r : rows)
      if (detail::ok_row(*r)) {
        if (lam.empty()) first = *r;
        lam.push_back((*r)["lambda"].get<double>());
      }
    if (lam.empty()) continue;
    double mean = 0;
    for (double x : lam) mean += x;
    t.rows.push_back({first["d"], first["n"], mean / lam.size(), detail::quantile(lam, 0.9), lam.size()});
  }
  return t;
}

inline void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RuntimeFailure("cannot write " + path);
  out << text;
}

inline nlohmann::ordered_json table_json(const Table& t) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json o;
    for (std::size_t i = 0; i < t.columns.size(); ++i) o[t.columns[i]] = r[i];
    rows.push_back(o);
  }
  return {{"table", t.name}, {"rows", rows}};
}

/// Writes summary and plot tables into dir as CSV or JSON; returns the paths written.
inline std::vector<std::string> write_report(const RunRecord& run, const std::string& dir, const std::string& format) {
  if (format != "csv" && format != "json") throw ValidationError("report format must be csv or json");
  std::vector<std::string> paths;
  for (const auto& t : {summary_table(run), plot_table(run)}) {
    auto path = (std::filesystem::path(dir) / (t.name + "." + format)).string();
    write_text(path, format == "csv" ? to_csv(t) : table_json(t).dump(2) + "\n");
    paths.push_back(path);
  }
  return paths;
}

/// Writes the per-row CSV and the run JSON named in the config.
inline void persist(const RunRecord& run) {
  write_text(run.config.csv, rows_csv(run));
  write_text(run.config.json, run_json(run).dump(2) + "\n");
}

}  // namespace rlab
