#include "wmp/almost_sure.hpp"
#include "wmp/combined.hpp"
#include "wmp/io.hpp"
#include "wmp/oracle.hpp"
#include "wmp/strategy.hpp"
#include "wmp/sure.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

using json = nlohmann::json;
using namespace wmp;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kOutsideRegion = 2;

struct Job {
  std::string input;
  std::string obj;
  int l = 2;
  std::string lambda = "0", alpha = "0", beta = "0", eps = "1/10";
  std::vector<std::string> target;
  std::string start;
  std::string format = "json";
  bool timings = false;

  // validate / simulate
  std::string strategy_path;
  std::string lasso;
  std::string claim;
  std::string threshold = "1";
  int steps = 0;
  int runs = 1000;
  std::uint64_t seed = 7;
  int count = 200;
  std::string out_beta;

  // generate / bench
  std::string family = "chain";
  int chain_m = 3;
  std::string chain_p = "1/2";
  std::string bench_alpha = "1", bench_beta = "2";
  std::vector<int> sizes{2, 3, 4, 5, 6};
  std::vector<int> lengths{1, 2, 3, 4};
};

json names(const Mdp& m, const VertexSet& s) { return m.names_of(s); }

json edge_names(const Mdp& m, const EdgeSet& s) {
  json out = json::array();
  for (int e : s.members()) out.push_back({m.name(m.edge(e).src), m.name(m.edge(e).dst)});
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

VertexSet target_of(const Mdp& m, const Job& job) {
  if (job.target.empty()) throw Error("--target is required for this objective");
  return m.set_of(job.target);
}

int start_of(const Mdp& m, const Job& job) {
  if (job.start.empty()) throw Error("--start is required");
  return m.vertex_named(job.start);
}

json sas_trace_json(const SasResult& r) {
  const Mdp& ma = r.mdp_alpha;
  json t;
  if (r.degenerate) {
    t["degenerate"] = true;
    return t;
  }
  auto root = [&](const VertexSet& s) { return names(ma, lift_to_root(ma, s)); };
  t["sure_alpha"] = root(ma.all());
  t["W0"] = root(r.trace.w0);
  t["iterations"] = json::array();
  for (const auto& it : r.trace.iterations)
    t["iterations"].push_back(
        {{"P", root(it.pos_cpre)}, {"W_sdab", root(it.sdab)}, {"A", root(it.attr)}, {"W", root(it.region)}});
  return t;
}

json pos_reach_json(const Mdp& m, const PosReachResult& r) {
  json t;
  t["E_g"] = edge_names(m, r.good);
  t["E_b"] = edge_names(m, r.bad);
  t["verdicts"] = json::array();
  for (const auto& v : r.verdicts)
    t["verdicts"].push_back(
        {{"edge", {m.name(m.edge(v.edge).src), m.name(m.edge(v.edge).dst)}}, {"good", v.good}});
  return t;
}

json sure_trace_json(const Mdp& m, const SureSolveResult& r) {
  json t = json::array();
  for (const auto& s : r.trace) t.push_back(names(m, s));
  return t;
}

json solve(const Mdp& m, const Job& job) {
  const auto lambda = parse_rational(job.lambda), alpha = parse_rational(job.alpha), beta = parse_rational(job.beta);
  json rep;
  rep["objective"] = job.obj;
  json params;
  VertexSet region;
  json trace = json::object();
  const std::string& o = job.obj;
  if (o == "good-win" || o == "dir-fwmp" || o == "fwmp") {
    params = {{"l", job.l}, {"lambda", to_string(lambda)}};
    auto r = o == "good-win" ? sure_good_win(m, job.l, lambda)
             : o == "dir-fwmp" ? sure_dir_fwmp(m, job.l, lambda)
                               : sure_fwmp(m, job.l, lambda);
    region = r.region;
    trace["iterations"] = sure_trace_json(m, r);
    if (o == "good-win") {
      json w = json::object();
      for (int v : r.region.members()) w[m.name(v)] = r.witness[v];
      trace["closing_steps"] = w;
    }
  } else if (o == "dir-bwmp" || o == "bwmp") {
    params = {{"lambda", to_string(lambda)}, {"l_prime", bwmp_window_length(m, lambda)}};
    auto r = o == "dir-bwmp" ? sure_dir_bwmp(m, lambda) : sure_bwmp(m, lambda);
    region = r.region;
    trace["iterations"] = sure_trace_json(m, r);
  } else if (o == "as-fwmp" || o == "as-bwmp") {
    auto r = o == "as-fwmp" ? almost_sure_fwmp(m, job.l, lambda) : almost_sure_bwmp(m, lambda);
    params = {{"lambda", to_string(lambda)}};
    if (o == "as-fwmp") params["l"] = job.l;
    region = r.region;
    trace["good_mecs"] = json::array();
    for (const auto& g : r.good_mecs) trace["good_mecs"].push_back(names(m, g));
  } else if (o == "as-buchi") {
    params = {{"target", job.target}};
    region = almost_sure_buchi(m, target_of(m, job));
  } else if (o == "sas-fwmp" || o == "sas-bwmp") {
    auto r = o == "sas-fwmp" ? sas_fwmp(m, job.l, alpha, beta) : sas_bwmp(m, alpha, beta);
    params = {{"alpha", to_string(alpha)}, {"beta", to_string(beta)}, {"l", r.l}};
    region = r.region;
    trace = sas_trace_json(r);
  } else if (o == "sls-fwmp" || o == "sls-bwmp") {
    params = {{"alpha", to_string(alpha)}, {"beta", to_string(beta)}};
    if (o == "sls-fwmp") params["l"] = job.l;
    region = o == "sls-fwmp" ? sls_fwmp(m, job.l, alpha, beta) : sls_bwmp(m, alpha, beta);
  } else if (o == "sdpr" || o == "sdbpr") {
    auto t = target_of(m, job);
    auto r = o == "sdpr" ? sure_dirfwmp_pos_reach(m, job.l, alpha, t) : sure_dirbwmp_pos_reach(m, alpha, t);
    params = {{"alpha", to_string(alpha)}, {"target", job.target}};
    if (o == "sdpr") params["l"] = job.l;
    region = r.region;
    trace = pos_reach_json(m, r);
  } else if (o == "sdab" || o == "sdbab") {
    auto t = target_of(m, job);
    auto r = o == "sdab" ? sure_dirfwmp_as_buchi(m, job.l, alpha, t) : sure_dirbwmp_as_buchi(m, alpha, t);
    params = {{"alpha", to_string(alpha)}, {"target", job.target}};
    if (o == "sdab") params["l"] = job.l;
    region = r.region;
    trace["rounds"] = r.rounds;
  } else if (o == "mec") {
    trace["mecs"] = json::array();
    for (const auto& c : mec_decomposition(m)) trace["mecs"].push_back(names(m, c));
    region = m.none();
    for (const auto& c : mec_decomposition(m)) region |= c;
  } else {
    throw Error("unknown objective '" + o + "'");
  }
  rep["params"] = params;
  rep["region"] = names(m, region);
  rep["trace"] = trace;
  return rep;
}

MealyStrategy synthesize(const Mdp& m, const Job& job) {
  const auto lambda = parse_rational(job.lambda), alpha = parse_rational(job.alpha), beta = parse_rational(job.beta);
  const int v = start_of(m, job);
  const std::string& o = job.obj;
  if (o == "sure-fwmp") return synth_sure_fwmp(m, job.l, lambda, v);
  if (o == "sdpr") return synth_sdpr(m, job.l, alpha, target_of(m, job), v);
  if (o == "sdab") return synth_sdab(m, job.l, alpha, target_of(m, job), v);
  if (o == "sas-fwmp") return synth_sas(m, job.l, alpha, beta, v);
  if (o == "sas-bwmp") return synth_sas_bwmp(m, alpha, beta, v);
  if (o == "sls-fwmp") return synth_sls(m, job.l, alpha, beta, parse_rational(job.eps), v);
  throw Error("unknown objective '" + o + "'");
}

json validate_cmd(const Mdp& m, const Job& job) {
  json rep;
  if (!job.lasso.empty()) {
    static const std::map<std::string, ObjectiveKind> kinds{
        {"good-win", ObjectiveKind::GoodWindow}, {"dir-fwmp", ObjectiveKind::DirFwmp},
        {"fwmp", ObjectiveKind::Fwmp},           {"dir-bwmp", ObjectiveKind::DirBwmp},
        {"bwmp", ObjectiveKind::Bwmp},           {"mp", ObjectiveKind::MeanPayoff},
        {"reach", ObjectiveKind::Reach},         {"safe", ObjectiveKind::Safe},
        {"buchi", ObjectiveKind::Buchi},         {"cobuchi", ObjectiveKind::CoBuchi},
        {"bounded-reach", ObjectiveKind::BoundedReach}, {"tp", ObjectiveKind::TotalPayoff}};
    auto it = kinds.find(job.obj);
    if (it == kinds.end()) throw Error("unknown lasso objective '" + job.obj + "'");
    ObjectiveSpec spec;
    spec.kind = it->second;
    spec.l = job.l;
    spec.lambda = parse_rational(job.lambda);
    spec.bound = job.steps;
    spec.target = job.target.empty() ? m.none() : m.set_of(job.target);
    auto play = parse_lasso(m, job.lasso);
    rep["lasso"] = format_lasso(m, play);
    rep["objective"] = job.obj;
    rep["holds"] = eval_on_lasso(m, play, spec);
    return rep;
  }
  if (job.strategy_path.empty()) throw Error("validate needs --strategy or --lasso");
  auto s = parse_strategy_json(m, read_file(job.strategy_path));
  static const std::map<std::string, ClaimKind> claims{
      {"sure-dir-fwmp", ClaimKind::SureDirFwmp},   {"sure-fwmp", ClaimKind::SureFwmp},
      {"as-fwmp", ClaimKind::AlmostSureFwmp},      {"as-buchi", ClaimKind::AlmostSureBuchi},
      {"reach-prob", ClaimKind::ReachProbability}, {"bounded-reach-prob", ClaimKind::BoundedReachProbability},
      {"fwmp-prob", ClaimKind::FwmpProbability}};
  auto it = claims.find(job.claim);
  if (it == claims.end()) throw Error("unknown claim '" + job.claim + "'");
  Claim c;
  c.kind = it->second;
  c.l = job.l;
  c.lambda = parse_rational(job.lambda);
  c.threshold = parse_rational(job.threshold);
  c.steps = job.steps;
  c.target = job.target.empty() ? m.none() : m.set_of(job.target);
  auto v = validate_strategy(m, s, start_of(m, job), c);
  rep["claim"] = job.claim;
  rep["accepted"] = v.accepted;
  rep["detail"] = v.detail;
  rep["chain_states"] = v.states;
  if (!v.witness.empty()) {
    json w = json::array();
    for (int x : v.witness) w.push_back(m.name(x));
    rep["witness"] = w;
  }
  if (v.probability) rep["probability"] = to_string(*v.probability);
  return rep;
}

json simulate_cmd(const Mdp& m, const Job& job) {
  auto s = parse_strategy_json(m, read_file(job.strategy_path));
  std::optional<Rational> beta;
  if (!job.out_beta.empty()) beta = parse_rational(job.out_beta);
  auto r = simulate(m, s, start_of(m, job), job.steps, job.runs, job.seed, job.l, parse_rational(job.alpha), beta);
  json rep{{"runs", r.runs},
           {"steps", r.steps},
           {"seed", r.seed},
           {"overflow_alpha", r.overflow_alpha},
           {"clean_tail_alpha", r.clean_tail_alpha}};
  if (beta) {
    rep["overflow_beta"] = r.overflow_beta;
    rep["clean_tail_beta"] = r.clean_tail_beta;
  }
  return rep;
}

json bench_cmd(const Job& job) {
  json rows = json::array();
  for (int size : job.sizes)
    for (int l : job.lengths) {
      const auto alpha = parse_rational(job.bench_alpha), beta = parse_rational(job.bench_beta);
      Mdp m = make_chain(size, parse_rational(job.chain_p), alpha, beta);
      auto t0 = std::chrono::steady_clock::now();
      auto r = sas_fwmp(m, l, alpha, beta);
      double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      rows.push_back({{"vertices", m.num_vertices()},
                      {"l", l},
                      {"region_size", r.region.size()},
                      {"iterations", r.trace.iterations.size()},
                      {"ms", ms}});
    }
  return {{"family", "chain"}, {"alpha", job.bench_alpha}, {"beta", job.bench_beta}, {"p", job.chain_p}, {"rows", rows}};
}

std::string text_of(const json& rep) {
  std::ostringstream out;
  if (rep.contains("summary")) {
    out << rep["summary"].get<std::string>() << "\n";
    for (const auto& x : rep["mismatches"]) out << "  " << x.get<std::string>() << "\n";
    return out.str();
  }
  if (rep.contains("region")) {
    out << "region:";
    for (const auto& v : rep["region"]) out << " " << v.get<std::string>();
    out << "\n";
    return out.str();
  }
  if (rep.contains("accepted")) {
    out << (rep["accepted"].get<bool>() ? "ACCEPT" : "REJECT") << ": " << rep["detail"].get<std::string>();
    if (rep.contains("probability")) out << " (" << rep["probability"].get<std::string>() << ")";
    if (rep.contains("witness")) {
      out << " witness:";
      for (const auto& v : rep["witness"]) out << " " << v.get<std::string>();
    }
    out << "\n";
    return out.str();
  }
  if (rep.contains("holds")) {
    out << (rep["holds"].get<bool>() ? "true" : "false") << "\n";
    return out.str();
  }
  return rep.dump(2) + "\n";
}

void emit(const Job& job, json rep, std::chrono::steady_clock::time_point t0) {
  if (job.timings)
    rep["timings"] = {
        {"total_ms", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count()}};
  if (job.format == "text")
    std::cout << text_of(rep);
  else
    std::cout << rep.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sure/almost-sure and sure/limit-sure window mean-payoff solver"};
  app.require_subcommand(1);
  Job job;

  auto common = [&](CLI::App* c) {
    c->add_option("--format", job.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    c->add_flag("--timings", job.timings, "add wall-clock timings to the report");
  };
  auto objective = [&](CLI::App* c) {
    c->add_option("--l", job.l, "window length")->check(CLI::PositiveNumber);
    c->add_option("--lambda", job.lambda, "threshold");
    c->add_option("--alpha", job.alpha, "sure threshold");
    c->add_option("--beta", job.beta, "almost-sure / limit-sure threshold");
    c->add_option("--target", job.target, "target vertex names")->delimiter(',');
  };

  auto* solve_cmd = app.add_subcommand("solve", "compute a winning region");
  solve_cmd->add_option("--obj", job.obj, "objective")->required();
  objective(solve_cmd);
  common(solve_cmd);
  solve_cmd->add_option("input", job.input, "MDP file")->required();

  auto* synth_cmd = app.add_subcommand("synthesize", "build a Mealy strategy from a start vertex");
  synth_cmd->add_option("--obj", job.obj, "sure-fwmp, sdpr, sdab, sas-fwmp, sas-bwmp or sls-fwmp")->required();
  synth_cmd->add_option("--start", job.start, "start vertex")->required();
  synth_cmd->add_option("--eps", job.eps, "epsilon for sls-fwmp");
  objective(synth_cmd);
  common(synth_cmd);
  synth_cmd->add_option("input", job.input, "MDP file")->required();

  auto* val_cmd = app.add_subcommand("validate", "check a strategy or a lasso play");
  val_cmd->add_option("--strategy", job.strategy_path, "strategy JSON file");
  val_cmd->add_option("--claim", job.claim, "claim checked against the strategy");
  val_cmd->add_option("--start", job.start, "start vertex");
  val_cmd->add_option("--threshold", job.threshold, "probability threshold");
  val_cmd->add_option("--steps", job.steps, "step bound");
  val_cmd->add_option("--lasso", job.lasso, "play as 'stem|cycle'");
  val_cmd->add_option("--obj", job.obj, "objective evaluated on the lasso");
  objective(val_cmd);
  common(val_cmd);
  val_cmd->add_option("input", job.input, "MDP file")->required();

  auto* oracle_cmd = app.add_subcommand("oracle-check", "compare solvers with the product oracle");
  oracle_cmd->add_option("--seed", job.seed, "generator seed");
  oracle_cmd->add_option("--count", job.count, "number of random MDPs")->check(CLI::NonNegativeNumber);
  common(oracle_cmd);

  auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo runs of a strategy");
  sim_cmd->add_option("--strategy", job.strategy_path, "strategy JSON file")->required();
  sim_cmd->add_option("--start", job.start, "start vertex")->required();
  sim_cmd->add_option("--steps", job.steps, "steps per run")->required();
  sim_cmd->add_option("--runs", job.runs, "number of runs");
  sim_cmd->add_option("--seed", job.seed, "seed");
  sim_cmd->add_option("--l", job.l, "window length")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--alpha", job.alpha, "first threshold");
  sim_cmd->add_option("--beta", job.out_beta, "second threshold");
  common(sim_cmd);
  sim_cmd->add_option("input", job.input, "MDP file")->required();

  auto* bench = app.add_subcommand("bench", "time sas-fwmp over the chain family");
  bench->add_option("--sizes", job.sizes, "chain lengths")->delimiter(',');
  bench->add_option("--lengths", job.lengths, "window lengths")->delimiter(',');
  bench->add_option("--alpha", job.bench_alpha, "sure threshold");
  bench->add_option("--beta", job.bench_beta, "almost-sure threshold");
  bench->add_option("--p", job.chain_p, "chain probability");
  common(bench);

  auto* gen = app.add_subcommand("generate", "write a chain-family or random MDP");
  gen->add_option("--family", job.family, "chain or random")->check(CLI::IsMember({"chain", "random"}));
  gen->add_option("--m", job.chain_m, "chain length")->check(CLI::PositiveNumber);
  gen->add_option("--p", job.chain_p, "chain probability");
  gen->add_option("--alpha", job.alpha, "payoff of the first self-loop");
  gen->add_option("--beta", job.beta, "payoff of the last self-loop");
  gen->add_option("--seed", job.seed, "seed for the random family");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (solve_cmd->parsed()) {
      auto m = parse_mdp_file(job.input);
      emit(job, solve(m, job), t0);
    } else if (synth_cmd->parsed()) {
      auto m = parse_mdp_file(job.input);
      auto s = synthesize(m, job);
      if (job.format == "text") {
        std::cout << s.construction << ": " << s.num_states << " memory states, " << s.transitions.size()
                  << " transitions\n";
      } else {
        json rep = json::parse(write_strategy_json(m, s));
        if (job.timings)
          rep["timings"] = {
              {"total_ms", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count()}};
        std::cout << rep.dump(2) << "\n";
      }
    } else if (val_cmd->parsed()) {
      auto m = parse_mdp_file(job.input);
      emit(job, validate_cmd(m, job), t0);
    } else if (oracle_cmd->parsed()) {
      auto r = run_oracle_suite(job.seed, job.count);
      json rep{{"seed", r.seed},
               {"count", r.count},
               {"matched", r.matched},
               {"summary", std::to_string(r.matched) + "/" + std::to_string(r.count) + " regions matched"},
               {"mismatches", r.mismatches}};
      emit(job, rep, t0);
      return r.matched == r.count ? kOk : kInputError;
    } else if (sim_cmd->parsed()) {
      auto m = parse_mdp_file(job.input);
      emit(job, simulate_cmd(m, job), t0);
    } else if (bench->parsed()) {
      emit(job, bench_cmd(job), t0);
    } else if (gen->parsed()) {
      if (job.family == "chain") {
        std::cout << write_mdp(
            make_chain(job.chain_m, parse_rational(job.chain_p), parse_rational(job.alpha), parse_rational(job.beta)));
      } else {
        std::mt19937_64 rng(job.seed);
        std::cout << write_mdp(random_mdp(rng));
      }
    }
  } catch (const StartOutsideRegion& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOutsideRegion;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}
