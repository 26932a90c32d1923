#include "wmp/window.hpp"

#include <algorithm>
#include <map>

namespace wmp {

ScaledPayoffs scale_payoffs(const Mdp& m, const Rational& lambda) {
  Integer d = den_of(lambda);
  for (const auto& e : m.edges()) d = lcm_of(d, den_of(e.payoff));
  ScaledPayoffs out;
  out.factor = d;
  out.lambda = lambda;
  out.weight.reserve(m.num_edges());
  for (const auto& e : m.edges()) {
    Rational scaled = (e.payoff - lambda) * d;
    std::int64_t w = to_int64(num_of(scaled));
    out.weight.push_back(w);
    out.w_max = std::max(out.w_max, w < 0 ? -w : w);
  }
  return out;
}

Mdp scaled_mdp(const Mdp& m, const Rational& lambda) {
  auto sc = scale_payoffs(m, lambda);
  Mdp out;
  for (int v = 0; v < m.num_vertices(); ++v) out.add_derived_vertex(m.name(v), m.owner(v), m.origin(v));
  for (int e = 0; e < m.num_edges(); ++e) {
    const Edge& ed = m.edge(e);
    out.add_derived_edge(ed.src, ed.dst, Rational(sc.weight[e]), ed.prob, m.edge_origin(e));
  }
  out.set_root_shape(m.root_vertices(), m.root_edges());
  return out;
}

WindowMonitorState monitor_step(WindowMonitorState st, std::int64_t payoff, int l) {
  std::int64_t s = st.s + payoff;
  int c = st.c + 1;
  if (s >= 0) return {0, 0, false};
  if (c >= l) return {0, 0, true};
  return {c, s, false};
}

void check_lasso(const Mdp& m, const Lasso& play) {
  if (play.cycle.empty()) throw Error("lasso cycle is empty");
  auto check_vertex = [&](int v) {
    if (v < 0 || v >= m.num_vertices()) throw Error("lasso vertex out of range");
  };
  for (int v : play.stem) check_vertex(v);
  for (int v : play.cycle) check_vertex(v);
  std::vector<int> seq = play.stem;
  seq.insert(seq.end(), play.cycle.begin(), play.cycle.end());
  seq.push_back(play.cycle.front());
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    if (!m.find_edge(seq[i], seq[i + 1]))
      throw Error("lasso uses missing edge " + m.name(seq[i]) + "->" + m.name(seq[i + 1]));
}

int lasso_vertex(const Lasso& play, long long pos) {
  const long long stem = static_cast<long long>(play.stem.size());
  if (pos < stem) return play.stem[pos];
  return play.cycle[(pos - stem) % static_cast<long long>(play.cycle.size())];
}

namespace {

struct LassoWalk {
  const Mdp& m;
  const Lasso& play;
  std::vector<std::int64_t> step;  // scaled payoff of the edge leaving each position of stem+cycle

  LassoWalk(const Mdp& mdp, const Lasso& p, const ScaledPayoffs& sc) : m(mdp), play(p) {
    const long long n = static_cast<long long>(p.stem.size() + p.cycle.size());
    for (long long i = 0; i < n; ++i) {
      int e = *m.find_edge(lasso_vertex(p, i), lasso_vertex(p, i + 1));
      step.push_back(sc.weight[e]);
    }
  }

  std::int64_t payoff(long long pos) const {
    const long long stem = static_cast<long long>(play.stem.size());
    if (pos < stem) return step[pos];
    return step[stem + (pos - stem) % static_cast<long long>(play.cycle.size())];
  }

  std::int64_t cycle_sum() const {
    std::int64_t s = 0;
    for (std::size_t i = play.stem.size(); i < step.size(); ++i) s += step[i];
    return s;
  }
};

bool eval_good_window(const LassoWalk& walk, int l) {
  WindowMonitorState st;
  for (int i = 0; i < l; ++i) {
    st = monitor_step(st, walk.payoff(i), l);
    if (monitor_reset(st)) return !st.overflow;
  }
  return false;
}

// Runs the monitor until its state at a cycle start repeats. Returns the
// overflow positions and the periodic segment [first, second).
struct MonitorRun {
  std::vector<long long> overflows;
  long long period_begin = 0;
  long long period_end = 0;
};

MonitorRun run_monitor(const LassoWalk& walk, int l) {
  MonitorRun run;
  const long long stem = static_cast<long long>(walk.play.stem.size());
  const long long c = static_cast<long long>(walk.play.cycle.size());
  std::map<std::pair<int, std::int64_t>, long long> seen;
  WindowMonitorState st;
  for (long long i = 0;; ++i) {
    if (i >= stem && (i - stem) % c == 0) {
      auto [it, fresh] = seen.emplace(std::make_pair(st.c, st.s), i);
      if (!fresh) {
        run.period_begin = it->second;
        run.period_end = i;
        return run;
      }
    }
    st = monitor_step(st, walk.payoff(i), l);
    if (st.overflow) run.overflows.push_back(i);
  }
}

bool eval_dir_bwmp(const LassoWalk& walk) {
  std::int64_t s = walk.cycle_sum();
  if (s > 0) return true;
  if (s < 0) return false;
  const long long stem = static_cast<long long>(walk.play.stem.size());
  const long long horizon = stem + static_cast<long long>(walk.play.cycle.size());
  for (long long i = 0; i < stem; ++i) {
    std::int64_t sum = 0;
    bool closed = false;
    for (long long j = i; j < i + horizon && !closed; ++j) {
      sum += walk.payoff(j);
      closed = sum >= 0;
    }
    if (!closed) return false;
  }
  return true;
}

bool eval_total_payoff(const Mdp& m, const Lasso& play, const Rational& lambda) {
  std::vector<int> seq = play.stem;
  seq.insert(seq.end(), play.cycle.begin(), play.cycle.end());
  seq.push_back(play.cycle.front());
  Rational prefix(0), cycle(0), peak;
  bool have_peak = false;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    const Rational& w = m.edge(*m.find_edge(seq[i], seq[i + 1])).payoff;
    prefix += w;
    if (i >= play.stem.size()) {
      cycle += w;
      if (!have_peak || prefix > peak) peak = prefix;
      have_peak = true;
    }
  }
  if (cycle > 0) return true;
  if (cycle < 0) return false;
  return peak >= lambda;
}

}  // namespace

bool eval_on_lasso(const Mdp& m, const Lasso& play, const ObjectiveSpec& obj) {
  check_lasso(m, play);
  const long long stem = static_cast<long long>(play.stem.size());
  const long long n = stem + static_cast<long long>(play.cycle.size());
  auto on_cycle = [&](auto pred) {
    return std::any_of(play.cycle.begin(), play.cycle.end(), pred);
  };
  switch (obj.kind) {
    case ObjectiveKind::Reach:
      for (long long i = 0; i < n; ++i)
        if (obj.target.contains(lasso_vertex(play, i))) return true;
      return false;
    case ObjectiveKind::Safe:
      for (long long i = 0; i < n; ++i)
        if (!obj.target.contains(lasso_vertex(play, i))) return false;
      return true;
    case ObjectiveKind::Buchi:
      return on_cycle([&](int v) { return obj.target.contains(v); });
    case ObjectiveKind::CoBuchi:
      return !on_cycle([&](int v) { return !obj.target.contains(v); });
    case ObjectiveKind::BoundedReach:
      for (long long i = 0; i <= obj.bound; ++i)
        if (obj.target.contains(lasso_vertex(play, i))) return true;
      return false;
    case ObjectiveKind::EdgeRestrictedReach:
      for (long long i = 0; i < n; ++i) {
        if (obj.target.contains(lasso_vertex(play, i))) return true;
        int e = *m.find_edge(lasso_vertex(play, i), lasso_vertex(play, i + 1));
        if (!obj.edges.contains(e)) return false;
      }
      return false;
    case ObjectiveKind::TotalPayoff:
      return eval_total_payoff(m, play, obj.lambda);
    default:
      break;
  }
  if (obj.l < 1) throw Error("window length must be positive");
  LassoWalk walk(m, play, scale_payoffs(m, obj.lambda));
  switch (obj.kind) {
    case ObjectiveKind::GoodWindow:
      return eval_good_window(walk, obj.l);
    case ObjectiveKind::DirFwmp:
      return run_monitor(walk, obj.l).overflows.empty();
    case ObjectiveKind::Fwmp: {
      auto run = run_monitor(walk, obj.l);
      return std::none_of(run.overflows.begin(), run.overflows.end(),
                          [&](long long i) { return i >= run.period_begin && i < run.period_end; });
    }
    case ObjectiveKind::DirBwmp:
      return eval_dir_bwmp(walk);
    case ObjectiveKind::Bwmp:
    case ObjectiveKind::MeanPayoff:
      return walk.cycle_sum() >= 0;
    default:
      break;
  }
  throw Error("unsupported objective");
}

bool inclusion_chain_check(const Mdp& m, const Lasso& play, int l, const Rational& lambda) {
  auto holds = [&](ObjectiveKind kind, int len, const Rational& lam) {
    ObjectiveSpec spec;
    spec.kind = kind;
    spec.l = len;
    spec.lambda = lam;
    return eval_on_lasso(m, play, spec);
  };
  auto implies = [](bool a, bool b) { return !a || b; };
  const bool dir = holds(ObjectiveKind::DirFwmp, l, lambda);
  const bool fix = holds(ObjectiveKind::Fwmp, l, lambda);
  const bool dirb = holds(ObjectiveKind::DirBwmp, l, lambda);
  const bool bnd = holds(ObjectiveKind::Bwmp, l, lambda);
  const bool mp = holds(ObjectiveKind::MeanPayoff, l, lambda);
  if (!implies(dir, fix) || !implies(fix, bnd) || !implies(bnd, mp)) return false;
  if (!implies(dir, dirb) || !implies(dirb, bnd)) return false;
  if (!implies(dir, holds(ObjectiveKind::DirFwmp, l + 1, lambda))) return false;
  if (!implies(fix, holds(ObjectiveKind::Fwmp, l + 1, lambda))) return false;
  const Rational lower = lambda - 1;
  if (!implies(dir, holds(ObjectiveKind::DirFwmp, l, lower))) return false;
  if (!implies(fix, holds(ObjectiveKind::Fwmp, l, lower))) return false;
  if (!implies(bnd, holds(ObjectiveKind::Bwmp, l, lower))) return false;
  return true;
}

}  // namespace wmp
