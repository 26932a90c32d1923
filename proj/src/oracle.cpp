#include "wmp/oracle.hpp"

#include "wmp/almost_sure.hpp"
#include "wmp/sure.hpp"
#include "wmp/window.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>

namespace wmp {

namespace {

using Mask = std::vector<char>;

// Plain game/MDP graph. Nothing here reuses the solver fixpoints.
struct Arena {
  std::vector<char> random;
  std::vector<std::vector<int>> succ;
  std::vector<std::vector<Rational>> prob;
  std::vector<std::vector<int>> pred;

  int size() const { return static_cast<int>(succ.size()); }

  void link() {
    pred.assign(size(), {});
    for (int v = 0; v < size(); ++v)
      for (int u : succ[v]) pred[u].push_back(v);
  }
};

Arena arena_of(const Mdp& m, const WindowProduct& p) {
  Arena a;
  for (std::size_t i = 0; i < p.states.size(); ++i) {
    a.random.push_back(m.is_random(p.states[i].vertex));
    a.succ.emplace_back();
    a.prob.emplace_back();
    for (const auto& mv : p.moves[i]) {
      a.succ.back().push_back(mv.to);
      a.prob.back().push_back(mv.prob);
    }
  }
  a.link();
  return a;
}

Arena arena_of(const Mdp& m) {
  Arena a;
  for (int v = 0; v < m.num_vertices(); ++v) {
    a.random.push_back(m.is_random(v));
    a.succ.emplace_back();
    a.prob.emplace_back();
    for (int e : m.out_edges(v)) {
      a.succ.back().push_back(m.edge(e).dst);
      a.prob.back().push_back(m.edge(e).prob);
    }
  }
  a.link();
  return a;
}

// Vertices of `alive` from which one side forces a visit to `target`; the
// side is the random vertices when `random_side` is set, else the player.
Mask attract(const Arena& a, const Mask& alive, const Mask& target, bool random_side) {
  const int n = a.size();
  Mask in(n, 0);
  std::vector<int> need(n, 0);
  std::deque<int> queue;
  for (int v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    if (static_cast<bool>(a.random[v]) == random_side) {
      need[v] = 1;
    } else {
      for (int u : a.succ[v]) need[v] += alive[u] ? 1 : 0;
    }
    if (target[v]) {
      in[v] = 1;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int p : a.pred[u]) {
      if (!alive[p] || in[p]) continue;
      if (--need[p] == 0) {
        in[p] = 1;
        queue.push_back(p);
      }
    }
  }
  return in;
}

Mask adversary_buchi(const Arena& a, const Mask& bad) {
  const int n = a.size();
  Mask alive(n, 1);
  for (;;) {
    Mask goal(n, 0);
    for (int v = 0; v < n; ++v) goal[v] = alive[v] && bad[v];
    Mask hit = attract(a, alive, goal, true);
    Mask trap(n, 0);
    bool any = false;
    for (int v = 0; v < n; ++v) {
      trap[v] = alive[v] && !hit[v];
      any = any || trap[v];
    }
    if (!any) return alive;
    Mask lost = attract(a, alive, trap, false);
    for (int v = 0; v < n; ++v)
      if (lost[v]) alive[v] = 0;
  }
}

// Kosaraju on the graph restricted to alive vertices and edges that stay in
// the same part. Returns a component label per vertex (-1 when dead).
std::vector<int> components(const Arena& a, const Mask& alive, const std::vector<int>& part) {
  const int n = a.size();
  auto usable = [&](int v, int u) { return alive[u] && part[u] == part[v]; };
  std::vector<int> order;
  Mask seen(n, 0);
  for (int r = 0; r < n; ++r) {
    if (!alive[r] || seen[r]) continue;
    std::vector<std::pair<int, std::size_t>> stack{{r, 0}};
    seen[r] = 1;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i < a.succ[v].size()) {
        int u = a.succ[v][i++];
        if (usable(v, u) && !seen[u]) {
          seen[u] = 1;
          stack.push_back({u, 0});
        }
      } else {
        order.push_back(v);
        stack.pop_back();
      }
    }
  }
  std::vector<int> label(n, -1);
  int next = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (label[*it] >= 0) continue;
    std::vector<int> stack{*it};
    label[*it] = next;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int p : a.pred[v])
        if (usable(v, p) && label[p] < 0) {
          label[p] = next;
          stack.push_back(p);
        }
    }
    ++next;
  }
  return label;
}

// Labels the maximal end components inside `allowed`.
std::vector<int> end_components(const Arena& a, const Mask& allowed) {
  const int n = a.size();
  Mask alive = allowed;
  std::vector<int> part(n, 0);
  int parts = 1;
  for (;;) {
    auto label = components(a, alive, part);
    bool removed = false;
    for (int v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      bool inside = false, leaves = false;
      for (int u : a.succ[v]) {
        if (alive[u] && label[u] == label[v]) inside = true;
        else leaves = true;
      }
      if ((a.random[v] && leaves) || (!a.random[v] && !inside)) {
        alive[v] = 0;
        removed = true;
      }
    }
    int count = 0;
    for (int v = 0; v < n; ++v)
      if (alive[v]) count = std::max(count, label[v] + 1);
    if (!removed) {
      std::vector<int> used;
      for (int v = 0; v < n; ++v)
        if (alive[v]) used.push_back(label[v]);
      std::sort(used.begin(), used.end());
      used.erase(std::unique(used.begin(), used.end()), used.end());
      if (static_cast<int>(used.size()) == parts) {
        for (int v = 0; v < n; ++v)
          if (!alive[v]) label[v] = -1;
        return label;
      }
      parts = static_cast<int>(used.size());
    } else {
      parts = -1;
    }
    part = label;
  }
}

// nu Y. mu X. target | player with a successor in X | random with all
// successors in Y and one in X
Mask almost_sure_reach_of(const Arena& a, const Mask& target) {
  const int n = a.size();
  Mask y(n, 1);
  for (;;) {
    Mask x(n, 0);
    for (int v = 0; v < n; ++v) x[v] = target[v];
    bool grew = true;
    while (grew) {
      grew = false;
      for (int v = 0; v < n; ++v) {
        if (!y[v] || x[v]) continue;
        bool some = false, all_in_y = true;
        for (int u : a.succ[v]) {
          some = some || x[u];
          all_in_y = all_in_y && y[u];
        }
        if (a.random[v] ? (some && all_in_y) : some) {
          x[v] = 1;
          grew = true;
        }
      }
    }
    if (x == y) return y;
    y = x;
  }
}

VertexSet project(const Mdp& m, const WindowProduct& p, const Mask& win) {
  VertexSet out = m.none();
  for (int v = 0; v < m.num_vertices(); ++v)
    if (win[p.initial[v]]) out.insert(v);
  return out;
}

Mask bad_mask(const WindowProduct& p) {
  Mask bad(p.states.size(), 0);
  for (std::size_t i = 0; i < p.states.size(); ++i) bad[i] = p.states[i].bad;
  return bad;
}

}  // namespace

WindowProduct build_window_product(const Mdp& m, int l, const Rational& lambda, Flavor flavor) {
  if (l < 1) throw Error("window length must be at least 1");
  const auto w = scale_payoffs(m, lambda).weight;
  WindowProduct p;
  p.flavor = flavor;
  p.l = l;
  std::map<std::tuple<int, int, std::int64_t, bool>, int> ids;
  auto intern = [&](int v, int c, std::int64_t s, bool bad) {
    auto [it, fresh] = ids.emplace(std::make_tuple(v, c, s, bad), static_cast<int>(p.states.size()));
    if (fresh) {
      p.states.push_back({v, c, s, bad});
      p.moves.emplace_back();
    }
    return it->second;
  };
  for (int v = 0; v < m.num_vertices(); ++v) p.initial.push_back(intern(v, 0, 0, false));
  for (std::size_t i = 0; i < p.states.size(); ++i) {
    const auto st = p.states[i];
    for (int e : m.out_edges(st.vertex)) {
      auto next = monitor_step({st.c, st.s, false}, w[e], l);
      int to = intern(m.edge(e).dst, next.c, next.s, next.overflow);
      Rational prob = flavor == Flavor::Mdp && m.is_random(st.vertex) ? m.edge(e).prob : Rational(0);
      p.moves[i].push_back({to, prob});
    }
  }
  return p;
}

VertexSet oracle_sure_region(const Mdp& m, const WindowProduct& product, WinCondition cond) {
  const Arena a = arena_of(m, product);
  const Mask bad = bad_mask(product);
  Mask win(a.size(), 0);
  if (cond == WinCondition::Safety) {
    Mask lose = attract(a, Mask(a.size(), 1), bad, true);
    for (int v = 0; v < a.size(); ++v) win[v] = !lose[v];
  } else {
    Mask lose = adversary_buchi(a, bad);
    for (int v = 0; v < a.size(); ++v) win[v] = !lose[v];
  }
  return project(m, product, win);
}

VertexSet oracle_almost_sure_region(const Mdp& m, const WindowProduct& product) {
  const Arena a = arena_of(m, product);
  const Mask bad = bad_mask(product);
  Mask clean(a.size(), 0);
  for (int v = 0; v < a.size(); ++v) clean[v] = !bad[v];
  auto label = end_components(a, clean);
  Mask target(a.size(), 0);
  for (int v = 0; v < a.size(); ++v) target[v] = label[v] >= 0;
  return project(m, product, almost_sure_reach_of(a, target));
}

VertexSet oracle_almost_sure_buchi(const Mdp& m, const VertexSet& t) {
  const Arena a = arena_of(m);
  auto label = end_components(a, Mask(a.size(), 1));
  std::vector<char> good_label(a.size() + 1, 0);
  for (int v = 0; v < a.size(); ++v)
    if (label[v] >= 0 && t.contains(v)) good_label[label[v]] = 1;
  Mask target(a.size(), 0);
  for (int v = 0; v < a.size(); ++v) target[v] = label[v] >= 0 && good_label[label[v]];
  Mask win = almost_sure_reach_of(a, target);
  VertexSet out = m.none();
  for (int v = 0; v < m.num_vertices(); ++v)
    if (win[v]) out.insert(v);
  return out;
}

// ---------------------------------------------------------------------------
// induced chains

InducedChain build_induced_chain(const Mdp& m, const MealyStrategy& s, int start) {
  if (start < 0 || start >= m.num_vertices()) throw Error("start vertex out of range");
  InducedChain chain;
  std::map<std::pair<int, int>, int> ids;
  auto intern = [&](int mem, int v) {
    auto [it, fresh] = ids.emplace(std::make_pair(mem, v), static_cast<int>(chain.states.size()));
    if (fresh) {
      chain.states.push_back({mem, v});
      chain.steps.emplace_back();
    }
    return it->second;
  };
  intern(s.initial, start);
  for (std::size_t i = 0; i < chain.states.size(); ++i) {
    const auto st = chain.states[i];
    const MealyTransition* t = s.find(st.memory, st.vertex);
    if (!t) throw Error("malformed strategy: no transition for memory " + std::to_string(st.memory) + " at " +
                        m.name(st.vertex));
    if (t->next < 0 || t->next >= s.num_states) throw Error("malformed strategy: memory state out of range");
    if (m.is_random(st.vertex)) {
      for (int e : m.out_edges(st.vertex)) {
        int to = intern(t->next, m.edge(e).dst);
        chain.steps[i].push_back({to, m.edge(e).prob, e});
      }
    } else {
      auto e = t->choice >= 0 && t->choice < m.num_vertices() ? m.find_edge(st.vertex, t->choice) : std::nullopt;
      if (!e) throw Error("malformed strategy: choice at " + m.name(st.vertex) + " is not a successor");
      int to = intern(t->next, t->choice);
      chain.steps[i].push_back({to, Rational(1), *e});
    }
  }
  return chain;
}

namespace {

struct Graph {
  std::vector<std::vector<int>> succ;
  std::vector<std::vector<Rational>> prob;
  std::vector<int> vertex;  // base vertex per state
  int size() const { return static_cast<int>(succ.size()); }
};

// Tarjan; components come out sinks first.
std::vector<std::vector<int>> tarjan(const Graph& g) {
  const int n = g.size();
  std::vector<int> index(n, -1), low(n, 0), stack;
  Mask on(n, 0);
  std::vector<std::vector<int>> out;
  int counter = 0;
  for (int r = 0; r < n; ++r) {
    if (index[r] >= 0) continue;
    std::vector<std::pair<int, std::size_t>> call{{r, 0}};
    index[r] = low[r] = counter++;
    stack.push_back(r);
    on[r] = 1;
    while (!call.empty()) {
      auto& [v, i] = call.back();
      if (i < g.succ[v].size()) {
        int u = g.succ[v][i++];
        if (index[u] < 0) {
          index[u] = low[u] = counter++;
          stack.push_back(u);
          on[u] = 1;
          call.push_back({u, 0});
        } else if (on[u]) {
          low[v] = std::min(low[v], index[u]);
        }
        continue;
      }
      const int done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        std::vector<int> comp;
        int x;
        do {
          x = stack.back();
          stack.pop_back();
          on[x] = 0;
          comp.push_back(x);
        } while (x != done);
        out.push_back(std::move(comp));
      }
    }
  }
  return out;
}

Graph chain_graph(const InducedChain& c) {
  Graph g;
  for (std::size_t i = 0; i < c.states.size(); ++i) {
    g.vertex.push_back(c.states[i].vertex);
    g.succ.emplace_back();
    g.prob.emplace_back();
    for (const auto& st : c.steps[i]) {
      g.succ.back().push_back(st.to);
      g.prob.back().push_back(st.prob);
    }
  }
  return g;
}

// chain x window monitor; `bad` marks states entered by an overflowing step
Graph monitored(const Mdp& m, const InducedChain& c, int l, const Rational& lambda, Mask& bad) {
  const auto w = scale_payoffs(m, lambda).weight;
  Graph g;
  std::map<std::tuple<int, int, std::int64_t, bool>, int> ids;
  std::vector<std::tuple<int, int, std::int64_t, bool>> keys;
  auto intern = [&](int s, int cc, std::int64_t sum, bool b) {
    auto key = std::make_tuple(s, cc, sum, b);
    auto [it, fresh] = ids.emplace(key, static_cast<int>(keys.size()));
    if (fresh) {
      keys.push_back(key);
      g.succ.emplace_back();
      g.prob.emplace_back();
      g.vertex.push_back(c.states[s].vertex);
      bad.push_back(b);
    }
    return it->second;
  };
  bad.clear();
  intern(0, 0, 0, false);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const auto [s, cc, sum, b] = keys[i];
    for (const auto& st : c.steps[s]) {
      auto next = monitor_step({cc, sum, false}, w[st.edge], l);
      int to = intern(st.to, next.c, next.s, next.overflow);
      g.succ[i].push_back(to);
      g.prob[i].push_back(st.prob);
    }
  }
  return g;
}

std::vector<int> path_to(const Graph& g, int from, const Mask& goal) {
  std::vector<int> parent(g.size(), -2);
  std::deque<int> queue{from};
  parent[from] = -1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (goal[v]) {
      std::vector<int> path;
      for (int x = v; x >= 0; x = parent[x]) path.push_back(g.vertex[x]);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (int u : g.succ[v])
      if (parent[u] == -2) {
        parent[u] = v;
        queue.push_back(u);
      }
  }
  return {};
}

// cycle through `at` that stays inside `comp`
std::vector<int> cycle_through(const Graph& g, int at, const Mask& comp) {
  std::vector<int> parent(g.size(), -2);
  std::deque<int> queue;
  for (int u : g.succ[at])
    if (comp[u] && parent[u] == -2) {
      parent[u] = at;
      queue.push_back(u);
    }
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (v == at) break;
    for (int u : g.succ[v])
      if (comp[u] && parent[u] == -2) {
        parent[u] = v;
        queue.push_back(u);
      }
  }
  std::vector<int> cyc{g.vertex[at]};
  for (int x = parent[at]; x != at && x >= 0; x = parent[x]) cyc.push_back(g.vertex[x]);
  std::reverse(cyc.begin() + 1, cyc.end());
  return cyc;
}

bool is_bottom(const Graph& g, const std::vector<int>& comp, const std::vector<int>& comp_of, int id) {
  for (int v : comp)
    for (int u : g.succ[v])
      if (comp_of[u] != id) return false;
  return true;
}

std::vector<Rational> solve_dense(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (a[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw Error("singular reachability system");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (int k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (int i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

// Exact probability of eventually hitting `goal`, component by component.
std::vector<Rational> reach_probability(const Graph& g, const Mask& goal) {
  const int n = g.size();
  Mask can(n, 0);
  std::vector<std::vector<int>> pred(n);
  for (int v = 0; v < n; ++v)
    for (int u : g.succ[v]) pred[u].push_back(v);
  std::deque<int> queue;
  for (int v = 0; v < n; ++v)
    if (goal[v]) {
      can[v] = 1;
      queue.push_back(v);
    }
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int p : pred[v])
      if (!can[p]) {
        can[p] = 1;
        queue.push_back(p);
      }
  }
  std::vector<Rational> x(n, Rational(0));
  for (int v = 0; v < n; ++v)
    if (goal[v]) x[v] = 1;
  std::vector<int> local(n, -1);
  for (const auto& comp : tarjan(g)) {
    std::vector<int> unknown;
    for (int v : comp)
      if (can[v] && !goal[v]) {
        local[v] = static_cast<int>(unknown.size());
        unknown.push_back(v);
      }
    if (unknown.empty()) continue;
    const int k = static_cast<int>(unknown.size());
    std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k, Rational(0)));
    std::vector<Rational> b(k, Rational(0));
    for (int i = 0; i < k; ++i) {
      const int v = unknown[i];
      a[i][i] += 1;
      for (std::size_t j = 0; j < g.succ[v].size(); ++j) {
        int u = g.succ[v][j];
        if (local[u] >= 0 && std::find(comp.begin(), comp.end(), u) != comp.end())
          a[i][local[u]] -= g.prob[v][j];
        else
          b[i] += g.prob[v][j] * x[u];
      }
    }
    auto sol = solve_dense(std::move(a), std::move(b));
    for (int i = 0; i < k; ++i) x[unknown[i]] = sol[i];
  }
  for (int v = 0; v < n; ++v) {
    if (goal[v] || !can[v]) continue;
    Rational rhs(0);
    for (std::size_t j = 0; j < g.succ[v].size(); ++j) rhs += g.prob[v][j] * x[g.succ[v][j]];
    if (rhs != x[v] || x[v] < 0 || x[v] > 1) throw Error("reachability solution fails its equations");
  }
  return x;
}

Verdict probability_verdict(const Rational& p, const Rational& threshold, int states) {
  Verdict v;
  v.probability = p;
  v.accepted = p >= threshold;
  v.detail = "probability " + to_string(p) + (v.accepted ? " >= " : " < ") + to_string(threshold);
  v.states = states;
  return v;
}

}  // namespace

Verdict validate_strategy(const Mdp& m, const MealyStrategy& s, int start, const Claim& claim) {
  const InducedChain chain = build_induced_chain(m, s, start);
  Verdict out;
  switch (claim.kind) {
    case ClaimKind::SureDirFwmp: {
      Mask bad;
      Graph g = monitored(m, chain, claim.l, claim.lambda, bad);
      out.states = g.size();
      out.witness = path_to(g, 0, bad);
      out.accepted = out.witness.empty();
      out.detail = out.accepted ? "no reachable window overflow" : "reachable window overflow";
      return out;
    }
    case ClaimKind::SureFwmp: {
      Mask bad;
      Graph g = monitored(m, chain, claim.l, claim.lambda, bad);
      out.states = g.size();
      for (const auto& comp : tarjan(g)) {
        Mask in(g.size(), 0);
        for (int v : comp) in[v] = 1;
        for (int v : comp) {
          if (!bad[v]) continue;
          bool cyclic = comp.size() > 1 ||
                        std::find(g.succ[v].begin(), g.succ[v].end(), v) != g.succ[v].end();
          if (!cyclic) continue;
          out.witness = cycle_through(g, v, in);
          out.detail = "window overflow on a cycle";
          return out;
        }
      }
      out.accepted = true;
      out.detail = "no cycle carries a window overflow";
      return out;
    }
    case ClaimKind::AlmostSureFwmp:
    case ClaimKind::AlmostSureBuchi: {
      Mask bad;
      Graph g = claim.kind == ClaimKind::AlmostSureFwmp ? monitored(m, chain, claim.l, claim.lambda, bad)
                                                        : chain_graph(chain);
      out.states = g.size();
      auto comps = tarjan(g);
      std::vector<int> comp_of(g.size());
      for (std::size_t i = 0; i < comps.size(); ++i)
        for (int v : comps[i]) comp_of[v] = static_cast<int>(i);
      for (std::size_t i = 0; i < comps.size(); ++i) {
        if (!is_bottom(g, comps[i], comp_of, static_cast<int>(i))) continue;
        bool fine;
        if (claim.kind == ClaimKind::AlmostSureFwmp)
          fine = std::none_of(comps[i].begin(), comps[i].end(), [&](int v) { return bad[v]; });
        else
          fine = std::any_of(comps[i].begin(), comps[i].end(),
                             [&](int v) { return claim.target.contains(g.vertex[v]); });
        if (fine) continue;
        std::vector<int> verts;
        for (int v : comps[i]) verts.push_back(g.vertex[v]);
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        out.witness = verts;
        out.detail = claim.kind == ClaimKind::AlmostSureFwmp ? "bottom component with a window overflow"
                                                             : "bottom component misses the target";
        return out;
      }
      out.accepted = true;
      out.detail = "every bottom component is good";
      return out;
    }
    case ClaimKind::ReachProbability: {
      Graph g = chain_graph(chain);
      Mask goal(g.size(), 0);
      for (int v = 0; v < g.size(); ++v) goal[v] = claim.target.contains(g.vertex[v]);
      return probability_verdict(reach_probability(g, goal)[0], claim.threshold, g.size());
    }
    case ClaimKind::BoundedReachProbability: {
      Graph g = chain_graph(chain);
      std::vector<Rational> mass(g.size(), Rational(0));
      mass[0] = 1;
      Rational hit(0);
      for (int k = 0; k <= claim.steps; ++k) {
        std::vector<Rational> next(g.size(), Rational(0));
        for (int v = 0; v < g.size(); ++v) {
          if (mass[v] == 0) continue;
          if (claim.target.contains(g.vertex[v])) {
            hit += mass[v];
            continue;
          }
          for (std::size_t j = 0; j < g.succ[v].size(); ++j) next[g.succ[v][j]] += mass[v] * g.prob[v][j];
        }
        mass = std::move(next);
      }
      return probability_verdict(hit, claim.threshold, g.size());
    }
    case ClaimKind::FwmpProbability: {
      Mask bad;
      Graph g = monitored(m, chain, claim.l, claim.lambda, bad);
      auto comps = tarjan(g);
      std::vector<int> comp_of(g.size());
      for (std::size_t i = 0; i < comps.size(); ++i)
        for (int v : comps[i]) comp_of[v] = static_cast<int>(i);
      Mask goal(g.size(), 0);
      for (std::size_t i = 0; i < comps.size(); ++i) {
        if (!is_bottom(g, comps[i], comp_of, static_cast<int>(i))) continue;
        if (std::any_of(comps[i].begin(), comps[i].end(), [&](int v) { return bad[v]; })) continue;
        for (int v : comps[i]) goal[v] = 1;
      }
      return probability_verdict(reach_probability(g, goal)[0], claim.threshold, g.size());
    }
  }
  throw Error("unknown claim");
}

SimulationReport simulate(const Mdp& m, const MealyStrategy& s, int start, int steps, int runs, std::uint64_t seed,
                          int l, const Rational& alpha, const std::optional<Rational>& beta) {
  SimulationReport rep;
  rep.runs = runs;
  rep.steps = steps;
  rep.seed = seed;
  if (runs <= 0 || steps <= 0) return rep;
  const auto wa = scale_payoffs(m, alpha).weight;
  const auto wb = beta ? scale_payoffs(m, *beta).weight : wa;
  std::vector<std::vector<double>> cumulative(m.num_vertices());
  for (int v = 0; v < m.num_vertices(); ++v) {
    double acc = 0;
    for (int e : m.out_edges(v)) {
      acc += m.edge(e).prob.convert_to<double>();
      cumulative[v].push_back(acc);
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int r = 0; r < runs; ++r) {
    int v = start, mem = s.initial;
    WindowMonitorState ma, mb;
    bool tail_a = true, tail_b = true;
    for (int k = 0; k < steps; ++k) {
      const MealyTransition* t = s.find(mem, v);
      if (!t) throw Error("strategy undefined along a simulated play");
      int e;
      if (m.is_random(v)) {
        double x = coin(rng) * cumulative[v].back();
        std::size_t i = 0;
        while (i + 1 < cumulative[v].size() && x >= cumulative[v][i]) ++i;
        e = m.out_edges(v)[i];
      } else {
        e = *m.find_edge(v, t->choice);
      }
      ma = monitor_step(ma, wa[e], l);
      mb = monitor_step(mb, wb[e], l);
      if (ma.overflow) {
        ++rep.overflow_alpha;
        if (2 * k >= steps) tail_a = false;
      }
      if (mb.overflow) {
        ++rep.overflow_beta;
        if (2 * k >= steps) tail_b = false;
      }
      mem = t->next;
      v = m.edge(e).dst;
    }
    rep.clean_tail_alpha += tail_a;
    rep.clean_tail_beta += tail_b;
  }
  return rep;
}

Mdp random_mdp(std::mt19937_64& rng, const RandomMdpOptions& opts) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int n = pick(1, opts.max_vertices);
  Mdp m;
  for (int v = 0; v < n; ++v) m.add_vertex("s" + std::to_string(v), pick(0, 9) < 3 ? Owner::Random : Owner::Player);
  for (int v = 0; v < n; ++v) {
    std::vector<int> targets(n);
    for (int i = 0; i < n; ++i) targets[i] = i;
    std::shuffle(targets.begin(), targets.end(), rng);
    const int deg = pick(1, std::min(opts.max_out, n));
    std::vector<int> weight(deg);
    int total = 0;
    for (int i = 0; i < deg; ++i) total += weight[i] = pick(1, 4);
    for (int i = 0; i < deg; ++i) {
      Rational prob = m.is_random(v) ? Rational(weight[i], total) : Rational(0);
      m.add_edge(v, targets[i], Rational(pick(opts.min_payoff, opts.max_payoff)), prob);
    }
  }
  return m;
}

OracleSuiteReport run_oracle_suite(std::uint64_t seed, int count) {
  OracleSuiteReport rep;
  rep.seed = seed;
  rep.count = count;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < count; ++i) {
    Mdp m = random_mdp(rng);
    const int l = std::uniform_int_distribution<int>(1, 4)(rng);
    const Rational lambda(std::uniform_int_distribution<int>(-1, 1)(rng));
    VertexSet t = m.none();
    for (int v = 0; v < m.num_vertices(); ++v)
      if (std::uniform_int_distribution<int>(0, 1)(rng)) t.insert(v);
    if (t.empty()) t.insert(0);

    const auto game = build_window_product(m, l, lambda, Flavor::Game);
    const auto mdp = build_window_product(m, l, lambda, Flavor::Mdp);
    std::vector<std::string> bad;
    if (sure_dir_fwmp(m, l, lambda).region != oracle_sure_region(m, game, WinCondition::Safety))
      bad.push_back("sure_dir_fwmp");
    if (sure_fwmp(m, l, lambda).region != oracle_sure_region(m, game, WinCondition::CoBuchi))
      bad.push_back("sure_fwmp");
    if (almost_sure_fwmp(m, l, lambda).region != oracle_almost_sure_region(m, mdp))
      bad.push_back("almost_sure_fwmp");
    if (almost_sure_buchi(m, t) != oracle_almost_sure_buchi(m, t)) bad.push_back("almost_sure_buchi");
    if (bad.empty()) {
      ++rep.matched;
      continue;
    }
    std::string msg = "instance " + std::to_string(i) + " (l=" + std::to_string(l) + ", lambda=" +
                      to_string(lambda) + "):";
    for (const auto& b : bad) msg += " " + b;
    rep.mismatches.push_back(msg);
  }
  return rep;
}

}  // namespace wmp
