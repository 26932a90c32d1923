#include "wmp/mdp.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace wmp {

int Mdp::add_vertex(std::string name, Owner owner) {
  int v = add_derived_vertex(std::move(name), owner, num_vertices());
  return v;
}

int Mdp::add_derived_vertex(std::string name, Owner owner, int origin) {
  if (by_name_.count(name)) throw Error("duplicate vertex name '" + name + "'");
  int v = num_vertices();
  by_name_.emplace(name, v);
  name_.push_back(std::move(name));
  owner_.push_back(owner);
  out_.emplace_back();
  in_.emplace_back();
  vorigin_.push_back(origin);
  return v;
}

int Mdp::add_edge(int src, int dst, Rational payoff, Rational prob) {
  return add_derived_edge(src, dst, std::move(payoff), std::move(prob), num_edges());
}

int Mdp::add_derived_edge(int src, int dst, Rational payoff, Rational prob, int origin) {
  if (src < 0 || src >= num_vertices() || dst < 0 || dst >= num_vertices())
    throw Error("edge endpoint out of range");
  int e = num_edges();
  edges_.push_back(Edge{src, dst, std::move(payoff), std::move(prob)});
  out_[src].push_back(e);
  in_[dst].push_back(e);
  eorigin_.push_back(origin);
  return e;
}

void Mdp::set_root_shape(int vertices, int edges) {
  root_vertices_ = vertices;
  root_edges_ = edges;
}

std::optional<int> Mdp::find_vertex(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

int Mdp::vertex_named(std::string_view name) const {
  auto v = find_vertex(name);
  if (!v) throw Error("unknown vertex '" + std::string(name) + "'");
  return *v;
}

std::optional<int> Mdp::find_edge(int src, int dst) const {
  for (int e : out_[src])
    if (edges_[e].dst == dst) return e;
  return std::nullopt;
}

Rational Mdp::p_min() const {
  Rational best(1);
  for (const auto& e : edges_)
    if (is_random(e.src) && e.prob > 0 && e.prob < best) best = e.prob;
  return best;
}

Rational Mdp::w_max() const {
  Rational best(0);
  for (const auto& e : edges_) best = std::max(best, Rational(abs(e.payoff)));
  return best;
}

VertexSet Mdp::set_of(const std::vector<std::string>& names) const {
  VertexSet s = none();
  for (const auto& n : names) s.insert(vertex_named(n));
  return s;
}

std::vector<std::string> Mdp::names_of(const VertexSet& s) const {
  std::vector<std::string> out;
  for (int v : s.members()) out.push_back(name_[v]);
  return out;
}

std::vector<std::string> validate(const Mdp& m) {
  std::vector<std::string> problems;
  auto label = [&](const Edge& e) { return m.name(e.src) + "->" + m.name(e.dst); };
  for (int v = 0; v < m.num_vertices(); ++v) {
    if (m.out_edges(v).empty()) {
      problems.push_back("deadlock at " + m.name(v));
      continue;
    }
    std::set<int> seen;
    Rational total(0);
    for (int e : m.out_edges(v)) {
      const Edge& ed = m.edge(e);
      if (!seen.insert(ed.dst).second) problems.push_back("parallel edges " + label(ed));
      if (!m.is_random(v)) {
        if (ed.prob != 0) problems.push_back("probability on player edge " + label(ed));
        continue;
      }
      if (ed.prob <= 0) problems.push_back("non-positive probability on edge " + label(ed));
      if (ed.prob > 1) problems.push_back("probability above 1 on edge " + label(ed));
      total += ed.prob;
    }
    if (m.is_random(v) && total != 1)
      problems.push_back("distribution at " + m.name(v) + " sums to " + to_string(total));
  }
  return problems;
}

void ensure_valid(const Mdp& m) {
  auto problems = validate(m);
  if (problems.empty()) return;
  std::string msg = "invalid MDP:";
  for (const auto& p : problems) msg += " " + p + ";";
  msg.pop_back();
  throw Error(msg);
}

std::optional<int> sub_mdp_violation(const Mdp& m, const VertexSet& v, bool keep_random) {
  for (int x : v.members()) {
    bool inside = false, outside = false;
    for (int e : m.out_edges(x)) {
      if (v.contains(m.edge(e).dst))
        inside = true;
      else
        outside = true;
    }
    if (!inside) return x;
    if (keep_random && m.is_random(x) && outside) return x;
  }
  return std::nullopt;
}

namespace {

Mdp restrict(const Mdp& m, const VertexSet& v, bool rescale) {
  Mdp out;
  std::vector<int> local(m.num_vertices(), -1);
  for (int x : v.members()) local[x] = out.add_derived_vertex(m.name(x), m.owner(x), m.origin(x));
  for (int x : v.members()) {
    Rational mass(0);
    if (rescale && m.is_random(x))
      for (int e : m.out_edges(x))
        if (v.contains(m.edge(e).dst)) mass += m.edge(e).prob;
    for (int e : m.out_edges(x)) {
      const Edge& ed = m.edge(e);
      if (!v.contains(ed.dst)) continue;
      Rational p = ed.prob;
      if (rescale && m.is_random(x)) p /= mass;
      out.add_derived_edge(local[x], local[ed.dst], ed.payoff, p, m.edge_origin(e));
    }
  }
  out.set_root_shape(m.root_vertices(), m.root_edges());
  return out;
}

}  // namespace

Mdp sub_mdp(const Mdp& m, const VertexSet& v) {
  if (auto bad = sub_mdp_violation(m, v, true))
    throw Error("set does not induce a sub-MDP: vertex " + m.name(*bad));
  return restrict(m, v, false);
}

Mdp sub_mdp_closure(const Mdp& m, const VertexSet& v) {
  if (auto bad = sub_mdp_violation(m, v, false))
    throw Error("set does not induce a sub-MDP closure: vertex " + m.name(*bad) +
                " has no out-neighbour inside");
  return restrict(m, v, true);
}

VertexSet lift_to_root(const Mdp& m, const VertexSet& local) {
  VertexSet out(m.root_vertices());
  for (int v : local.members()) out.insert(m.origin(v));
  return out;
}

VertexSet from_root(const Mdp& m, const VertexSet& root) {
  VertexSet out = m.none();
  for (int v = 0; v < m.num_vertices(); ++v)
    if (root.contains(m.origin(v))) out.insert(v);
  return out;
}

VertexSet to_parent(const Mdp& parent, const Mdp& child, const VertexSet& local) {
  return from_root(parent, lift_to_root(child, local));
}

VertexSet to_child(const Mdp& parent, const Mdp& child, const VertexSet& in_parent) {
  return from_root(child, lift_to_root(parent, in_parent));
}

std::vector<int> root_index_map(const Mdp& m) {
  std::vector<int> map(m.root_vertices(), -1);
  for (int v = 0; v < m.num_vertices(); ++v) map[m.origin(v)] = v;
  return map;
}

std::vector<int> sure_attractor_ranks(const Mdp& m, const VertexSet& t) {
  std::vector<int> rank(m.num_vertices(), -1);
  for (int v : t.members()) rank[v] = 0;
  for (int round = 1;; ++round) {
    std::vector<int> joined;
    for (int v = 0; v < m.num_vertices(); ++v) {
      if (rank[v] >= 0) continue;
      bool any = false, every = true;
      for (int e : m.out_edges(v)) {
        int r = rank[m.edge(e).dst];
        if (r >= 0 && r < round) any = true;
        else every = false;
      }
      if (m.is_random(v) ? (every && any) : any) joined.push_back(v);
    }
    if (joined.empty()) break;
    for (int v : joined) rank[v] = round;
  }
  return rank;
}

VertexSet sure_attractor(const Mdp& m, const VertexSet& t) {
  auto rank = sure_attractor_ranks(m, t);
  VertexSet out = m.none();
  for (int v = 0; v < m.num_vertices(); ++v)
    if (rank[v] >= 0) out.insert(v);
  return out;
}

VertexSet sure_safe(const Mdp& m, const VertexSet& t) {
  VertexSet s = t;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v : s.members()) {
      bool any = false, every = true;
      for (int e : m.out_edges(v)) {
        if (s.contains(m.edge(e).dst)) any = true;
        else every = false;
      }
      if (m.is_random(v) ? !every : !any) {
        s.erase(v);
        changed = true;
      }
    }
  }
  return s;
}

VertexSet pos_cpre(const Mdp& m, const VertexSet& w) {
  VertexSet out = m.none();
  for (int v = 0; v < m.num_vertices(); ++v) {
    if (!m.is_random(v) || w.contains(v)) continue;
    bool in = false, out_side = false;
    for (int e : m.out_edges(v)) {
      if (w.contains(m.edge(e).dst)) in = true;
      else out_side = true;
    }
    if (in && out_side) out.insert(v);
  }
  return out;
}

std::vector<VertexSet> strongly_connected_components(const Mdp& m, const VertexSet& within) {
  const int n = m.num_vertices();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  std::vector<VertexSet> comps;
  int counter = 0;
  struct Frame {
    int v;
    std::size_t next;
  };
  for (int root : within.members()) {
    if (index[root] >= 0) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      const auto& outs = m.out_edges(f.v);
      if (f.next < outs.size()) {
        int u = m.edge(outs[f.next++]).dst;
        if (!within.contains(u)) continue;
        if (index[u] < 0) {
          index[u] = low[u] = counter++;
          stack.push_back(u);
          on_stack[u] = 1;
          call.push_back({u, 0});
        } else if (on_stack[u]) {
          low[f.v] = std::min(low[f.v], index[u]);
        }
        continue;
      }
      int v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        VertexSet comp = m.none();
        int x;
        do {
          x = stack.back();
          stack.pop_back();
          on_stack[x] = 0;
          comp.insert(x);
        } while (x != v);
        comps.push_back(std::move(comp));
      }
    }
  }
  return comps;
}

std::vector<VertexSet> mec_decomposition(const Mdp& m) {
  std::vector<VertexSet> result;
  std::deque<VertexSet> work{m.all()};
  while (!work.empty()) {
    VertexSet s = std::move(work.front());
    work.pop_front();
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v : s.members()) {
        bool in = false, leaves = false;
        for (int e : m.out_edges(v)) {
          if (s.contains(m.edge(e).dst)) in = true;
          else leaves = true;
        }
        if (!in || (m.is_random(v) && leaves)) {
          s.erase(v);
          changed = true;
        }
      }
    }
    if (s.empty()) continue;
    auto comps = strongly_connected_components(m, s);
    if (comps.size() == 1) {
      result.push_back(std::move(s));
    } else {
      for (auto& c : comps) work.push_back(std::move(c));
    }
  }
  std::sort(result.begin(), result.end(),
            [](const VertexSet& a, const VertexSet& b) { return a.members().front() < b.members().front(); });
  return result;
}

namespace {

// Backward layering: distance (in edges) to t along edges that stay inside u.
std::vector<int> positive_reach_layers(const Mdp& m, const VertexSet& t, const VertexSet& u) {
  std::vector<int> dist(m.num_vertices(), -1);
  std::deque<int> queue;
  for (int v : (t & u).members()) {
    dist[v] = 0;
    queue.push_back(v);
  }
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int e : m.in_edges(x)) {
      int y = m.edge(e).src;
      if (!u.contains(y) || dist[y] >= 0) continue;
      dist[y] = dist[x] + 1;
      queue.push_back(y);
    }
  }
  return dist;
}

}  // namespace

ReachStrategy almost_sure_reach_strategy(const Mdp& m, const VertexSet& t) {
  VertexSet u = m.all();
  std::vector<int> dist;
  for (;;) {
    dist = positive_reach_layers(m, t, u);
    VertexSet removed = m.none();
    for (int v : u.members())
      if (dist[v] < 0) removed.insert(v);
    if (removed.empty()) break;
    bool grew = true;
    while (grew) {
      grew = false;
      for (int v : u.members()) {
        if (removed.contains(v) || t.contains(v)) continue;
        bool any = false, every = true;
        for (int e : m.out_edges(v)) {
          if (removed.contains(m.edge(e).dst) || !u.contains(m.edge(e).dst)) any = true;
          else every = false;
        }
        if (m.is_random(v) ? any : every) {
          removed.insert(v);
          grew = true;
        }
      }
    }
    u -= removed;
  }
  ReachStrategy out{u, std::vector<int>(m.num_vertices(), -1)};
  for (int v : u.members()) {
    if (t.contains(v) || m.is_random(v)) continue;
    int best = -1;
    for (int e : m.out_edges(v)) {
      int w = m.edge(e).dst;
      if (!u.contains(w)) continue;
      if (best < 0 || dist[w] < dist[best] || (dist[w] == dist[best] && w < best)) best = w;
    }
    out.choice[v] = best;
  }
  return out;
}

VertexSet almost_sure_reach(const Mdp& m, const VertexSet& t) {
  return almost_sure_reach_strategy(m, t).region;
}

}  // namespace wmp
