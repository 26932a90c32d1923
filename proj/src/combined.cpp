#include "wmp/combined.hpp"

#include "wmp/almost_sure.hpp"
#include "wmp/sure.hpp"

#include <algorithm>

namespace wmp {

GadgetMdp build_gadget(const Mdp& m, int e, const EdgeSet& good, const VertexSet& r, const VertexSet& t) {
  const Edge& picked = m.edge(e);
  const int s = picked.src;
  if (t.contains(s)) throw Error("gadget edge must leave a vertex outside the target");
  if (!r.contains(picked.dst)) throw Error("gadget edge must enter the current reach set");
  if (good.contains(e)) throw Error("gadget edge is already good");
  if (!t.subset_of(r)) throw Error("target must lie inside the reach set");

  const int n = m.num_vertices();
  GadgetMdp g;
  g.copy_of.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    g.mdp.add_derived_vertex(m.name(v), m.owner(v), m.origin(v));
    g.base.push_back(v);
    g.copy.push_back(0);
  }
  for (int v : t.members()) g.copy_of[v] = v;
  for (int v : (r - t).members()) {
    g.copy_of[v] = g.mdp.add_derived_vertex("~" + m.name(v), m.owner(v), m.origin(v));
    g.base.push_back(v);
    g.copy.push_back(1);
  }
  g.hat = g.mdp.add_derived_vertex("^" + m.name(s), m.owner(s), m.origin(s));
  g.base.push_back(s);
  g.copy.push_back(0);

  auto add = [&](int src, int dst, int f) {
    const Edge& ed = m.edge(f);
    g.mdp.add_derived_edge(src, dst, ed.payoff, ed.prob, m.edge_origin(f));
  };
  for (int f = 0; f < m.num_edges(); ++f) add(m.edge(f).src, m.edge(f).dst, f);
  for (int f : good.members()) add(g.copy_of[m.edge(f).src], g.copy_of[m.edge(f).dst], f);
  for (int u : (r - t).members()) {
    if (!m.is_random(u)) continue;
    for (int f : m.out_edges(u))
      if (!good.contains(f)) add(g.copy_of[u], m.edge(f).dst, f);
  }
  add(g.hat, g.copy_of[picked.dst], e);
  if (m.is_random(s))
    for (int f : m.out_edges(s))
      if (f != e) add(g.hat, m.edge(f).dst, f);
  g.mdp.set_root_shape(m.root_vertices(), m.root_edges());
  return g;
}

bool is_good_edge(const Mdp& m, int e, const EdgeSet& good, const VertexSet& r, const VertexSet& t, int l,
                  const Rational& alpha) {
  GadgetMdp g = build_gadget(m, e, good, r, t);
  return sure_dir_fwmp(g.mdp, l, alpha).region.contains(g.hat);
}

namespace {

// edge id of `child` -> edge id of `parent`, both derived from the same root
std::vector<int> parent_edges(const Mdp& parent, const Mdp& child) {
  std::vector<int> by_root(parent.root_edges(), -1);
  for (int f = 0; f < parent.num_edges(); ++f) by_root[parent.edge_origin(f)] = f;
  std::vector<int> out(child.num_edges());
  for (int f = 0; f < child.num_edges(); ++f) out[f] = by_root[child.edge_origin(f)];
  return out;
}

}  // namespace

PosReachResult sure_dirfwmp_pos_reach(const Mdp& m, int l, const Rational& alpha, const VertexSet& t,
                                      const std::vector<int>* priority) {
  VertexSet sd = sure_dir_fwmp(m, l, alpha).region;
  PosReachResult res;
  res.arena = sub_mdp(m, sd);
  const Mdp& a = res.arena;
  const VertexSet target = to_child(m, a, t & sd);
  res.arena_target = target;
  const auto up = parent_edges(m, a);

  VertexSet r = target;
  EdgeSet good(a.num_edges()), bad(a.num_edges());
  for (;;) {
    int pick = -1;
    long long pick_key = 0;
    for (int f = 0; f < a.num_edges(); ++f) {
      const Edge& ed = a.edge(f);
      if (target.contains(ed.src) || !r.contains(ed.dst) || good.contains(f) || bad.contains(f)) continue;
      long long key = priority ? (*priority)[up[f]] : up[f];
      if (pick < 0 || key < pick_key) {
        pick = f;
        pick_key = key;
      }
    }
    if (pick < 0) break;
    const bool ok = is_good_edge(a, pick, good, r, target, l, alpha);
    res.verdicts.push_back({up[pick], ok});
    if (ok) {
      good.insert(pick);
      r.insert(a.edge(pick).src);
      bad = EdgeSet(a.num_edges());
      res.accepted.push_back(pick);
    } else {
      bad.insert(pick);
    }
  }
  res.region = to_parent(m, a, r);
  res.good = EdgeSet(m.num_edges());
  res.bad = EdgeSet(m.num_edges());
  for (int f : good.members()) res.good.insert(up[f]);
  for (int f : bad.members()) res.bad.insert(up[f]);
  return res;
}

BuchiResult sure_dirfwmp_as_buchi(const Mdp& m, int l, const Rational& alpha, const VertexSet& t) {
  BuchiResult res;
  res.region = m.none();
  Mdp cur = m;
  VertexSet target = t;
  while (cur.num_vertices() > 0) {
    ++res.rounds;
    if (res.rounds > m.num_vertices()) throw Error("Büchi recursion exceeded its depth bound");
    auto pr = sure_dirfwmp_pos_reach(cur, l, alpha, target);
    if (pr.region == cur.all()) {
      res.region = to_parent(m, cur, cur.all());
      res.last = std::move(pr);
      return res;
    }
    VertexSet safe = sure_safe(cur, pr.region);
    if (safe.empty()) return res;
    Mdp next = sub_mdp(cur, safe);
    target = to_child(cur, next, target & safe);
    cur = std::move(next);
  }
  return res;
}

SasResult sas_fwmp(const Mdp& m, int l, const Rational& alpha, const Rational& beta) {
  SasResult res;
  res.l = l;
  res.alpha = alpha;
  res.beta = beta;
  res.sure_alpha = sure_fwmp(m, l, alpha).region;
  res.mdp_alpha = sub_mdp(m, res.sure_alpha);
  const Mdp& ma = res.mdp_alpha;
  if (alpha >= beta) {
    res.degenerate = true;
    res.region = res.sure_alpha;
    res.trace.w0 = ma.all();
    res.trace.final_region = ma.all();
    return res;
  }
  VertexSet w = sure_fwmp(ma, l, beta).region;
  res.trace.w0 = w;
  for (;;) {
    SasIteration it;
    it.pos_cpre = pos_cpre(ma, w);
    it.sdab = ma.none();
    VertexSet rest = ma.all() - w;
    if (!rest.empty()) {
      Mdp closure = sub_mdp_closure(ma, rest);
      auto b = sure_dirfwmp_as_buchi(closure, l, alpha, to_child(ma, closure, it.pos_cpre));
      it.sdab = to_parent(ma, closure, b.region);
      res.rounds.push_back(std::move(closure));
      res.buchi.push_back(std::move(b));
    } else {
      res.rounds.emplace_back();
      res.buchi.emplace_back();
    }
    it.region = sure_attractor(ma, w | it.sdab);
    it.attr = it.region - (w | it.sdab);
    const bool done = it.sdab.empty();
    w = it.region;
    res.trace.iterations.push_back(std::move(it));
    if (done) break;
  }
  res.trace.final_region = w;
  res.region = to_parent(m, ma, w);
  return res;
}

std::optional<std::string> check_sas_trace(const SasTrace& trace) {
  VertexSet prev = trace.w0;
  for (std::size_t i = 0; i < trace.iterations.size(); ++i) {
    const auto& it = trace.iterations[i];
    const std::string at = "iteration " + std::to_string(i + 1) + ": ";
    if (prev.intersects(it.sdab) || prev.intersects(it.attr) || it.sdab.intersects(it.attr))
      return at + "parts overlap";
    if ((prev | it.sdab | it.attr) != it.region) return at + "parts do not cover the region";
    if (!it.sdab.empty() && !it.sdab.intersects(it.pos_cpre)) return at + "Büchi region misses the predecessor set";
    if (i + 1 == trace.iterations.size()) {
      if (!it.sdab.empty()) return at + "last iteration still grew";
      if (it.region != prev) return at + "last iteration changed the region";
    }
    prev = it.region;
  }
  if (prev != trace.final_region) return std::string("final region differs from last iteration");
  return std::nullopt;
}

VertexSet sls_fwmp(const Mdp& m, int l, const Rational& alpha, const Rational& beta) {
  VertexSet sure = sure_fwmp(m, l, alpha).region;
  if (alpha >= beta) return sure;
  Mdp ma = sub_mdp(m, sure);
  return to_parent(m, ma, almost_sure_fwmp(ma, l, beta).region);
}

int bwmp_pair_length(const Mdp& m, const Rational& alpha, const Rational& beta) {
  return std::max(bwmp_window_length(m, alpha), bwmp_window_length(m, beta));
}

PosReachResult sure_dirbwmp_pos_reach(const Mdp& m, const Rational& alpha, const VertexSet& t) {
  return sure_dirfwmp_pos_reach(m, bwmp_window_length(m, alpha), alpha, t);
}

BuchiResult sure_dirbwmp_as_buchi(const Mdp& m, const Rational& alpha, const VertexSet& t) {
  return sure_dirfwmp_as_buchi(m, bwmp_window_length(m, alpha), alpha, t);
}

SasResult sas_bwmp(const Mdp& m, const Rational& alpha, const Rational& beta) {
  return sas_fwmp(m, bwmp_pair_length(m, alpha, beta), alpha, beta);
}

VertexSet sls_bwmp(const Mdp& m, const Rational& alpha, const Rational& beta) {
  return sls_fwmp(m, bwmp_pair_length(m, alpha, beta), alpha, beta);
}

}  // namespace wmp
