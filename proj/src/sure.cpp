#include "wmp/sure.hpp"

#include <algorithm>

namespace wmp {

GoodWindowTable good_window_table(const Mdp& m, const std::vector<std::int64_t>& weight, int l,
                                  const VertexSet& arena, const VertexSet& allowed) {
  const int n = m.num_vertices();
  GoodWindowTable t;
  t.l = l;
  t.value.assign(l + 1, std::vector<std::int64_t>(n, kLost));
  for (int h = 1; h <= l; ++h) {
    const auto& prev = t.value[h - 1];
    auto& cur = t.value[h];
    for (int v : allowed.members()) {
      const bool random = m.is_random(v);
      std::int64_t best = random ? kFree : kLost;
      for (int e : m.out_edges(v)) {
        int u = m.edge(e).dst;
        if (!allowed.contains(u)) {
          if (random && arena.contains(u)) best = kLost;
          continue;
        }
        std::int64_t cand = weight[e] + std::max<std::int64_t>(0, prev[u]);
        best = random ? std::min(best, cand) : std::max(best, cand);
      }
      cur[v] = best;
    }
  }
  return t;
}

int good_window_choice(const Mdp& m, const std::vector<std::int64_t>& weight, const GoodWindowTable& table,
                       const VertexSet& allowed, int v, int steps_taken) {
  const int h = table.l - steps_taken;
  int best_u = -1;
  std::int64_t best = kLost;
  for (int e : m.out_edges(v)) {
    int u = m.edge(e).dst;
    if (!allowed.contains(u)) continue;
    std::int64_t cand = weight[e] + std::max<std::int64_t>(0, h >= 1 ? table.at(h - 1, u) : kLost);
    if (best_u < 0 || cand > best || (cand == best && u < best_u)) {
      best = cand;
      best_u = u;
    }
  }
  return best_u;
}

VertexSet dir_fwmp_region(const Mdp& m, const std::vector<std::int64_t>& weight, int l, const VertexSet& arena,
                          std::vector<VertexSet>* trace) {
  VertexSet cur = arena;
  for (;;) {
    auto table = good_window_table(m, weight, l, arena, cur);
    VertexSet next = m.none();
    for (int v : cur.members())
      if (table.wins(v)) next.insert(v);
    if (trace) trace->push_back(next);
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

FwmpStructure fwmp_structure(const Mdp& m, const std::vector<std::int64_t>& weight, int l) {
  const int n = m.num_vertices();
  FwmpStructure st;
  st.region = m.none();
  st.layer.assign(n, -1);
  st.rank.assign(n, -1);
  for (;;) {
    VertexSet residual = st.region.complement();
    if (residual.empty()) break;
    VertexSet core = dir_fwmp_region(m, weight, l, residual);
    if (core.empty()) break;
    auto rank = sure_attractor_ranks(m, st.region | core);
    const int k = static_cast<int>(st.layers.size());
    for (int v = 0; v < n; ++v) {
      if (rank[v] < 0 || st.region.contains(v)) continue;
      st.layer[v] = k;
      st.rank[v] = core.contains(v) ? 0 : rank[v];
      st.region.insert(v);
    }
    st.tables.push_back(good_window_table(m, weight, l, residual, core));
    st.layers.push_back({std::move(residual), std::move(core)});
    st.trace.push_back(st.region);
  }
  return st;
}

namespace {

void check_length(int l) {
  if (l < 1) throw Error("window length must be at least 1");
}

std::vector<int> closing_horizons(const GoodWindowTable& t, const VertexSet& region) {
  std::vector<int> w(region.universe(), -1);
  for (int v : region.members())
    for (int h = 1; h <= t.l; ++h)
      if (t.at(h, v) >= 0) {
        w[v] = h;
        break;
      }
  return w;
}

}  // namespace

SureSolveResult sure_good_win(const Mdp& m, int l, const Rational& lambda) {
  check_length(l);
  auto sc = scale_payoffs(m, lambda);
  auto table = good_window_table(m, sc.weight, l, m.all(), m.all());
  SureSolveResult r;
  r.region = m.none();
  for (int v = 0; v < m.num_vertices(); ++v)
    if (table.wins(v)) r.region.insert(v);
  r.witness = closing_horizons(table, r.region);
  r.trace.push_back(r.region);
  return r;
}

SureSolveResult sure_dir_fwmp(const Mdp& m, int l, const Rational& lambda) {
  check_length(l);
  auto sc = scale_payoffs(m, lambda);
  SureSolveResult r;
  r.region = dir_fwmp_region(m, sc.weight, l, m.all(), &r.trace);
  r.witness = closing_horizons(good_window_table(m, sc.weight, l, m.all(), r.region), r.region);
  return r;
}

SureSolveResult sure_fwmp(const Mdp& m, int l, const Rational& lambda) {
  check_length(l);
  auto sc = scale_payoffs(m, lambda);
  auto st = fwmp_structure(m, sc.weight, l);
  SureSolveResult r;
  r.region = st.region;
  r.trace = st.trace;
  r.witness.assign(m.num_vertices(), -1);
  for (std::size_t k = 0; k < st.layers.size(); ++k) {
    auto w = closing_horizons(st.tables[k], st.layers[k].core);
    for (int v : st.layers[k].core.members()) r.witness[v] = w[v];
  }
  return r;
}

std::int64_t bwmp_window_bound(const Mdp& m, const Rational& lambda) {
  const std::int64_t n = m.num_vertices();
  return n * (n * scale_payoffs(m, lambda).w_max + 1);
}

int bwmp_window_length(const Mdp& m, const Rational& lambda) {
  std::int64_t l = bwmp_window_bound(m, lambda);
  if (l > (1 << 22)) throw Error("bounded-window reduction needs window length " + std::to_string(l) + ", too large");
  return static_cast<int>(std::max<std::int64_t>(l, 1));
}

SureSolveResult sure_dir_bwmp(const Mdp& m, const Rational& lambda) {
  return sure_dir_fwmp(m, bwmp_window_length(m, lambda), lambda);
}

SureSolveResult sure_bwmp(const Mdp& m, const Rational& lambda) {
  return sure_fwmp(m, bwmp_window_length(m, lambda), lambda);
}

}  // namespace wmp
