#include "wmp/strategy.hpp"

#include "wmp/almost_sure.hpp"
#include "wmp/combined.hpp"
#include "wmp/sure.hpp"
#include "wmp/window.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <map>
#include <memory>
#include <tuple>

namespace wmp {

const MealyTransition* MealyStrategy::find(int state, int vertex) const {
  auto it = std::lower_bound(transitions.begin(), transitions.end(), std::make_pair(state, vertex),
                             [](const MealyTransition& t, const std::pair<int, int>& key) {
                               return std::make_pair(t.state, t.vertex) < key;
                             });
  if (it == transitions.end() || it->state != state || it->vertex != vertex) return nullptr;
  return &*it;
}

MealyStrategy materialize(const Mdp& m, const StrategyLogic& logic, const std::vector<int>& starts,
                          std::size_t state_limit) {
  enum Tag : int { kFresh = 0, kReady = 1, kPending = 2 };
  using Key = std::tuple<int, int, Memory>;
  std::map<Key, int> ids;
  std::vector<Key> keys;
  auto intern = [&](Key k) {
    auto [it, fresh] = ids.emplace(k, static_cast<int>(keys.size()));
    if (fresh) {
      keys.push_back(std::move(k));
      if (keys.size() > state_limit) throw Error("strategy memory exceeds the materialisation limit");
    }
    return it->second;
  };

  MealyStrategy out;
  out.initial = intern({kFresh, -1, {}});
  for (std::size_t x = 0; x < keys.size(); ++x) {
    const auto [tag, at, q] = keys[x];
    std::vector<std::pair<int, Memory>> inputs;
    if (tag == kFresh) {
      for (int v : starts) inputs.emplace_back(v, logic.enter(v));
    } else if (tag == kReady) {
      inputs.emplace_back(at, q);
    } else {
      for (int e : m.out_edges(at)) {
        int u = m.edge(e).dst;
        inputs.emplace_back(u, logic.advance(q, at, u));
      }
    }
    for (auto& [u, qu] : inputs) {
      MealyTransition t;
      t.state = static_cast<int>(x);
      t.vertex = u;
      if (m.is_random(u)) {
        t.next = intern({kPending, u, qu});
      } else {
        int c = logic.choose(qu, u);
        if (c < 0 || !m.find_edge(u, c))
          throw Error("strategy picked a non-successor at " + m.name(u));
        t.choice = c;
        t.next = intern({kReady, c, logic.advance(qu, u, c)});
      }
      out.transitions.push_back(t);
    }
  }
  out.num_states = static_cast<int>(keys.size());
  std::sort(out.transitions.begin(), out.transitions.end(), [](const MealyTransition& a, const MealyTransition& b) {
    return std::make_pair(a.state, a.vertex) < std::make_pair(b.state, b.vertex);
  });
  return out;
}

MealyStrategy minimize(const MealyStrategy& s) {
  const int n = s.num_states;
  std::vector<std::vector<const MealyTransition*>> outgoing(n);
  for (const auto& t : s.transitions) outgoing[t.state].push_back(&t);

  std::vector<int> cls(n, 0);
  int classes = 1;
  for (;;) {
    std::map<std::pair<int, std::vector<std::array<int, 3>>>, int> sig;
    std::vector<int> next(n);
    for (int x = 0; x < n; ++x) {
      std::vector<std::array<int, 3>> row;
      for (const auto* t : outgoing[x]) row.push_back({t->vertex, t->choice, cls[t->next]});
      auto [it, fresh] = sig.emplace(std::make_pair(cls[x], std::move(row)), static_cast<int>(sig.size()));
      next[x] = it->second;
    }
    const int count = static_cast<int>(sig.size());
    cls = std::move(next);
    if (count == classes) break;
    classes = count;
  }

  // renumber classes in breadth-first order from the initial state
  std::vector<int> order(classes, -1);
  std::vector<int> rep(classes, -1);
  for (int x = 0; x < n; ++x)
    if (rep[cls[x]] < 0) rep[cls[x]] = x;
  std::deque<int> queue{cls[s.initial]};
  int counter = 0;
  order[cls[s.initial]] = counter++;
  while (!queue.empty()) {
    int c = queue.front();
    queue.pop_front();
    for (const auto* t : outgoing[rep[c]]) {
      int d = cls[t->next];
      if (order[d] < 0) {
        order[d] = counter++;
        queue.push_back(d);
      }
    }
  }

  MealyStrategy out;
  out.num_states = counter;
  out.initial = 0;
  out.construction = s.construction;
  out.params = s.params;
  for (int c = 0; c < classes; ++c) {
    if (order[c] < 0) continue;
    for (const auto* t : outgoing[rep[c]])
      out.transitions.push_back({order[c], t->vertex, order[cls[t->next]], t->choice});
  }
  std::sort(out.transitions.begin(), out.transitions.end(), [](const MealyTransition& a, const MealyTransition& b) {
    return std::make_pair(a.state, a.vertex) < std::make_pair(b.state, b.vertex);
  });
  return out;
}

MealyStrategy merge_compatible(const MealyStrategy& s, int max_states) {
  const int n = s.num_states;
  if (n <= 1 || n > max_states) return s;
  std::vector<int> parent(n), size(n, 1);
  std::vector<std::map<int, std::pair<int, int>>> table(n);  // vertex -> (choice, next)
  for (int x = 0; x < n; ++x) parent[x] = x;
  for (const auto& t : s.transitions) table[t.state][t.vertex] = {t.choice, t.next};
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };

  // Union two states and everything their shared inputs force together;
  // undone completely when two merged states disagree on a choice.
  auto try_merge = [&](int a, int b) {
    std::vector<int> absorbed;
    std::vector<std::pair<int, int>> inserted;
    std::vector<std::pair<int, int>> work{{a, b}};
    bool ok = true;
    while (ok && !work.empty()) {
      auto [x, y] = work.back();
      work.pop_back();
      x = find(x);
      y = find(y);
      if (x == y) continue;
      if (size[x] < size[y]) std::swap(x, y);
      for (const auto& [v, out] : table[y]) {
        auto it = table[x].find(v);
        if (it == table[x].end()) continue;
        if (it->second.first != out.first) {
          ok = false;
          break;
        }
        work.emplace_back(it->second.second, out.second);
      }
      if (!ok) break;
      parent[y] = x;
      size[x] += size[y];
      absorbed.push_back(y);
      for (const auto& [v, out] : table[y])
        if (table[x].emplace(v, out).second) inserted.emplace_back(x, v);
    }
    if (ok) return true;
    for (auto it = inserted.rbegin(); it != inserted.rend(); ++it) table[it->first].erase(it->second);
    for (auto it = absorbed.rbegin(); it != absorbed.rend(); ++it) {
      int x = parent[*it];
      size[x] -= size[*it];
      parent[*it] = *it;
    }
    return false;
  };

  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (find(j) == j && find(i) != j && try_merge(j, i)) break;

  std::vector<int> order(n, -1);
  std::deque<int> queue{find(s.initial)};
  int counter = 0;
  order[find(s.initial)] = counter++;
  MealyStrategy out;
  while (!queue.empty()) {
    int c = queue.front();
    queue.pop_front();
    for (const auto& [v, o] : table[c]) {
      int d = find(o.second);
      if (order[d] < 0) {
        order[d] = counter++;
        queue.push_back(d);
      }
      out.transitions.push_back({order[c], v, order[d], o.first});
    }
  }
  out.num_states = counter;
  out.initial = 0;
  out.construction = s.construction;
  out.params = s.params;
  std::sort(out.transitions.begin(), out.transitions.end(), [](const MealyTransition& a, const MealyTransition& b) {
    return std::make_pair(a.state, a.vertex) < std::make_pair(b.state, b.vertex);
  });
  return out;
}

namespace {

std::vector<std::int64_t> local_weights(const Mdp& local, const std::vector<std::int64_t>& root_w) {
  std::vector<std::int64_t> w(local.num_edges());
  for (int f = 0; f < local.num_edges(); ++f) w[f] = root_w[local.edge_origin(f)];
  return w;
}

int local_edge(const Mdp& m, int v, int u) {
  auto e = m.find_edge(v, u);
  if (!e) throw Error("strategy memory update along a missing edge " + m.name(v) + "->" + m.name(u));
  return *e;
}

Memory tail(const Memory& q, std::size_t from) { return Memory(q.begin() + static_cast<long>(from), q.end()); }

Memory with_prefix(std::initializer_list<std::int64_t> head, const Memory& rest) {
  Memory q(head);
  q.insert(q.end(), rest.begin(), rest.end());
  return q;
}

// Sure-FWMP witness on a sub-MDP `local` of the root. Memory: [mode, c, s]
// where mode is the layer whose core the token is tracking windows in, or -1
// while it is still being attracted toward a core.
class FwmpWitness : public StrategyLogic {
 public:
  FwmpWitness(Mdp local, const std::vector<std::int64_t>& root_w, int l)
      : local_(std::move(local)), to_local_(root_index_map(local_)), l_(l) {
    w_ = local_weights(local_, root_w);
    st_ = fwmp_structure(local_, w_, l);
  }

  bool covers(int v) const {
    int lv = v < static_cast<int>(to_local_.size()) ? to_local_[v] : -1;
    return lv >= 0 && st_.region.contains(lv);
  }

  Memory enter(int v) const override { return normalize(at(v), -1, 0, 0); }

  int choose(const Memory& q, int v) const override {
    const int lv = at(v);
    if (q[0] >= 0) {
      const auto k = static_cast<std::size_t>(q[0]);
      int u = good_window_choice(local_, w_, st_.tables[k], st_.layers[k].core, lv, static_cast<int>(q[1]));
      return u < 0 ? -1 : local_.origin(u);
    }
    const int k = st_.layer[lv], r = st_.rank[lv];
    for (int e : local_.out_edges(lv)) {
      int u = local_.edge(e).dst;
      if (!st_.region.contains(u)) continue;
      if (st_.layer[u] < k || (st_.layer[u] == k && st_.rank[u] < r)) return local_.origin(u);
    }
    return -1;
  }

  Memory advance(const Memory& q, int v, int u) const override {
    const int lv = at(v), lu = at(u);
    if (q[0] < 0) return normalize(lu, -1, 0, 0);
    auto ms = monitor_step({static_cast<int>(q[1]), q[2], false}, w_[local_edge(local_, lv, lu)], l_);
    return normalize(lu, q[0], ms.c, ms.s);
  }

 private:
  int at(int v) const {
    int lv = v < static_cast<int>(to_local_.size()) ? to_local_[v] : -1;
    if (lv < 0 || !st_.region.contains(lv)) throw Error("token left the sure-FWMP region");
    return lv;
  }

  Memory normalize(int lv, std::int64_t mode, std::int64_t c, std::int64_t s) const {
    const int k = st_.layer[lv];
    if (k >= 0 && st_.layers[k].core.contains(lv)) {
      if (mode == k) return {mode, c, s};
      return {k, 0, 0};
    }
    return {-1, 0, 0};
  }

  Mdp local_;
  std::vector<int> to_local_;
  std::vector<std::int64_t> w_;
  int l_;
  FwmpStructure st_;
};

// Witness built from the gadgets of a positive-reach run. Memory:
// [stage, gadget vertex, c, s]; stage -1 means the token is in the plain
// copy of the arena and plays the direct-window strategy there.
class GadgetWitness : public StrategyLogic {
 public:
  GadgetWitness(const PosReachResult& pr, const std::vector<std::int64_t>& root_w, int l, bool restart_in_free)
      : arena_(pr.arena), target_(pr.arena_target), to_local_(root_index_map(arena_)), l_(l),
        restart_in_free_(restart_in_free) {
    w_ = local_weights(arena_, root_w);
    free_table_ = good_window_table(arena_, w_, l, arena_.all(), arena_.all());
    stage_of_.assign(arena_.num_vertices(), -1);
    VertexSet r = target_;
    EdgeSet good(arena_.num_edges());
    for (int f : pr.accepted) {
      Stage st;
      st.g = build_gadget(arena_, f, good, r, target_);
      st.w = local_weights(st.g.mdp, root_w);
      st.region = dir_fwmp_region(st.g.mdp, st.w, l, st.g.mdp.all());
      if (!st.region.contains(st.g.hat)) throw Error("accepted edge is not good under the strategy's weights");
      st.table = good_window_table(st.g.mdp, st.w, l, st.g.mdp.all(), st.region);
      const int s = arena_.edge(f).src;
      if (stage_of_[s] < 0) stage_of_[s] = static_cast<int>(stages_.size());
      stages_.push_back(std::move(st));
      good.insert(f);
      r.insert(s);
    }
  }

  bool covers(int v) const {
    int lv = v < static_cast<int>(to_local_.size()) ? to_local_[v] : -1;
    return lv >= 0 && (target_.contains(lv) || stage_of_[lv] >= 0);
  }

  Memory enter(int v) const override { return restart(at(v)); }

  int choose(const Memory& q, int v) const override {
    const int lv = at(v);
    const int c = static_cast<int>(q[2]);
    if (q[0] < 0) {
      int u = good_window_choice(arena_, w_, free_table_, arena_.all(), lv, c);
      return u < 0 ? -1 : arena_.origin(u);
    }
    const Stage& st = stages_[q[0]];
    const int gv = static_cast<int>(q[1]);
    if (st.g.base[gv] != lv) throw Error("gadget memory out of step with the play");
    int gu = good_window_choice(st.g.mdp, st.w, st.table, st.region, gv, c);
    return gu < 0 ? -1 : st.g.mdp.origin(gu);
  }

  Memory advance(const Memory& q, int v, int u) const override {
    const int lv = at(v), lu = at(u);
    WindowMonitorState ms{static_cast<int>(q[2]), q[3], false};
    if (q[0] < 0) {
      ms = monitor_step(ms, w_[local_edge(arena_, lv, lu)], l_);
      if (restart_in_free_ && monitor_reset(ms)) return restart(lu);
      return {-1, -1, ms.c, ms.s};
    }
    const Stage& st = stages_[q[0]];
    int gu = -1;
    for (int e : st.g.mdp.out_edges(static_cast<int>(q[1]))) {
      int cand = st.g.mdp.edge(e).dst;
      if (st.g.base[cand] != lu) continue;
      gu = cand;
      ms = monitor_step(ms, st.w[e], l_);
      break;
    }
    if (gu < 0) throw Error("play left the gadget");
    if (!st.g.copy[gu]) {
      if (restart_in_free_ && monitor_reset(ms)) return restart(lu);
      return {-1, -1, ms.c, ms.s};
    }
    if (monitor_reset(ms)) return restart(lu);
    return {q[0], gu, ms.c, ms.s};
  }

 private:
  struct Stage {
    GadgetMdp g;
    std::vector<std::int64_t> w;
    VertexSet region;
    GoodWindowTable table;
  };

  int at(int v) const {
    int lv = v < static_cast<int>(to_local_.size()) ? to_local_[v] : -1;
    if (lv < 0) throw Error("token left the positive-reach arena");
    return lv;
  }

  Memory restart(int lv) const {
    if (target_.contains(lv)) return {-1, -1, 0, 0};
    const int i = stage_of_[lv];
    if (i < 0) throw Error("no good edge recorded for " + arena_.name(lv));
    return {i, stages_[i].g.hat, 0, 0};
  }

  Mdp arena_;
  VertexSet target_;
  std::vector<int> to_local_;
  int l_;
  bool restart_in_free_;
  std::vector<std::int64_t> w_;
  GoodWindowTable free_table_;
  std::vector<int> stage_of_;
  std::vector<Stage> stages_;
};

class SasWitness : public StrategyLogic {
 public:
  SasWitness(const Mdp& m, const SasResult& res) : ma_(res.mdp_alpha), to_ma_(root_index_map(ma_)) {
    const auto wa = scale_payoffs(m, res.alpha).weight;
    const auto wb = scale_payoffs(m, res.beta).weight;
    top_ = std::make_unique<FwmpWitness>(ma_, wb, res.l);
    w0_ = res.trace.w0;
    VertexSet prev = w0_;
    for (std::size_t i = 0; i < res.trace.iterations.size(); ++i) {
      const auto& it = res.trace.iterations[i];
      sdab_.push_back(it.sdab);
      attr_.push_back(it.attr);
      ranks_.push_back(sure_attractor_ranks(ma_, prev | it.sdab));
      if (!it.sdab.empty())
        buchi_.push_back(std::make_unique<GadgetWitness>(*res.buchi[i].last, wa, res.l, true));
      else
        buchi_.push_back(nullptr);
      prev = it.region;
    }
  }

  Memory enter(int v) const override {
    auto [kind, idx] = region_of(v);
    if (kind == 0) return with_prefix({0, 0}, top_->enter(v));
    if (kind == 1) return with_prefix({1, idx}, buchi_[idx]->enter(v));
    return {2, idx};
  }

  int choose(const Memory& q, int v) const override {
    if (q[0] == 0) return top_->choose(tail(q, 2), v);
    if (q[0] == 1) return buchi_[q[1]]->choose(tail(q, 2), v);
    const auto& rank = ranks_[q[1]];
    const int lv = to_ma_[v];
    for (int e : ma_.out_edges(lv)) {
      int u = ma_.edge(e).dst;
      if (rank[u] >= 0 && rank[u] < rank[lv]) return ma_.origin(u);
    }
    return -1;
  }

  Memory advance(const Memory& q, int v, int u) const override {
    auto [kind, idx] = region_of(u);
    if (kind != q[0] || idx != q[1] || kind == 2) return enter(u);
    if (kind == 0) return with_prefix({0, 0}, top_->advance(tail(q, 2), v, u));
    return with_prefix({1, idx}, buchi_[idx]->advance(tail(q, 2), v, u));
  }

 private:
  std::pair<int, int> region_of(int v) const {
    int lv = v < static_cast<int>(to_ma_.size()) ? to_ma_[v] : -1;
    if (lv < 0) throw Error("token left the sure-alpha region");
    if (w0_.contains(lv)) return {0, 0};
    for (std::size_t i = 0; i < sdab_.size(); ++i) {
      if (sdab_[i].contains(lv)) return {1, static_cast<int>(i)};
      if (attr_[i].contains(lv)) return {2, static_cast<int>(i)};
    }
    throw Error("vertex " + ma_.name(lv) + " lies outside the SAS region");
  }

  Mdp ma_;
  std::vector<int> to_ma_;
  std::unique_ptr<FwmpWitness> top_;
  VertexSet w0_;
  std::vector<VertexSet> sdab_, attr_;
  std::vector<std::vector<int>> ranks_;
  std::vector<std::unique_ptr<GadgetWitness>> buchi_;
};

// Memory: [phase, steps, ...]; phase 0 walks toward the sure-beta region for
// at most N steps, phase 1 plays the beta witness, phase 2 the alpha one.
class SlsWitness : public StrategyLogic {
 public:
  SlsWitness(const Mdp& m, Mdp ma, int l, const Rational& alpha, const Rational& beta, std::int64_t n)
      : ma_(std::move(ma)), to_ma_(root_index_map(ma_)), n_(n) {
    const auto wa = scale_payoffs(m, alpha).weight;
    const auto wb = scale_payoffs(m, beta).weight;
    beta_ = std::make_unique<FwmpWitness>(ma_, wb, l);
    alpha_ = std::make_unique<FwmpWitness>(m, wa, l);
    sure_beta_ = sure_fwmp(ma_, l, beta).region;
    reach_ = almost_sure_reach_strategy(ma_, sure_beta_);
  }

  const ReachStrategy& reach() const { return reach_; }
  const VertexSet& sure_beta() const { return sure_beta_; }

  Memory enter(int v) const override { return start_phase(v, 0); }

  int choose(const Memory& q, int v) const override {
    if (q[0] == 1) return beta_->choose(tail(q, 2), v);
    if (q[0] == 2) return alpha_->choose(tail(q, 2), v);
    int c = reach_.choice[to_ma_[v]];
    return c < 0 ? -1 : ma_.origin(c);
  }

  Memory advance(const Memory& q, int v, int u) const override {
    if (q[0] == 1) return with_prefix({1, 0}, beta_->advance(tail(q, 2), v, u));
    if (q[0] == 2) return with_prefix({2, 0}, alpha_->advance(tail(q, 2), v, u));
    return start_phase(u, q[1] + 1);
  }

 private:
  Memory start_phase(int v, std::int64_t steps) const {
    const int lv = to_ma_[v];
    if (lv < 0) throw Error("token left the sure-alpha region");
    if (sure_beta_.contains(lv)) return with_prefix({1, 0}, beta_->enter(v));
    if (steps >= n_) return with_prefix({2, 0}, alpha_->enter(v));
    return {0, steps};
  }

  Mdp ma_;
  std::vector<int> to_ma_;
  std::int64_t n_;
  std::unique_ptr<FwmpWitness> beta_, alpha_;
  VertexSet sure_beta_;
  ReachStrategy reach_;
};

MealyStrategy finish(const Mdp& m, const StrategyLogic& logic, int start, std::string construction,
                     std::vector<std::pair<std::string, std::string>> params) {
  auto s = merge_compatible(minimize(materialize(m, logic, {start})));
  s.construction = std::move(construction);
  params.emplace_back("start", m.name(start));
  s.params = std::move(params);
  return s;
}

void check_start(const Mdp& m, int start) {
  if (start < 0 || start >= m.num_vertices()) throw Error("start vertex out of range");
  if (m.root_vertices() != m.num_vertices()) throw Error("strategies are synthesised on a root MDP");
}

[[noreturn]] void outside(const Mdp& m, int start, const std::string& what) {
  throw StartOutsideRegion("start vertex " + m.name(start) + " is not in the " + what + " region");
}

MealyStrategy synth_from_sas(const Mdp& m, const SasResult& res, int start, const std::string& construction) {
  if (!res.region.contains(start)) outside(m, start, construction);
  std::vector<std::pair<std::string, std::string>> params{
      {"l", std::to_string(res.l)}, {"alpha", to_string(res.alpha)}, {"beta", to_string(res.beta)}};
  if (res.degenerate) {
    FwmpWitness w(m, scale_payoffs(m, res.alpha).weight, res.l);
    return finish(m, w, start, construction, params);
  }
  SasWitness w(m, res);
  return finish(m, w, start, construction, params);
}

}  // namespace

MealyStrategy synth_sure_fwmp(const Mdp& m, int l, const Rational& lambda, int start) {
  check_start(m, start);
  FwmpWitness w(m, scale_payoffs(m, lambda).weight, l);
  if (!w.covers(start)) outside(m, start, "sure-FWMP");
  return finish(m, w, start, "sure-fwmp", {{"l", std::to_string(l)}, {"lambda", to_string(lambda)}});
}

MealyStrategy synth_sdpr(const Mdp& m, int l, const Rational& alpha, const VertexSet& t, int start) {
  check_start(m, start);
  auto pr = sure_dirfwmp_pos_reach(m, l, alpha, t);
  if (!pr.region.contains(start)) outside(m, start, "sure-DirFWMP positive-reach");
  GadgetWitness w(pr, scale_payoffs(m, alpha).weight, l, false);
  return finish(m, w, start, "sdpr", {{"l", std::to_string(l)}, {"alpha", to_string(alpha)}});
}

MealyStrategy synth_sdab(const Mdp& m, int l, const Rational& alpha, const VertexSet& t, int start) {
  check_start(m, start);
  auto b = sure_dirfwmp_as_buchi(m, l, alpha, t);
  if (!b.region.contains(start)) outside(m, start, "sure-DirFWMP almost-sure-Büchi");
  GadgetWitness w(*b.last, scale_payoffs(m, alpha).weight, l, true);
  return finish(m, w, start, "sdab", {{"l", std::to_string(l)}, {"alpha", to_string(alpha)}});
}

MealyStrategy synth_sas(const Mdp& m, int l, const Rational& alpha, const Rational& beta, int start) {
  check_start(m, start);
  return synth_from_sas(m, sas_fwmp(m, l, alpha, beta), start, "sas-fwmp");
}

MealyStrategy synth_sas_bwmp(const Mdp& m, const Rational& alpha, const Rational& beta, int start) {
  check_start(m, start);
  return synth_from_sas(m, sas_bwmp(m, alpha, beta), start, "sas-bwmp");
}

std::int64_t compute_N(int num_vertices, const Rational& p_min, const Rational& eps) {
  if (eps <= 0 || eps >= 1) throw Error("epsilon must lie strictly between 0 and 1");
  if (p_min <= 0 || p_min > 1) throw Error("minimum probability must lie in (0,1]");
  if (num_vertices < 1) throw Error("need at least one vertex");
  const long double p = p_min.convert_to<long double>();
  const long double log_inv_eps = std::log(1.0L / eps.convert_to<long double>());
  const long double pm = std::pow(p, static_cast<long double>(num_vertices));
  const long double m = num_vertices;
  long double n;
  if (p_min <= Rational(1, 2)) {
    n = std::ceil(2.4L * m * log_inv_eps / pm);
  } else if (p_min == 1) {
    n = m;
  } else {
    n = m * std::ceil(log_inv_eps / -std::log1p(-pm));
  }
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(n));
}

MealyStrategy synth_sls(const Mdp& m, int l, const Rational& alpha, const Rational& beta, const Rational& eps,
                        int start) {
  check_start(m, start);
  const std::int64_t n = compute_N(m.num_vertices(), m.p_min(), eps);
  std::vector<std::pair<std::string, std::string>> params{{"l", std::to_string(l)},
                                                          {"alpha", to_string(alpha)},
                                                          {"beta", to_string(beta)},
                                                          {"epsilon", to_string(eps)},
                                                          {"N", std::to_string(n)}};
  if (!sls_fwmp(m, l, alpha, beta).contains(start)) outside(m, start, "SLS-FWMP");
  if (alpha >= beta) {
    FwmpWitness w(m, scale_payoffs(m, alpha).weight, l);
    return finish(m, w, start, "sls-fwmp", params);
  }
  SlsWitness w(m, sub_mdp(m, sure_fwmp(m, l, alpha).region), l, alpha, beta, n);
  return finish(m, w, start, "sls-fwmp", params);
}

Rational streak_recurrence(int m, const Rational& p, int n) {
  if (m < 1) throw Error("streak length must be at least 1");
  if (p <= 0 || p >= 1) throw Error("p must lie strictly between 0 and 1");
  if (n < 0) throw Error("N must be non-negative");
  Rational pm(1);
  for (int i = 0; i < m; ++i) pm *= p;
  std::vector<Rational> x(static_cast<std::size_t>(n) + 1, Rational(0));
  for (int k = m; k <= n; ++k) {
    Rational acc = pm, pi(1);
    for (int i = 1; i <= m; ++i) {
      acc += pi * (1 - p) * x[k - i];
      pi *= p;
    }
    x[k] = acc;
  }
  return x[n];
}

}  // namespace wmp
