#pragma once

// Brute-force references used by the property tests and the acceptance gate.
// Nothing in here goes through the window monitor or the solver fixpoints.

#include "wmp/io.hpp"
#include "wmp/mdp.hpp"
#include "wmp/oracle.hpp"
#include "wmp/window.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#ifndef WMP_INSTANCE_DIR
#define WMP_INSTANCE_DIR "instances"
#endif

namespace brute {

inline wmp::Mdp instance(const std::string& name) {
  return wmp::parse_mdp_file(std::string(WMP_INSTANCE_DIR) + "/" + name + ".mdp");
}

inline wmp::VertexSet set(const wmp::Mdp& m, std::initializer_list<const char*> names) {
  std::vector<std::string> v(names.begin(), names.end());
  return m.set_of(v);
}

// scaled payoff of every step of the lasso, unrolled `rounds` times
inline std::vector<std::int64_t> lasso_weights(const wmp::Mdp& m, const wmp::Lasso& play, const wmp::Rational& lambda,
                                               int rounds) {
  const auto w = wmp::scale_payoffs(m, lambda).weight;
  std::vector<int> seq = play.stem;
  for (int r = 0; r < rounds; ++r) seq.insert(seq.end(), play.cycle.begin(), play.cycle.end());
  seq.push_back(play.cycle.front());
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) out.push_back(w[*m.find_edge(seq[i], seq[i + 1])]);
  return out;
}

// Window opened before step i closes within l steps of the sequence.
inline bool window_closes(const std::vector<std::int64_t>& w, std::size_t i, int l) {
  std::int64_t sum = 0;
  for (std::size_t j = i; j < w.size() && j < i + static_cast<std::size_t>(l); ++j) {
    sum += w[j];
    if (sum >= 0) return true;
  }
  return false;
}

// Every window fully inside the prefix closes in time; windows still open
// when the prefix ends with fewer than l steps left are not judged.
inline bool prefix_direct_ok(const std::vector<std::int64_t>& w, int l) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (i + static_cast<std::size_t>(l) <= w.size() && !window_closes(w, i, l)) return false;
  return true;
}

inline bool dir_fwmp(const wmp::Mdp& m, const wmp::Lasso& play, int l, const wmp::Rational& lambda) {
  const std::size_t stem = play.stem.size(), cyc = play.cycle.size();
  const int rounds = static_cast<int>((l + cyc - 1) / cyc) + 1;
  auto w = lasso_weights(m, play, lambda, rounds);
  for (std::size_t i = 0; i < stem + cyc; ++i)
    if (!window_closes(w, i, l)) return false;
  return true;
}

inline bool fwmp(const wmp::Mdp& m, const wmp::Lasso& play, int l, const wmp::Rational& lambda) {
  const std::size_t stem = play.stem.size(), cyc = play.cycle.size();
  const int rounds = static_cast<int>((l + cyc - 1) / cyc) + 1;
  auto w = lasso_weights(m, play, lambda, rounds);
  for (std::size_t i = stem; i < stem + cyc; ++i)
    if (!window_closes(w, i, l)) return false;
  return true;
}

inline std::int64_t cycle_sum(const wmp::Mdp& m, const wmp::Lasso& play, const wmp::Rational& lambda) {
  wmp::Lasso only{{}, play.cycle};
  auto w = lasso_weights(m, only, lambda, 1);
  std::int64_t s = 0;
  for (auto x : w) s += x;
  return s;
}

inline bool mean_payoff(const wmp::Mdp& m, const wmp::Lasso& play, const wmp::Rational& lambda) {
  return cycle_sum(m, play, lambda) >= 0;
}

// Some window length works. Windows of the cycle need at most |cycle| steps
// once they close at all; stem windows may need to ride the cycle for a while.
inline bool bwmp(const wmp::Mdp& m, const wmp::Lasso& play, const wmp::Rational& lambda) {
  for (int l = 1; l <= static_cast<int>(play.cycle.size()); ++l)
    if (fwmp(m, play, l, lambda)) return true;
  return false;
}

inline bool dir_bwmp(const wmp::Mdp& m, const wmp::Lasso& play, const wmp::Rational& lambda) {
  const auto sc = wmp::scale_payoffs(m, lambda);
  const int n = static_cast<int>(play.stem.size() + play.cycle.size());
  const int limit = n * (n * static_cast<int>(std::max<std::int64_t>(sc.w_max, 1)) + 2);
  for (int l = 1; l <= limit; ++l)
    if (dir_fwmp(m, play, l, lambda)) return true;
  return false;
}

// Random lasso of a random MDP: walk until a vertex repeats.
inline wmp::Lasso random_lasso(const wmp::Mdp& m, std::mt19937_64& rng) {
  std::vector<int> walk{std::uniform_int_distribution<int>(0, m.num_vertices() - 1)(rng)};
  for (;;) {
    const auto& out = m.out_edges(walk.back());
    int next = m.edge(out[std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng)]).dst;
    auto hit = std::find(walk.begin(), walk.end(), next);
    if (hit != walk.end()) {
      wmp::Lasso play;
      play.stem.assign(walk.begin(), hit);
      play.cycle.assign(hit, walk.end());
      return play;
    }
    walk.push_back(next);
  }
}

// Subset enumeration of end components: strongly connected sets closed under
// the random-vertex rule. Returns the maximal ones.
inline std::vector<wmp::VertexSet> mecs(const wmp::Mdp& m) {
  const int n = m.num_vertices();
  std::vector<unsigned> ecs;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    auto in = [&](int v) { return (mask >> v) & 1u; };
    bool ok = true;
    for (int v = 0; v < n && ok; ++v) {
      if (!in(v)) continue;
      bool inside = false, leaves = false;
      for (int e : m.out_edges(v)) (in(m.edge(e).dst) ? inside : leaves) = true;
      if (!inside || (m.is_random(v) && leaves)) ok = false;
    }
    if (!ok) continue;
    int first = __builtin_ctz(mask);
    for (int v = 0; v < n && ok; ++v) {
      if (!in(v)) continue;
      // v and first reach each other inside the set
      for (auto [a, b] : {std::pair{first, v}, std::pair{v, first}}) {
        unsigned seen = 1u << a;
        std::vector<int> stack{a};
        while (!stack.empty()) {
          int x = stack.back();
          stack.pop_back();
          for (int e : m.out_edges(x)) {
            int y = m.edge(e).dst;
            if (in(y) && !((seen >> y) & 1u)) {
              seen |= 1u << y;
              stack.push_back(y);
            }
          }
        }
        if (!((seen >> b) & 1u)) ok = false;
      }
    }
    if (ok) ecs.push_back(mask);
  }
  std::vector<wmp::VertexSet> out;
  for (unsigned a : ecs) {
    bool maximal = std::none_of(ecs.begin(), ecs.end(), [&](unsigned b) { return b != a && (a & b) == a; });
    if (!maximal) continue;
    wmp::VertexSet s(n);
    for (int v = 0; v < n; ++v)
      if ((a >> v) & 1u) s.insert(v);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](const wmp::VertexSet& a, const wmp::VertexSet& b) {
    return a.members().front() < b.members().front();
  });
  return out;
}

// Probability that N tosses contain m consecutive heads, by enumeration.
inline wmp::Rational streak_by_enumeration(int m, const wmp::Rational& p, int n) {
  std::vector<long long> count(n + 1, 0);
  for (unsigned long seq = 0; seq < (1ul << n); ++seq) {
    int run = 0;
    bool hit = false;
    for (int i = 0; i < n && !hit; ++i) {
      run = ((seq >> i) & 1ul) ? run + 1 : 0;
      hit = run >= m;
    }
    if (hit) ++count[__builtin_popcountl(seq)];
  }
  wmp::Rational total(0);
  for (int h = 0; h <= n; ++h) {
    if (!count[h]) continue;
    wmp::Rational w(count[h]);
    for (int i = 0; i < h; ++i) w *= p;
    for (int i = h; i < n; ++i) w *= 1 - p;
    total += w;
  }
  return total;
}

}  // namespace brute
