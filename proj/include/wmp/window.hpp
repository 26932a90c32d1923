#pragma once

#include "wmp/mdp.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace wmp {

enum class ObjectiveKind {
  GoodWindow,
  DirFwmp,
  Fwmp,
  DirBwmp,
  Bwmp,
  MeanPayoff,
  Reach,
  Safe,
  Buchi,
  CoBuchi,
  BoundedReach,
  EdgeRestrictedReach,
  TotalPayoff,
};

struct ObjectiveSpec {
  ObjectiveKind kind = ObjectiveKind::Fwmp;
  int l = 1;
  Rational lambda;
  VertexSet target;
  EdgeSet edges;
  int bound = 0;
};

struct Lasso {
  std::vector<int> stem;
  std::vector<int> cycle;
};

struct WindowMonitorState {
  int c = 0;
  std::int64_t s = 0;
  bool overflow = false;

  bool operator==(const WindowMonitorState&) const = default;
};

// Payoffs rewritten as D * (w - lambda) where D clears every denominator, so
// the threshold becomes 0.
struct ScaledPayoffs {
  std::vector<std::int64_t> weight;  // indexed by edge id
  Integer factor;
  Rational lambda;
  std::int64_t w_max = 0;
};

ScaledPayoffs scale_payoffs(const Mdp& m, const Rational& lambda);
Mdp scaled_mdp(const Mdp& m, const Rational& lambda);

WindowMonitorState monitor_step(WindowMonitorState st, std::int64_t payoff, int l);
inline bool monitor_reset(const WindowMonitorState& st) { return st.c == 0; }

void check_lasso(const Mdp& m, const Lasso& play);
int lasso_vertex(const Lasso& play, long long pos);
bool eval_on_lasso(const Mdp& m, const Lasso& play, const ObjectiveSpec& obj);
bool inclusion_chain_check(const Mdp& m, const Lasso& play, int l, const Rational& lambda);

}  // namespace wmp
