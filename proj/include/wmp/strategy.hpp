#pragma once

#include "wmp/mdp.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace wmp {

struct MealyTransition {
  int state = 0;
  int vertex = 0;
  int next = 0;
  int choice = -1;  // successor picked at a player vertex, -1 at random vertices
};

struct MealyStrategy {
  int num_states = 0;
  int initial = 0;
  std::vector<MealyTransition> transitions;  // sorted by (state, vertex)
  std::string construction;
  std::vector<std::pair<std::string, std::string>> params;

  const MealyTransition* find(int state, int vertex) const;
};

// Strategy with structured memory. `enter` gives the memory for a play that
// starts at v; `advance` the memory once the token moved along (v, u).
using Memory = std::vector<std::int64_t>;

class StrategyLogic {
 public:
  virtual ~StrategyLogic() = default;
  virtual Memory enter(int v) const = 0;
  virtual int choose(const Memory& q, int v) const = 0;
  virtual Memory advance(const Memory& q, int v, int u) const = 0;
};

MealyStrategy materialize(const Mdp& m, const StrategyLogic& logic, const std::vector<int>& starts,
                          std::size_t state_limit = 4'000'000);
MealyStrategy minimize(const MealyStrategy& s);
// Greedy merge of states that never disagree on a shared input. Machines
// above `max_states` are returned unchanged.
MealyStrategy merge_compatible(const MealyStrategy& s, int max_states = 6000);

class StartOutsideRegion : public Error {
 public:
  using Error::Error;
};

MealyStrategy synth_sure_fwmp(const Mdp& m, int l, const Rational& lambda, int start);
MealyStrategy synth_sdpr(const Mdp& m, int l, const Rational& alpha, const VertexSet& t, int start);
MealyStrategy synth_sdab(const Mdp& m, int l, const Rational& alpha, const VertexSet& t, int start);
MealyStrategy synth_sas(const Mdp& m, int l, const Rational& alpha, const Rational& beta, int start);
MealyStrategy synth_sas_bwmp(const Mdp& m, const Rational& alpha, const Rational& beta, int start);

std::int64_t compute_N(int num_vertices, const Rational& p_min, const Rational& eps);
MealyStrategy synth_sls(const Mdp& m, int l, const Rational& alpha, const Rational& beta, const Rational& eps,
                        int start);

Rational streak_recurrence(int m, const Rational& p, int n);

}  // namespace wmp
