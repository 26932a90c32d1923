#pragma once

#include "wmp/mdp.hpp"
#include "wmp/strategy.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace wmp {

enum class Flavor { Game, Mdp };

// Reachable part of (vertex x window monitor). A state is bad when the step
// that entered it overflowed the window.
struct WindowProduct {
  struct State {
    int vertex = 0;
    int c = 0;
    std::int64_t s = 0;
    bool bad = false;
  };
  struct Move {
    int to = 0;
    Rational prob;  // zero out of player states
  };

  Flavor flavor = Flavor::Game;
  int l = 1;
  std::vector<State> states;
  std::vector<std::vector<Move>> moves;
  std::vector<int> initial;  // per base vertex
};

WindowProduct build_window_product(const Mdp& m, int l, const Rational& lambda, Flavor flavor);

enum class WinCondition { Safety, CoBuchi };

VertexSet oracle_sure_region(const Mdp& m, const WindowProduct& product, WinCondition cond);
VertexSet oracle_almost_sure_region(const Mdp& m, const WindowProduct& product);
VertexSet oracle_almost_sure_buchi(const Mdp& m, const VertexSet& t);

// Markov chain obtained by resolving player choices with a Mealy strategy.
struct InducedChain {
  struct Step {
    int to = 0;
    Rational prob;
    int edge = 0;
  };
  struct State {
    int memory = 0;
    int vertex = 0;
  };
  std::vector<State> states;
  std::vector<std::vector<Step>> steps;
};

InducedChain build_induced_chain(const Mdp& m, const MealyStrategy& s, int start);

enum class ClaimKind {
  SureDirFwmp,
  SureFwmp,
  AlmostSureFwmp,
  AlmostSureBuchi,
  ReachProbability,
  BoundedReachProbability,
  FwmpProbability,
};

struct Claim {
  ClaimKind kind = ClaimKind::SureFwmp;
  int l = 1;
  Rational lambda;
  VertexSet target;
  Rational threshold;
  int steps = 0;
};

struct Verdict {
  bool accepted = false;
  std::string detail;
  std::vector<int> witness;  // vertices of an offending path, cycle or bottom component
  std::optional<Rational> probability;
  int states = 0;  // size of the analysed chain
};

Verdict validate_strategy(const Mdp& m, const MealyStrategy& s, int start, const Claim& claim);

struct SimulationReport {
  int runs = 0;
  int steps = 0;
  std::uint64_t seed = 0;
  long long overflow_alpha = 0;
  long long overflow_beta = 0;
  int clean_tail_alpha = 0;  // runs without alpha overflow in the second half
  int clean_tail_beta = 0;
};

SimulationReport simulate(const Mdp& m, const MealyStrategy& s, int start, int steps, int runs, std::uint64_t seed,
                          int l, const Rational& alpha, const std::optional<Rational>& beta);

struct RandomMdpOptions {
  int max_vertices = 8;
  int max_out = 3;
  int min_payoff = -2;
  int max_payoff = 2;
};

Mdp random_mdp(std::mt19937_64& rng, const RandomMdpOptions& opts = {});

struct OracleSuiteReport {
  std::uint64_t seed = 0;
  int count = 0;
  int matched = 0;
  std::vector<std::string> mismatches;
};

OracleSuiteReport run_oracle_suite(std::uint64_t seed, int count);

}  // namespace wmp
