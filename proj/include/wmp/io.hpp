#pragma once

#include "wmp/mdp.hpp"
#include "wmp/strategy.hpp"
#include "wmp/window.hpp"

#include <string>
#include <string_view>

namespace wmp {

// Text format:
//   mdp v1
//   vertex <name> p1|prob
//   edge <from> <to> payoff=<rat> [prob=<rat>]
// '#' starts a comment. A document starting with '{' is read as JSON with
// "vertices" [{name, owner}] and "edges" [{from, to, payoff, prob}].
Mdp parse_mdp(std::string_view text);
Mdp parse_mdp_file(const std::string& path);
std::string write_mdp(const Mdp& m);
std::string write_mdp_json(const Mdp& m);

// {states, initial, transitions: [{state, vertex, nextState, choice?}]}
std::string write_strategy_json(const Mdp& m, const MealyStrategy& s);
MealyStrategy parse_strategy_json(const Mdp& m, std::string_view text);

Lasso parse_lasso(const Mdp& m, std::string_view text);  // "stem|cycle", names comma-separated
std::string format_lasso(const Mdp& m, const Lasso& play);

// Chain family: u1..u_{m+1} (player), v1..v_m (random); v_i moves to u_{i+1}
// with probability p and back to u1 otherwise.
Mdp make_chain(int m, const Rational& p, const Rational& alpha, const Rational& beta);

}  // namespace wmp
