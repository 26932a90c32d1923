#pragma once

#include "wmp/mdp.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wmp {

// M_e for the edge e = (s, t): the host MDP, tilde copies of R\T (vertices of
// T stand for their own copies), and a fresh source vertex s-hat.
struct GadgetMdp {
  Mdp mdp;
  int hat = -1;
  std::vector<int> base;     // gadget vertex -> host vertex
  std::vector<char> copy;    // true for tilde copies of R\T
  std::vector<int> copy_of;  // host vertex -> its copy in the gadget, -1 outside R
};

GadgetMdp build_gadget(const Mdp& m, int e, const EdgeSet& good, const VertexSet& r, const VertexSet& t);
bool is_good_edge(const Mdp& m, int e, const EdgeSet& good, const VertexSet& r, const VertexSet& t, int l,
                  const Rational& alpha);

struct EdgeVerdict {
  int edge;  // edge id of the input MDP
  bool good;
};

struct PosReachResult {
  VertexSet region;  // R
  EdgeSet good;      // E_g
  EdgeSet bad;       // E_b at termination
  std::vector<EdgeVerdict> verdicts;

  // The input restricted to its sure-DirFWMP region; the loop runs there.
  Mdp arena;
  VertexSet arena_target;
  std::vector<int> accepted;  // arena edge ids, in the order they became good
};

// `priority` (optional) ranks the edges of the input MDP; lower goes first.
PosReachResult sure_dirfwmp_pos_reach(const Mdp& m, int l, const Rational& alpha, const VertexSet& t,
                                      const std::vector<int>* priority = nullptr);

struct BuchiResult {
  VertexSet region;
  int rounds = 0;
  std::optional<PosReachResult> last;  // the round whose reach region covered its whole MDP
};

BuchiResult sure_dirfwmp_as_buchi(const Mdp& m, int l, const Rational& alpha, const VertexSet& t);

struct SasIteration {
  VertexSet pos_cpre;
  VertexSet sdab;
  VertexSet attr;
  VertexSet region;
};

// Sets are indexed in the sub-MDP induced by the sure-alpha region.
struct SasTrace {
  VertexSet w0;
  std::vector<SasIteration> iterations;
  VertexSet final_region;
};

struct SasResult {
  VertexSet region;
  VertexSet sure_alpha;
  bool degenerate = false;
  int l = 0;
  Rational alpha, beta;
  SasTrace trace;
  Mdp mdp_alpha;
  std::vector<Mdp> rounds;          // closure MDP handed to the Büchi solver, per iteration
  std::vector<BuchiResult> buchi;   // its result, per iteration
};

SasResult sas_fwmp(const Mdp& m, int l, const Rational& alpha, const Rational& beta);
std::optional<std::string> check_sas_trace(const SasTrace& trace);
VertexSet sls_fwmp(const Mdp& m, int l, const Rational& alpha, const Rational& beta);

// Bounded-window versions, reduced to the fixed-window ones at the window
// length returned by bwmp_pair_length.
int bwmp_pair_length(const Mdp& m, const Rational& alpha, const Rational& beta);
PosReachResult sure_dirbwmp_pos_reach(const Mdp& m, const Rational& alpha, const VertexSet& t);
BuchiResult sure_dirbwmp_as_buchi(const Mdp& m, const Rational& alpha, const VertexSet& t);
SasResult sas_bwmp(const Mdp& m, const Rational& alpha, const Rational& beta);
VertexSet sls_bwmp(const Mdp& m, const Rational& alpha, const Rational& beta);

}  // namespace wmp
