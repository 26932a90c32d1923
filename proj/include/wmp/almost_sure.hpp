#pragma once

#include "wmp/mdp.hpp"

#include <vector>

namespace wmp {

struct AsSolveResult {
  VertexSet region;
  std::vector<VertexSet> good_mecs;
  std::vector<int> choice;  // memoryless move toward the good MECs, -1 where unused
};

AsSolveResult almost_sure_fwmp(const Mdp& m, int l, const Rational& lambda);
AsSolveResult almost_sure_bwmp(const Mdp& m, const Rational& lambda);
VertexSet almost_sure_buchi(const Mdp& m, const VertexSet& t);

}  // namespace wmp
