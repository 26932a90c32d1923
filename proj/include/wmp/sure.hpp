#pragma once

#include "wmp/mdp.hpp"
#include "wmp/window.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace wmp {

struct SureSolveResult {
  VertexSet region;
  std::vector<int> witness;  // good-window closing horizon per vertex, -1 when absent
  std::vector<VertexSet> trace;
};

inline constexpr std::int64_t kLost = std::numeric_limits<std::int64_t>::min() / 4;
inline constexpr std::int64_t kFree = std::numeric_limits<std::int64_t>::max() / 4;

// value[h][v]: best scaled sum Player 1 can force from v when the window may
// still run for h steps; a window that closes early counts as 0 from then on.
// Play is confined to `allowed`; random vertices may also leave `arena`, and
// those moves are ignored (the closure view of a residual game).
struct GoodWindowTable {
  int l = 0;
  std::vector<std::vector<std::int64_t>> value;

  std::int64_t at(int h, int v) const { return value[h][v]; }
  bool wins(int v) const { return value[l][v] >= 0; }
};

GoodWindowTable good_window_table(const Mdp& m, const std::vector<std::int64_t>& weight, int l,
                                  const VertexSet& arena, const VertexSet& allowed);

// Successor that keeps the current window on track: maximises
// w + max(0, value[h-1][u]) over allowed successors, lowest index on ties.
int good_window_choice(const Mdp& m, const std::vector<std::int64_t>& weight, const GoodWindowTable& table,
                       const VertexSet& allowed, int v, int steps_taken);

VertexSet dir_fwmp_region(const Mdp& m, const std::vector<std::int64_t>& weight, int l, const VertexSet& arena,
                          std::vector<VertexSet>* trace = nullptr);

struct FwmpLayer {
  VertexSet residual;
  VertexSet core;
};

// Layered view of the sure-FWMP region: each layer is a direct-window core in
// the residual game plus the sure attractor that leads into it.
struct FwmpStructure {
  VertexSet region;
  std::vector<int> layer;  // -1 outside the region
  std::vector<int> rank;   // attractor rank within the layer, 0 on cores
  std::vector<FwmpLayer> layers;
  std::vector<GoodWindowTable> tables;  // one per layer, over the layer's core
  std::vector<VertexSet> trace;
};

FwmpStructure fwmp_structure(const Mdp& m, const std::vector<std::int64_t>& weight, int l);

SureSolveResult sure_good_win(const Mdp& m, int l, const Rational& lambda);
SureSolveResult sure_dir_fwmp(const Mdp& m, int l, const Rational& lambda);
SureSolveResult sure_fwmp(const Mdp& m, int l, const Rational& lambda);

std::int64_t bwmp_window_bound(const Mdp& m, const Rational& lambda);
int bwmp_window_length(const Mdp& m, const Rational& lambda);
SureSolveResult sure_dir_bwmp(const Mdp& m, const Rational& lambda);
SureSolveResult sure_bwmp(const Mdp& m, const Rational& lambda);

}  // namespace wmp
