#include "wmp/almost_sure.hpp"

#include "wmp/sure.hpp"

namespace wmp {

AsSolveResult almost_sure_fwmp(const Mdp& m, int l, const Rational& lambda) {
  VertexSet sure = sure_fwmp(m, l, lambda).region;
  AsSolveResult r;
  VertexSet target = m.none();
  for (auto& mec : mec_decomposition(m)) {
    if (!mec.intersects(sure)) continue;
    target |= mec;
    r.good_mecs.push_back(std::move(mec));
  }
  auto reach = almost_sure_reach_strategy(m, target);
  r.region = std::move(reach.region);
  r.choice = std::move(reach.choice);
  return r;
}

AsSolveResult almost_sure_bwmp(const Mdp& m, const Rational& lambda) {
  return almost_sure_fwmp(m, bwmp_window_length(m, lambda), lambda);
}

VertexSet almost_sure_buchi(const Mdp& m, const VertexSet& t) {
  VertexSet u = m.all();
  for (;;) {
    // positive reach of t while staying in u
    VertexSet reach = t & u;
    bool grew = true;
    while (grew) {
      grew = false;
      for (int v : u.members()) {
        if (reach.contains(v)) continue;
        for (int e : m.out_edges(v))
          if (reach.contains(m.edge(e).dst)) {
            reach.insert(v);
            grew = true;
            break;
          }
      }
    }
    VertexSet doomed = u - reach;
    if (doomed.empty()) return u;
    grew = true;
    while (grew) {
      grew = false;
      for (int v : u.members()) {
        if (doomed.contains(v)) continue;
        bool any = false, every = true;
        for (int e : m.out_edges(v)) {
          int w = m.edge(e).dst;
          if (doomed.contains(w) || !u.contains(w)) any = true;
          else every = false;
        }
        if (m.is_random(v) ? any : every) {
          doomed.insert(v);
          grew = true;
        }
      }
    }
    u -= doomed;
  }
}

}  // namespace wmp
