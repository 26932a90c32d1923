#include <doctest.h>

#include "brute.hpp"
#include "wmp/combined.hpp"
#include "wmp/sure.hpp"

#include <numeric>
#include <random>

using namespace wmp;

namespace {

int edge_of(const Mdp& m, const char* a, const char* b) { return *m.find_edge(m.vertex_named(a), m.vertex_named(b)); }

}  // namespace

TEST_CASE("sure-almost-sure and sure-limit-sure regions") {
  auto fig1 = brute::instance("fig1_naive");
  auto sas = sas_fwmp(fig1, 2, 1, 2);
  CHECK(sas.region == brute::set(fig1, {"v3"}));
  CHECK_FALSE(check_sas_trace(sas.trace).has_value());
  CHECK(sls_fwmp(fig1, 2, 1, 2) == fig1.all());
  auto degenerate = sas_fwmp(fig1, 2, 1, 1);
  CHECK(degenerate.degenerate);
  CHECK(degenerate.region == sure_fwmp(fig1, 2, 1).region);

  auto fig5 = brute::instance("fig5_memory_fwmp");
  auto five = sas_fwmp(fig5, 2, 0, 5);
  CHECK(five.region == fig5.all());
  CHECK_FALSE(check_sas_trace(five.trace).has_value());
}

TEST_CASE("direct window with almost-sure Buchi and positive reach") {
  auto fig3 = brute::instance("fig3_sdab");
  auto t = brute::set(fig3, {"v1"});
  CHECK(sure_dirfwmp_as_buchi(fig3, 2, 0, t).region.empty());
  auto pr = sure_dirfwmp_pos_reach(fig3, 2, 0, t);
  CHECK_FALSE(pr.region.contains(fig3.vertex_named("v2")));
  CHECK(sure_dirfwmp_pos_reach(fig3, 2, 0, fig3.all()).region == fig3.all());
  CHECK(sure_dirfwmp_pos_reach(fig3, 2, 0, fig3.all()).good.empty());
  CHECK(sure_dirfwmp_as_buchi(fig3, 2, -4, fig3.all()).region == fig3.all());
}

TEST_CASE("positive reach follows the worked edge sequence") {
  auto fig4 = brute::instance("fig4_posreach");
  auto pr = sure_dirfwmp_pos_reach(fig4, 3, 0, brute::set(fig4, {"v4"}));
  CHECK(pr.region == brute::set(fig4, {"v1", "v2", "v3", "v4"}));
  std::vector<std::pair<int, bool>> seen;
  for (const auto& v : pr.verdicts) seen.emplace_back(v.edge, v.good);
  const std::vector<std::pair<int, bool>> expect{
      {edge_of(fig4, "v2", "v4"), true}, {edge_of(fig4, "v1", "v2"), false}, {edge_of(fig4, "v3", "v4"), true},
      {edge_of(fig4, "v2", "v3"), true}, {edge_of(fig4, "v1", "v2"), true},  {edge_of(fig4, "v0", "v3"), false}};
  CHECK(seen == expect);
}

TEST_CASE("good-edge gadget") {
  auto fig4 = brute::instance("fig4_posreach");
  auto t = brute::set(fig4, {"v4"});
  auto r = brute::set(fig4, {"v4"});
  EdgeSet none(fig4.num_edges());
  CHECK(is_good_edge(fig4, edge_of(fig4, "v2", "v4"), none, r, t, 3, 0));

  EdgeSet g1(fig4.num_edges());
  g1.insert(edge_of(fig4, "v2", "v4"));
  auto r1 = brute::set(fig4, {"v2", "v4"});
  CHECK_FALSE(is_good_edge(fig4, edge_of(fig4, "v1", "v2"), g1, r1, t, 3, 0));

  EdgeSet g3 = g1;
  g3.insert(edge_of(fig4, "v3", "v4"));
  g3.insert(edge_of(fig4, "v2", "v3"));
  auto r3 = brute::set(fig4, {"v2", "v3", "v4"});
  CHECK(is_good_edge(fig4, edge_of(fig4, "v1", "v2"), g3, r3, t, 3, 0));

  auto g = build_gadget(fig4, edge_of(fig4, "v1", "v2"), g3, r3, t);
  CHECK(g.mdp.in_edges(g.hat).empty());
  CHECK(validate(g.mdp).empty());
  for (int v = 0; v < g.mdp.num_vertices(); ++v) {
    if (!g.copy[v] || g.mdp.is_random(v)) continue;
    CHECK_FALSE(g.mdp.out_edges(v).empty());
  }
}

TEST_CASE("positive reach region does not depend on edge order") {
  auto fig4 = brute::instance("fig4_posreach");
  auto t = brute::set(fig4, {"v4"});
  auto base = sure_dirfwmp_pos_reach(fig4, 3, 0, t).region;
  std::mt19937_64 rng(11);
  for (int k = 0; k < 5; ++k) {
    std::vector<int> prio(fig4.num_edges());
    std::iota(prio.begin(), prio.end(), 0);
    std::shuffle(prio.begin(), prio.end(), rng);
    CHECK(sure_dirfwmp_pos_reach(fig4, 3, 0, t, &prio).region == base);
  }
}

TEST_CASE("bounded-window combinations") {
  auto fig6 = brute::instance("fig6_memory_bwmp");
  auto sas = sas_bwmp(fig6, 0, 5);
  CHECK(sas.region.contains(fig6.vertex_named("v1")));
  CHECK_FALSE(check_sas_trace(sas.trace).has_value());
  CHECK(sls_bwmp(fig6, 0, 5).contains(fig6.vertex_named("v1")));

  Mdp easy;
  int a = easy.add_vertex("a", Owner::Player);
  int b = easy.add_vertex("b", Owner::Random);
  easy.add_edge(a, b, 6);
  easy.add_edge(b, a, 7, Rational(1, 3));
  easy.add_edge(b, b, 8, Rational(2, 3));
  CHECK(sas_bwmp(easy, 0, 5).region == easy.all());
  CHECK(sure_dirbwmp_pos_reach(easy, 0, brute::set(easy, {"a"})).region == easy.all());
  CHECK(sure_dirbwmp_as_buchi(easy, 0, brute::set(easy, {"a"})).region == easy.all());
}

TEST_CASE("combined solver properties on random MDPs") {
  std::mt19937_64 rng(4242);
  for (int round = 0; round < 120; ++round) {
    Mdp m = random_mdp(rng);
    const int l = 1 + static_cast<int>(rng() % 3);
    const Rational alpha(static_cast<int>(rng() % 3) - 2);
    const Rational beta = alpha + 1 + static_cast<int>(rng() % 2);
    auto sas = sas_fwmp(m, l, alpha, beta);
    CHECK_FALSE(check_sas_trace(sas.trace).has_value());
    auto sls = sls_fwmp(m, l, alpha, beta);
    auto sure = sure_fwmp(m, l, alpha).region;
    CHECK(sas.region.subset_of(sls));
    CHECK(sls.subset_of(sure));
    CHECK(lift_to_root(sas.mdp_alpha, sas.trace.w0).subset_of(sas.region));
    for (const auto& it : sas.trace.iterations)
      if (!it.sdab.empty()) CHECK(it.pos_cpre.intersects(it.sdab));

    VertexSet t(m.num_vertices());
    for (int v = 0; v < m.num_vertices(); ++v)
      if (rng() % 2) t.insert(v);
    if (t.empty()) t.insert(0);
    auto pr = sure_dirfwmp_pos_reach(m, l, alpha, t);
    std::vector<int> prio(m.num_edges());
    std::iota(prio.begin(), prio.end(), 0);
    std::shuffle(prio.begin(), prio.end(), rng);
    CHECK(sure_dirfwmp_pos_reach(m, l, alpha, t, &prio).region == pr.region);
    auto buchi = sure_dirfwmp_as_buchi(m, l, alpha, t).region;
    CHECK(buchi.subset_of(pr.region));
  }
}

TEST_CASE("good edges stay good when more edges are good") {
  std::mt19937_64 rng(77);
  int checked = 0;
  for (int round = 0; round < 200 && checked < 60; ++round) {
    Mdp m = random_mdp(rng);
    const int l = 1 + static_cast<int>(rng() % 3);
    const Rational alpha(static_cast<int>(rng() % 3) - 1);
    VertexSet t(m.num_vertices());
    t.insert(static_cast<int>(rng() % m.num_vertices()));
    auto pr = sure_dirfwmp_pos_reach(m, l, alpha, t);
    const Mdp& a = pr.arena;
    if (pr.accepted.size() < 2) continue;
    // replay: each accepted edge is good for the set accepted before it, and
    // stays good for every larger set of accepted edges
    EdgeSet good(a.num_edges());
    VertexSet r = pr.arena_target;
    for (std::size_t i = 0; i < pr.accepted.size(); ++i) {
      int e = pr.accepted[i];
      CHECK(is_good_edge(a, e, good, r, pr.arena_target, l, alpha));
      EdgeSet more = good;
      VertexSet rr = r;
      for (std::size_t j = i + 1; j < pr.accepted.size(); ++j) {
        const auto& f = a.edge(pr.accepted[j]);
        if (f.src == a.edge(e).src || !rr.contains(f.dst)) continue;
        more.insert(pr.accepted[j]);
        rr.insert(a.edge(pr.accepted[j]).src);
      }
      if (!rr.contains(a.edge(e).src)) CHECK(is_good_edge(a, e, more, rr, pr.arena_target, l, alpha));
      good.insert(e);
      r.insert(a.edge(e).src);
    }
    ++checked;
  }
  CHECK(checked > 0);
}
