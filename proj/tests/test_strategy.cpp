#include <doctest.h>

#include "brute.hpp"
#include "wmp/combined.hpp"
#include "wmp/io.hpp"
#include "wmp/oracle.hpp"
#include "wmp/strategy.hpp"
#include "wmp/sure.hpp"

#include <random>

using namespace wmp;

namespace {

Claim claim(ClaimKind kind, int l, Rational lambda) {
  Claim c;
  c.kind = kind;
  c.l = l;
  c.lambda = lambda;
  return c;
}

Rational power(Rational p, int k) {
  Rational out(1);
  for (int i = 0; i < k; ++i) out *= p;
  return out;
}

int choice_at(const Mdp& m, const MealyStrategy& s, int state, const char* v) {
  auto* t = s.find(state, m.vertex_named(v));
  return t ? t->choice : -2;
}

}  // namespace

TEST_CASE("sure fixed-window witnesses") {
  auto fig1 = brute::instance("fig1_naive");
  for (const char* v : {"v1", "v2", "v3"}) {
    int start = fig1.vertex_named(v);
    auto s = synth_sure_fwmp(fig1, 2, 1, start);
    CHECK(s.num_states <= 2);
    CHECK(validate_strategy(fig1, s, start, claim(ClaimKind::SureFwmp, 2, 1)).accepted);
  }
  auto s = synth_sure_fwmp(fig1, 2, 1, fig1.vertex_named("v1"));
  CHECK(choice_at(fig1, s, s.initial, "v1") == fig1.vertex_named("v1"));
  CHECK_THROWS_AS(synth_sure_fwmp(fig1, 2, 2, fig1.vertex_named("v1")), StartOutsideRegion);

  auto fig5 = brute::instance("fig5_memory_fwmp");
  int v3 = fig5.vertex_named("v3");
  auto w = synth_sure_fwmp(fig5, 2, 0, v3);
  CHECK(validate_strategy(fig5, w, v3, claim(ClaimKind::SureFwmp, 2, 0)).accepted);
  auto chain = build_induced_chain(fig5, w, v3);
  for (const auto& st : chain.states)
    if (st.vertex == fig5.vertex_named("a"))
      CHECK(w.find(st.memory, st.vertex)->choice == fig5.vertex_named("v2"));
}

TEST_CASE("positive-reach and Buchi witnesses") {
  auto fig4 = brute::instance("fig4_posreach");
  auto t = brute::set(fig4, {"v4"});
  const int l = 3;
  const int bound = fig4.num_vertices() * l;
  for (int v : sure_dirfwmp_pos_reach(fig4, l, 0, t).region.members()) {
    auto s = synth_sdpr(fig4, l, 0, t, v);
    CHECK(s.num_states <= 3 * fig4.num_vertices() * l);
    CHECK(validate_strategy(fig4, s, v, claim(ClaimKind::SureDirFwmp, l, 0)).accepted);
    auto reach = claim(ClaimKind::BoundedReachProbability, l, 0);
    reach.target = t;
    reach.steps = bound;
    reach.threshold = power(fig4.p_min(), bound);
    CHECK(validate_strategy(fig4, s, v, reach).accepted);
  }
  auto v1 = fig4.vertex_named("v1");
  auto s = synth_sdpr(fig4, l, 0, t, v1);
  auto chain = build_induced_chain(fig4, s, v1);
  bool via_path = false;
  for (const auto& st : chain.states)
    if (st.vertex == fig4.vertex_named("v2")) via_path = true;
  CHECK(via_path);
  CHECK_THROWS_AS(synth_sdpr(fig4, l, 0, t, fig4.vertex_named("v0")), StartOutsideRegion);

  auto fig3 = brute::instance("fig3_sdab");
  CHECK_THROWS_AS(synth_sdab(fig3, 2, 0, brute::set(fig3, {"v1"}), fig3.vertex_named("v1")), StartOutsideRegion);
  auto all = synth_sdab(fig3, 2, 0, fig3.all(), fig3.vertex_named("v2"));
  CHECK(validate_strategy(fig3, all, fig3.vertex_named("v2"), claim(ClaimKind::SureDirFwmp, 2, 0)).accepted);
}

TEST_CASE("sure-almost-sure witnesses") {
  auto fig5 = brute::instance("fig5_memory_fwmp");
  for (int v = 0; v < fig5.num_vertices(); ++v) {
    auto s = synth_sas(fig5, 2, 0, 5, v);
    CHECK(s.num_states <= 3 * fig5.num_vertices() * 2);
    CHECK(validate_strategy(fig5, s, v, claim(ClaimKind::SureFwmp, 2, 0)).accepted);
    CHECK(validate_strategy(fig5, s, v, claim(ClaimKind::AlmostSureFwmp, 2, 5)).accepted);
  }
  auto fig1 = brute::instance("fig1_naive");
  auto v3 = fig1.vertex_named("v3");
  auto s = synth_sas(fig1, 2, 1, 2, v3);
  CHECK(s.num_states == 1);
  CHECK_THROWS_AS(synth_sas(fig1, 2, 1, 2, fig1.vertex_named("v1")), StartOutsideRegion);
}

TEST_CASE("limit-sure witnesses") {
  auto fig1 = brute::instance("fig1_naive");
  const Rational eps(1, 2);
  const auto n = compute_N(3, Rational(1, 2), eps);
  auto v1 = fig1.vertex_named("v1");
  auto s = synth_sls(fig1, 2, 1, 2, eps, v1);
  CHECK(s.num_states <= n + 2);
  CHECK(choice_at(fig1, s, s.initial, "v1") == fig1.vertex_named("v2"));
  CHECK(validate_strategy(fig1, s, v1, claim(ClaimKind::SureFwmp, 2, 1)).accepted);
  auto prob = claim(ClaimKind::FwmpProbability, 2, 2);
  prob.threshold = 1 - eps;
  auto verdict = validate_strategy(fig1, s, v1, prob);
  CHECK(verdict.accepted);
  CHECK(*verdict.probability < 1);

  CHECK_THROWS_AS(synth_sls(fig1, 2, 1, 2, Rational(0), v1), Error);
  CHECK_THROWS_AS(synth_sls(fig1, 2, 1, 2, Rational(1), v1), Error);
}

TEST_CASE("epsilon bound") {
  CHECK(compute_N(1, Rational(1, 2), Rational(1, 2)) >= 1);
  CHECK(compute_N(3, Rational(1), Rational(1, 10)) == 3);
  for (auto eps : {Rational(1, 2), Rational(1, 10), Rational(1, 100)})
    for (int n = 1; n <= 6; ++n)
      for (auto p : {Rational(1, 3), Rational(1, 2), Rational(3, 4)}) {
        Rational needed = (1 - eps) / power(p, n);
        CHECK(Rational(compute_N(n, p, eps)) >= needed);
      }
  CHECK(compute_N(3, Rational(1, 2), Rational(1, 100)) > compute_N(3, Rational(1, 2), Rational(1, 10)));
}

TEST_CASE("streak recurrence") {
  CHECK(streak_recurrence(1, Rational(1, 2), 1) == Rational(1, 2));
  CHECK(streak_recurrence(2, Rational(1, 2), 2) == Rational(1, 4));
  CHECK(streak_recurrence(3, Rational(1, 2), 2) == 0);
  for (int m = 1; m <= 3; ++m)
    for (int n = 0; n <= 12; ++n)
      CHECK(streak_recurrence(m, Rational(1, 3), n) == brute::streak_by_enumeration(m, Rational(1, 3), n));
  Rational last(0);
  for (int n = 0; n <= 60; ++n) {
    auto x = streak_recurrence(2, Rational(1, 2), n);
    CHECK(x >= last);
    last = x;
  }
  CHECK(last > Rational(99, 100));
}

TEST_CASE("Mealy machines round-trip through JSON") {
  auto fig5 = brute::instance("fig5_memory_fwmp");
  auto v3 = fig5.vertex_named("v3");
  auto s = synth_sas(fig5, 2, 0, 5, v3);
  auto back = parse_strategy_json(fig5, write_strategy_json(fig5, s));
  CHECK(back.num_states == s.num_states);
  CHECK(back.initial == s.initial);
  REQUIRE(back.transitions.size() == s.transitions.size());
  for (std::size_t i = 0; i < s.transitions.size(); ++i) {
    CHECK(back.transitions[i].state == s.transitions[i].state);
    CHECK(back.transitions[i].vertex == s.transitions[i].vertex);
    CHECK(back.transitions[i].next == s.transitions[i].next);
    CHECK(back.transitions[i].choice == s.transitions[i].choice);
  }
  CHECK(back.construction == "sas-fwmp");
  CHECK_THROWS_AS(parse_strategy_json(fig5, R"({"states":1,"initial":0,"transitions":[{"state":0,"vertex":"v3","nextState":0,"choice":"c"}]})"),
                  Error);
  CHECK_THROWS_AS(parse_strategy_json(fig5, R"({"states":1,"initial":3,"transitions":[]})"), Error);
}

TEST_CASE("merging compatible memory states keeps behaviour") {
  // two states that agree wherever both are defined collapse into one
  MealyStrategy s;
  s.num_states = 2;
  s.transitions = {{0, 0, 1, 0}, {1, 1, 0, 1}};
  auto merged = merge_compatible(s);
  CHECK(merged.num_states == 1);
  MealyStrategy clash;
  clash.num_states = 2;
  clash.transitions = {{0, 0, 1, 0}, {1, 0, 0, 1}};
  CHECK(merge_compatible(clash).num_states == 2);
}

TEST_CASE("synthesised strategies pass exact validation on random MDPs") {
  std::mt19937_64 rng(8080);
  RandomMdpOptions opts;
  opts.max_vertices = 6;
  int validated = 0, limit_sure = 0;
  for (int round = 0; round < 80; ++round) {
    Mdp m = random_mdp(rng, opts);
    const int l = 1 + static_cast<int>(rng() % 3);
    const Rational alpha(static_cast<int>(rng() % 3) - 2);
    const Rational beta = alpha + 1;
    const int n = m.num_vertices();

    auto sure = sure_fwmp(m, l, alpha).region;
    auto sas = sas_fwmp(m, l, alpha, beta).region;
    auto sls = sls_fwmp(m, l, alpha, beta);
    VertexSet t(n);
    t.insert(static_cast<int>(rng() % n));
    auto pr = sure_dirfwmp_pos_reach(m, l, alpha, t).region;
    auto ab = sure_dirfwmp_as_buchi(m, l, alpha, t).region;
    for (int v = 0; v < n; ++v) {
      if (sure.contains(v)) {
        auto s = synth_sure_fwmp(m, l, alpha, v);
        CHECK(validate_strategy(m, s, v, claim(ClaimKind::SureFwmp, l, alpha)).accepted);
        ++validated;
      }
      if (sas.contains(v)) {
        auto s = synth_sas(m, l, alpha, beta, v);
        CHECK(s.num_states <= 3 * n * l);
        CHECK(validate_strategy(m, s, v, claim(ClaimKind::SureFwmp, l, alpha)).accepted);
        CHECK(validate_strategy(m, s, v, claim(ClaimKind::AlmostSureFwmp, l, beta)).accepted);
      } else {
        CHECK_THROWS_AS(synth_sas(m, l, alpha, beta, v), StartOutsideRegion);
      }
      // N grows like 1/p_min^|V|; keep the induced chains small
      const Rational eps(1, 4);
      if (sls.contains(v) && compute_N(n, m.p_min(), eps) <= 2000) {
        auto s = synth_sls(m, l, alpha, beta, eps, v);
        CHECK(s.num_states <= compute_N(n, m.p_min(), eps) + l);
        CHECK(validate_strategy(m, s, v, claim(ClaimKind::SureFwmp, l, alpha)).accepted);
        auto c = claim(ClaimKind::FwmpProbability, l, beta);
        c.threshold = 1 - eps;
        CHECK(validate_strategy(m, s, v, c).accepted);
        ++limit_sure;
      }
      if (pr.contains(v)) {
        auto s = synth_sdpr(m, l, alpha, t, v);
        CHECK(s.num_states <= 3 * n * l);
        CHECK(validate_strategy(m, s, v, claim(ClaimKind::SureDirFwmp, l, alpha)).accepted);
        auto c = claim(ClaimKind::BoundedReachProbability, l, alpha);
        c.target = t;
        c.steps = n * l;
        c.threshold = power(m.p_min(), n * l);
        CHECK(validate_strategy(m, s, v, c).accepted);
      }
      if (ab.contains(v)) {
        auto s = synth_sdab(m, l, alpha, t, v);
        CHECK(validate_strategy(m, s, v, claim(ClaimKind::SureDirFwmp, l, alpha)).accepted);
        auto c = claim(ClaimKind::AlmostSureBuchi, l, alpha);
        c.target = t;
        CHECK(validate_strategy(m, s, v, c).accepted);
      }
    }
  }
  CHECK(validated > 50);
  CHECK(limit_sure > 10);
}
