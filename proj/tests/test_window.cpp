#include <doctest.h>

#include "brute.hpp"
#include "wmp/io.hpp"
#include "wmp/window.hpp"

#include <random>

using namespace wmp;

namespace {

ObjectiveSpec spec(ObjectiveKind kind, int l, Rational lambda) {
  ObjectiveSpec o;
  o.kind = kind;
  o.l = l;
  o.lambda = lambda;
  return o;
}

}  // namespace

TEST_CASE("payoff scaling clears denominators") {
  Mdp m;
  int a = m.add_vertex("a", Owner::Player);
  m.add_edge(a, a, 1);
  int b = m.add_vertex("b", Owner::Player);
  m.add_edge(b, b, -1);
  int c = m.add_vertex("c", Owner::Player);
  m.add_edge(c, c, 2);
  CHECK(scale_payoffs(m, 1).weight == std::vector<std::int64_t>{0, -2, 1});
  CHECK(scale_payoffs(m, 2).weight == std::vector<std::int64_t>{-1, -3, 0});

  Mdp half;
  int h = half.add_vertex("h", Owner::Player);
  half.add_edge(h, h, Rational(1, 2));
  auto sc = scale_payoffs(half, Rational(1, 3));
  CHECK(sc.weight == std::vector<std::int64_t>{1});
  CHECK(sc.factor == 6);
}

TEST_CASE("monitor steps") {
  auto st = monitor_step({}, -2, 2);
  CHECK(st == WindowMonitorState{1, -2, false});
  CHECK(monitor_step(st, 2, 2) == WindowMonitorState{0, 0, false});
  CHECK(monitor_step(st, -2, 2) == WindowMonitorState{0, 0, true});
  CHECK(monitor_step({}, -1, 1).overflow);
  CHECK_FALSE(monitor_step({}, 0, 1).overflow);
}

TEST_CASE("objectives on lassos") {
  auto fig1 = brute::instance("fig1_naive");
  CHECK(eval_on_lasso(fig1, parse_lasso(fig1, "v1,v2|v3"), spec(ObjectiveKind::Fwmp, 2, 2)));
  CHECK_FALSE(eval_on_lasso(fig1, parse_lasso(fig1, "|v1,v2"), spec(ObjectiveKind::Fwmp, 2, 1)));
  CHECK(eval_on_lasso(fig1, parse_lasso(fig1, "|v1"), spec(ObjectiveKind::Fwmp, 2, 1)));
  CHECK_FALSE(eval_on_lasso(fig1, parse_lasso(fig1, "v1,v2|v3"), spec(ObjectiveKind::DirFwmp, 2, 2)));

  auto safe = spec(ObjectiveKind::Safe, 1, 0);
  safe.target = fig1.all();
  CHECK(eval_on_lasso(fig1, parse_lasso(fig1, "v1,v2|v3"), safe));
  auto buchi = spec(ObjectiveKind::Buchi, 1, 0);
  buchi.target = brute::set(fig1, {"v2"});
  CHECK(eval_on_lasso(fig1, parse_lasso(fig1, "|v1,v2"), buchi));
  CHECK_FALSE(eval_on_lasso(fig1, parse_lasso(fig1, "v1,v2|v3"), buchi));
  auto reach = spec(ObjectiveKind::Reach, 1, 0);
  reach.target = brute::set(fig1, {"v2"});
  CHECK(eval_on_lasso(fig1, parse_lasso(fig1, "v1,v2|v3"), reach));
  auto bounded = spec(ObjectiveKind::BoundedReach, 1, 0);
  bounded.target = brute::set(fig1, {"v3"});
  bounded.bound = 1;
  CHECK_FALSE(eval_on_lasso(fig1, parse_lasso(fig1, "v1,v2|v3"), bounded));
  bounded.bound = 2;
  CHECK(eval_on_lasso(fig1, parse_lasso(fig1, "v1,v2|v3"), bounded));

  CHECK(eval_on_lasso(fig1, parse_lasso(fig1, "|v1,v2"), spec(ObjectiveKind::MeanPayoff, 1, -1)));
  CHECK_FALSE(eval_on_lasso(fig1, parse_lasso(fig1, "|v1,v2"), spec(ObjectiveKind::MeanPayoff, 1, 0)));
  // total payoff: cycle sum zero, best prefix offset decides
  Mdp swing;
  int x = swing.add_vertex("x", Owner::Player);
  int y = swing.add_vertex("y", Owner::Player);
  swing.add_edge(x, y, 3);
  swing.add_edge(y, x, -3);
  CHECK(eval_on_lasso(swing, parse_lasso(swing, "|x,y"), spec(ObjectiveKind::TotalPayoff, 1, 3)));
  CHECK_FALSE(eval_on_lasso(swing, parse_lasso(swing, "|x,y"), spec(ObjectiveKind::TotalPayoff, 1, 4)));
  CHECK_FALSE(eval_on_lasso(fig1, parse_lasso(fig1, "|v1,v2"), spec(ObjectiveKind::TotalPayoff, 1, 0)));
  CHECK(eval_on_lasso(fig1, parse_lasso(fig1, "|v3"), spec(ObjectiveKind::TotalPayoff, 1, 100)));

  CHECK_THROWS_AS(parse_lasso(fig1, "v3|v1"), Error);
  CHECK_THROWS_AS(parse_lasso(fig1, "v1"), Error);
}

TEST_CASE("inclusion chain on the naive instance") {
  auto fig1 = brute::instance("fig1_naive");
  auto play = parse_lasso(fig1, "|v1,v2,v1");
  CHECK(inclusion_chain_check(fig1, play, 2, -1));
  if (eval_on_lasso(fig1, play, spec(ObjectiveKind::Fwmp, 2, -1)))
    CHECK(eval_on_lasso(fig1, play, spec(ObjectiveKind::Fwmp, 3, -1)));
  auto fig3 = brute::instance("fig3_sdab");
  auto loop = parse_lasso(fig3, "|v2");
  CHECK(eval_on_lasso(fig3, loop, spec(ObjectiveKind::DirFwmp, 2, 0)));
  for (auto k : {ObjectiveKind::Fwmp, ObjectiveKind::DirBwmp, ObjectiveKind::Bwmp, ObjectiveKind::MeanPayoff})
    CHECK(eval_on_lasso(fig3, loop, spec(k, 2, 0)));
}

TEST_CASE("monitor agrees with window enumeration on prefixes") {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 2000; ++round) {
    const int l = 1 + static_cast<int>(rng() % 4);
    const int len = static_cast<int>(rng() % 51);
    std::vector<std::int64_t> w(len);
    for (auto& x : w) x = static_cast<std::int64_t>(rng() % 7) - 3;
    WindowMonitorState st;
    bool overflow = false;
    int since_reset = 0;
    for (auto x : w) {
      st = monitor_step(st, x, l);
      overflow = overflow || st.overflow;
      since_reset = monitor_reset(st) ? 0 : since_reset + 1;
      CHECK(since_reset < l);
      CHECK((monitor_reset(st) || (st.c >= 1 && st.c < l && st.s < 0)));
    }
    CHECK(!overflow == brute::prefix_direct_ok(w, l));
  }
}

TEST_CASE("lasso evaluation matches brute force on random lassos") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 1000; ++round) {
    Mdp m = random_mdp(rng);
    auto play = brute::random_lasso(m, rng);
    const int l = 1 + static_cast<int>(rng() % 4);
    const Rational lambda(static_cast<int>(rng() % 3) - 1);
    CAPTURE(format_lasso(m, play));
    CAPTURE(l);
    CHECK(eval_on_lasso(m, play, spec(ObjectiveKind::DirFwmp, l, lambda)) == brute::dir_fwmp(m, play, l, lambda));
    CHECK(eval_on_lasso(m, play, spec(ObjectiveKind::Fwmp, l, lambda)) == brute::fwmp(m, play, l, lambda));
    CHECK(eval_on_lasso(m, play, spec(ObjectiveKind::Bwmp, l, lambda)) == brute::bwmp(m, play, lambda));
    CHECK(eval_on_lasso(m, play, spec(ObjectiveKind::DirBwmp, l, lambda)) == brute::dir_bwmp(m, play, lambda));
    CHECK(eval_on_lasso(m, play, spec(ObjectiveKind::MeanPayoff, l, lambda)) == brute::mean_payoff(m, play, lambda));
    CHECK(inclusion_chain_check(m, play, l, lambda));
  }
}
