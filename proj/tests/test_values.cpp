// Copyright 2026 The relgames Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include "relgames/oracles.hpp"
#include "relgames/values.hpp"
#include "test_support.hpp"

using namespace relgames;

namespace {

Lasso mk(std::vector<int> p, std::vector<int> c) { return canonicalize_lasso(p, c); }

}  // namespace

TEST_CASE("the max-reward value from v0 contains every play") {
  Game g = testing::f5_game({fixtures::maxr_dpw(3, {1, 2}), fixtures::empty_relation(3)});
  ValueApw va = value_apw(g, 0, ValueSide::Protagonist, 0);
  CHECK(va.apw.num_states() == 1 + 9 * 5);
  CHECK(va.apw.index() == 1);
  for (const auto& x : oracle::enumerate_lassos(g.arena, 0, 6)) CHECK(apw_member(va.apw, x));
}

TEST_CASE("the two-target value contains exactly the single-target plays") {
  Game g = testing::f5_game({fixtures::twot_dpw(3, {1}, {2}), fixtures::empty_relation(3)});
  ValueApw va = value_apw(g, 0, ValueSide::Protagonist, 0);
  for (const auto& x : oracle::enumerate_lassos(g.arena, 0, 6)) {
    bool both = oracle::scan_visits(x, {1}) && oracle::scan_visits(x, {2});
    CHECK(apw_member(va.apw, x) == !both);
  }
}

TEST_CASE("empty and full relations give empty and full values") {
  Game ge = testing::f5_game({fixtures::empty_relation(3), fixtures::empty_relation(3)});
  Game gf = testing::f5_game({fixtures::full_relation(3), fixtures::empty_relation(3)});
  ValueApw ve = value_apw(ge, 0, ValueSide::Protagonist, 0);
  ValueApw vf = value_apw(gf, 0, ValueSide::Protagonist, 0);
  for (const auto& x : oracle::enumerate_lassos(ge.arena, 0, 5)) {
    CHECK_FALSE(apw_member(ve.apw, x));
    CHECK(apw_member(vf.apw, x));
  }
}

TEST_CASE("threshold membership with machine extraction") {
  Game g = testing::f5_game({fixtures::maxr_dpw(3, {1, 2}), fixtures::empty_relation(3)});

  auto [yes, machine] = threshold_check(g, 0, mk({0}, {1}));
  REQUIRE(yes);
  REQUIRE(machine.has_value());
  CHECK(machine->memory_size() <= 5 * 2);  // |rel| * |pi|
  CHECK(verify_threshold_strategy(g, 0, mk({0}, {1}), *machine));

  // two-target fixture rejects thresholds that visit both targets
  Game h = testing::f5_game({fixtures::twot_dpw(3, {1}, {2}), fixtures::empty_relation(3)});
  auto [no, none] = threshold_check(h, 0, mk({0, 1}, {2}));
  CHECK_FALSE(no);
  CHECK_FALSE(none.has_value());

  // full relation: anything goes
  Game f = testing::f5_game({fixtures::full_relation(3), fixtures::empty_relation(3)});
  auto [triv, m2] = threshold_check(f, 0, mk({0}, {2}));
  CHECK(triv);
  REQUIRE(m2.has_value());
  CHECK(verify_threshold_strategy(f, 0, mk({0}, {2}), *m2));
}

TEST_CASE("threshold machines certify every roundtrip on the fixtures") {
  for (Dpw rel : {fixtures::maxr_dpw(3, {1, 2}), fixtures::minc_dpw(3, {1, 2}),
                  fixtures::twot_dpw(3, {1}, {2})}) {
    Game g = testing::f5_game({rel, fixtures::empty_relation(3)});
    for (const auto& pi : oracle::enumerate_lassos(g.arena, 0, 4)) {
      auto [yes, machine] = threshold_check(g, 0, pi);
      if (yes) {
        REQUIRE(machine.has_value());
        CHECK(machine->memory_size() <= g.relations[0].num_states() * pi.length());
        CHECK(verify_threshold_strategy(g, 0, pi, *machine));
      }
    }
  }
}

TEST_CASE("verification catches the leave-after-k-loops flaw") {
  Game g = testing::f5_game({fixtures::maxr_dpw(3, {1, 2}), fixtures::empty_relation(3)});

  // leaving after one loop: pi = v0^4 v1^w beats every consistent play
  Mealy leave1 = testing::f5_loop_then_leave(g.arena, 1, 1);
  Lasso witness;
  CHECK_FALSE(verify_threshold_strategy(g, 0, mk({0, 0, 0, 0}, {1}), leave1, &witness));
  CHECK(g.arena.is_play(witness));

  // leaving immediately cannot even meet the two-step threshold: the unique
  // reachable cost is 2 while the threshold requires at least 3
  Mealy leave0 = testing::f5_loop_then_leave(g.arena, 0, 1);
  CHECK_FALSE(verify_threshold_strategy(g, 0, mk({0, 0}, {1}), leave0));

  // always looping loses against any finite-cost threshold
  Mealy loop = testing::table_machine(g.arena, 0, {0, -1, -1});
  CHECK_FALSE(verify_threshold_strategy(g, 0, mk({0}, {1}), loop));

  // under min-cost semantics the early exit is the right move
  Game gm = testing::f5_game({fixtures::minc_dpw(3, {1, 2}), fixtures::empty_relation(3)});
  CHECK(verify_threshold_strategy(gm, 0, mk({0, 0}, {1}), leave0));
  CHECK_FALSE(verify_threshold_strategy(gm, 0, mk({0}, {1}), testing::f5_loop_then_leave(gm.arena, 2, 1)));

  // empty relation: every machine fails
  Game ge = testing::f5_game({fixtures::empty_relation(3), fixtures::empty_relation(3)});
  CHECK_FALSE(verify_threshold_strategy(ge, 0, mk({0}, {1}), leave0));
}

TEST_CASE("threshold existence witnesses re-pass the threshold check") {
  Game ge = testing::f5_game({fixtures::empty_relation(3), fixtures::empty_relation(3)});
  CHECK(!threshold_exists(ge, 0, 0).has_value());

  Game g = testing::f5_game({fixtures::maxr_dpw(3, {1, 2}), fixtures::empty_relation(3)});
  auto wit = threshold_exists(g, 0, 0);
  REQUIRE(wit.has_value());
  auto [yes, machine] = threshold_check(g, 0, *wit);
  CHECK(yes);
  CHECK(machine.has_value());
}

TEST_CASE("optimality verification finds the paper's counterexamples") {
  Game g = testing::f5_game({fixtures::maxr_dpw(3, {1, 2}), fixtures::empty_relation(3)});

  Mealy loop = testing::table_machine(g.arena, 0, {0, -1, -1});
  std::pair<Lasso, Lasso> cex;
  CHECK_FALSE(verify_optimal(g, 0, 0, loop, &cex));
  // the unique consistent play v0^w is beaten by some pi in the value set
  CHECK(cex.second == mk({}, {0}));

  Mealy leave1 = testing::f5_loop_then_leave(g.arena, 1, 1);
  CHECK_FALSE(verify_optimal(g, 0, 0, leave1));

  Game gf = testing::f5_game({fixtures::full_relation(3), fixtures::empty_relation(3)});
  CHECK(verify_optimal(gf, 0, 0, loop));
}

TEST_CASE("optimal strategies exist exactly for the control game") {
  Game g = testing::f5_game({fixtures::maxr_dpw(3, {1, 2}), fixtures::empty_relation(3)});
  CHECK(!optimal_exists(g, 0, 0).has_value());

  Game h = testing::f5_game({fixtures::twot_dpw(3, {1}, {2}), fixtures::empty_relation(3)});
  CHECK(!optimal_exists(h, 0, 0).has_value());

  Game gf = testing::f5_game({fixtures::full_relation(3), fixtures::empty_relation(3)});
  auto machine = optimal_exists(gf, 0, 0);
  REQUIRE(machine.has_value());
  CHECK(verify_optimal(gf, 0, 0, *machine));
}

TEST_CASE("determinacy of the value partition") {
  Game g = testing::f5_game({fixtures::maxr_dpw(3, {1, 2}), fixtures::empty_relation(3)});
  CHECK(determinacy_check(g, 0, 0, mk({0}, {1})));

  Game h = testing::f5_game({fixtures::twot_dpw(3, {1}, {2}), fixtures::empty_relation(3)});
  CHECK(determinacy_check(h, 0, 0, mk({0, 1}, {2})));
  // and the split goes the expected way
  CHECK_FALSE(apw_member(value_apw(h, 0, ValueSide::Protagonist, 0).apw, mk({0, 1}, {2})));
  CHECK(apw_member(value_apw(h, 0, ValueSide::Coalition, 0).apw, mk({0, 1}, {2})));

  for (const auto& x : oracle::enumerate_lassos(g.arena, 0, 5)) {
    CHECK(determinacy_check(g, 0, 0, x));
    CHECK(determinacy_check(h, 0, 0, x));
  }
}

TEST_CASE("one-player value collapses to an existential sweep") {
  // all vertices owned by player 1: Val_1(v) = plays that can be beaten by
  // some play under the owner's full control
  Game g = testing::f5_game({fixtures::minc_dpw(3, {1, 2}), fixtures::empty_relation(3)});
  for (int v = 0; v < 3; ++v) g.arena.owner[v] = 0;
  auto lassos = oracle::enumerate_lassos(g.arena, 0, 6);
  ValueApw va = value_apw(g, 0, ValueSide::Protagonist, 0);
  for (const auto& x : lassos) {
    bool any = false;
    for (const auto& rho : lassos)
      if (oracle::brute_relation_eval(g.relations[0], x, rho, 3)) any = true;
    CHECK(apw_member(va.apw, x) == any);
  }
}
