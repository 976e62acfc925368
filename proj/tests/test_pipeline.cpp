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

#include "relgames/alternation.hpp"
#include "relgames/membership.hpp"
#include "test_support.hpp"

using namespace relgames;

TEST_CASE("apw_to_abw keeps Buchi-shaped inputs' language") {
  SplitRng rng(11);
  auto lassos = testing::all_lassos(2, 5);
  for (int round = 0; round < 20; ++round) {
    Apw a = testing::random_apw(rng, 1 + rng.below(3), 2, 1);
    for (int& p : a.priority) p += 1;  // priorities in {1, 2}
    Apw b = apw_to_abw(a);
    CHECK(b.buchi_shaped());
    for (const auto& x : lassos) CHECK(apw_member(b, x) == apw_member(a, x));
  }
}

TEST_CASE("apw_to_abw agrees with direct membership on random parity APWs") {
  SplitRng rng(22);
  auto lassos = testing::all_lassos(2, 5);
  for (int round = 0; round < 30; ++round) {
    Apw a = testing::random_apw(rng, 1 + rng.below(3), 2, 4);
    Apw b = apw_to_abw(a);
    CHECK(b.buchi_shaped());
    for (const auto& x : lassos) CHECK(apw_member(b, x) == apw_member(a, x));
  }
}

TEST_CASE("breakpoint construction preserves the language") {
  SplitRng rng(33);
  auto lassos = testing::all_lassos(2, 5);
  for (int round = 0; round < 30; ++round) {
    Apw a = testing::random_apw(rng, 1 + rng.below(3), 2, 4);
    Nbw n = abw_to_nbw(apw_to_abw(a));
    for (const auto& x : lassos) CHECK(nbw_lasso_member(n, x) == apw_member(a, x));
  }
}

TEST_CASE("degenerate alternation reduces to plain nondeterminism") {
  // Or-of-atoms formulas only: the ABW is an NBW in disguise.
  SplitRng rng(44);
  auto lassos = testing::all_lassos(2, 5);
  for (int round = 0; round < 20; ++round) {
    int ns = 1 + rng.below(3);
    Apw a;
    a.num_letters = 2;
    for (int s = 0; s < ns; ++s) a.add_state(1 + rng.below(2));
    for (int s = 0; s < ns; ++s)
      for (int l = 0; l < 2; ++l) {
        std::vector<BoolFormula> opts;
        int deg = rng.below(3);
        for (int d = 0; d < deg; ++d) opts.push_back(BoolFormula::make_atom(rng.below(ns)));
        a.set_gamma(s, l, BoolFormula::disj(std::move(opts)));
      }
    a.initial = 0;
    Nbw n = abw_to_nbw(a);
    for (const auto& x : lassos) CHECK(nbw_lasso_member(n, x) == apw_member(a, x));
  }
}

TEST_CASE("conjunction of two deterministic Buchi tracks intersects languages") {
  // DBW 1: infinitely many 1s; DBW 2: infinitely many 0s.
  auto dbw = [&](int good_letter) {
    Apw a;
    a.num_letters = 2;
    a.add_state(1);
    a.add_state(2);
    for (int s = 0; s < 2; ++s)
      for (int l = 0; l < 2; ++l)
        a.set_gamma(s, l, BoolFormula::make_atom(l == good_letter ? 1 : 0));
    a.initial = 0;
    return a;
  };
  Apw both;
  both.num_letters = 2;
  both.initial = both.add_state(1);
  Apw d1 = dbw(1), d2 = dbw(0);
  Apw merged = intersect_apws({d1, d2});
  Nbw n = abw_to_nbw(apw_to_abw(merged));
  for (const auto& x : testing::all_lassos(2, 5)) {
    bool want = apw_member(d1, x) && apw_member(d2, x);
    CHECK(nbw_lasso_member(n, x) == want);
  }
}

TEST_CASE("empty-language ABW yields no witness") {
  Apw a;
  a.num_letters = 2;
  a.initial = a.add_state(1);
  Nbw n = abw_to_nbw(a);
  CHECK(!nbw_empty_witness(n).has_value());
}

TEST_CASE("nbw emptiness returns canonical verified witnesses") {
  SplitRng rng(55);
  auto lassos = testing::all_lassos(2, 5);
  int nonempty = 0;
  for (int round = 0; round < 60; ++round) {
    Nbw n = testing::random_nbw(rng, 1 + rng.below(4), 2);
    auto wit = nbw_empty_witness(n);
    bool any_member = false;
    for (const auto& x : lassos)
      if (nbw_lasso_member(n, x)) any_member = true;
    if (wit) {
      ++nonempty;
      CHECK(nbw_lasso_member(n, *wit));
      CHECK(canonicalize_lasso(*wit) == *wit);
    } else {
      CHECK_FALSE(any_member);
    }
  }
  CHECK(nonempty > 5);
}

TEST_CASE("single accepting self-loop witnesses itself") {
  Nbw n;
  n.num_letters = 1;
  n.add_state(true);
  n.add_edge(0, 0, 0);
  n.initial = {0};
  auto wit = nbw_empty_witness(n);
  REQUIRE(wit.has_value());
  CHECK(wit->prefix.empty());
  CHECK(wit->cycle == std::vector<int>{0});

  Nbw dead;
  dead.num_letters = 1;
  dead.add_state(false);
  dead.add_edge(0, 0, 0);
  dead.initial = {0};
  CHECK(!nbw_empty_witness(dead).has_value());
}

TEST_CASE("trim and bisim quotient preserve the language") {
  SplitRng rng(66);
  auto lassos = testing::all_lassos(2, 5);
  for (int round = 0; round < 40; ++round) {
    Nbw n = testing::random_nbw(rng, 1 + rng.below(5), 2);
    Nbw t = trim_nbw(n);
    Nbw q = bisim_quotient_nbw(t);
    CHECK(t.num_states() <= n.num_states());
    for (const auto& x : lassos) {
      bool want = nbw_lasso_member(n, x);
      CHECK(nbw_lasso_member(t, x) == want);
      CHECK(nbw_lasso_member(q, x) == want);
    }
  }
}

TEST_CASE("universal one-state NBW accepts every lasso") {
  Nbw n;
  n.num_letters = 3;
  n.add_state(true);
  for (int l = 0; l < 3; ++l) n.add_edge(0, l, 0);
  n.initial = {0};
  for (const auto& x : testing::all_lassos(3, 4)) CHECK(nbw_lasso_member(n, x));
}
