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

#include "relgames/arena.hpp"
#include "relgames/oracles.hpp"

using namespace relgames;

namespace {

Game f5_game(Dpw rel1, Dpw rel2) {
  Game g;
  g.arena = fixtures::f5_arena();
  g.initial = 0;
  g.relations = {std::move(rel1), std::move(rel2)};
  g.relation_notes.resize(2);
  return g;
}

Lasso mk(std::vector<int> p, std::vector<int> c) { return canonicalize_lasso(p, c); }

}  // namespace

TEST_CASE("the F5 fixture validates cleanly with any fixture relation") {
  for (auto rel : {fixtures::minc_dpw(3, {1, 2}), fixtures::maxr_dpw(3, {1, 2}),
                   fixtures::twot_dpw(3, {1}, {2})}) {
    Game g = f5_game(rel, fixtures::empty_relation(3));
    CHECK(validate_game(g).empty());
  }
}

TEST_CASE("a sink vertex is diagnosed") {
  Game g = f5_game(fixtures::empty_relation(3), fixtures::empty_relation(3));
  g.arena.add_vertex("v3", 0);  // no successors
  g.relations = {fixtures::empty_relation(4), fixtures::empty_relation(4)};
  auto issues = validate_game(g);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].find("no successor") != std::string::npos);
}

TEST_CASE("loader notes surface as diagnostics") {
  Game g = f5_game(fixtures::maxr_dpw(3, {1, 2}), fixtures::empty_relation(3));
  g.relation_notes[0].incomplete = true;
  g.relation_notes[1].nondeterministic = true;
  auto issues = validate_game(g);
  REQUIRE(issues.size() == 2);
  CHECK(issues[0].find("incomplete") != std::string::npos);
  CHECK(issues[1].find("nondeterministic") != std::string::npos);
}

TEST_CASE("prefers evaluates the player's relation on plays") {
  Game g = f5_game(fixtures::minc_dpw(3, {1, 2}), fixtures::maxr_dpw(3, {1, 2}));

  // MINC: c(v0 v0 v1^w) = 3 >= c(v0 v1^w) = 2
  CHECK(prefers(g, 0, mk({0, 0}, {1}), mk({0}, {1})));
  // MAXR never-reach branch
  CHECK(prefers(g, 1, mk({}, {0}), mk({0}, {1})));

  // TWOT incomparability
  Game h = f5_game(fixtures::twot_dpw(3, {1}, {2}), fixtures::empty_relation(3));
  CHECK_FALSE(prefers(h, 0, mk({0}, {1}), mk({0}, {2})));
  CHECK_FALSE(prefers(h, 0, mk({0}, {2}), mk({0}, {1})));

  // non-play input is rejected
  CHECK_THROWS_AS(prefers(g, 0, mk({1}, {0}), mk({0}, {1})), malformed_input);
}

TEST_CASE("full and empty relations are constant under prefers") {
  Game g = f5_game(fixtures::full_relation(3), fixtures::empty_relation(3));
  auto lassos = oracle::enumerate_lassos(g.arena, 0, 4);
  for (const auto& x : lassos) {
    for (const auto& y : lassos) {
      CHECK(prefers(g, 0, x, y));
      CHECK_FALSE(prefers(g, 1, x, y));
    }
  }
}

TEST_CASE("lasso enumeration covers the small cases in order") {
  Arena f5 = fixtures::f5_arena();
  auto short_list = oracle::enumerate_lassos(f5, 0, 2);
  REQUIRE(!short_list.empty());
  CHECK(std::count(short_list.begin(), short_list.end(), mk({}, {0})) == 1);
  CHECK(std::count(short_list.begin(), short_list.end(), mk({0}, {1})) == 1);
  CHECK(std::count(short_list.begin(), short_list.end(), mk({0}, {2})) == 1);

  // duplicate-free and canonical
  auto l4 = oracle::enumerate_lassos(f5, 0, 4);
  for (std::size_t i = 0; i < l4.size(); ++i) {
    CHECK(canonicalize_lasso(l4[i]) == l4[i]);
    CHECK(f5.is_play(l4[i]));
    for (std::size_t j = i + 1; j < l4.size(); ++j) REQUIRE(!(l4[i] == l4[j]));
  }

  // independent recount: naive path enumeration + canonicalization
  std::set<Lasso> recount;
  std::vector<std::vector<int>> paths = {{0}};
  for (int round = 1; round < 4; ++round) {
    std::vector<std::vector<int>> next;
    for (auto& p : paths) {
      for (int w : f5.succ[p.back()]) {
        auto q = p;
        q.push_back(w);
        next.push_back(q);
      }
    }
    paths.insert(paths.end(), next.begin(), next.end());
    paths.erase(std::remove_if(paths.begin(), paths.end(),
                               [&](const std::vector<int>& p) {
                                 return static_cast<int>(p.size()) > 4;
                               }),
                paths.end());
  }
  for (const auto& p : paths) {
    for (std::size_t s = 0; s < p.size(); ++s) {
      if (!f5.has_edge(p.back(), p[s])) continue;
      recount.insert(canonicalize_lasso(std::vector<int>(p.begin(), p.begin() + s),
                                        std::vector<int>(p.begin() + s, p.end())));
    }
  }
  CHECK(recount.size() == l4.size());
}

TEST_CASE("a vertex without self-loop has no length-1 lasso") {
  Arena a;
  int p = a.player_names.intern("1");
  int u = a.add_vertex("u", p);
  int w = a.add_vertex("w", p);
  a.add_edge(u, w);
  a.add_edge(w, u);
  auto l1 = oracle::enumerate_lassos(a, u, 1);
  CHECK(l1.empty());
  auto l2 = oracle::enumerate_lassos(a, u, 2);
  REQUIRE(l2.size() == 1);
  CHECK(l2[0] == canonicalize_lasso({}, {u, w}));
}
