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
#include "relgames/dpw.hpp"
#include "relgames/oracles.hpp"

using namespace relgames;

namespace {

Lasso mk(std::vector<int> p, std::vector<int> c) { return canonicalize_lasso(p, c); }

// Fig-3 semantics: x related to y iff x never reaches, or both reach and x
// is at most as late as y.
bool maxr_pred(int cx, int cy) { return cx < 0 || (cy >= 0 && cx <= cy); }
bool minc_pred(int cx, int cy) {
  // c(x) >= c(y) with -1 for infinity
  if (cy < 0) return cx < 0;
  return cx < 0 || cx >= cy;
}

}  // namespace

TEST_CASE("MAXR fixture matches the arithmetic predicate") {
  Arena f5 = fixtures::f5_arena();
  std::set<int> target = {1, 2};  // {v1, v2}
  Dpw maxr = fixtures::maxr_dpw(3, target);
  CHECK(maxr.num_states() == 5);  // four drawn states plus the rejecting sink

  // x = v0 v1^w, y = v0 v0 v1^w: c(x)=2 <= c(y)=3
  CHECK(eval_dpw_pair(maxr, mk({0}, {1}), mk({0, 0}, {1}), 3));
  // never-reach branch: x = v0^w
  CHECK(eval_dpw_pair(maxr, mk({}, {0}), mk({0}, {1}), 3));
  // y never reaches but x does: rejected
  CHECK_FALSE(eval_dpw_pair(maxr, mk({0}, {1}), mk({}, {0}), 3));

  auto lassos = oracle::enumerate_lassos(f5, 0, 5);
  for (const auto& x : lassos) {
    for (const auto& y : lassos) {
      bool want = maxr_pred(oracle::scan_cost(x, target), oracle::scan_cost(y, target));
      CHECK(eval_dpw_pair(maxr, x, y, 3) == want);
      CHECK(oracle::brute_relation_eval(maxr, x, y, 3) == want);
    }
  }
}

TEST_CASE("MINC fixture matches the arithmetic predicate") {
  Arena f5 = fixtures::f5_arena();
  std::set<int> target = {1, 2};
  Dpw minc = fixtures::minc_dpw(3, target);
  CHECK(minc.num_states() == 3);
  CHECK(minc.priority == std::vector<int>{0, 0, 1});

  // x = v0 v0 v1^w, y = v0 v1^w: 3 >= 2
  CHECK(eval_dpw_pair(minc, mk({0, 0}, {1}), mk({0}, {1}), 3));

  auto lassos = oracle::enumerate_lassos(f5, 0, 5);
  for (const auto& x : lassos) {
    for (const auto& y : lassos) {
      bool want = minc_pred(oracle::scan_cost(x, target), oracle::scan_cost(y, target));
      CHECK(eval_dpw_pair(minc, x, y, 3) == want);
      CHECK(oracle::brute_relation_eval(minc, x, y, 3) == want);
    }
  }
}

TEST_CASE("TWOT fixture matches the visited-subset predicate") {
  Arena f5 = fixtures::f5_arena();
  std::set<int> t1 = {1}, t2 = {2};
  Dpw twot = fixtures::twot_dpw(3, t1, t2);
  CHECK(twot.num_states() == 16);

  // incomparable pair: x visits only T1, y visits only T2
  Lasso x = mk({0}, {1}), y = mk({0}, {2});
  CHECK_FALSE(eval_dpw_pair(twot, x, y, 3));
  CHECK_FALSE(eval_dpw_pair(twot, y, x, 3));

  auto lassos = oracle::enumerate_lassos(f5, 0, 5);
  for (const auto& a : lassos) {
    for (const auto& b : lassos) {
      bool want = (!oracle::scan_visits(a, t1) || oracle::scan_visits(b, t1)) &&
                  (!oracle::scan_visits(a, t2) || oracle::scan_visits(b, t2));
      CHECK(eval_dpw_pair(twot, a, b, 3) == want);
      CHECK(oracle::brute_relation_eval(twot, a, b, 3) == want);
    }
  }
}

TEST_CASE("degenerate relations and complement") {
  Dpw full = fixtures::full_relation(3);
  Dpw empty = fixtures::empty_relation(3);
  Lasso x = mk({0}, {1}), y = mk({}, {2});
  CHECK(eval_dpw_pair(full, x, y, 3));
  CHECK_FALSE(eval_dpw_pair(empty, x, y, 3));
  CHECK_FALSE(eval_dpw_pair(complement_dpw(full), x, y, 3));
  CHECK(eval_dpw_pair(complement_dpw(empty), x, y, 3));
}

TEST_CASE("complement is a membership involution on MAXR") {
  Arena f5 = fixtures::f5_arena();
  Dpw maxr = fixtures::maxr_dpw(3, {1, 2});
  Dpw comp = complement_dpw(maxr);
  Dpw comp2 = complement_dpw(comp);
  auto lassos = oracle::enumerate_lassos(f5, 0, 5);
  for (const auto& x : lassos) {
    for (const auto& y : lassos) {
      bool direct = eval_dpw_pair(maxr, x, y, 3);
      CHECK(eval_dpw_pair(comp, x, y, 3) == !direct);
      CHECK(eval_dpw_pair(comp2, x, y, 3) == direct);
    }
  }
}

TEST_CASE("evaluation is representation-invariant") {
  Dpw maxr = fixtures::maxr_dpw(3, {1, 2});
  Lasso x = mk({0}, {1, 2}), y = mk({0, 0}, {2, 1});
  bool base = eval_dpw_pair(maxr, x, y, 3);
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j)
      CHECK(eval_dpw_pair(maxr, rotate_lasso(x, i), rotate_lasso(y, j), 3) == base);
}

TEST_CASE("shift_relation moves only the initial state") {
  Dpw minc = fixtures::minc_dpw(3, {1, 2});

  // history of a single vertex consumes nothing
  Dpw s1 = shift_relation(minc, {0}, 3);
  CHECK(s1.initial == minc.initial);
  CHECK(s1.num_states() == minc.num_states());

  // shift by h then h' equals shift by h . h' (on the overlapping seam)
  Dpw a = shift_relation(shift_relation(minc, {0, 1}, 3), {1, 2}, 3);
  Dpw b = shift_relation(minc, {0, 1, 2}, 3);
  CHECK(a.initial == b.initial);

  // after both runs entered the target component together, everything accepts
  Dpw shifted = shift_relation(minc, {0, 1}, 3);
  Arena f5 = fixtures::f5_arena();
  auto lassos = oracle::enumerate_lassos(f5, 1, 4);
  for (const auto& x : lassos)
    for (const auto& y : lassos) {
      bool via_shift = eval_dpw_pair(shifted, x, y, 3);
      // prefix both lassos with v0 and evaluate the unshifted relation
      std::vector<int> xp = {0};
      xp.insert(xp.end(), x.prefix.begin(), x.prefix.end());
      std::vector<int> yp = {0};
      yp.insert(yp.end(), y.prefix.begin(), y.prefix.end());
      bool via_prefix =
          eval_dpw_pair(minc, canonicalize_lasso(xp, x.cycle), canonicalize_lasso(yp, y.cycle), 3);
      CHECK(via_shift == via_prefix);
    }
}
