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

#include "relgames/formula.hpp"

using namespace relgames;
using F = BoolFormula;

TEST_CASE("construction flattens and folds") {
  F f = F::conj({F::make_atom(0), F::conj({F::make_atom(1), F::make_atom(2)})});
  REQUIRE(f.kind == F::Kind::And);
  CHECK(f.kids.size() == 3);

  CHECK(F::conj({F::make_atom(0), F::make_false()}).is_false());
  CHECK(F::disj({F::make_atom(0), F::make_true()}).is_true());
  CHECK(F::conj({}).is_true());
  CHECK(F::disj({}).is_false());
  CHECK(F::disj({F::make_atom(3)}) == F::make_atom(3));
}

TEST_CASE("dual swaps connectives and constants") {
  F f = F::conj({F::make_atom(0), F::disj({F::make_atom(1), F::make_false()})});
  F d = f.dual();
  REQUIRE(d.kind == F::Kind::Or);
  CHECK(d.kids[0] == F::make_atom(0));
  // inner Or dualizes to And; False folds away inside the original Or first.
  CHECK(d.kids[1] == F::make_atom(1));
  CHECK(f.dual().dual() == f);
}

TEST_CASE("minimal models form an antichain") {
  // (a | (b & c)) & (c | a)
  F f = F::conj({F::disj({F::make_atom(0), F::conj({F::make_atom(1), F::make_atom(2)})}),
                 F::disj({F::make_atom(2), F::make_atom(0)})});
  auto models = f.minimal_models();
  // {0} and {1,2}; the candidate {0,2} is dominated by {0}.
  REQUIRE(models.size() == 2);
  CHECK(std::count(models.begin(), models.end(), std::vector<int>{0}) == 1);
  CHECK(std::count(models.begin(), models.end(), std::vector<int>{1, 2}) == 1);

  for (const auto& m : models) {
    CHECK(f.evaluate([&](int a) { return std::binary_search(m.begin(), m.end(), a); }));
  }
  CHECK(F::make_false().minimal_models().empty());
  CHECK(F::make_true().minimal_models() == std::vector<std::vector<int>>{{}});
}
