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

#pragma once

#include <vector>

#include "relgames/apw.hpp"
#include "relgames/arena.hpp"
#include "relgames/common.hpp"
#include "relgames/lasso.hpp"
#include "relgames/mealy.hpp"
#include "relgames/nbw.hpp"

namespace relgames::testing {

inline BoolFormula random_formula(SplitRng& rng, int num_states, int depth) {
  int roll = rng.below(10);
  if (depth == 0 || roll < 4) return BoolFormula::make_atom(rng.below(num_states));
  if (roll < 5) return BoolFormula::make_false();
  std::vector<BoolFormula> kids;
  int width = 2 + rng.below(2);
  for (int i = 0; i < width; ++i) kids.push_back(random_formula(rng, num_states, depth - 1));
  return roll < 8 ? BoolFormula::disj(std::move(kids)) : BoolFormula::conj(std::move(kids));
}

inline Apw random_apw(SplitRng& rng, int num_states, int num_letters, int max_index) {
  Apw a;
  a.num_letters = num_letters;
  for (int s = 0; s < num_states; ++s) a.add_state(rng.below(max_index + 1));
  for (int s = 0; s < num_states; ++s)
    for (int l = 0; l < num_letters; ++l)
      a.set_gamma(s, l, random_formula(rng, num_states, 2));
  a.initial = rng.below(num_states);
  return a;
}

inline Nbw random_nbw(SplitRng& rng, int num_states, int num_letters) {
  Nbw n;
  n.num_letters = num_letters;
  for (int s = 0; s < num_states; ++s) n.add_state(rng.chance(1, 2));
  for (int s = 0; s < num_states; ++s)
    for (int l = 0; l < num_letters; ++l) {
      int deg = rng.below(3);  // may be 0: partial automata are allowed
      for (int d = 0; d < deg; ++d) n.add_edge(s, l, rng.below(num_states));
    }
  n.initial = {rng.below(num_states)};
  return n;
}

inline Game f5_game(std::vector<Dpw> relations) {
  Game g;
  g.arena = fixtures::f5_arena();
  g.initial = 0;
  g.relations = std::move(relations);
  g.relation_notes.resize(g.relations.size());
  return g;
}

// Memoryless machine for one player from a vertex -> successor table.
inline Mealy table_machine(const Arena& a, int player, const std::vector<int>& pick) {
  Mealy m;
  m.controlled = player;
  m.initial = m.add_memory("m0", a.num_vertices());
  for (int v = 0; v < a.num_vertices(); ++v) {
    m.update[0][v] = 0;
    if (a.owner[v] == player) m.output[0][v] = pick[v];
  }
  return m;
}

// Player-1 machine on F5 that loops k times on v0 and then moves to `exit`.
inline Mealy f5_loop_then_leave(const Arena& a, int k, int exit_vertex) {
  Mealy m;
  m.controlled = 0;  // player "1" is index 0 in the fixture
  for (int i = 0; i <= k; ++i) m.add_memory("m" + std::to_string(i), a.num_vertices());
  m.initial = 0;
  for (int i = 0; i <= k; ++i) {
    for (int v = 0; v < a.num_vertices(); ++v) {
      m.update[i][v] = std::min(i + 1, k);
      if (a.owner[v] == 0) m.output[i][v] = i < k ? 0 : exit_vertex;
    }
  }
  return m;
}

// All canonical lassos over an alphabet (no edge constraints).
inline std::vector<Lasso> all_lassos(int num_letters, int maxlen) {
  std::vector<Lasso> out;
  std::vector<int> word;
  auto rec = [&](auto&& self) -> void {
    int len = static_cast<int>(word.size());
    if (len >= 1) {
      for (int split = 0; split < len; ++split) {
        Lasso cand = canonicalize_lasso(std::vector<int>(word.begin(), word.begin() + split),
                                        std::vector<int>(word.begin() + split, word.end()));
        out.push_back(cand);
      }
    }
    if (len == maxlen) return;
    for (int l = 0; l < num_letters; ++l) {
      word.push_back(l);
      self(self);
      word.pop_back();
    }
  };
  rec(rec);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace relgames::testing
