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

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "relgames/apw.hpp"
#include "relgames/common.hpp"
#include "relgames/lasso.hpp"
#include "relgames/parity_game.hpp"

namespace relgames {

// Product of an APW with a lasso: Even resolves disjunctions, Odd resolves
// conjunctions, the letter at each step is forced by the word. Atom positions
// carry the state's priority; inner formula nodes carry 0 and cannot form
// cycles on their own because formulas are finite.
struct MembershipGame {
  ParityGame game;
  bool member = false;
  Regions regions;
  int initial_position = -1;

  // state positions: (apw state, lasso position) -> game position
  std::map<std::pair<int, int>, int> state_pos;

  // Even's resolution of the disjunction at a formula position, as the game
  // position chosen; kept for every winning position so strategies can be
  // read off anywhere in the winning region.
  int strategy_at(int pos) const { return regions.strategy[pos]; }
};

namespace detail {

struct MembershipBuilder {
  const Apw& aut;
  const Lasso& word;
  MembershipGame out;
  int even_sink = -1, odd_sink = -1;
  std::vector<std::pair<int, int>> pending;  // (state, lasso position)

  MembershipBuilder(const Apw& a, const Lasso& w) : aut(a), word(w) {}

  int ensure_even_sink() {
    if (even_sink < 0) {
      even_sink = out.game.add_position(kOdd, 0, "true");
      out.game.add_move(even_sink, even_sink);
    }
    return even_sink;
  }
  int ensure_odd_sink() {
    if (odd_sink < 0) {
      odd_sink = out.game.add_position(kEven, 1, "false");
      out.game.add_move(odd_sink, odd_sink);
    }
    return odd_sink;
  }

  int state_position(int s, int k) {
    auto key = std::make_pair(s, k);
    auto it = out.state_pos.find(key);
    if (it != out.state_pos.end()) return it->second;
    int pos = out.game.add_position(kEven, aut.priority[s],
                                    "s" + std::to_string(s) + "@" + std::to_string(k));
    out.state_pos.emplace(key, pos);
    pending.push_back(key);
    return pos;
  }

  int formula_position(const BoolFormula& f, int k) {
    switch (f.kind) {
      case BoolFormula::Kind::True: return ensure_even_sink();
      case BoolFormula::Kind::False: return ensure_odd_sink();
      case BoolFormula::Kind::Atom: return state_position(f.atom, word.next_pos(k));
      case BoolFormula::Kind::And:
      case BoolFormula::Kind::Or: {
        char side = f.kind == BoolFormula::Kind::Or ? kEven : kOdd;
        int pos = out.game.add_position(side, 0);
        for (const auto& kid : f.kids) out.game.add_move(pos, formula_position(kid, k));
        return pos;
      }
    }
    return ensure_odd_sink();
  }

  void drain() {
    while (!pending.empty()) {
      auto [s, k] = pending.back();
      pending.pop_back();
      int pos = out.state_pos.at({s, k});
      out.game.add_move(pos, formula_position(aut.gamma(s, word.at(k)), k));
    }
  }
};

}  // namespace detail

inline MembershipGame lasso_membership_game(const Apw& aut, const Lasso& x) {
  for (int v : x.prefix)
    if (v < 0 || v >= aut.num_letters) throw malformed_input("letter outside alphabet");
  for (int v : x.cycle)
    if (v < 0 || v >= aut.num_letters) throw malformed_input("letter outside alphabet");
  detail::MembershipBuilder b(aut, x);
  b.out.initial_position = b.state_position(aut.initial, 0);
  b.drain();
  b.out.regions = solve(b.out.game);
  b.out.member = b.out.regions.even_wins(b.out.initial_position);
  return b.out;
}

// Membership verdict only.
inline bool apw_member(const Apw& aut, const Lasso& x) {
  return lasso_membership_game(aut, x).member;
}

}  // namespace relgames
