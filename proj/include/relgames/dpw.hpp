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

#include <algorithm>
#include <map>
#include <tuple>
#include <vector>

#include "relgames/common.hpp"
#include "relgames/lasso.hpp"

namespace relgames {

// Letter encoding for automata over V x V.
inline int pair_letter(int a, int b, int num_vertices) { return a * num_vertices + b; }
inline int pair_left(int letter, int num_vertices) { return letter / num_vertices; }
inline int pair_right(int letter, int num_vertices) { return letter % num_vertices; }

// Deterministic parity word automaton, complete by construction. Max-parity:
// a run is accepting iff the maximum priority seen infinitely often is even.
// Relations over V x V use the pair letter encoding above.
struct Dpw {
  int num_letters = 0;
  int initial = 0;
  std::vector<int> priority;  // per state
  std::vector<int> delta;     // state * num_letters + letter -> state

  int num_states() const { return static_cast<int>(priority.size()); }
  int index() const { return *std::max_element(priority.begin(), priority.end()); }

  int step(int state, int letter) const {
    return delta[static_cast<std::size_t>(state) * num_letters + letter];
  }

  void check_letter(int letter) const {
    if (letter < 0 || letter >= num_letters) throw malformed_input("letter outside alphabet");
  }
};

// Same structure, priorities increased by 1; accepts the complement language.
inline Dpw complement_dpw(Dpw aut) {
  for (int& p : aut.priority) ++p;
  return aut;
}

// Relation after a history: initial state moved along the diagonal pairs of h
// minus its last vertex (the subgame re-reads that vertex as its first letter).
inline Dpw shift_relation(Dpw rel, const std::vector<int>& history, int num_vertices) {
  if (history.empty()) throw malformed_input("history must be non-empty");
  int q = rel.initial;
  for (std::size_t k = 0; k + 1 < history.size(); ++k) {
    rel.check_letter(pair_letter(history[k], history[k], num_vertices));
    q = rel.step(q, pair_letter(history[k], history[k], num_vertices));
  }
  rel.initial = q;
  return rel;
}

namespace detail {

// Run a DPW over a stream of letters indexed by representation positions.
// Acceptance is decided from the first repetition of (position, state): the
// segment between the two occurrences is the loop the run settles into.
template <typename PosT, typename LetterFn, typename NextFn>
bool eval_parity_loop(const Dpw& aut, PosT start, LetterFn&& letter_of, NextFn&& next_of) {
  std::map<std::pair<PosT, int>, int> seen;
  std::vector<int> trace;  // priorities along the run
  PosT pos = start;
  int q = aut.initial;
  for (;;) {
    auto key = std::make_pair(pos, q);
    auto it = seen.find(key);
    if (it != seen.end()) {
      int best = -1;
      for (std::size_t k = static_cast<std::size_t>(it->second); k < trace.size(); ++k)
        best = std::max(best, trace[k]);
      return best % 2 == 0;
    }
    seen.emplace(key, static_cast<int>(trace.size()));
    trace.push_back(aut.priority[q]);
    q = aut.step(q, letter_of(pos));
    pos = next_of(pos);
  }
}

}  // namespace detail

// Membership of the synchronized pair (x, y) in a relation DPW over V x V.
inline bool eval_dpw_pair(const Dpw& aut, const Lasso& x, const Lasso& y, int num_vertices) {
  for (int v : x.prefix) aut.check_letter(pair_letter(v, v, num_vertices));
  for (int v : x.cycle) aut.check_letter(pair_letter(v, v, num_vertices));
  for (int v : y.prefix) aut.check_letter(pair_letter(v, v, num_vertices));
  for (int v : y.cycle) aut.check_letter(pair_letter(v, v, num_vertices));
  auto letter_of = [&](std::pair<int, int> p) {
    return pair_letter(x.at(p.first), y.at(p.second), num_vertices);
  };
  auto next_of = [&](std::pair<int, int> p) {
    return std::make_pair(x.next_pos(p.first), y.next_pos(p.second));
  };
  return detail::eval_parity_loop(aut, std::make_pair(0, 0), letter_of, next_of);
}

// Membership of a single word in a DPW over V.
inline bool eval_dpw_word(const Dpw& aut, const Lasso& x) {
  for (int v : x.prefix) aut.check_letter(v);
  for (int v : x.cycle) aut.check_letter(v);
  return detail::eval_parity_loop(
      aut, 0, [&](int p) { return x.at(p); }, [&](int p) { return x.next_pos(p); });
}

// DPW over V for {rho : (x, rho) in L(rel)}: the left track is driven by the
// fixed lasso x. States are (position of x, relation state).
inline Dpw drive_left_track(const Dpw& rel, const Lasso& x, int num_vertices) {
  Dpw out;
  out.num_letters = num_vertices;
  int positions = x.length();
  int n = rel.num_states();
  out.priority.resize(static_cast<std::size_t>(positions) * n);
  out.delta.resize(static_cast<std::size_t>(positions) * n * num_vertices);
  for (int k = 0; k < positions; ++k) {
    for (int q = 0; q < n; ++q) {
      int s = k * n + q;
      out.priority[s] = rel.priority[q];
      for (int b = 0; b < num_vertices; ++b) {
        int q2 = rel.step(q, pair_letter(x.at(k), b, num_vertices));
        out.delta[static_cast<std::size_t>(s) * num_vertices + b] = x.next_pos(k) * n + q2;
      }
    }
  }
  out.initial = 0 * n + rel.initial;
  return out;
}

// Same relation with the two tracks exchanged: accepts (x, y) iff the
// original accepts (y, x).
inline Dpw swap_tracks(const Dpw& rel, int num_vertices) {
  Dpw out = rel;
  for (int q = 0; q < rel.num_states(); ++q)
    for (int a = 0; a < num_vertices; ++a)
      for (int b = 0; b < num_vertices; ++b)
        out.delta[static_cast<std::size_t>(q) * rel.num_letters +
                  pair_letter(a, b, num_vertices)] =
            rel.step(q, pair_letter(b, a, num_vertices));
  return out;
}

// DPW over V for {x : (x, x) in L(rel)}: both tracks read the same word.
inline Dpw diagonal_dpw(const Dpw& rel, int num_vertices) {
  Dpw out;
  out.num_letters = num_vertices;
  out.initial = rel.initial;
  out.priority = rel.priority;
  out.delta.resize(static_cast<std::size_t>(rel.num_states()) * num_vertices);
  for (int q = 0; q < rel.num_states(); ++q)
    for (int a = 0; a < num_vertices; ++a)
      out.delta[static_cast<std::size_t>(q) * num_vertices + a] =
          rel.step(q, pair_letter(a, a, num_vertices));
  return out;
}

}  // namespace relgames
