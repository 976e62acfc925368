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
#include <vector>

#include "relgames/common.hpp"
#include "relgames/dpw.hpp"
#include "relgames/formula.hpp"

namespace relgames {

// Alternating parity word automaton with positive Boolean transition
// formulas. Absent transitions are False. Max-parity acceptance per branch.
struct Apw {
  int num_letters = 0;
  int initial = 0;
  std::vector<int> priority;
  std::vector<std::vector<BoolFormula>> trans;  // [state][letter]

  int num_states() const { return static_cast<int>(priority.size()); }

  int index() const {
    int best = 0;
    for (int p : priority) best = std::max(best, p);
    return best;
  }

  int add_state(int prio) {
    priority.push_back(prio);
    trans.emplace_back(num_letters, BoolFormula::make_false());
    return num_states() - 1;
  }

  const BoolFormula& gamma(int state, int letter) const { return trans[state][letter]; }
  void set_gamma(int state, int letter, BoolFormula f) { trans[state][letter] = std::move(f); }

  bool buchi_shaped() const {
    for (int p : priority)
      if (p != 1 && p != 2) return false;
    return true;
  }

  void check_state_atoms() const {
    for (const auto& row : trans) {
      for (const auto& f : row) {
        std::vector<int> atoms;
        f.collect_atoms(atoms);
        for (int a : atoms)
          if (a < 0 || a >= num_states()) throw malformed_input("formula atom names no state");
      }
    }
  }
};

// Swap And/Or and True/False everywhere and add 1 to all priorities; accepts
// the complement language.
inline Apw dualize_apw(const Apw& aut) {
  Apw out = aut;
  for (int& p : out.priority) ++p;
  for (auto& row : out.trans)
    for (auto& f : row) f = f.dual();
  return out;
}

namespace detail {

// Copy `part` into `out` with states shifted by the current state count;
// returns the offset.
inline int append_apw_states(Apw& out, const Apw& part) {
  int offset = out.num_states();
  for (int s = 0; s < part.num_states(); ++s) out.add_state(part.priority[s]);
  for (int s = 0; s < part.num_states(); ++s)
    for (int l = 0; l < part.num_letters; ++l)
      out.set_gamma(offset + s, l, part.gamma(s, l).map_atoms([&](int a) {
        return BoolFormula::make_atom(a + offset);
      }));
  return offset;
}

inline Apw combine_apws(const std::vector<Apw>& parts, bool conjunction) {
  if (parts.empty()) throw malformed_input("combine of zero automata");
  Apw out;
  out.num_letters = parts.front().num_letters;
  for (const auto& p : parts)
    if (p.num_letters != out.num_letters) throw malformed_input("alphabet mismatch");
  out.initial = out.add_state(1);
  std::vector<int> offsets;
  for (const auto& p : parts) offsets.push_back(append_apw_states(out, p));
  for (int l = 0; l < out.num_letters; ++l) {
    std::vector<BoolFormula> entries;
    for (std::size_t i = 0; i < parts.size(); ++i)
      entries.push_back(parts[i].gamma(parts[i].initial, l).map_atoms([&](int a) {
        return BoolFormula::make_atom(a + offsets[i]);
      }));
    out.set_gamma(out.initial, l,
                  conjunction ? BoolFormula::conj(std::move(entries))
                              : BoolFormula::disj(std::move(entries)));
  }
  return out;
}

}  // namespace detail

// Fresh conjunctive initial state over the disjoint union of the parts.
inline Apw intersect_apws(const std::vector<Apw>& parts) {
  return detail::combine_apws(parts, true);
}

// Fresh disjunctive initial state; the dual wiring of intersect_apws.
inline Apw union_apws(const std::vector<Apw>& parts) {
  return detail::combine_apws(parts, false);
}

// A DPW is an APW whose formulas are single atoms.
inline Apw dpw_as_apw(const Dpw& d) {
  Apw out;
  out.num_letters = d.num_letters;
  out.initial = d.initial;
  for (int s = 0; s < d.num_states(); ++s) out.add_state(d.priority[s]);
  for (int s = 0; s < d.num_states(); ++s)
    for (int l = 0; l < d.num_letters; ++l)
      out.set_gamma(s, l, BoolFormula::make_atom(d.step(s, l)));
  return out;
}

// Lift a word automaton over V to the pair alphabet V x V, reading only the
// chosen track.
inline Apw lift_apw_to_pairs(const Apw& aut, int num_vertices, bool left_track) {
  Apw out;
  out.num_letters = num_vertices * num_vertices;
  out.initial = aut.initial;
  out.priority = aut.priority;
  out.trans.assign(aut.num_states(), std::vector<BoolFormula>(out.num_letters));
  for (int s = 0; s < aut.num_states(); ++s)
    for (int a = 0; a < num_vertices; ++a)
      for (int b = 0; b < num_vertices; ++b)
        out.trans[s][pair_letter(a, b, num_vertices)] = aut.gamma(s, left_track ? a : b);
  return out;
}

// Reachability plus alive-state pruning. A state is dead when every formula
// collapses to False once dead atoms are substituted out; dead atoms are
// folded away and unreachable states dropped. Language-preserving.
inline Apw prune_apw(const Apw& aut) {
  int n = aut.num_states();
  std::vector<char> alive(n, 1);
  bool changed = true;
  std::vector<std::vector<BoolFormula>> cur = aut.trans;
  while (changed) {
    changed = false;
    for (int s = 0; s < n; ++s) {
      if (!alive[s]) continue;
      bool any = false;
      for (int l = 0; l < aut.num_letters && !any; ++l)
        if (!cur[s][l].is_false()) any = true;
      if (!any) {
        alive[s] = 0;
        changed = true;
        for (int t = 0; t < n; ++t) {
          if (!alive[t]) continue;
          for (int l = 0; l < aut.num_letters; ++l) {
            if (cur[t][l].is_false()) continue;
            cur[t][l] = cur[t][l].map_atoms([&](int a) {
              return alive[a] ? BoolFormula::make_atom(a) : BoolFormula::make_false();
            });
          }
        }
      }
    }
  }
  // Reachable from the initial state through surviving formulas.
  std::vector<char> reach(n, 0);
  std::vector<int> queue = {aut.initial};
  reach[aut.initial] = 1;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int s = queue[qi];
    if (!alive[s]) continue;
    for (int l = 0; l < aut.num_letters; ++l) {
      std::vector<int> atoms;
      cur[s][l].collect_atoms(atoms);
      for (int a : atoms) {
        if (!reach[a]) {
          reach[a] = 1;
          queue.push_back(a);
        }
      }
    }
  }
  std::vector<int> remap(n, -1);
  Apw out;
  out.num_letters = aut.num_letters;
  for (int s = 0; s < n; ++s)
    if (reach[s]) remap[s] = out.add_state(aut.priority[s]);
  out.initial = remap[aut.initial];
  for (int s = 0; s < n; ++s) {
    if (remap[s] < 0 || !alive[s]) continue;
    for (int l = 0; l < aut.num_letters; ++l) {
      if (cur[s][l].is_false()) continue;
      out.set_gamma(remap[s], l, cur[s][l].map_atoms([&](int a) {
        return BoolFormula::make_atom(remap[a]);
      }));
    }
  }
  return out;
}

}  // namespace relgames
