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
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "relgames/apw.hpp"
#include "relgames/common.hpp"
#include "relgames/nbw.hpp"

namespace relgames {

// Rewrite an APW into a Buchi-shaped APW (priorities in {1,2}) by annotating
// states with one bounded rank per odd priority.
//
// Rank discipline along every run edge into a state of priority c:
//   - components for odd priorities p < c reset to their (even) cap;
//   - components for p >= c may keep their value or drop by 1 or 2;
//   - the component of c itself must be even whenever c is odd.
// A state is "settled" (accepting, priority 2) when its own priority is even
// and every component above it is odd.
//
// On a branch with maximum recurring priority m: if m is even, components
// above m can settle odd and every later m-visit is accepting. If m is odd,
// the m-component is reset only finitely often, then never increases, yet
// must be even at the infinitely many m-visits and odd at any accepting
// visits below -- a bounded value cannot flip parity forever, so some suffix
// has no accepting state at all. Caps of 2 * |states of priority p| + 2 are
// large enough for the standard run-DAG width argument, and restricting
// decrements to steps of 1 or 2 only delays settling.
// Buchi-shaped APW plus the rank annotation of its states. `harder(a, b)`
// holds when a and b annotate the same original state and a's ranks are
// componentwise at most b's: then every accepting continuation of a is one
// of b. The breakpoint construction uses this as a subsumption preorder.
struct RankedAbw {
  Apw abw;
  std::vector<int> base_state;             // per abw state
  std::vector<std::vector<int>> ranks;     // per abw state

  bool harder(int a, int b) const {
    if (base_state[a] != base_state[b]) return false;
    for (std::size_t i = 0; i < ranks[a].size(); ++i)
      if (ranks[a][i] > ranks[b][i]) return false;
    return true;
  }
};

inline RankedAbw apw_to_abw_ranked(const Apw& aut, const Caps& caps = {}) {
  if (aut.buchi_shaped()) {
    // Already Buchi-shaped; keep the structure, the language is unchanged.
    RankedAbw out;
    out.abw = aut;
    out.base_state.resize(aut.num_states());
    out.ranks.assign(aut.num_states(), {});
    for (int s = 0; s < aut.num_states(); ++s) out.base_state[s] = s;
    return out;
  }
  int n = aut.num_states();
  std::vector<int> odd_prios;
  for (int p = 1; p <= aut.index(); p += 2) odd_prios.push_back(p);
  int ncomp = static_cast<int>(odd_prios.size());

  // Rank budgets are local to strongly connected components of the state
  // graph: a branch hops between components finitely often, so the parity
  // bookkeeping only has to work inside the component a branch settles in.
  // Components without states of the odd priority pin that rank to the
  // constant 1 ("vacuously settled").
  std::vector<int> scc;
  {
    auto succ = [&](int s) {
      std::vector<int> atoms;
      for (int l = 0; l < aut.num_letters; ++l) aut.gamma(s, l).collect_atoms(atoms);
      std::sort(atoms.begin(), atoms.end());
      atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
      return atoms;
    };
    scc = detail::scc_of(n, succ);
  }
  // cap[state][component]: 0 marks a vacuous component (pinned to rank 1)
  std::vector<std::vector<int>> cap(n, std::vector<int>(ncomp, 0));
  {
    std::map<std::pair<int, int>, int> counts;  // (scc, component) -> |Q_p|
    for (int s = 0; s < n; ++s) {
      int p = aut.priority[s];
      if (p % 2 == 1) counts[{scc[s], p / 2}] += 1;
    }
    for (int s = 0; s < n; ++s)
      for (int i = 0; i < ncomp; ++i) {
        auto it = counts.find({scc[s], i});
        if (it != counts.end()) cap[s][i] = 2 * it->second + 2;
      }
  }

  struct Key {
    int state;
    std::vector<int> ranks;
    bool operator<(const Key& o) const {
      if (state != o.state) return state < o.state;
      return ranks < o.ranks;
    }
  };
  std::map<Key, int> ids;
  std::vector<Key> pool;
  RankedAbw res;
  Apw& out = res.abw;
  out.num_letters = aut.num_letters;

  auto settled = [&](const Key& k) {
    int c = aut.priority[k.state];
    if (c % 2 != 0) return false;
    for (int i = 0; i < ncomp; ++i)
      if (odd_prios[i] > c && k.ranks[i] % 2 == 0) return false;
    return true;
  };
  auto intern = [&](Key k) {
    auto it = ids.find(k);
    if (it != ids.end()) return it->second;
    int id = out.add_state(settled(k) ? 2 : 1);
    caps.charge("apw_to_abw", static_cast<std::size_t>(out.num_states()));
    res.base_state.push_back(k.state);
    res.ranks.push_back(k.ranks);
    ids.emplace(k, id);
    pool.push_back(std::move(k));
    return id;
  };

  auto fresh_ranks = [&](int state) {
    std::vector<int> r(ncomp);
    for (int i = 0; i < ncomp; ++i) r[i] = cap[state][i] == 0 ? 1 : cap[state][i];
    return r;
  };
  Key start{aut.initial, fresh_ranks(aut.initial)};
  out.initial = intern(start);

  for (int cur = 0; cur < out.num_states(); ++cur) {
    Key key = pool[cur];
    const std::vector<int>& ranks = key.ranks;
    auto rewrite_atom = [&](int atom) {
      int c = aut.priority[atom];
      bool hop = scc[atom] != scc[key.state];
      // per-component choice lists
      std::vector<std::vector<int>> choices(ncomp);
      for (int i = 0; i < ncomp; ++i) {
        int p = odd_prios[i];
        if (cap[atom][i] == 0) {
          choices[i] = {1};  // vacuous: the component's priority is absent here
          continue;
        }
        if (hop || p < c) {
          choices[i] = {cap[atom][i]};  // re-enter at the local even budget
          continue;
        }
        for (int step = 0; step <= 1; ++step) {
          int v = ranks[i] - step;
          if (v < 0) continue;
          if (p == c && v % 2 != 0) continue;
          choices[i].push_back(v);
        }
        if (choices[i].empty()) return BoolFormula::make_false();
      }
      std::vector<std::vector<int>> tuples = {{}};
      for (int i = 0; i < ncomp; ++i) {
        std::vector<std::vector<int>> next;
        for (const auto& t : tuples)
          for (int v : choices[i]) {
            auto t2 = t;
            t2.push_back(v);
            next.push_back(std::move(t2));
          }
        tuples = std::move(next);
      }
      std::vector<BoolFormula> opts;
      for (auto& t : tuples) opts.push_back(BoolFormula::make_atom(intern(Key{atom, t})));
      return BoolFormula::disj(std::move(opts));
    };
    for (int l = 0; l < aut.num_letters; ++l)
      out.set_gamma(cur, l, aut.gamma(key.state, l).map_atoms(rewrite_atom));
  }
  return res;
}

inline Apw apw_to_abw(const Apw& aut, const Caps& caps = {}) {
  return apw_to_abw_ranked(aut, caps).abw;
}

// Miyano-Hayashi breakpoint construction. States are pairs (S, O) with
// O tracking the states still owing an accepting visit; O empty is accepting.
//
// Requirement sets keep only their hardest representative per comparable
// group of the subsumption preorder (`harder(a, b)` must imply that every
// accepting continuation of a is one of b): a set that already contains the
// harder requirement accepts exactly the same words without the laxer copy.
// Dropped obligations are remapped onto their surviving dominators so the
// breakpoint argument keeps tracking every branch. Successor candidates are
// additionally pruned to the plain-inclusion antichain, the classical
// language-preserving reduction.
inline Nbw abw_to_nbw(const Apw& abw, const Caps& caps = {},
                      const std::function<bool(int, int)>& harder_in = {}) {
  if (!abw.buchi_shaped()) throw malformed_input("abw_to_nbw: input not Buchi-shaped");
  int n = abw.num_states();
  std::vector<char> acc(n, 0);
  for (int s = 0; s < n; ++s) acc[s] = abw.priority[s] == 2 ? 1 : 0;
  auto harder = harder_in ? harder_in : [](int a, int b) { return a == b; };

  // Keep only subsumption-minimal requirements inside one requirement set
  // (distinct states are never mutually comparable: equal annotations share
  // one id). Obligations are remapped onto their surviving dominators so the
  // breakpoint argument keeps tracking every branch.
  auto merge_pair = [&](std::pair<std::vector<int>, std::vector<int>>& np) {
    std::vector<int> survivors;
    for (int x : np.first) {
      bool drop = false;
      for (int y : np.first)
        if (y != x && harder(y, x)) {
          drop = true;
          break;
        }
      if (!drop) survivors.push_back(x);
    }
    std::vector<int> oblig;
    for (int o : np.second) {
      for (int y : survivors) {
        if (y == o || harder(y, o)) {
          oblig.push_back(y);
          break;
        }
      }
    }
    std::sort(oblig.begin(), oblig.end());
    oblig.erase(std::unique(oblig.begin(), oblig.end()), oblig.end());
    np.first = std::move(survivors);
    np.second = std::move(oblig);
  };
  using SetPair = std::pair<std::vector<int>, std::vector<int>>;
  std::map<SetPair, int> ids;
  std::vector<SetPair> pool;
  Nbw out;
  out.num_letters = abw.num_letters;
  auto intern = [&](SetPair sp) {
    auto it = ids.find(sp);
    if (it != ids.end()) return it->second;
    int id = out.add_state(sp.second.empty());
    caps.charge("abw_to_nbw", static_cast<std::size_t>(out.num_states()));
    ids.emplace(sp, id);
    pool.push_back(std::move(sp));
    return id;
  };

  int start = intern({{abw.initial}, {}});
  out.initial = {start};

  for (int cur = 0; cur < out.num_states(); ++cur) {
    SetPair sp = pool[cur];
    const std::vector<int>& S = sp.first;
    const std::vector<int>& O = sp.second;
    for (int l = 0; l < abw.num_letters; ++l) {
      // Fold the per-state model choices into an antichain of (S', O').
      std::vector<SetPair> acc_pairs = {{{}, {}}};
      bool dead = false;
      for (int s : S) {
        auto models = abw.gamma(s, l).minimal_models();
        if (models.empty()) {
          dead = true;
          break;
        }
        bool owing = std::binary_search(O.begin(), O.end(), s);
        std::vector<SetPair> next_pairs;
        for (const auto& prev : acc_pairs) {
          for (const auto& m : models) {
            SetPair np;
            np.first = BoolFormula::set_union(prev.first, m);
            np.second = owing ? BoolFormula::set_union(prev.second, m) : prev.second;
            merge_pair(np);
            next_pairs.push_back(std::move(np));
          }
        }
        std::vector<SetPair> kept;
        std::stable_sort(next_pairs.begin(), next_pairs.end(),
                         [](const SetPair& a, const SetPair& b) {
                           return a.first.size() + a.second.size() <
                                  b.first.size() + b.second.size();
                         });
        for (auto& c : next_pairs) {
          bool dominated = false;
          for (const auto& k : kept) {
            if (std::includes(c.first.begin(), c.first.end(), k.first.begin(), k.first.end()) &&
                std::includes(c.second.begin(), c.second.end(), k.second.begin(),
                              k.second.end())) {
              dominated = true;
              break;
            }
          }
          if (!dominated) kept.push_back(std::move(c));
        }
        acc_pairs = std::move(kept);
      }
      if (dead) continue;
      for (auto& np : acc_pairs) {
        // Breakpoint: strip accepting states from the obligations; if no
        // obligations remain, restart them from the full successor set.
        std::vector<int> o2;
        if (O.empty()) {
          for (int q : np.first)
            if (!acc[q]) o2.push_back(q);
        } else {
          for (int q : np.second)
            if (!acc[q]) o2.push_back(q);
        }
        std::sort(o2.begin(), o2.end());
        out.add_edge(cur, l, intern({np.first, std::move(o2)}));
      }
    }
  }
  return out;
}

}  // namespace relgames
