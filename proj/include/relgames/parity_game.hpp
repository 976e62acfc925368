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
#include <cassert>
#include <optional>
#include <string>
#include <vector>

#include "relgames/common.hpp"
#include "relgames/lasso.hpp"

namespace relgames {

constexpr char kEven = 0;
constexpr char kOdd = 1;

// Two-player max-parity game. Even wins a play iff the maximum priority seen
// infinitely often is even. Every position must have at least one move.
struct ParityGame {
  std::vector<char> owner;              // kEven / kOdd
  std::vector<int> priority;
  std::vector<std::vector<int>> moves;  // declaration order; non-empty
  std::vector<std::string> labels;      // optional, used by the .pg dump

  int num_positions() const { return static_cast<int>(owner.size()); }

  int add_position(char side, int prio, std::string label = {}) {
    owner.push_back(side);
    priority.push_back(prio);
    moves.emplace_back();
    labels.push_back(std::move(label));
    return num_positions() - 1;
  }

  void add_move(int from, int to) { moves[from].push_back(to); }

  void check() const {
    for (int v = 0; v < num_positions(); ++v)
      if (moves[v].empty()) throw malformed_input("parity game position without moves");
  }
};

// Winning partition plus memoryless strategies. strategy[v] is the chosen
// successor when v is owned by its winner, -1 otherwise.
struct Regions {
  std::vector<char> winner;
  std::vector<int> strategy;

  bool even_wins(int pos) const { return winner[pos] == kEven; }
};

namespace detail {

struct ZielonkaSolver {
  const ParityGame& g;
  std::vector<std::vector<int>> preds;
  Regions result;

  explicit ZielonkaSolver(const ParityGame& game) : g(game) {
    g.check();
    int n = g.num_positions();
    preds.resize(n);
    for (int v = 0; v < n; ++v)
      for (int w : g.moves[v]) preds[w].push_back(v);
    result.winner.assign(n, kEven);
    result.strategy.assign(n, -1);
    std::vector<char> alive(n, 1);
    recurse(alive);
    for (int v = 0; v < n; ++v)
      if (g.owner[v] != result.winner[v]) result.strategy[v] = -1;
  }

  // Attractor of `targets` for side within `alive`. Attracted own positions
  // get a strategy (first successor in the set, declaration order); target
  // positions keep whatever strategy the caller assigns.
  std::vector<char> attractor(char side, const std::vector<char>& alive,
                              const std::vector<char>& targets) {
    int n = g.num_positions();
    std::vector<char> in_attr = targets;
    std::vector<int> escape(n, 0);
    for (int v = 0; v < n; ++v) {
      if (!alive[v] || g.owner[v] == side) continue;
      for (int w : g.moves[v])
        if (alive[w]) ++escape[v];
    }
    std::vector<int> queue;
    for (int v = 0; v < n; ++v)
      if (alive[v] && in_attr[v]) queue.push_back(v);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int u = queue[qi];
      for (int v : preds[u]) {
        if (!alive[v] || in_attr[v]) continue;
        if (g.owner[v] == side) {
          // choose the hop before flagging v, so a self-loop is never picked
          for (int w : g.moves[v]) {
            if (alive[w] && in_attr[w]) {
              result.strategy[v] = w;
              break;
            }
          }
          in_attr[v] = 1;
          queue.push_back(v);
        } else if (--escape[v] == 0) {
          in_attr[v] = 1;
          queue.push_back(v);
        }
      }
    }
    return in_attr;
  }

  void recurse(const std::vector<char>& alive) {
    int n = g.num_positions();
    int top = -1;
    for (int v = 0; v < n; ++v)
      if (alive[v]) top = std::max(top, g.priority[v]);
    if (top < 0) return;
    char side = static_cast<char>(top % 2);

    std::vector<char> targets(n, 0);
    for (int v = 0; v < n; ++v)
      if (alive[v] && g.priority[v] == top) targets[v] = 1;
    std::vector<char> attr = attractor(side, alive, targets);

    std::vector<char> rest = alive;
    for (int v = 0; v < n; ++v)
      if (attr[v]) rest[v] = 0;
    recurse(rest);

    bool opponent_wins_rest = false;
    for (int v = 0; v < n; ++v)
      if (rest[v] && result.winner[v] != side) opponent_wins_rest = true;

    if (!opponent_wins_rest) {
      for (int v = 0; v < n; ++v)
        if (alive[v]) result.winner[v] = side;
      // Top-priority positions of the winning side may move anywhere inside
      // the subgame; the attractor pulls the play back to them.
      for (int v = 0; v < n; ++v) {
        if (!alive[v] || !targets[v] || g.owner[v] != side) continue;
        for (int w : g.moves[v]) {
          if (alive[w]) {
            result.strategy[v] = w;
            break;
          }
        }
      }
      return;
    }

    std::vector<char> opp_won(n, 0);
    for (int v = 0; v < n; ++v)
      if (rest[v] && result.winner[v] != side) opp_won[v] = 1;
    std::vector<char> opp_attr = attractor(static_cast<char>(1 - side), alive, opp_won);
    std::vector<char> remaining = alive;
    for (int v = 0; v < n; ++v)
      if (opp_attr[v]) remaining[v] = 0;
    recurse(remaining);
    for (int v = 0; v < n; ++v)
      if (opp_attr[v]) result.winner[v] = static_cast<char>(1 - side);
  }
};

}  // namespace detail

// Zielonka's recursive algorithm with strategy extraction.
inline Regions solve(const ParityGame& g) { return detail::ZielonkaSolver(g).result; }

namespace detail {

// Positions lying on a cycle whose maximum priority has the given parity,
// in the graph restricted by the strategy `choice`. Iterates over candidate
// top priorities: any strongly connected part of the priorities<=p subgraph
// with an internal edge and a p-node carries a cycle of maximum exactly p.
inline std::vector<char> cycle_positions_with_parity(
    const ParityGame& g, const std::vector<int>& choice, char bad_parity) {
  int n = g.num_positions();
  std::vector<char> bad(n, 0);
  std::vector<std::vector<int>> adj(n);
  for (int v = 0; v < n; ++v) {
    if (choice[v] >= 0)
      adj[v].push_back(g.moves[v][choice[v]]);
    else
      adj[v] = g.moves[v];
  }
  int maxp = *std::max_element(g.priority.begin(), g.priority.end());
  std::vector<char> in_sub(n, 0);
  std::vector<int> order, comp(n, -1), stack;
  std::vector<char> seen(n, 0);
  for (int p = bad_parity; p <= maxp; p += 2) {
    bool any_top = false;
    for (int v = 0; v < n; ++v) {
      in_sub[v] = g.priority[v] <= p ? 1 : 0;
      if (in_sub[v] && g.priority[v] == p) any_top = true;
    }
    if (!any_top) continue;
    std::fill(comp.begin(), comp.end(), -1);
    // Forward DFS post-order.
    order.clear();
    std::fill(seen.begin(), seen.end(), 0);
    std::vector<std::pair<int, std::size_t>> frames;
    for (int root = 0; root < n; ++root) {
      if (!in_sub[root] || seen[root]) continue;
      frames.push_back({root, 0});
      seen[root] = 1;
      while (!frames.empty()) {
        auto& [v, idx] = frames.back();
        if (idx < adj[v].size()) {
          int w = adj[v][idx++];
          if (in_sub[w] && !seen[w]) {
            seen[w] = 1;
            frames.push_back({w, 0});
          }
        } else {
          order.push_back(v);
          frames.pop_back();
        }
      }
    }
    // Kosaraju second pass on the reverse graph.
    std::vector<std::vector<int>> rpreds(n);
    for (int v = 0; v < n; ++v)
      if (in_sub[v])
        for (int w : adj[v])
          if (in_sub[w]) rpreds[w].push_back(v);
    std::fill(seen.begin(), seen.end(), 0);
    int ncomp = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      if (seen[*it]) continue;
      stack.assign(1, *it);
      seen[*it] = 1;
      std::vector<int> members;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        members.push_back(v);
        comp[v] = ncomp;
        for (int w : rpreds[v]) {
          if (!seen[w]) {
            seen[w] = 1;
            stack.push_back(w);
          }
        }
      }
      bool has_edge = false, has_top = false;
      for (int v : members) {
        for (int w : adj[v])
          if (in_sub[w] && comp[w] == ncomp) has_edge = true;
        if (g.priority[v] == p) has_top = true;
      }
      if (has_edge && has_top)
        for (int v : members) bad[v] = 1;
      ++ncomp;
    }
  }
  return bad;
}

}  // namespace detail

// Exhaustive memoryless-strategy enumeration; ground truth for solve().
// `max_positions` mirrors the documented default bound.
inline Regions brute_solve(const ParityGame& g, int max_positions = 10) {
  g.check();
  int n = g.num_positions();
  if (n > max_positions)
    throw capacity_exceeded("brute_solve",
                            "brute_solve: " + std::to_string(n) + " positions exceeds bound " +
                                std::to_string(max_positions));
  Regions out;
  out.winner.assign(n, kOdd);
  out.strategy.assign(n, -1);

  for (char side : {kEven, kOdd}) {
    std::vector<int> own;
    for (int v = 0; v < n; ++v)
      if (g.owner[v] == side) own.push_back(v);
    long long combos = 1;
    for (int v : own) {
      combos *= static_cast<long long>(g.moves[v].size());
      if (combos > 2'000'000)
        throw capacity_exceeded("brute_solve", "brute_solve: too many strategies");
    }

    auto eval_strategy = [&](const std::vector<int>& choice) {
      // A position is won with this strategy iff it cannot reach a cycle of
      // the wrong parity in the restricted graph.
      std::vector<char> bad =
          detail::cycle_positions_with_parity(g, choice, static_cast<char>(1 - side));
      std::vector<char> reaches_bad = bad;
      bool changed = true;
      while (changed) {
        changed = false;
        for (int v = 0; v < n; ++v) {
          if (reaches_bad[v]) continue;
          bool hit = false;
          if (choice[v] >= 0) {
            hit = reaches_bad[g.moves[v][choice[v]]] != 0;
          } else {
            for (int w : g.moves[v])
              if (reaches_bad[w]) {
                hit = true;
                break;
              }
          }
          if (hit) reaches_bad[v] = 1, changed = true;
        }
      }
      std::vector<char> win(n, 0);
      for (int v = 0; v < n; ++v) win[v] = reaches_bad[v] ? 0 : 1;
      return win;
    };

    auto for_each_strategy = [&](auto&& body) {
      std::vector<int> choice(n, -1);
      std::vector<int> pick(own.size(), 0);
      for (;;) {
        for (std::size_t i = 0; i < own.size(); ++i) choice[own[i]] = pick[i];
        if (!body(choice)) return;
        std::size_t i = 0;
        for (; i < own.size(); ++i) {
          if (++pick[i] < static_cast<int>(g.moves[own[i]].size())) break;
          pick[i] = 0;
        }
        if (i == own.size()) return;
      }
    };

    // Pass one: positionwise union over strategies. Pass two: memoryless
    // determinacy guarantees one strategy attains the union; recover it.
    std::vector<char> win_union(n, 0);
    for_each_strategy([&](const std::vector<int>& choice) {
      std::vector<char> win = eval_strategy(choice);
      for (int v = 0; v < n; ++v)
        if (win[v]) win_union[v] = 1;
      return true;
    });
    bool found = false;
    for_each_strategy([&](const std::vector<int>& choice) {
      if (eval_strategy(choice) != win_union) return true;
      found = true;
      for (int v = 0; v < n; ++v) {
        if (!win_union[v]) continue;
        out.winner[v] = side;
        if (g.owner[v] == side) out.strategy[v] = g.moves[v][choice[v]];
      }
      return false;
    });
    assert(found);
    if (!found)
      throw std::logic_error("brute_solve: no uniform witness strategy");
  }
  return out;
}

// Play the strategy of `pos`'s winner from `pos` against successor choices
// supplied by `adv`; returns the eventual cycle's maximum priority parity.
// Used by self-consistency tests.
template <typename Adversary>
char play_parity(const ParityGame& g, const Regions& r, int pos, Adversary&& adv) {
  std::vector<int> visited_at(g.num_positions(), -1);
  std::vector<int> trace;
  int v = pos;
  for (;;) {
    if (visited_at[v] >= 0) {
      int best = -1;
      for (std::size_t k = static_cast<std::size_t>(visited_at[v]); k < trace.size(); ++k)
        best = std::max(best, g.priority[trace[k]]);
      return static_cast<char>(best % 2);
    }
    visited_at[v] = static_cast<int>(trace.size());
    trace.push_back(v);
    if (g.owner[v] == r.winner[pos] && r.strategy[v] >= 0)
      v = r.strategy[v];
    else
      v = adv(v);
  }
}

}  // namespace relgames
