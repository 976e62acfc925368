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

#include <set>
#include <string>
#include <vector>

#include "relgames/dpw.hpp"
#include "relgames/intern.hpp"
#include "relgames/lasso.hpp"

namespace relgames {

// Finite graph with vertex ownership. Successor lists keep declaration order;
// that order is the tie-break used by every search and witness construction.
struct Arena {
  Interner vertex_names;
  Interner player_names;
  std::vector<int> owner;              // vertex -> player
  std::vector<std::vector<int>> succ;  // declaration order, duplicates dropped
  std::vector<std::vector<char>> adj;  // adjacency matrix

  int num_vertices() const { return static_cast<int>(owner.size()); }
  int num_players() const { return player_names.size(); }

  int add_vertex(const std::string& name, int player) {
    int v = vertex_names.intern(name);
    if (v == static_cast<int>(owner.size())) {
      owner.push_back(player);
      succ.emplace_back();
      for (auto& row : adj) row.push_back(0);
      adj.emplace_back(owner.size(), 0);
    } else {
      owner[v] = player;
    }
    return v;
  }

  void add_edge(int from, int to) {
    if (from < 0 || from >= num_vertices() || to < 0 || to >= num_vertices())
      throw malformed_input("edge endpoint out of range");
    if (!adj[from][to]) {
      adj[from][to] = 1;
      succ[from].push_back(to);
    }
  }

  bool has_edge(int from, int to) const { return adj[from][to] != 0; }

  bool is_play(const Lasso& x) const {
    int n = num_vertices();
    for (int v : x.prefix)
      if (v < 0 || v >= n) return false;
    for (int v : x.cycle)
      if (v < 0 || v >= n) return false;
    int len = x.length();
    for (int k = 0; k < len; ++k)
      if (!has_edge(x.at(k), x.at(x.next_pos(k)))) return false;
    return true;
  }

  bool is_history(const std::vector<int>& h) const {
    if (h.empty()) return false;
    for (int v : h)
      if (v < 0 || v >= num_vertices()) return false;
    for (std::size_t k = 0; k + 1 < h.size(); ++k)
      if (!has_edge(h[k], h[k + 1])) return false;
    return true;
  }
};

// Loader-side observations about a relation automaton, reported by
// validate_game. Completion and determinization fixes are applied on load;
// the notes keep the pre-normalization picture visible.
struct RelationNotes {
  bool incomplete = false;       // sink was added
  bool nondeterministic = false; // duplicate transition at equal precedence
  std::vector<std::string> details;
};

struct Game {
  Arena arena;
  int initial = 0;
  std::vector<Dpw> relations;  // per player, over V x V, complete
  std::vector<RelationNotes> relation_notes;

  int num_vertices() const { return arena.num_vertices(); }
  int num_players() const { return arena.num_players(); }

  void require_play(const Lasso& x) const {
    if (!arena.is_play(x)) throw malformed_input("lasso is not a play of the arena");
  }
};

// Structural diagnostics; a valid game yields an empty list.
inline std::vector<std::string> validate_game(const Game& g) {
  std::vector<std::string> issues;
  const Arena& a = g.arena;
  for (int v = 0; v < a.num_vertices(); ++v) {
    if (a.succ[v].empty())
      issues.push_back("vertex " + a.vertex_names.name(v) + ": no successor");
    if (a.owner[v] < 0 || a.owner[v] >= a.num_players())
      issues.push_back("vertex " + a.vertex_names.name(v) + ": ownership gap");
  }
  if (static_cast<int>(g.relations.size()) != a.num_players())
    issues.push_back("missing relation for some player");
  for (std::size_t i = 0; i < g.relations.size(); ++i) {
    const std::string player = a.player_names.name(static_cast<int>(i));
    const Dpw& rel = g.relations[i];
    if (rel.num_letters != a.num_vertices() * a.num_vertices())
      issues.push_back("relation of player " + player + ": alphabet mismatch");
    if (i < g.relation_notes.size()) {
      const RelationNotes& notes = g.relation_notes[i];
      if (notes.nondeterministic)
        issues.push_back("relation of player " + player + ": nondeterministic");
      if (notes.incomplete)
        issues.push_back("relation of player " + player +
                         ": incomplete (rejecting sink added)");
      for (const auto& d : notes.details)
        issues.push_back("relation of player " + player + ": " + d);
    }
  }
  if (g.initial < 0 || g.initial >= a.num_vertices())
    issues.push_back("initial vertex out of range");
  return issues;
}

// Player i prefers y to x.
inline bool prefers(const Game& g, int player, const Lasso& x, const Lasso& y) {
  g.require_play(x);
  g.require_play(y);
  return eval_dpw_pair(g.relations.at(player), x, y, g.num_vertices());
}

namespace fixtures {

// Three-vertex arena: round vertex v0 (player 1) with a self-loop feeding two
// square vertices v1, v2 (player 2) that can reach each other.
inline Arena f5_arena() {
  Arena a;
  int p1 = a.player_names.intern("1");
  int p2 = a.player_names.intern("2");
  int v0 = a.add_vertex("v0", p1);
  int v1 = a.add_vertex("v1", p2);
  int v2 = a.add_vertex("v2", p2);
  a.add_edge(v0, v0);
  a.add_edge(v0, v1);
  a.add_edge(v0, v2);
  a.add_edge(v1, v1);
  a.add_edge(v1, v2);
  a.add_edge(v2, v2);
  a.add_edge(v2, v1);
  return a;
}

// Min-cost reachability: x related to y iff c(x) >= c(y), where c counts the
// vertices up to and including the first visit to the target set.
inline Dpw minc_dpw(int num_vertices, const std::set<int>& target) {
  Dpw d;
  d.num_letters = num_vertices * num_vertices;
  d.initial = 0;
  d.priority = {0, 0, 1};  // waiting, y-first (accept), x-first (reject)
  d.delta.resize(3u * d.num_letters);
  auto in = [&](int v) { return target.count(v) > 0; };
  for (int a = 0; a < num_vertices; ++a) {
    for (int b = 0; b < num_vertices; ++b) {
      int l = pair_letter(a, b, num_vertices);
      int from0 = in(b) ? 1 : (in(a) ? 2 : 0);
      d.delta[0u * d.num_letters + l] = from0;
      d.delta[1u * d.num_letters + l] = 1;
      d.delta[2u * d.num_letters + l] = 2;
    }
  }
  return d;
}

// Max-reward reachability: x related to y iff x never reaches the target, or
// both reach it and x does so at most as late as y. Completed with a rejecting
// sink for the one undrawn case (y strictly first, x reaching later).
inline Dpw maxr_dpw(int num_vertices, const std::set<int>& target) {
  Dpw d;
  d.num_letters = num_vertices * num_vertices;
  d.initial = 0;
  d.priority = {0, 1, 0, 0, 1};  // q0, q1 x-first, q2 both, q3 y-first, sink
  d.delta.resize(5u * d.num_letters);
  auto in = [&](int v) { return target.count(v) > 0; };
  for (int a = 0; a < num_vertices; ++a) {
    for (int b = 0; b < num_vertices; ++b) {
      int l = pair_letter(a, b, num_vertices);
      int from0 = in(a) ? (in(b) ? 2 : 1) : (in(b) ? 3 : 0);
      d.delta[0u * d.num_letters + l] = from0;
      d.delta[1u * d.num_letters + l] = in(b) ? 2 : 1;
      d.delta[2u * d.num_letters + l] = 2;
      d.delta[3u * d.num_letters + l] = in(a) ? 4 : 3;
      d.delta[4u * d.num_letters + l] = 4;
    }
  }
  return d;
}

// Two Boolean reachability objectives: x related to y iff every target set
// visited by x is also visited by y. The 16-state grid tracks the visited
// subsets of both words; cells where the x-subset is contained in the
// y-subset are accepting.
inline Dpw twot_dpw(int num_vertices, const std::set<int>& t1, const std::set<int>& t2) {
  Dpw d;
  d.num_letters = num_vertices * num_vertices;
  d.initial = 0;  // (empty, empty)
  d.priority.resize(16);
  d.delta.resize(16u * d.num_letters);
  auto tags = [&](int v) { return (t1.count(v) ? 1 : 0) | (t2.count(v) ? 2 : 0); };
  for (int sx = 0; sx < 4; ++sx) {
    for (int sy = 0; sy < 4; ++sy) {
      int s = sx * 4 + sy;
      d.priority[s] = (sx & ~sy) == 0 ? 0 : 1;
      for (int a = 0; a < num_vertices; ++a)
        for (int b = 0; b < num_vertices; ++b)
          d.delta[static_cast<std::size_t>(s) * d.num_letters +
                  pair_letter(a, b, num_vertices)] = (sx | tags(a)) * 4 + (sy | tags(b));
    }
  }
  return d;
}

// Universal and empty relations (one state, total self-loop).
inline Dpw const_relation(int num_vertices, bool full) {
  Dpw d;
  d.num_letters = num_vertices * num_vertices;
  d.initial = 0;
  d.priority = {full ? 0 : 1};
  d.delta.assign(static_cast<std::size_t>(d.num_letters), 0);
  return d;
}

inline Dpw full_relation(int num_vertices) { return const_relation(num_vertices, true); }
inline Dpw empty_relation(int num_vertices) { return const_relation(num_vertices, false); }

}  // namespace fixtures

}  // namespace relgames
