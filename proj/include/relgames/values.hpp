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
#include <string>
#include <utility>
#include <vector>

#include "relgames/alternation.hpp"
#include "relgames/apw.hpp"
#include "relgames/arena.hpp"
#include "relgames/mealy.hpp"
#include "relgames/membership.hpp"
#include "relgames/nbw.hpp"
#include "relgames/safra.hpp"

namespace relgames {

// Protagonist: the player's own value (guess own moves, quantify over the
// others, acceptance by the player's relation). Coalition: the value of the
// opponents seen as one player, with the complemented relation; both the
// role split and the acceptance flip.
enum class ValueSide { Protagonist, Coalition };

// Value automaton over V: state 0 is the pre-initial state consuming v0,
// the rest is the (pi-vertex, play-vertex, relation-state) cube in a fixed
// dense layout so other modules can address the block.
struct ValueApw {
  Apw apw;
  int player = -1;
  ValueSide side = ValueSide::Protagonist;
  int v0 = 0;
  int num_vertices = 0;
  int rel_states = 0;

  int state_of(int v, int u, int q) const {
    return 1 + (v * num_vertices + u) * rel_states + q;
  }
  // inverse of state_of; state 0 decodes to (-1,-1,-1)
  std::tuple<int, int, int> decode(int s) const {
    if (s == 0) return {-1, -1, -1};
    int q = (s - 1) % rel_states;
    int vu = (s - 1) / rel_states;
    return {vu / num_vertices, vu % num_vertices, q};
  }
};

namespace detail {

// Fill one (v,u,q) cube into `out` starting at `offset`. `rel` must already
// carry the side-adjusted priorities. Existential choices go to the side that
// owns the play vertex in the guessed-strategy role.
inline void fill_value_cube(Apw& out, int offset, const Game& g, int player, ValueSide side,
                            const Dpw& rel) {
  const Arena& a = g.arena;
  int nv = a.num_vertices();
  int nq = rel.num_states();
  auto id = [&](int v, int u, int q) { return offset + (v * nv + u) * nq + q; };
  for (int v = 0; v < nv; ++v)
    for (int u = 0; u < nv; ++u)
      for (int q = 0; q < nq; ++q) {
        int s = out.add_state(rel.priority[q]);
        (void)s;
      }
  for (int v = 0; v < nv; ++v) {
    for (int u = 0; u < nv; ++u) {
      for (int q = 0; q < nq; ++q) {
        int q2 = rel.step(q, pair_letter(v, u, nv));
        bool guessing_owner = (a.owner[u] == player) == (side == ValueSide::Protagonist);
        for (int v2 : a.succ[v]) {
          std::vector<BoolFormula> parts;
          parts.reserve(a.succ[u].size());
          for (int u2 : a.succ[u]) parts.push_back(BoolFormula::make_atom(id(v2, u2, q2)));
          out.set_gamma(id(v, u, q), v2,
                        guessing_owner ? BoolFormula::disj(std::move(parts))
                                       : BoolFormula::conj(std::move(parts)));
        }
      }
    }
  }
}

}  // namespace detail

// The side-adjusted relation: the coalition plays against the complement.
inline Dpw side_relation(const Game& g, int player, ValueSide side) {
  return side == ValueSide::Protagonist ? g.relations.at(player)
                                        : complement_dpw(g.relations.at(player));
}

// APW accepting Val_i(v0) (Protagonist) or Val_{-i}(v0) (Coalition) over full
// plays starting at v0. State count is exactly 1 + |V|^2 * |rel|.
inline ValueApw value_apw(const Game& g, int player, ValueSide side, int v0) {
  const Arena& a = g.arena;
  if (v0 < 0 || v0 >= a.num_vertices()) throw malformed_input("initial vertex out of range");
  Dpw rel = side_relation(g, player, side);
  ValueApw out;
  out.player = player;
  out.side = side;
  out.v0 = v0;
  out.num_vertices = a.num_vertices();
  out.rel_states = rel.num_states();
  out.apw.num_letters = a.num_vertices();
  out.apw.initial = out.apw.add_state(0);
  detail::fill_value_cube(out.apw, 1, g, player, side, rel);
  out.apw.set_gamma(0, v0, BoolFormula::make_atom(out.state_of(v0, v0, rel.initial)));
  return out;
}

// Extract the finite-memory strategy certified by a winning membership game
// on a value automaton. Memory states are (relation state, lasso slot).
inline Mealy extract_value_strategy(const Game& g, const ValueApw& va, const MembershipGame& mg,
                                    const Lasso& x,
                                    std::map<std::pair<int, int>, int>* mem_index = nullptr) {
  const Arena& a = g.arena;
  int nv = a.num_vertices();
  Dpw rel = side_relation(g, va.player, va.side);
  Mealy m;
  m.controlled = va.player;
  m.coalition = va.side == ValueSide::Coalition;

  // reverse index: game position -> (apw state, slot)
  std::map<int, std::pair<int, int>> rev;
  for (const auto& [key, pos] : mg.state_pos) rev[pos] = key;

  std::map<std::pair<int, int>, int> mem_ids;
  std::vector<std::pair<int, int>> pool;
  auto intern = [&](int q, int k) {
    auto key = std::make_pair(q, k);
    auto [it, fresh] = mem_ids.emplace(key, static_cast<int>(pool.size()));
    if (fresh) {
      pool.push_back(key);
      m.add_memory("q" + std::to_string(q) + "_k" + std::to_string(k), nv);
    }
    return it->second;
  };

  // Even's choice at memory (q, k) on play vertex u: the membership-game
  // position for APW state (x_k, u, q) at slot next(k) has a single move to
  // the transition formula; the formula is an atom (one successor) or a
  // disjunction Even resolves.
  auto even_choice = [&](int k, int u, int q) -> int {
    auto it = mg.state_pos.find({va.state_of(x.at(k), u, q), x.next_pos(k)});
    if (it == mg.state_pos.end() || !mg.regions.even_wins(it->second)) return -1;
    int fpos = mg.game.moves[it->second][0];
    int target = rev.count(fpos) ? fpos : mg.regions.strategy[fpos];
    if (target < 0) return -1;
    auto rit = rev.find(target);
    if (rit == rev.end()) return -1;
    return std::get<1>(va.decode(rit->second.first));
  };

  m.initial = intern(rel.initial, 0);
  for (std::size_t cur = 0; cur < pool.size(); ++cur) {
    auto [q, k] = pool[cur];
    for (int u = 0; u < nv; ++u) {
      int q2 = rel.step(q, pair_letter(x.at(k), u, nv));
      int mem_id = mem_ids.at({q, k});
      if (m.controls(a.owner[u])) {
        int pick = even_choice(k, u, q);
        if (pick < 0) pick = a.succ[u].front();  // losing or unreachable slot
        m.output[mem_id][u] = pick;
      }
      m.update[mem_id][u] = intern(q2, x.next_pos(k));
    }
  }
  if (mem_index) *mem_index = mem_ids;
  return m;
}

// Threshold problem: is pi in Val_i(v)? On yes, also a machine whose every
// consistent play rho satisfies pi related-to rho, with memory (rel x |pi|).
inline std::pair<bool, std::optional<Mealy>> threshold_check(const Game& g, int player,
                                                             const Lasso& pi, int v0 = -1) {
  if (v0 < 0) v0 = g.initial;
  g.require_play(pi);
  if (pi.at(0) != v0) throw malformed_input("threshold lasso must start at the initial vertex");
  ValueApw va = value_apw(g, player, ValueSide::Protagonist, v0);
  MembershipGame mg = lasso_membership_game(va.apw, pi);
  if (!mg.member) return {false, std::nullopt};
  return {true, extract_value_strategy(g, va, mg, pi)};
}

namespace detail {

// One-player accepting-lasso search: all positions belong to the searcher.
// Returns the node sequence of an accepting play if one exists.
struct PlaySearch {
  ParityGame game;
  int start = -1;

  std::optional<std::pair<std::vector<int>, std::vector<int>>> run() const {
    Regions r = solve(game);
    if (!r.even_wins(start)) return std::nullopt;
    std::vector<int> path;
    std::vector<int> seen_at(game.num_positions(), -1);
    int v = start;
    for (;;) {
      if (seen_at[v] >= 0) {
        std::vector<int> prefix(path.begin(), path.begin() + seen_at[v]);
        std::vector<int> cycle(path.begin() + seen_at[v], path.end());
        return std::make_pair(prefix, cycle);
      }
      seen_at[v] = static_cast<int>(path.size());
      path.push_back(v);
      v = r.strategy[v] >= 0 ? r.strategy[v] : game.moves[v][0];
    }
  }
};

}  // namespace detail

// Verification of a threshold solution: search for a consistent play rho with
// pi not-related-to rho in the product of the machine-restricted arena, the
// lasso slots of pi and the complemented relation. True iff none exists; a
// counterexample play is reported through `witness` when supplied.
inline bool verify_threshold_strategy(const Game& g, int player, const Lasso& pi, const Mealy& m,
                                      Lasso* witness = nullptr, int v0 = -1) {
  if (v0 < 0) v0 = g.initial;
  g.require_play(pi);
  if (pi.at(0) != v0) throw malformed_input("threshold lasso must start at the initial vertex");
  if (m.coalition || m.controlled != player) throw malformed_input("machine controls the wrong player");
  const Arena& a = g.arena;
  int nv = a.num_vertices();
  Dpw comp = complement_dpw(g.relations.at(player));

  // nodes (u, mem, slot, q)
  detail::PlaySearch search;
  std::map<std::tuple<int, int, int, int>, int> ids;
  std::vector<std::tuple<int, int, int, int>> pool;
  auto intern = [&](int u, int mem, int k, int q) {
    auto key = std::make_tuple(u, mem, k, q);
    auto [it, fresh] = ids.emplace(key, static_cast<int>(pool.size()));
    if (fresh) {
      pool.push_back(key);
      search.game.add_position(kEven, comp.priority[q]);
    }
    return it->second;
  };
  search.start = intern(v0, m.initial, 0, comp.initial);
  for (std::size_t cur = 0; cur < pool.size(); ++cur) {
    auto [u, mem, k, q] = pool[cur];
    int q2 = comp.step(q, pair_letter(pi.at(k), u, nv));
    int mem2 = m.step(mem, u);
    if (mem2 < 0) throw malformed_input("machine memory update missing on reachable pair");
    std::vector<int> succs;
    if (m.controls(a.owner[u])) {
      int forced = m.out(mem, u);
      if (forced < 0 || !a.has_edge(u, forced))
        throw malformed_input("machine output missing or not a successor");
      succs.push_back(forced);
    } else {
      succs = a.succ[u];
    }
    int pos = ids.at({u, mem, k, q});
    for (int u2 : succs) search.game.add_move(pos, intern(u2, mem2, pi.next_pos(k), q2));
  }
  auto found = search.run();
  if (!found) return true;
  if (witness) {
    std::vector<int> pre, cyc;
    for (int node : found->first) pre.push_back(std::get<0>(pool[node]));
    for (int node : found->second) cyc.push_back(std::get<0>(pool[node]));
    *witness = canonicalize_lasso(pre, cyc);
  }
  return false;
}

// Emptiness pipeline on an APW over V; returns an accepting lasso if any.
inline std::optional<Lasso> apw_empty_witness(const Apw& aut, const Caps& caps = {}) {
  Apw pruned = prune_apw(aut);
  RankedAbw ranked = apw_to_abw_ranked(pruned, caps);
  Nbw nbw = trim_nbw(abw_to_nbw(ranked.abw, caps,
                                [&ranked](int a, int b) { return ranked.harder(a, b); }));
  return nbw_empty_witness(nbw);
}

// Existence of a solvable threshold: Val_i(v0) non-empty, with a witness that
// re-passes threshold_check.
inline std::optional<Lasso> threshold_exists(const Game& g, int player, int v0,
                                             const Caps& caps = {}) {
  ValueApw va = value_apw(g, player, ValueSide::Protagonist, v0);
  return apw_empty_witness(va.apw, caps);
}

// Is the machine an optimal strategy from v0? Checks emptiness of
// { (pi, rho) : pi in Val, rho consistent with m, pi not related to rho }.
inline bool verify_optimal(const Game& g, int player, int v0, const Mealy& m,
                           std::pair<Lasso, Lasso>* witness = nullptr, const Caps& caps = {}) {
  if (m.coalition || m.controlled != player) throw malformed_input("machine controls the wrong player");
  int nv = g.num_vertices();
  ValueApw va = value_apw(g, player, ValueSide::Protagonist, v0);
  Apw val_track = lift_apw_to_pairs(prune_apw(va.apw), nv, true);
  Apw cons_track = lift_apw_to_pairs(dpw_as_apw(consistency_dpw(g.arena, m, v0)), nv, false);
  Apw rel_track = dpw_as_apw(complement_dpw(g.relations.at(player)));
  Apw all = intersect_apws({val_track, cons_track, rel_track});
  auto wit = apw_empty_witness(all, caps);
  if (!wit) return true;
  if (witness) {
    std::vector<int> pl, pr, cl, cr;
    for (int letter : wit->prefix) pl.push_back(pair_left(letter, nv)), pr.push_back(pair_right(letter, nv));
    for (int letter : wit->cycle) cl.push_back(pair_left(letter, nv)), cr.push_back(pair_right(letter, nv));
    *witness = {canonicalize_lasso(pl, cl), canonicalize_lasso(pr, cr)};
  }
  return false;
}

// Existence of an optimal strategy via the deterministic objective automaton:
// dualized value on the pi track joined with the relation, complemented by
// alternation removal, projected onto the play track, determinized and
// complemented, then solved as a product parity game on the arena.
inline std::optional<Mealy> optimal_exists(const Game& g, int player, int v0,
                                           const Caps& caps = {}, std::string* stage = nullptr) {
  const Arena& a = g.arena;
  int nv = a.num_vertices();
  auto mark = [&](const char* s) {
    if (stage) *stage = s;
  };

  mark("value-apw");
  ValueApw va = value_apw(g, player, ValueSide::Protagonist, v0);
  Apw value_pruned = prune_apw(va.apw);

  // L1 = { (pi, rho) : pi in Val => pi rel rho }
  mark("objective-apw");
  Apw c1 = union_apws({dualize_apw(lift_apw_to_pairs(value_pruned, nv, true)),
                       dpw_as_apw(g.relations.at(player))});
  // complement of L1, alternation removed
  mark("alternation-removal");
  Apw c2_apw = prune_apw(dualize_apw(c1));
  RankedAbw c2_ranked = apw_to_abw_ranked(c2_apw, caps);
  Nbw c2 = abw_to_nbw(c2_ranked.abw, caps,
                      [&c2_ranked](int a, int b) { return c2_ranked.harder(a, b); });
  mark("projection");
  Nbw c3 = bisim_quotient_nbw(trim_nbw(project_nbw(c2, nv, false)));
  mark("determinization");
  Dpw c = complement_dpw(determinize_nbw(c3, caps));

  mark("product-game");
  // positions (u, c-state after reading u)
  ParityGame pg;
  std::map<std::pair<int, int>, int> ids;
  std::vector<std::pair<int, int>> pool;
  auto intern = [&](int u, int cs) {
    auto key = std::make_pair(u, cs);
    auto [it, fresh] = ids.emplace(key, static_cast<int>(pool.size()));
    if (fresh) {
      pool.push_back(key);
      pg.add_position(a.owner[u] == player ? kEven : kOdd, c.priority[cs]);
    }
    return it->second;
  };
  int start = intern(v0, c.step(c.initial, v0));
  for (std::size_t cur = 0; cur < pool.size(); ++cur) {
    auto [u, cs] = pool[cur];
    int pos = ids.at({u, cs});
    for (int u2 : a.succ[u]) pg.add_move(pos, intern(u2, c.step(cs, u2)));
  }
  mark("solve");
  Regions r = solve(pg);
  if (!r.even_wins(start)) return std::nullopt;

  // memoryless product strategy as a Mealy machine; memory = C-states
  Mealy m;
  m.controlled = player;
  std::map<int, int> mem_ids;
  std::vector<int> mem_pool;
  auto mem_intern = [&](int cs) {
    auto [it, fresh] = mem_ids.emplace(cs, static_cast<int>(mem_pool.size()));
    if (fresh) {
      mem_pool.push_back(cs);
      m.add_memory("c" + std::to_string(cs), nv);
    }
    return it->second;
  };
  m.initial = mem_intern(c.initial);
  for (std::size_t cur = 0; cur < mem_pool.size(); ++cur) {
    int cs = mem_pool[cur];
    for (int u = 0; u < nv; ++u) {
      int cs2 = c.step(cs, u);
      int mem_id = mem_ids.at(cs);
      if (a.owner[u] == player) {
        int pick = a.succ[u].front();
        auto it = ids.find({u, cs2});
        if (it != ids.end() && r.even_wins(it->second) && r.strategy[it->second] >= 0)
          pick = pool[r.strategy[it->second]].first;
        m.output[mem_id][u] = pick;
      }
      m.update[mem_id][u] = mem_intern(cs2);
    }
  }
  mark("done");
  return m;
}

// Both memberships of the zero-sum duality; the contract is that exactly one
// side holds for every play.
inline bool determinacy_check(const Game& g, int player, int v0, const Lasso& x) {
  g.require_play(x);
  bool mine = apw_member(value_apw(g, player, ValueSide::Protagonist, v0).apw, x);
  bool theirs = apw_member(value_apw(g, player, ValueSide::Coalition, v0).apw, x);
  return mine != theirs;
}

}  // namespace relgames
