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
#include <tuple>
#include <vector>

#include "relgames/values.hpp"

namespace relgames {

// Equilibrium witness: the outcome, one composed machine per player (follow
// the outcome, switch to the punishing machine of the first deviator), and a
// human-readable dispatch table.
struct NeWitness {
  Lasso outcome;
  std::vector<Mealy> profile;            // per player
  std::vector<std::string> dispatch;     // per deviator
  bool certified = false;                // verify_ne_profile verdict
};

// APW for the set of equilibrium outcomes from v0: the intersection of the
// coalition values of all players, sharing one fresh conjunctive initial
// state. States: 1 + sum over players of |V|^2 * |rel_i|.
inline Apw ne_outcome_apw(const Game& g, int v0, const std::vector<int>& players) {
  const Arena& a = g.arena;
  int nv = a.num_vertices();
  Apw out;
  out.num_letters = nv;
  out.initial = out.add_state(1);
  std::vector<BoolFormula> entry;
  for (int i : players) {
    Dpw rel = complement_dpw(g.relations.at(i));
    int offset = out.num_states();
    detail::fill_value_cube(out, offset, g, i, ValueSide::Coalition, rel);
    entry.push_back(
        BoolFormula::make_atom(offset + (v0 * nv + v0) * rel.num_states() + rel.initial));
  }
  out.set_gamma(0, v0, BoolFormula::conj(std::move(entry)));
  return out;
}

inline Apw ne_outcome_apw(const Game& g, int v0) {
  std::vector<int> players;
  for (int i = 0; i < g.num_players(); ++i) players.push_back(i);
  return ne_outcome_apw(g, v0, players);
}

inline bool lasso_is_ne_outcome(const Game& g, int v0, const Lasso& x) {
  g.require_play(x);
  return apw_member(ne_outcome_apw(g, v0), x);
}

namespace detail {

// Composed profile machines: follow the outcome; on the first deviation the
// owner of the last conforming vertex is the deviator, and everyone else
// switches to the punishing machine extracted from the deviator's coalition
// value. Follow memories walk the joint diagonal run (lasso slot plus one
// relation state per player), which pins down the predecessor vertex and the
// punisher entry states.
struct ProfileBuilder {
  const Game& g;
  const Lasso& x;
  int v0;

  struct Punisher {
    Mealy machine;                        // coalition machine of deviator i
    std::map<std::pair<int, int>, int> mem_of;  // (rel state, slot) -> memory
  };
  std::vector<Punisher> punishers;  // per deviator
  bool punishable = true;

  // joint diagonal run
  struct FollowStep {
    int slot;                 // lasso slot read at this step
    std::vector<int> diag;    // per player: relation state before this step
    int succ = -1;            // next follow step
    int prev_vertex = -1;     // -1 for the first step
  };
  std::vector<FollowStep> follow;

  explicit ProfileBuilder(const Game& game, const Lasso& outcome, int start)
      : g(game), x(outcome), v0(start) {
    build_punishers();
    build_follow();
  }

  void build_punishers() {
    for (int i = 0; i < g.num_players(); ++i) {
      ValueApw va = value_apw(g, i, ValueSide::Coalition, v0);
      MembershipGame mg = lasso_membership_game(va.apw, x);
      if (!mg.member) punishable = false;
      Punisher p;
      p.machine = extract_value_strategy(g, va, mg, x, &p.mem_of);
      punishers.push_back(std::move(p));
    }
  }

  void build_follow() {
    std::map<std::pair<int, std::vector<int>>, int> seen;
    int nv = g.num_vertices();
    int slot = 0;
    std::vector<int> diag;
    for (int i = 0; i < g.num_players(); ++i) diag.push_back(g.relations[i].initial);
    int prev = -1;
    for (;;) {
      auto key = std::make_pair(slot, diag);
      auto it = seen.find(key);
      if (it != seen.end()) {
        follow.back().succ = it->second;
        return;
      }
      seen.emplace(key, static_cast<int>(follow.size()));
      if (!follow.empty()) follow.back().succ = static_cast<int>(follow.size());
      follow.push_back(FollowStep{slot, diag, -1, prev});
      prev = x.at(slot);
      for (int i = 0; i < g.num_players(); ++i)
        diag[i] = g.relations[i].step(diag[i], pair_letter(x.at(slot), x.at(slot), nv));
      slot = x.next_pos(slot);
    }
  }

  // memory layout of the composed machine: follow steps, then one block per
  // deviator's punisher memories, then a free absorbing state.
  Mealy compose_for(int player) const {
    const Arena& a = g.arena;
    int nv = a.num_vertices();
    Mealy m;
    m.controlled = player;
    std::vector<int> block(punishers.size() + 1, 0);
    for (std::size_t t = 0; t < follow.size(); ++t)
      m.add_memory("f" + std::to_string(t), nv);
    for (std::size_t d = 0; d < punishers.size(); ++d) {
      block[d] = m.memory_size();
      for (int pm = 0; pm < punishers[d].machine.memory_size(); ++pm)
        m.add_memory("p" + std::to_string(d) + "_" + punishers[d].machine.memory_names[pm], nv);
    }
    int free_mem = m.add_memory("free", nv);
    m.initial = 0;

    for (int v = 0; v < nv; ++v) {
      m.update[free_mem][v] = free_mem;
      if (a.owner[v] == player) m.output[free_mem][v] = a.succ[v].front();
    }
    for (std::size_t d = 0; d < punishers.size(); ++d) {
      const Mealy& p = punishers[d].machine;
      for (int pm = 0; pm < p.memory_size(); ++pm) {
        for (int v = 0; v < nv; ++v) {
          m.update[block[d] + pm][v] =
              p.update[pm][v] >= 0 ? block[d] + p.update[pm][v] : free_mem;
          if (a.owner[v] == player) {
            int o = static_cast<int>(d) != player ? p.output[pm][v] : -1;
            m.output[block[d] + pm][v] = o >= 0 ? o : a.succ[v].front();
          }
        }
      }
    }
    for (std::size_t t = 0; t < follow.size(); ++t) {
      const FollowStep& f = follow[t];
      for (int v = 0; v < nv; ++v) {
        if (v == x.at(f.slot)) {
          m.update[t][v] = f.succ;
          if (a.owner[v] == player) m.output[t][v] = x.at(follow[f.succ].slot);
        } else {
          int deviator = f.prev_vertex < 0 ? -1 : a.owner[f.prev_vertex];
          if (deviator < 0 || deviator == player) {
            m.update[t][v] = free_mem;
            if (a.owner[v] == player) m.output[t][v] = a.succ[v].front();
          } else {
            const Punisher& p = punishers[deviator];
            auto it = p.mem_of.find({f.diag[deviator], f.slot});
            if (it == p.mem_of.end()) {
              m.update[t][v] = free_mem;
              if (a.owner[v] == player) m.output[t][v] = a.succ[v].front();
            } else {
              int entry = it->second;
              int next = p.machine.update[entry][v];
              m.update[t][v] = next >= 0 ? block[deviator] + next : free_mem;
              if (a.owner[v] == player) {
                int o = p.machine.output[entry][v];
                m.output[t][v] = o >= 0 ? o : a.succ[v].front();
              }
            }
          }
        }
      }
    }
    return m;
  }

  std::vector<std::string> dispatch_table() const {
    std::vector<std::string> out;
    for (std::size_t d = 0; d < punishers.size(); ++d)
      out.push_back("deviator " + g.arena.player_names.name(static_cast<int>(d)) +
                    " -> coalition punisher with " +
                    std::to_string(punishers[d].machine.memory_size()) +
                    " memory states (embedded in every profile machine)");
    return out;
  }
};

}  // namespace detail

// The unique play all machines produce from v0.
inline Lasso profile_outcome(const Game& g, int v0, const std::vector<Mealy>& profile) {
  if (static_cast<int>(profile.size()) != g.num_players())
    throw malformed_input("profile must cover all players");
  const Arena& a = g.arena;
  std::map<std::pair<int, std::vector<int>>, int> seen;
  std::vector<int> mems;
  for (const auto& m : profile) mems.push_back(m.initial);
  std::vector<int> trace;
  int u = v0;
  for (;;) {
    auto key = std::make_pair(u, mems);
    auto it = seen.find(key);
    if (it != seen.end()) {
      std::vector<int> prefix(trace.begin(), trace.begin() + it->second);
      std::vector<int> cycle(trace.begin() + it->second, trace.end());
      return canonicalize_lasso(prefix, cycle);
    }
    seen.emplace(key, static_cast<int>(trace.size()));
    trace.push_back(u);
    int mover = a.owner[u];
    int next = profile[mover].out(mems[mover], u);
    if (next < 0 || !a.has_edge(u, next))
      throw malformed_input("profile output missing or not a successor");
    std::vector<int> mems2;
    for (std::size_t j = 0; j < profile.size(); ++j) {
      int m2 = profile[j].step(mems[j], u);
      if (m2 < 0) throw malformed_input("profile memory update missing");
      mems2.push_back(m2);
    }
    mems = std::move(mems2);
    u = next;
  }
}

// Is the profile an equilibrium from v0? For each player, search the product
// of the arena restricted by the other machines and the player's relation
// driven by the outcome on the left track for a profitable deviation.
inline bool verify_ne_profile(const Game& g, int v0, const std::vector<Mealy>& profile,
                              int* bad_player = nullptr, Lasso* deviation = nullptr) {
  const Arena& a = g.arena;
  int nv = a.num_vertices();
  Lasso x = profile_outcome(g, v0, profile);
  for (int i = 0; i < g.num_players(); ++i) {
    const Dpw& rel = g.relations[i];
    detail::PlaySearch search;
    std::map<std::tuple<int, std::vector<int>, int, int>, int> ids;
    std::vector<std::tuple<int, std::vector<int>, int, int>> pool;
    auto intern = [&](int u, const std::vector<int>& mems, int k, int q) {
      auto key = std::make_tuple(u, mems, k, q);
      auto [it, fresh] = ids.emplace(key, static_cast<int>(pool.size()));
      if (fresh) {
        pool.push_back(key);
        search.game.add_position(kEven, rel.priority[q]);
      }
      return it->second;
    };
    std::vector<int> init_mems;
    for (const auto& m : profile) init_mems.push_back(m.initial);
    search.start = intern(v0, init_mems, 0, rel.initial);
    for (std::size_t cur = 0; cur < pool.size(); ++cur) {
      auto [u, mems, k, q] = pool[cur];
      int q2 = rel.step(q, pair_letter(x.at(k), u, nv));
      std::vector<int> mems2;
      for (std::size_t j = 0; j < profile.size(); ++j) {
        int m2 = profile[j].step(mems[j], u);
        if (m2 < 0) throw malformed_input("profile memory update missing");
        mems2.push_back(m2);
      }
      std::vector<int> succs;
      if (a.owner[u] == i) {
        succs = a.succ[u];
      } else {
        int forced = profile[a.owner[u]].out(mems[a.owner[u]], u);
        if (forced < 0 || !a.has_edge(u, forced))
          throw malformed_input("profile output missing or not a successor");
        succs.push_back(forced);
      }
      int pos = ids.at({u, mems, k, q});
      for (int u2 : succs) search.game.add_move(pos, intern(u2, mems2, x.next_pos(k), q2));
    }
    auto found = search.run();
    if (found) {
      if (bad_player) *bad_player = i;
      if (deviation) {
        std::vector<int> pre, cyc;
        for (int node : found->first) pre.push_back(std::get<0>(pool[node]));
        for (int node : found->second) cyc.push_back(std::get<0>(pool[node]));
        *deviation = canonicalize_lasso(pre, cyc);
      }
      return false;
    }
  }
  return true;
}

namespace detail {

// Witness post-processing shared by the ne_* deciders.
inline std::optional<NeWitness> witness_from_lasso(const Game& g, int v0,
                                                   const std::optional<Lasso>& wit) {
  if (!wit) return std::nullopt;
  ProfileBuilder builder(g, *wit, v0);
  NeWitness out;
  out.outcome = *wit;
  for (int j = 0; j < g.num_players(); ++j) out.profile.push_back(builder.compose_for(j));
  out.dispatch = builder.dispatch_table();
  out.certified = verify_ne_profile(g, v0, out.profile);
  return out;
}

// Emptiness with a preference for witnesses that no player weakly prefers to
// themselves: those never trip the replay deviation during certification.
inline std::optional<Lasso> ne_witness_search(const Game& g, int v0, const Apw& base,
                                              const Caps& caps) {
  int nv = g.num_vertices();
  std::vector<Apw> refined = {base};
  for (int i = 0; i < g.num_players(); ++i)
    refined.push_back(dpw_as_apw(diagonal_dpw(complement_dpw(g.relations[i]), nv)));
  auto wit = apw_empty_witness(intersect_apws(refined), caps);
  if (wit) return wit;
  return apw_empty_witness(base, caps);
}

}  // namespace detail

inline std::optional<NeWitness> ne_exists(const Game& g, int v0, const Caps& caps = {}) {
  auto wit = detail::ne_witness_search(g, v0, ne_outcome_apw(g, v0), caps);
  return detail::witness_from_lasso(g, v0, wit);
}

// Equilibrium above per-player thresholds: the outcome must improve on every
// player's threshold lasso.
inline std::optional<NeWitness> ne_threshold(const Game& g, int v0,
                                             const std::vector<Lasso>& thresholds,
                                             const Caps& caps = {}) {
  if (static_cast<int>(thresholds.size()) != g.num_players())
    throw malformed_input("one threshold lasso per player required");
  int nv = g.num_vertices();
  std::vector<Apw> parts = {ne_outcome_apw(g, v0)};
  for (int i = 0; i < g.num_players(); ++i) {
    g.require_play(thresholds[i]);
    if (thresholds[i].at(0) != v0)
      throw malformed_input("threshold lasso must start at the initial vertex");
    parts.push_back(dpw_as_apw(drive_left_track(g.relations[i], thresholds[i], nv)));
  }
  auto wit = detail::ne_witness_search(g, v0, intersect_apws(parts), caps);
  return detail::witness_from_lasso(g, v0, wit);
}

// Equilibrium whose outcome satisfies a constraint automaton over V.
inline std::optional<NeWitness> ne_constraint(const Game& g, int v0, const Apw& constraint,
                                              const Caps& caps = {}) {
  if (constraint.num_letters != g.num_vertices())
    throw malformed_input("constraint alphabet mismatch");
  auto wit = detail::ne_witness_search(
      g, v0, intersect_apws({ne_outcome_apw(g, v0), constraint}), caps);
  return detail::witness_from_lasso(g, v0, wit);
}

// Pareto-optimal equilibrium outcome restricted to a player subset: the
// improvement language is complemented through alternation removal,
// projection and determinization, then intersected with the outcome set.
inline std::optional<Lasso> pareto_ne_exists(const Game& g, int v0,
                                             const std::vector<int>& subset,
                                             const Caps& caps = {},
                                             std::string* stage = nullptr) {
  if (subset.empty()) throw malformed_input("subset of players must be non-empty");
  int nv = g.num_vertices();
  auto mark = [&](const char* s) {
    if (stage) *stage = s;
  };

  mark("outcome-apw");
  Apw outcomes = ne_outcome_apw(g, v0);

  // L1 over pairs (pi, pi'): pi' not an outcome, or no subset player strictly
  // improves from pi to pi'.
  mark("improvement-apw");
  std::vector<Apw> conj;
  for (int i : subset) {
    Apw not_better = dpw_as_apw(complement_dpw(g.relations[i]));
    Apw back = dpw_as_apw(swap_tracks(g.relations[i], nv));
    conj.push_back(union_apws({not_better, back}));
  }
  Apw c1 = union_apws({dualize_apw(lift_apw_to_pairs(prune_apw(outcomes), nv, false)),
                       intersect_apws(conj)});

  mark("alternation-removal");
  Apw neg = prune_apw(dualize_apw(c1));
  RankedAbw ranked = apw_to_abw_ranked(neg, caps);
  Nbw c2pair = abw_to_nbw(ranked.abw, caps,
                          [&ranked](int a, int b) { return ranked.harder(a, b); });
  mark("projection");
  Nbw c2 = bisim_quotient_nbw(trim_nbw(project_nbw(c2pair, nv, true)));
  mark("determinization");
  Dpw blocked = complement_dpw(determinize_nbw(c2, caps));

  mark("final-emptiness");
  auto wit = apw_empty_witness(intersect_apws({outcomes, dpw_as_apw(blocked)}), caps);
  mark("done");
  return wit;
}

}  // namespace relgames
