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

#include <optional>
#include <string>
#include <vector>

#include "relgames/equilibria.hpp"

namespace relgames {

// Rational-synthesis view of a game: one distinguished leader announces a
// strategy, the remaining players respond with an equilibrium among
// themselves (the leader's own deviations are not considered).
struct LeaderGame {
  Game game;
  int leader = 0;

  std::vector<int> followers() const {
    std::vector<int> out;
    for (int i = 0; i < game.num_players(); ++i)
      if (i != leader) out.push_back(i);
    return out;
  }
};

// Outcomes of leader-fixed equilibria: the leader's conjunct is dropped from
// the outcome intersection.
inline Apw zero_fixed_ne_apw(const LeaderGame& lg, int v0) {
  return ne_outcome_apw(lg.game, v0, lg.followers());
}

// Cooperative check: some leader-fixed equilibrium outcome improves on the
// leader's threshold. Returns such an outcome.
inline std::optional<Lasso> crs_check(const LeaderGame& lg, int v0, const Lasso& pi,
                                      const Caps& caps = {}) {
  lg.game.require_play(pi);
  if (pi.at(0) != v0) throw malformed_input("threshold lasso must start at the initial vertex");
  int nv = lg.game.num_vertices();
  Apw goal = dpw_as_apw(drive_left_track(lg.game.relations.at(lg.leader), pi, nv));
  return apw_empty_witness(intersect_apws({zero_fixed_ne_apw(lg, v0), goal}), caps);
}

// Product of a game with a leader machine: vertices become (vertex, memory),
// the leader's vertices follow the machine (all allowed options for the
// nondeterministic variant), relations read the projected vertices. The
// projection of product plays back to arena plays is position-wise.
struct LeaderProduct {
  Game product;          // game over the product arena
  LeaderGame lens;       // product game with the same leader
  int initial = 0;
  std::vector<int> base_vertex;  // product vertex -> arena vertex
};

inline LeaderProduct leader_product(const LeaderGame& lg, int v0, const Mealy& m0) {
  const Game& g = lg.game;
  const Arena& a = g.arena;
  if (m0.coalition || m0.controlled != lg.leader)
    throw malformed_input("machine controls the wrong player");
  int nv = a.num_vertices();

  LeaderProduct out;
  Arena& pa = out.product.arena;
  pa.player_names = a.player_names;

  std::map<std::pair<int, int>, int> ids;
  std::vector<std::pair<int, int>> pool;
  auto intern = [&](int u, int mem) {
    auto key = std::make_pair(u, mem);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    int id = pa.add_vertex(a.vertex_names.name(u) + "@" + m0.memory_names[mem], a.owner[u]);
    ids.emplace(key, id);
    pool.push_back(key);
    out.base_vertex.push_back(u);
    return id;
  };
  out.initial = intern(v0, m0.initial);
  for (std::size_t cur = 0; cur < pool.size(); ++cur) {
    auto [u, mem] = pool[cur];
    int from = static_cast<int>(cur);
    if (a.owner[u] == lg.leader) {
      if (m0.nondet) {
        const auto& opts = m0.options[mem][u];
        if (opts.empty()) throw malformed_input("machine has no option on a reachable vertex");
        for (const auto& [next, outv] : opts) {
          if (outv < 0 || !a.has_edge(u, outv))
            throw malformed_input("machine output missing or not a successor");
          pa.add_edge(from, intern(outv, next));
        }
      } else {
        int outv = m0.out(mem, u);
        int next = m0.step(mem, u);
        if (outv < 0 || next < 0 || !a.has_edge(u, outv))
          throw malformed_input("machine output missing or not a successor");
        pa.add_edge(from, intern(outv, next));
      }
    } else {
      int next;
      if (m0.nondet) {
        const auto& opts = m0.options[mem][u];
        if (opts.size() != 1)
          throw malformed_input(
              "nondeterministic machine must update deterministically on vertices it does not "
              "control");
        next = opts.front().first;
      } else {
        next = m0.step(mem, u);
      }
      if (next < 0) throw malformed_input("machine memory update missing on reachable pair");
      for (int u2 : a.succ[u]) pa.add_edge(from, intern(u2, next));
    }
  }

  // relations over the product alphabet read the projected vertices
  int pn = pa.num_vertices();
  for (const Dpw& rel : g.relations) {
    Dpw lifted;
    lifted.num_letters = pn * pn;
    lifted.initial = rel.initial;
    lifted.priority = rel.priority;
    lifted.delta.resize(static_cast<std::size_t>(rel.num_states()) * lifted.num_letters);
    for (int q = 0; q < rel.num_states(); ++q)
      for (int x = 0; x < pn; ++x)
        for (int y = 0; y < pn; ++y)
          lifted.delta[static_cast<std::size_t>(q) * lifted.num_letters +
                       pair_letter(x, y, pn)] =
              rel.step(q, pair_letter(out.base_vertex[x], out.base_vertex[y], nv));
    out.product.relations.push_back(std::move(lifted));
  }
  out.product.relation_notes.resize(out.product.relations.size());
  out.product.initial = out.initial;
  out.lens.game = out.product;
  out.lens.leader = lg.leader;
  return out;
}

namespace detail {

// Leader-threshold automaton over the product alphabet: accepts rho iff
// pi is related to the projection of rho under the leader's relation; when
// `complemented`, iff it is not.
inline Apw leader_goal_apw(const LeaderGame& lg, const LeaderProduct& prod, const Lasso& pi,
                           bool complemented) {
  Dpw rel = lg.game.relations.at(lg.leader);
  if (complemented) rel = complement_dpw(rel);
  int nv = lg.game.num_vertices();
  int pn = prod.product.num_vertices();
  // drive the left track with pi, read projected product vertices right
  Dpw d;
  d.num_letters = pn;
  int positions = pi.length();
  int n = rel.num_states();
  d.priority.resize(static_cast<std::size_t>(positions) * n);
  d.delta.resize(static_cast<std::size_t>(positions) * n * pn);
  for (int k = 0; k < positions; ++k)
    for (int q = 0; q < n; ++q) {
      int s = k * n + q;
      d.priority[s] = rel.priority[q];
      for (int b = 0; b < pn; ++b) {
        int q2 = rel.step(q, pair_letter(pi.at(k), prod.base_vertex[b], nv));
        d.delta[static_cast<std::size_t>(s) * pn + b] = pi.next_pos(k) * n + q2;
      }
    }
  d.initial = rel.initial;
  return dpw_as_apw(d);
}

}  // namespace detail

// Is m0 a solution to the cooperative synthesis problem? True iff some
// leader-fixed equilibrium outcome of the product improves on pi.
inline bool verify_crs(const LeaderGame& lg, int v0, const Lasso& pi, const Mealy& m0,
                       Lasso* witness = nullptr, const Caps& caps = {}) {
  lg.game.require_play(pi);
  LeaderProduct prod = leader_product(lg, v0, m0);
  Apw goal = detail::leader_goal_apw(lg, prod, pi, false);
  auto wit = apw_empty_witness(
      intersect_apws({zero_fixed_ne_apw(prod.lens, prod.initial), goal}), caps);
  if (wit && witness) {
    std::vector<int> pre, cyc;
    for (int b : wit->prefix) pre.push_back(prod.base_vertex[b]);
    for (int b : wit->cycle) cyc.push_back(prod.base_vertex[b]);
    *witness = canonicalize_lasso(pre, cyc);
  }
  return wit.has_value();
}

// Is m0 a solution to the non-cooperative synthesis problem? True iff no
// leader-fixed equilibrium outcome of the product violates pi; vacuously
// true when the product has no leader-fixed equilibrium at all.
inline bool verify_ncrs(const LeaderGame& lg, int v0, const Lasso& pi, const Mealy& m0,
                        Lasso* counterexample = nullptr, const Caps& caps = {}) {
  lg.game.require_play(pi);
  LeaderProduct prod = leader_product(lg, v0, m0);
  Apw violating = detail::leader_goal_apw(lg, prod, pi, true);
  auto wit = apw_empty_witness(
      intersect_apws({zero_fixed_ne_apw(prod.lens, prod.initial), violating}), caps);
  if (wit && counterexample) {
    std::vector<int> pre, cyc;
    for (int b : wit->prefix) pre.push_back(prod.base_vertex[b]);
    for (int b : wit->cycle) cyc.push_back(prod.base_vertex[b]);
    *counterexample = canonicalize_lasso(pre, cyc);
  }
  return !wit.has_value();
}

// Universal variant for nondeterministic machines: the leader keeps the
// choices resolving the machine's nondeterminism inside the product, and the
// answer is required for every resolution. Collapses to verify_ncrs on
// deterministic machines.
inline bool verify_ncrs_universal(const LeaderGame& lg, int v0, const Lasso& pi, const Mealy& m0,
                                  Lasso* counterexample = nullptr, const Caps& caps = {}) {
  return verify_ncrs(lg, v0, pi, m0, counterexample, caps);
}

}  // namespace relgames
