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
#include <array>
#include <set>
#include <vector>

#include "relgames/arena.hpp"
#include "relgames/common.hpp"
#include "relgames/lasso.hpp"
#include "relgames/parity_game.hpp"

// Independent ground truth for property tests. The evaluators here
// deliberately share no code with the automata module's evaluators.

namespace relgames::oracle {

// All canonical edge-consistent lassos from v0 with |prefix|+|cycle| <= maxlen,
// duplicate-free, ordered by (flattened word, prefix length).
inline std::vector<Lasso> enumerate_lassos(const Arena& a, int v0, int maxlen) {
  if (maxlen < 1) throw malformed_input("maxlen must be >= 1");
  std::set<Lasso> found;
  std::vector<int> path = {v0};
  auto recurse = [&](auto&& self) -> void {
    int len = static_cast<int>(path.size());
    // every split point whose wrap edge exists yields a lasso
    for (int split = 0; split < len; ++split) {
      if (a.has_edge(path[len - 1], path[split])) {
        std::vector<int> prefix(path.begin(), path.begin() + split);
        std::vector<int> cycle(path.begin() + split, path.end());
        found.insert(canonicalize_lasso(prefix, cycle));
      }
    }
    if (len == maxlen) return;
    for (int w : a.succ[path.back()]) {
      path.push_back(w);
      self(self);
      path.pop_back();
    }
  };
  recurse(recurse);
  std::vector<Lasso> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const Lasso& x, const Lasso& y) {
    std::vector<int> wx = x.prefix, wy = y.prefix;
    wx.insert(wx.end(), x.cycle.begin(), x.cycle.end());
    wy.insert(wy.end(), y.cycle.begin(), y.cycle.end());
    if (wx != wy) return wx < wy;
    return x.prefix.size() < y.prefix.size();
  });
  return out;
}

// Plain step loop with a visited set of (phase-left, phase-right, state);
// the segment between the first repetition and its re-occurrence is the loop.
inline bool brute_relation_eval(const Dpw& rel, const Lasso& x, const Lasso& y,
                                int num_vertices) {
  std::vector<std::array<int, 3>> trace;
  std::vector<int> prios;
  int px = 0, py = 0, q = rel.initial;
  for (;;) {
    std::array<int, 3> key = {px, py, q};
    for (std::size_t k = 0; k < trace.size(); ++k) {
      if (trace[k] == key) {
        int top = 0;
        bool first = true;
        for (std::size_t j = k; j < prios.size(); ++j) {
          top = first ? prios[j] : std::max(top, prios[j]);
          first = false;
        }
        return top % 2 == 0;
      }
    }
    trace.push_back(key);
    prios.push_back(rel.priority[q]);
    int letter = x.at(px) * num_vertices + y.at(py);
    if (letter < 0 || letter >= rel.num_letters) throw malformed_input("letter outside alphabet");
    q = rel.delta[static_cast<std::size_t>(q) * rel.num_letters + letter];
    px = px + 1 < x.length() ? px + 1 : static_cast<int>(x.prefix.size());
    py = py + 1 < y.length() ? py + 1 : static_cast<int>(y.prefix.size());
  }
}

// Vertices (1-based count) up to and including the first visit to `target`;
// -1 encodes never reaching it.
inline int scan_cost(const Lasso& x, const std::set<int>& target) {
  for (int k = 0; k < x.length(); ++k)
    if (target.count(x.at(k))) return k + 1;
  return -1;
}

inline bool scan_visits(const Lasso& x, const std::set<int>& target) {
  return scan_cost(x, target) >= 0;
}

// Small-progress-measures solver (Even's winning set, max-parity). Shares no
// code with the Zielonka solver; used as the engine behind the sweep oracles.
inline std::vector<char> spm_even_wins(const ParityGame& g) {
  g.check();
  int n = g.num_positions();
  int top = 0;
  for (int v = 0; v < n; ++v) top = std::max(top, g.priority[v]);
  std::vector<int> odd_prios;
  for (int p = 1; p <= top; p += 2) odd_prios.push_back(p);  // ascending
  std::vector<int> cap(odd_prios.size(), 0);
  for (int v = 0; v < n; ++v)
    if (g.priority[v] % 2 == 1)
      cap[static_cast<std::size_t>(g.priority[v] / 2)] += 1;

  const std::vector<int> kTop = {-1};  // sentinel measure
  auto is_top = [&](const std::vector<int>& m) { return !m.empty() && m[0] == -1; };
  std::vector<std::vector<int>> rho(n, std::vector<int>(odd_prios.size(), 0));

  // lexicographic comparison restricted to odd priorities >= p,
  // most significant = highest priority.
  auto cmp_from = [&](const std::vector<int>& a, const std::vector<int>& b, int p) {
    for (int i = static_cast<int>(odd_prios.size()) - 1; i >= 0; --i) {
      if (odd_prios[i] < p) break;
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
  };

  auto prog = [&](const std::vector<int>& base, int p) {
    if (is_top(base)) return kTop;
    std::vector<int> m(odd_prios.size(), 0);
    for (std::size_t i = 0; i < odd_prios.size(); ++i)
      if (odd_prios[i] >= p) m[i] = base[i];
    if (p % 2 == 1) {
      int i = p / 2;  // index of priority p
      for (;;) {
        if (i == static_cast<int>(odd_prios.size())) return kTop;
        if (++m[i] <= cap[i]) break;
        m[i] = 0;
        ++i;
      }
    }
    return m;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      if (is_top(rho[v])) continue;
      std::vector<std::vector<int>> opts;
      for (int w : g.moves[v]) opts.push_back(prog(rho[w], g.priority[v]));
      std::vector<int> want;
      if (g.owner[v] == kEven) {
        want = opts.front();
        for (const auto& o : opts)
          if (is_top(want) || (!is_top(o) && cmp_from(o, want, 0) < 0)) want = o;
      } else {
        want = opts.front();
        for (const auto& o : opts)
          if (is_top(o) || (!is_top(want) && cmp_from(o, want, 0) > 0)) want = o;
      }
      bool bigger = is_top(want) ? !is_top(rho[v]) : cmp_from(want, rho[v], 0) > 0;
      if (bigger && !is_top(rho[v])) {
        rho[v] = want;
        changed = true;
      }
    }
  }
  std::vector<char> wins(n, 0);
  for (int v = 0; v < n; ++v) wins[v] = is_top(rho[v]) ? 0 : 1;
  return wins;
}

}  // namespace relgames::oracle
