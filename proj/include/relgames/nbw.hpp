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
#include <optional>
#include <queue>
#include <vector>

#include "relgames/common.hpp"
#include "relgames/dpw.hpp"
#include "relgames/lasso.hpp"

namespace relgames {

// Nondeterministic Buchi word automaton.
struct Nbw {
  int num_letters = 0;
  std::vector<int> initial;              // set of states
  std::vector<char> accepting;
  std::vector<std::vector<std::vector<int>>> trans;  // [state][letter] -> sorted targets

  int num_states() const { return static_cast<int>(accepting.size()); }

  int add_state(bool acc) {
    accepting.push_back(acc ? 1 : 0);
    trans.emplace_back(num_letters);
    return num_states() - 1;
  }

  void add_edge(int from, int letter, int to) {
    auto& v = trans[from][letter];
    auto it = std::lower_bound(v.begin(), v.end(), to);
    if (it == v.end() || *it != to) v.insert(it, to);
  }
};

namespace detail {

// Strongly connected components of an arbitrary successor function,
// iterative Tarjan. Returns component ids; -1 for unvisited (none here).
template <typename SuccFn>
std::vector<int> scc_of(int n, SuccFn&& succ, int* out_count = nullptr) {
  std::vector<int> comp(n, -1), low(n, 0), disc(n, -1), stck;
  std::vector<char> on_stack(n, 0);
  int time = 0, ncomp = 0;
  struct Frame {
    int v;
    std::size_t idx;
    std::vector<int> succs;
  };
  for (int root = 0; root < n; ++root) {
    if (disc[root] >= 0) continue;
    std::vector<Frame> frames;
    frames.push_back({root, 0, succ(root)});
    disc[root] = low[root] = time++;
    stck.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.idx < f.succs.size()) {
        int w = f.succs[f.idx++];
        if (disc[w] < 0) {
          disc[w] = low[w] = time++;
          stck.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0, succ(w)});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        int v = f.v;
        if (low[v] == disc[v]) {
          for (;;) {
            int w = stck.back();
            stck.pop_back();
            on_stack[w] = 0;
            comp[w] = ncomp;
            if (w == v) break;
          }
          ++ncomp;
        }
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }
  if (out_count) *out_count = ncomp;
  return comp;
}

}  // namespace detail

// Membership of an ultimately periodic word: product of the lasso structure
// with the automaton, then a search for a reachable accepting cycle.
inline bool nbw_lasso_member(const Nbw& aut, const Lasso& x) {
  for (int v : x.prefix)
    if (v < 0 || v >= aut.num_letters) throw malformed_input("letter outside alphabet");
  for (int v : x.cycle)
    if (v < 0 || v >= aut.num_letters) throw malformed_input("letter outside alphabet");
  int len = x.length();
  int n = aut.num_states();
  if (n == 0) return false;
  auto node = [&](int pos, int q) { return pos * n + q; };
  int total = len * n;
  std::vector<char> reach(total, 0);
  std::vector<int> queue;
  for (int q : aut.initial) {
    if (!reach[node(0, q)]) {
      reach[node(0, q)] = 1;
      queue.push_back(node(0, q));
    }
  }
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int u = queue[qi];
    int pos = u / n, q = u % n;
    for (int q2 : aut.trans[q][x.at(pos)]) {
      int w = node(x.next_pos(pos), q2);
      if (!reach[w]) {
        reach[w] = 1;
        queue.push_back(w);
      }
    }
  }
  auto succ = [&](int u) {
    std::vector<int> out;
    if (!reach[u]) return out;
    int pos = u / n, q = u % n;
    for (int q2 : aut.trans[q][x.at(pos)]) {
      int w = node(x.next_pos(pos), q2);
      if (reach[w]) out.push_back(w);
    }
    return out;
  };
  int ncomp = 0;
  std::vector<int> comp = detail::scc_of(total, succ, &ncomp);
  // A component is viable if it has an internal edge and an accepting state.
  std::vector<char> has_edge(ncomp, 0), has_acc(ncomp, 0);
  for (int u = 0; u < total; ++u) {
    if (!reach[u]) continue;
    if (aut.accepting[u % n]) has_acc[comp[u]] = 1;
    for (int w : succ(u))
      if (comp[w] == comp[u]) has_edge[comp[u]] = 1;
  }
  for (int u = 0; u < total; ++u)
    if (reach[u] && has_edge[comp[u]] && has_acc[comp[u]]) return true;
  return false;
}

// Emptiness with a canonical witness: BFS to the closest accepting state that
// lies on a cycle, BFS back to it, ties broken by declaration order.
inline std::optional<Lasso> nbw_empty_witness(const Nbw& aut) {
  int n = aut.num_states();
  if (n == 0) return std::nullopt;

  // parent-pointer BFS over (state), remembering the letter taken.
  struct Hop {
    int prev = -1;
    int letter = -1;
  };
  auto bfs = [&](const std::vector<int>& sources) {
    std::vector<Hop> hop(n);
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    for (int s : sources) {
      if (!seen[s]) {
        seen[s] = 1;
        q.push(s);
      }
    }
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int l = 0; l < aut.num_letters; ++l) {
        for (int w : aut.trans[u][l]) {
          if (!seen[w]) {
            seen[w] = 1;
            hop[w] = {u, l};
            q.push(w);
          }
        }
      }
    }
    return std::make_pair(seen, hop);
  };

  auto [reach, hop_in] = bfs(aut.initial);

  for (int f = 0; f < n; ++f) {
    if (!reach[f] || !aut.accepting[f]) continue;
    // Shortest cycle through f: BFS from f's successors back to f.
    std::vector<Hop> hop(n);
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    bool self = false;
    int first_letter = -1, first_state = -1;
    for (int l = 0; l < aut.num_letters && !self; ++l) {
      for (int w : aut.trans[f][l]) {
        if (w == f) {
          self = true;
          first_letter = l;
          break;
        }
        if (!seen[w]) {
          seen[w] = 1;
          hop[w] = {-1, l};  // first hop letter from f
          if (first_state < 0) {
          }
          q.push(w);
        }
      }
    }
    std::vector<int> cycle_letters;
    bool found_cycle = false;
    if (self) {
      cycle_letters = {first_letter};
      found_cycle = true;
    } else {
      int meet = -1;
      while (!q.empty() && meet < 0) {
        int u = q.front();
        q.pop();
        for (int l = 0; l < aut.num_letters && meet < 0; ++l) {
          for (int w : aut.trans[u][l]) {
            if (w == f) {
              // reconstruct letters: path f -> ... -> u, then l.
              std::vector<int> rev = {l};
              int cur = u;
              while (cur >= 0) {
                rev.push_back(hop[cur].letter);
                cur = hop[cur].prev;
              }
              std::reverse(rev.begin(), rev.end());
              cycle_letters = rev;
              meet = u;
              break;
            }
            if (!seen[w]) {
              seen[w] = 1;
              hop[w] = {u, l};
              q.push(w);
            }
          }
        }
      }
      found_cycle = meet >= 0;
    }
    if (!found_cycle) continue;
    // Prefix letters from an initial state to f.
    std::vector<int> prefix_rev;
    int cur = f;
    while (hop_in[cur].prev >= 0 || hop_in[cur].letter >= 0) {
      prefix_rev.push_back(hop_in[cur].letter);
      cur = hop_in[cur].prev;
      if (cur < 0) break;
    }
    std::vector<int> prefix(prefix_rev.rbegin(), prefix_rev.rend());
    return canonicalize_lasso(prefix, cycle_letters);
  }
  return std::nullopt;
}

// Keep states that are reachable and can still reach an accepting cycle.
inline Nbw trim_nbw(const Nbw& aut) {
  int n = aut.num_states();
  std::vector<char> reach(n, 0);
  std::vector<int> queue;
  for (int s : aut.initial) {
    if (s >= 0 && s < n && !reach[s]) {
      reach[s] = 1;
      queue.push_back(s);
    }
  }
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int u = queue[qi];
    for (int l = 0; l < aut.num_letters; ++l)
      for (int w : aut.trans[u][l])
        if (!reach[w]) {
          reach[w] = 1;
          queue.push_back(w);
        }
  }
  auto succ = [&](int u) {
    std::vector<int> out;
    for (int l = 0; l < aut.num_letters; ++l)
      for (int w : aut.trans[u][l]) out.push_back(w);
    return out;
  };
  int ncomp = 0;
  std::vector<int> comp = detail::scc_of(n, succ, &ncomp);
  std::vector<char> comp_edge(ncomp, 0), comp_acc(ncomp, 0);
  for (int u = 0; u < n; ++u) {
    if (aut.accepting[u]) comp_acc[comp[u]] = 1;
    for (int w : succ(u))
      if (comp[w] == comp[u]) comp_edge[comp[u]] = 1;
  }
  // live = can reach a viable component.
  std::vector<char> live(n, 0);
  for (int u = 0; u < n; ++u)
    if (comp_edge[comp[u]] && comp_acc[comp[u]]) live[u] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int u = 0; u < n; ++u) {
      if (live[u]) continue;
      for (int w : succ(u))
        if (live[w]) {
          live[u] = 1;
          changed = true;
          break;
        }
    }
  }
  std::vector<int> remap(n, -1);
  Nbw out;
  out.num_letters = aut.num_letters;
  for (int s = 0; s < n; ++s)
    if (reach[s] && live[s]) remap[s] = out.add_state(aut.accepting[s]);
  for (int s = 0; s < n; ++s) {
    if (remap[s] < 0) continue;
    for (int l = 0; l < aut.num_letters; ++l)
      for (int w : aut.trans[s][l])
        if (remap[w] >= 0) out.add_edge(remap[s], l, remap[w]);
  }
  for (int s : aut.initial)
    if (remap[s] >= 0) out.initial.push_back(remap[s]);
  std::sort(out.initial.begin(), out.initial.end());
  out.initial.erase(std::unique(out.initial.begin(), out.initial.end()), out.initial.end());
  return out;
}

// Quotient by forward bisimulation (acceptance-respecting). Language
// preserving; cheap partition refinement on successor-class signatures.
inline Nbw bisim_quotient_nbw(const Nbw& aut) {
  int n = aut.num_states();
  if (n == 0) return aut;
  std::vector<int> cls(n);
  for (int s = 0; s < n; ++s) cls[s] = aut.accepting[s] ? 1 : 0;
  for (;;) {
    std::map<std::vector<int>, int> sig_ids;
    std::vector<int> next (n);
    for (int s = 0; s < n; ++s) {
      std::vector<int> sig = {cls[s]};
      for (int l = 0; l < aut.num_letters; ++l) {
        std::vector<int> succ_cls;
        for (int w : aut.trans[s][l]) succ_cls.push_back(cls[w]);
        std::sort(succ_cls.begin(), succ_cls.end());
        succ_cls.erase(std::unique(succ_cls.begin(), succ_cls.end()), succ_cls.end());
        sig.push_back(-1);  // letter separator
        sig.insert(sig.end(), succ_cls.begin(), succ_cls.end());
      }
      auto [it, fresh] = sig_ids.emplace(sig, static_cast<int>(sig_ids.size()));
      next[s] = it->second;
    }
    if (next == cls) break;
    cls = next;
  }
  int ncls = *std::max_element(cls.begin(), cls.end()) + 1;
  Nbw out;
  out.num_letters = aut.num_letters;
  for (int c = 0; c < ncls; ++c) out.add_state(false);
  for (int s = 0; s < n; ++s) {
    out.accepting[cls[s]] = aut.accepting[s];
    for (int l = 0; l < aut.num_letters; ++l)
      for (int w : aut.trans[s][l]) out.add_edge(cls[s], l, cls[w]);
  }
  for (int s : aut.initial) out.initial.push_back(cls[s]);
  std::sort(out.initial.begin(), out.initial.end());
  out.initial.erase(std::unique(out.initial.begin(), out.initial.end()), out.initial.end());
  return out;
}

// Existential projection of a pair-alphabet NBW onto one track.
inline Nbw project_nbw(const Nbw& aut, int num_vertices, bool keep_left) {
  Nbw out;
  out.num_letters = num_vertices;
  out.initial = aut.initial;
  for (int s = 0; s < aut.num_states(); ++s) out.add_state(aut.accepting[s]);
  for (int s = 0; s < aut.num_states(); ++s)
    for (int l = 0; l < aut.num_letters; ++l)
      for (int w : aut.trans[s][l])
        out.add_edge(s, keep_left ? pair_left(l, num_vertices) : pair_right(l, num_vertices), w);
  return out;
}

}  // namespace relgames
