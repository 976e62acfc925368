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

#include <string>
#include <utility>
#include <vector>

#include "relgames/arena.hpp"
#include "relgames/common.hpp"
#include "relgames/dpw.hpp"

namespace relgames {

// Finite-memory strategy. The machine reads the play one vertex at a time:
// on the current vertex it emits the successor to take (for vertices it
// controls) and updates its memory. Entries may be absent (-1 / empty) for
// unreachable pairs. The nondeterministic variant stores all allowed
// (next-memory, output) options and is used as a strategy specification.
struct Mealy {
  int controlled = -1;     // player id
  bool coalition = false;  // controls every player except `controlled`
  bool nondet = false;
  int initial = 0;
  std::vector<std::string> memory_names;
  std::vector<std::vector<int>> update;  // [mem][vertex] -> mem, -1 undefined
  std::vector<std::vector<int>> output;  // [mem][vertex] -> vertex, -1 for '-'
  // nondet: [mem][vertex] -> options (next, out); out -1 for uncontrolled
  std::vector<std::vector<std::vector<std::pair<int, int>>>> options;

  int memory_size() const { return static_cast<int>(memory_names.size()); }

  int add_memory(std::string name, int num_vertices) {
    memory_names.push_back(std::move(name));
    update.emplace_back(num_vertices, -1);
    output.emplace_back(num_vertices, -1);
    options.emplace_back(num_vertices);
    return memory_size() - 1;
  }

  bool controls(int owner_player) const {
    return coalition ? owner_player != controlled : owner_player == controlled;
  }

  int step(int mem, int vertex) const { return update[mem][vertex]; }
  int out(int mem, int vertex) const { return output[mem][vertex]; }
};

// Deterministic safety automaton over V accepting exactly the plays from v0
// consistent with the machine. Built over reachable pairs; a missing output on
// a reachable controlled vertex is a malformed machine.
inline Dpw consistency_dpw(const Arena& arena, const Mealy& m, int v0) {
  if (m.nondet) throw malformed_input("consistency automaton needs a deterministic machine");
  int n = arena.num_vertices();
  // state 0 = before the first vertex, state 1 = dead sink, then (u, mem)
  std::vector<std::pair<int, int>> pool = {{-1, -1}, {-1, -1}};
  std::map<std::pair<int, int>, int> ids;
  auto intern = [&](int u, int mem) {
    auto key = std::make_pair(u, mem);
    auto [it, fresh] = ids.emplace(key, static_cast<int>(pool.size()));
    if (fresh) pool.push_back(key);
    return it->second;
  };
  std::vector<std::vector<int>> rows;
  rows.push_back(std::vector<int>(n, 1));
  rows[0][v0] = intern(v0, m.initial);
  rows.push_back(std::vector<int>(n, 1));  // dead sink
  for (std::size_t cur = 2; cur < pool.size(); ++cur) {
    auto [u, mem] = pool[cur];
    std::vector<int> row(n, 1);
    int forced = -1;
    if (m.controls(arena.owner[u])) {
      forced = m.out(mem, u);
      if (forced < 0 || !arena.has_edge(u, forced))
        throw malformed_input("machine output missing or not a successor");
    }
    int mem2 = m.step(mem, u);
    if (mem2 < 0) throw malformed_input("machine memory update missing on reachable pair");
    for (int b = 0; b < n; ++b) {
      if (!arena.has_edge(u, b)) continue;
      if (forced >= 0 && b != forced) continue;
      row[b] = intern(b, mem2);
    }
    rows.push_back(std::move(row));
  }
  Dpw d;
  d.num_letters = n;
  d.initial = 0;
  d.priority.assign(rows.size(), 0);
  d.priority[1] = 1;
  for (const auto& row : rows) d.delta.insert(d.delta.end(), row.begin(), row.end());
  return d;
}

}  // namespace relgames
