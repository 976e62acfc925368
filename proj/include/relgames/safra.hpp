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
#include <utility>
#include <vector>

#include "relgames/common.hpp"
#include "relgames/dpw.hpp"
#include "relgames/nbw.hpp"

namespace relgames {

namespace detail {

// Safra tree node. Sibling order is age (older first); names come from a pool
// of size 2n and are reused after removal.
struct SafraNode {
  int name;
  std::vector<int> label;  // sorted
  std::vector<SafraNode> kids;
};

struct SafraEvents {
  std::vector<int> greens;   // names that saw a vertical merge
  std::vector<int> removed;  // names freed this step
};

class SafraTransition {
 public:
  SafraTransition(const Nbw& aut, int name_pool) : aut_(aut), name_pool_(name_pool) {}

  // One Safra step; `root` may become empty (language dies).
  SafraEvents step(std::optional<SafraNode>& root, int letter) {
    events_ = SafraEvents{};
    letter_ = letter;
    if (!root) return events_;
    used_.assign(name_pool_, 0);
    mark_used(*root);
    next_fresh_ = 0;
    unfold(*root);
    powerset(*root);
    std::vector<int> banned;
    hmerge(*root, banned);
    if (root->label.empty()) {
      collect_names(*root, events_.removed);
      root.reset();
      return events_;
    }
    drop_empty(*root);
    vmerge(*root);
    return events_;
  }

 private:
  void mark_used(const SafraNode& v) {
    used_[v.name] = 1;
    for (const auto& k : v.kids) mark_used(k);
  }

  int fresh_name() {
    while (next_fresh_ < name_pool_ && used_[next_fresh_]) ++next_fresh_;
    if (next_fresh_ >= name_pool_) throw std::logic_error("safra: name pool exhausted");
    used_[next_fresh_] = 1;
    return next_fresh_;
  }

  void unfold(SafraNode& v) {
    for (auto& k : v.kids) unfold(k);
    std::vector<int> hit;
    for (int q : v.label)
      if (aut_.accepting[q]) hit.push_back(q);
    if (!hit.empty()) v.kids.push_back(SafraNode{fresh_name(), std::move(hit), {}});
  }

  void powerset(SafraNode& v) {
    std::vector<int> next;
    for (int q : v.label)
      for (int w : aut_.trans[q][letter_]) next.push_back(w);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    v.label = std::move(next);
    for (auto& k : v.kids) powerset(k);
  }

  // Remove `banned` from the subtree; within siblings, older nodes claim
  // states first. Child labels stay inside the parent label.
  void hmerge(SafraNode& v, const std::vector<int>& banned) {
    std::vector<int> pruned;
    std::set_difference(v.label.begin(), v.label.end(), banned.begin(), banned.end(),
                        std::back_inserter(pruned));
    v.label = std::move(pruned);
    std::vector<int> kid_banned = banned;
    // States outside the parent label are also off-limits for children.
    for (auto& k : v.kids) {
      std::vector<int> eff;
      std::set_union(kid_banned.begin(), kid_banned.end(), outside(v.label).begin(),
                     outside(v.label).end(), std::back_inserter(eff));
      hmerge(k, eff);
      std::vector<int> merged;
      std::set_union(kid_banned.begin(), kid_banned.end(), k.label.begin(), k.label.end(),
                     std::back_inserter(merged));
      kid_banned = std::move(merged);
    }
  }

  std::vector<int> outside(const std::vector<int>& inside) const {
    std::vector<int> out;
    for (int q = 0; q < aut_.num_states(); ++q)
      if (!std::binary_search(inside.begin(), inside.end(), q)) out.push_back(q);
    return out;
  }

  void collect_names(const SafraNode& v, std::vector<int>& out) {
    out.push_back(v.name);
    for (const auto& k : v.kids) collect_names(k, out);
  }

  void drop_empty(SafraNode& v) {
    std::vector<SafraNode> kept;
    for (auto& k : v.kids) {
      if (k.label.empty()) {
        collect_names(k, events_.removed);
      } else {
        drop_empty(k);
        kept.push_back(std::move(k));
      }
    }
    v.kids = std::move(kept);
  }

  void vmerge(SafraNode& v) {
    std::vector<int> kid_union;
    for (const auto& k : v.kids) {
      std::vector<int> merged;
      std::set_union(kid_union.begin(), kid_union.end(), k.label.begin(), k.label.end(),
                     std::back_inserter(merged));
      kid_union = std::move(merged);
    }
    if (!v.kids.empty() && kid_union == v.label) {
      for (const auto& k : v.kids) collect_names(k, events_.removed);
      v.kids.clear();
      events_.greens.push_back(v.name);
      return;
    }
    for (auto& k : v.kids) vmerge(k);
  }

  const Nbw& aut_;
  int name_pool_;
  int letter_ = 0;
  std::vector<char> used_;
  int next_fresh_ = 0;
  SafraEvents events_;
};

inline void encode_tree(const SafraNode& v, std::vector<int>& out) {
  out.push_back(v.name);
  out.push_back(static_cast<int>(v.label.size()));
  out.insert(out.end(), v.label.begin(), v.label.end());
  out.push_back(static_cast<int>(v.kids.size()));
  for (const auto& k : v.kids) encode_tree(k, out);
}

}  // namespace detail

// Safra determinization with an index-appearance record over node names for
// the parity condition. A name whose node eventually stays put and turns
// green infinitely often settles at a stable record position p; the record
// maps that to an even priority dominating everything deeper, giving a DPW
// with 2^{O(n log n)} states and index O(n).
inline Dpw determinize_nbw(const Nbw& aut, const Caps& caps = {}) {
  const int n = std::max(1, aut.num_states());
  const int pool = 2 * n;

  struct State {
    std::optional<detail::SafraNode> tree;
    std::vector<int> record;  // name seniority, front = most senior
    int priority;
  };
  auto encode = [&](const State& st) {
    std::vector<int> key;
    key.push_back(st.priority);
    key.insert(key.end(), st.record.begin(), st.record.end());
    key.push_back(-1);
    if (st.tree) detail::encode_tree(*st.tree, key);
    return key;
  };

  Dpw out;
  out.num_letters = aut.num_letters;
  std::map<std::vector<int>, int> ids;
  std::vector<State> pool_states;
  auto intern = [&](State st) {
    auto key = encode(st);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(pool_states.size());
    caps.charge("determinize_nbw", pool_states.size() + 1);
    ids.emplace(std::move(key), id);
    out.priority.push_back(st.priority);
    pool_states.push_back(std::move(st));
    return id;
  };

  State start;
  start.priority = 1;
  start.record.resize(pool);
  for (int k = 0; k < pool; ++k) start.record[k] = k;
  if (!aut.initial.empty()) {
    std::vector<int> init = aut.initial;
    std::sort(init.begin(), init.end());
    init.erase(std::unique(init.begin(), init.end()), init.end());
    start.tree = detail::SafraNode{0, std::move(init), {}};
  }
  out.initial = intern(start);

  detail::SafraTransition stepper(aut, pool);
  std::vector<std::vector<int>> delta_rows;
  for (std::size_t cur = 0; cur < pool_states.size(); ++cur) {
    delta_rows.emplace_back();
    for (int l = 0; l < aut.num_letters; ++l) {
      State next;
      next.tree = pool_states[cur].tree;  // copy
      detail::SafraEvents ev = stepper.step(next.tree, l);

      const std::vector<int>& rec = pool_states[cur].record;
      auto position_of = [&](const std::vector<int>& names) {
        int best = pool + 1;
        for (std::size_t p = 0; p < rec.size(); ++p)
          for (int name : names)
            if (rec[p] == name) best = std::min(best, static_cast<int>(p) + 1);
        return best;
      };
      int e = position_of(ev.removed);
      int f = position_of(ev.greens);
      if (e > pool && f > pool)
        next.priority = 1;
      else if (e <= f)
        next.priority = 2 * (pool - e) + 3;
      else
        next.priority = 2 * (pool - f) + 2;

      next.record.reserve(pool);
      std::vector<char> moved(pool, 0);
      for (int name : ev.removed) moved[name] = 1;
      for (int name : rec)
        if (!moved[name]) next.record.push_back(name);
      for (int name : rec)
        if (moved[name]) next.record.push_back(name);

      delta_rows[cur].push_back(intern(std::move(next)));
    }
  }
  out.delta.reserve(delta_rows.size() * aut.num_letters);
  for (const auto& row : delta_rows) out.delta.insert(out.delta.end(), row.begin(), row.end());
  return out;
}

}  // namespace relgames
