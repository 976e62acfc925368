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
#include <string>
#include <utility>
#include <vector>

#include "relgames/common.hpp"

namespace relgames {

// Positive Boolean formula over state atoms. Construction flattens nested
// same-connective nodes and folds constants, so structurally equal transition
// tables compare equal.
struct BoolFormula {
  enum class Kind { True, False, Atom, And, Or };

  Kind kind = Kind::False;
  int atom = -1;
  std::vector<BoolFormula> kids;

  static BoolFormula make_true() { return BoolFormula{Kind::True, -1, {}}; }
  static BoolFormula make_false() { return BoolFormula{Kind::False, -1, {}}; }
  static BoolFormula make_atom(int state) { return BoolFormula{Kind::Atom, state, {}}; }

  static BoolFormula conj(std::vector<BoolFormula> parts) {
    return combine(Kind::And, std::move(parts));
  }
  static BoolFormula disj(std::vector<BoolFormula> parts) {
    return combine(Kind::Or, std::move(parts));
  }

  bool is_false() const { return kind == Kind::False; }
  bool is_true() const { return kind == Kind::True; }

  bool operator==(const BoolFormula& o) const {
    return kind == o.kind && atom == o.atom && kids == o.kids;
  }

  bool evaluate(const std::function<bool(int)>& truth) const {
    switch (kind) {
      case Kind::True: return true;
      case Kind::False: return false;
      case Kind::Atom: return truth(atom);
      case Kind::And:
        for (const auto& k : kids)
          if (!k.evaluate(truth)) return false;
        return true;
      case Kind::Or:
        for (const auto& k : kids)
          if (k.evaluate(truth)) return true;
        return false;
    }
    return false;
  }

  void collect_atoms(std::vector<int>& out) const {
    if (kind == Kind::Atom) out.push_back(atom);
    for (const auto& k : kids) k.collect_atoms(out);
  }

  // Swap And/Or and True/False; atoms are untouched.
  BoolFormula dual() const {
    switch (kind) {
      case Kind::True: return make_false();
      case Kind::False: return make_true();
      case Kind::Atom: return *this;
      case Kind::And: {
        std::vector<BoolFormula> ds;
        ds.reserve(kids.size());
        for (const auto& k : kids) ds.push_back(k.dual());
        return disj(std::move(ds));
      }
      case Kind::Or: {
        std::vector<BoolFormula> ds;
        ds.reserve(kids.size());
        for (const auto& k : kids) ds.push_back(k.dual());
        return conj(std::move(ds));
      }
    }
    return make_false();
  }

  // Rebuild with every atom replaced by fn(atom); folding applies, so mapping
  // dead atoms to False prunes the formula.
  BoolFormula map_atoms(const std::function<BoolFormula(int)>& fn) const {
    switch (kind) {
      case Kind::True: return make_true();
      case Kind::False: return make_false();
      case Kind::Atom: return fn(atom);
      case Kind::And:
      case Kind::Or: {
        std::vector<BoolFormula> ms;
        ms.reserve(kids.size());
        for (const auto& k : kids) ms.push_back(k.map_atoms(fn));
        return kind == Kind::And ? conj(std::move(ms)) : disj(std::move(ms));
      }
    }
    return make_false();
  }

  // Antichain of subset-minimal models, each a sorted atom set. False has no
  // model; True has the empty model.
  std::vector<std::vector<int>> minimal_models() const {
    switch (kind) {
      case Kind::True: return {{}};
      case Kind::False: return {};
      case Kind::Atom: return {{atom}};
      case Kind::Or: {
        std::vector<std::vector<int>> all;
        for (const auto& k : kids)
          for (auto& m : k.minimal_models()) all.push_back(std::move(m));
        minimize_antichain(all);
        return all;
      }
      case Kind::And: {
        std::vector<std::vector<int>> acc = {{}};
        for (const auto& k : kids) {
          std::vector<std::vector<int>> merged;
          for (const auto& m : k.minimal_models())
            for (const auto& a : acc) merged.push_back(set_union(a, m));
          minimize_antichain(merged);
          acc = std::move(merged);
        }
        return acc;
      }
    }
    return {};
  }

  std::string to_string(const std::function<std::string(int)>& name) const {
    switch (kind) {
      case Kind::True: return "true";
      case Kind::False: return "false";
      case Kind::Atom: return name(atom);
      case Kind::And:
      case Kind::Or: {
        std::string sep = kind == Kind::And ? " & " : " | ";
        std::string out = "(";
        for (std::size_t i = 0; i < kids.size(); ++i) {
          if (i) out += sep;
          out += kids[i].to_string(name);
        }
        return out + ")";
      }
    }
    return "false";
  }

  static std::vector<int> set_union(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r;
    r.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
  }

  // Drop supersets; keeps the first occurrence of duplicates.
  static void minimize_antichain(std::vector<std::vector<int>>& sets) {
    std::vector<std::vector<int>> kept;
    std::stable_sort(sets.begin(), sets.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    for (auto& s : sets) {
      bool dominated = false;
      for (const auto& k : kept) {
        if (std::includes(s.begin(), s.end(), k.begin(), k.end())) {
          dominated = true;
          break;
        }
      }
      if (!dominated) kept.push_back(std::move(s));
    }
    sets = std::move(kept);
  }

 private:
  static BoolFormula combine(Kind kind, std::vector<BoolFormula> parts) {
    const Kind absorb = kind == Kind::And ? Kind::False : Kind::True;
    const Kind neutral = kind == Kind::And ? Kind::True : Kind::False;
    std::vector<BoolFormula> flat;
    for (auto& p : parts) {
      if (p.kind == absorb) return BoolFormula{absorb, -1, {}};
      if (p.kind == neutral) continue;
      if (p.kind == kind) {
        for (auto& k : p.kids) flat.push_back(std::move(k));
      } else {
        flat.push_back(std::move(p));
      }
    }
    if (flat.empty()) return BoolFormula{neutral, -1, {}};
    if (flat.size() == 1) return std::move(flat.front());
    return BoolFormula{kind, -1, std::move(flat)};
  }
};

}  // namespace relgames
