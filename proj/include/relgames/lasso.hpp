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
#include <vector>

#include "relgames/common.hpp"

namespace relgames {

// Ultimately periodic word u . w^omega in canonical minimal form: the cycle
// is primitive and the prefix cannot be shortened by rotating the cycle
// backward. Letters are dense ids (vertices, or encoded pair letters).
struct Lasso {
  std::vector<int> prefix;
  std::vector<int> cycle;

  int length() const { return static_cast<int>(prefix.size() + cycle.size()); }

  // Letter at absolute position k >= 0 of the denoted infinite word.
  int at(std::size_t k) const {
    if (k < prefix.size()) return prefix[k];
    return cycle[(k - prefix.size()) % cycle.size()];
  }

  // Successor of a representation position (0 .. length-1), wrapping into the cycle.
  int next_pos(int pos) const {
    return pos + 1 < length() ? pos + 1 : static_cast<int>(prefix.size());
  }

  bool operator==(const Lasso& o) const { return prefix == o.prefix && cycle == o.cycle; }
  bool operator<(const Lasso& o) const {
    if (prefix != o.prefix) return prefix < o.prefix;
    return cycle < o.cycle;
  }
};

namespace detail {

// Smallest period of w that divides |w|, i.e. the primitive root length.
inline std::size_t primitive_root(const std::vector<int>& w) {
  for (std::size_t p = 1; p <= w.size() / 2; ++p) {
    if (w.size() % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < w.size() && ok; ++i) ok = w[i] == w[i - p];
    if (ok) return p;
  }
  return w.size();
}

}  // namespace detail

// Reduce the cycle to its primitive root, then roll the prefix back into the
// cycle while the prefix's last letter equals the cycle's last letter.
inline Lasso canonicalize_lasso(std::vector<int> prefix, std::vector<int> cycle) {
  if (cycle.empty()) throw malformed_input("lasso cycle must be non-empty");
  cycle.resize(detail::primitive_root(cycle));
  while (!prefix.empty() && prefix.back() == cycle.back()) {
    std::rotate(cycle.begin(), cycle.end() - 1, cycle.end());
    prefix.pop_back();
  }
  return Lasso{std::move(prefix), std::move(cycle)};
}

inline Lasso canonicalize_lasso(const Lasso& x) { return canonicalize_lasso(x.prefix, x.cycle); }

// The same infinite word with the representation stretched: prefix extended by
// `shift` cycle letters and the cycle rotated accordingly. Used by tests to
// check that evaluation only depends on the denoted word.
inline Lasso rotate_lasso(const Lasso& x, int shift) {
  Lasso r = x;
  for (int i = 0; i < shift; ++i) {
    r.prefix.push_back(r.cycle.front());
    std::rotate(r.cycle.begin(), r.cycle.begin() + 1, r.cycle.end());
  }
  return r;
}

}  // namespace relgames
