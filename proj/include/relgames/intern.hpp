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
#include <string>
#include <vector>

#include "relgames/common.hpp"

namespace relgames {

// Names are strings in files, dense integers internally. Ids are assigned in
// declaration order, which fixes the tie-breaking order used everywhere else.
class Interner {
 public:
  int intern(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    int id = static_cast<int>(names_.size());
    index_.emplace(name, id);
    names_.push_back(name);
    return id;
  }

  // Lookup without insertion; -1 when unknown.
  int find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
  }

  int require(const std::string& name) const {
    int id = find(name);
    if (id < 0) throw malformed_input("unknown name: " + name);
    return id;
  }

  const std::string& name(int id) const { return names_.at(static_cast<std::size_t>(id)); }
  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& all() const { return names_; }

 private:
  std::map<std::string, int> index_;
  std::vector<std::string> names_;
};

}  // namespace relgames
