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

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace relgames {

// Raised on unparsable or contract-violating input (bad files, letters
// outside the alphabet, machines outputting non-successors, ...).
struct malformed_input : std::runtime_error {
  explicit malformed_input(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a pipeline stage would exceed the configured state cap.
// `stage` names the stage that blew up so the CLI can report it.
struct capacity_exceeded : std::runtime_error {
  std::string stage;
  capacity_exceeded(std::string stage_name, const std::string& what)
      : std::runtime_error(what), stage(std::move(stage_name)) {}
};

// State budget shared by the exponential pipeline stages.
struct Caps {
  std::size_t max_states = 2'000'000;

  void charge(const char* stage, std::size_t count) const {
    if (count > max_states)
      throw capacity_exceeded(stage, std::string(stage) + ": state count " +
                                         std::to_string(count) + " exceeds cap " +
                                         std::to_string(max_states));
  }
};

// Deterministic 64-bit generator (xorshift*). The standard distributions are
// implementation-defined, so corpus generation rolls its own reduction to keep
// seeds byte-reproducible across toolchains.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : state_(seed * 0x9E3779B97F4A7C15ULL + 1) {}

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  // Uniform-ish value in [0, n). n must be positive.
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

  bool chance(int num, int den) { return below(den) < num; }

 private:
  std::uint64_t state_;
};

}  // namespace relgames
