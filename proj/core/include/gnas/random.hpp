// Copyright 2026 The gnas Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace gnas {

// Minimal random interface consumed by the genetic operators and the
// Parzen sampler. Tests substitute scripted implementations to force
// specific draws.
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  // Uniform integer in [0, n). Requires n > 0.
  virtual std::uint64_t below(std::uint64_t n) = 0;

  // Uniform real in [0, 1).
  virtual double unit() = 0;
};

// Seeded Mersenne-Twister source. Every derived quantity (integers, reals,
// normals) is computed here rather than through <random> distributions so
// sequences are identical across standard library implementations, and
// the engine state can be checkpointed as text.
class Rng final : public RandomSource {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) override;
  double unit() override;

  // Standard normal via Box-Muller; no cached second variate.
  double normal();

  std::uint64_t next_u64() { return engine_(); }

  std::string serialize() const;
  // Throws gnas::CheckpointError on malformed text.
  void deserialize(const std::string& text);

  bool operator==(const Rng& other) const { return engine_ == other.engine_; }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used to derive independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view text);

}  // namespace gnas
