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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gnas/genome.hpp"
#include "gnas/hyperparams.hpp"

namespace gnas {

using FitnessFunction = std::function<double(const Genome&, const HyperparamConfig&)>;

// Memoizing, budget-aware front end to a fitness function. Cache misses
// within a batch run on up to `workers` threads; hits and accounting are
// handled on the calling thread, so results do not depend on the worker
// count.
class FitnessEvaluator {
 public:
  FitnessEvaluator(FitnessFunction fitness, std::uint64_t seed, std::size_t workers = 1,
                   std::optional<std::size_t> budget = std::nullopt);

  // Throws BudgetExhausted if the call needs an evaluation past the cap.
  double evaluate(const Genome& genome, const HyperparamConfig& hp);

  // All-or-nothing with respect to the budget: if the distinct misses in
  // the batch do not fit, nothing is evaluated and BudgetExhausted is
  // thrown.
  std::vector<double> evaluate_batch(std::span<const Genome> genomes, const HyperparamConfig& hp);

  std::size_t evaluations() const { return evaluations_; }
  std::optional<std::size_t> budget() const { return budget_; }

  std::string cache_key(const Genome& genome, const HyperparamConfig& hp) const;
  const std::map<std::string, double>& cache() const { return cache_; }
  void restore(std::map<std::string, double> cache, std::size_t evaluations);

 private:
  FitnessFunction fitness_;
  std::uint64_t seed_;
  std::size_t workers_;
  std::optional<std::size_t> budget_;
  std::map<std::string, double> cache_;
  std::size_t evaluations_ = 0;
};

}  // namespace gnas
