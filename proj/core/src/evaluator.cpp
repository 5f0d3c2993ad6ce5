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

#include "gnas/evaluator.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "gnas/error.hpp"

namespace gnas {

FitnessEvaluator::FitnessEvaluator(FitnessFunction fitness, std::uint64_t seed, std::size_t workers,
                                   std::optional<std::size_t> budget)
    : fitness_(std::move(fitness)), seed_(seed), workers_(std::max<std::size_t>(workers, 1)),
      budget_(budget) {}

std::string FitnessEvaluator::cache_key(const Genome& genome, const HyperparamConfig& hp) const {
  return genome.to_string() + "|" + hp.key() + "|" + std::to_string(seed_);
}

double FitnessEvaluator::evaluate(const Genome& genome, const HyperparamConfig& hp) {
  return evaluate_batch(std::span<const Genome>(&genome, 1), hp).front();
}

std::vector<double> FitnessEvaluator::evaluate_batch(std::span<const Genome> genomes,
                                                     const HyperparamConfig& hp) {
  std::vector<std::string> keys;
  keys.reserve(genomes.size());
  std::vector<std::size_t> misses;  // first occurrence of each uncached key
  for (std::size_t i = 0; i < genomes.size(); ++i) {
    keys.push_back(cache_key(genomes[i], hp));
    if (cache_.contains(keys.back())) continue;
    const bool seen = std::any_of(misses.begin(), misses.end(),
                                  [&](std::size_t m) { return keys[m] == keys.back(); });
    if (!seen) misses.push_back(i);
  }
  if (budget_ && evaluations_ + misses.size() > *budget_) {
    throw BudgetExhausted("evaluation budget of " + std::to_string(*budget_) + " exhausted");
  }

  std::vector<double> computed(misses.size(), 0.0);
  if (!misses.empty()) {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(misses.size());
    auto work = [&] {
      for (std::size_t j = next++; j < misses.size(); j = next++) {
        try {
          computed[j] = fitness_(genomes[misses[j]], hp);
        } catch (...) {
          errors[j] = std::current_exception();
        }
      }
    };
    const std::size_t threads = std::min(workers_, misses.size());
    if (threads <= 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  for (std::size_t j = 0; j < misses.size(); ++j) cache_[keys[misses[j]]] = computed[j];
  evaluations_ += misses.size();

  std::vector<double> out;
  out.reserve(genomes.size());
  for (const auto& key : keys) out.push_back(cache_.at(key));
  return out;
}

void FitnessEvaluator::restore(std::map<std::string, double> cache, std::size_t evaluations) {
  cache_ = std::move(cache);
  evaluations_ = evaluations;
}

}  // namespace gnas
