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

#include "gnas/agos.hpp"

#include <algorithm>
#include <numeric>

#include "gnas/error.hpp"

namespace gnas {

std::string_view stage_name(Stage stage) {
  return stage == Stage::kExploration ? "exploration" : "exploitation";
}

void StageParams::validate() const {
  if (tournament_size < 2) throw ConfigError("tournament size must be >= 2");
  if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0) ||
      !(mutation_prob >= 0.0 && mutation_prob <= 1.0)) {
    throw ConfigError("crossover and mutation probabilities must lie in [0, 1]");
  }
}

SwitchState update_delta_fitness(SwitchState state, double mean_fitness) {
  const double signal =
      state.mode == DeltaMode::kImprovement ? mean_fitness - state.previous_mean : mean_fitness;
  state.delta_fitness = state.lambda * signal + (1.0 - state.lambda) * state.delta_fitness;
  state.previous_mean = mean_fitness;
  return state;
}

StageParams stage_params(const SwitchState& state, const StageSchedule& schedule) {
  return state.stage() == Stage::kExploration ? schedule.exploration : schedule.exploitation;
}

double Population::mean_score() const {
  if (scores.empty()) return 0.0;
  return std::accumulate(scores.begin(), scores.end(), 0.0) / static_cast<double>(scores.size());
}

double Population::min_score() const {
  return scores.empty() ? 0.0 : *std::min_element(scores.begin(), scores.end());
}

std::size_t Population::best_index() const {
  return static_cast<std::size_t>(std::max_element(scores.begin(), scores.end()) - scores.begin());
}

std::size_t k_tournament(std::span<const double> scores, std::size_t k, RandomSource& rng) {
  const std::size_t n = scores.size();
  if (k < 2 || k > n) {
    throw ConfigError("tournament size " + std::to_string(k) + " outside [2, " +
                      std::to_string(n) + "]");
  }
  // Partial Fisher-Yates over an index permutation.
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  std::size_t winner = n;
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(pool[i], pool[i + rng.below(n - i)]);
    const std::size_t c = pool[i];
    if (winner == n || scores[c] > scores[winner] || (scores[c] == scores[winner] && c < winner)) {
      winner = c;
    }
  }
  return winner;
}

std::vector<Genome> generate_offspring(const Population& population, const StageParams& params,
                                       RandomSource& rng, const OffspringOptions& options) {
  const std::size_t n = population.size();
  if (n % 2 != 0) throw ConfigError("population size must be even");
  params.validate();
  std::vector<Genome> offspring;
  offspring.reserve(n);
  for (std::size_t pair = 0; pair < n / 2; ++pair) {
    const Genome& a = population.individuals[k_tournament(population.scores, params.tournament_size, rng)];
    const Genome& b = population.individuals[k_tournament(population.scores, params.tournament_size, rng)];
    Genome first = a;
    Genome second = b;
    if (rng.unit() < params.crossover_prob) {
      auto crossed = crossover_single_point(a, b, rng, options.bounds);
      first = std::move(crossed.first);
      second = std::move(crossed.second);
    }
    for (Genome* child : {&first, &second}) {
      if (rng.unit() < params.mutation_prob) {
        *child = mutate(*child, rng, options.bounds, options.alphabet).genome;
      }
      offspring.push_back(std::move(*child));
    }
  }
  return offspring;
}

std::vector<std::size_t> select_survivors(std::span<const double> scores, std::size_t count,
                                          RandomSource& rng, double epsilon) {
  const std::size_t n = scores.size();
  if (count == 0 || count > n) throw ConfigError("survivor count must lie in [1, pool size]");
  const auto elite =
      static_cast<std::size_t>(std::max_element(scores.begin(), scores.end()) - scores.begin());
  std::vector<std::size_t> chosen{elite};
  std::vector<std::size_t> remaining;
  std::vector<double> weights;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == elite) continue;
    remaining.push_back(i);
    weights.push_back(std::max(scores[i], 0.0) + epsilon);
  }
  while (chosen.size() < count) {
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    const double target = rng.unit() * total;
    double cumulative = 0.0;
    std::size_t pick = weights.size() - 1;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      cumulative += weights[i];
      if (target < cumulative) {
        pick = i;
        break;
      }
    }
    chosen.push_back(remaining[pick]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
    weights.erase(weights.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return chosen;
}

Population environmental_selection(const Population& parents, std::span<const Genome> offspring,
                                   std::span<const double> offspring_scores, RandomSource& rng,
                                   double epsilon) {
  if (offspring.size() != offspring_scores.size()) {
    throw ConfigError("offspring and score counts differ");
  }
  std::vector<const Genome*> pool;
  std::vector<double> scores;
  for (std::size_t i = 0; i < parents.size(); ++i) {
    pool.push_back(&parents.individuals[i]);
    scores.push_back(parents.scores[i]);
  }
  for (std::size_t i = 0; i < offspring.size(); ++i) {
    pool.push_back(&offspring[i]);
    scores.push_back(offspring_scores[i]);
  }
  Population next;
  next.generation = parents.generation + 1;
  for (const std::size_t idx : select_survivors(scores, parents.size(), rng, epsilon)) {
    next.individuals.push_back(*pool[idx]);
    next.scores.push_back(scores[idx]);
  }
  return next;
}

}  // namespace gnas
