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
#include <span>
#include <string_view>
#include <vector>

#include "gnas/genome.hpp"
#include "gnas/random.hpp"

namespace gnas {

enum class Stage { kExploration, kExploitation };

std::string_view stage_name(Stage stage);

// Genetic control factors for one stage.
struct StageParams {
  std::size_t tournament_size = 2;
  double crossover_prob = 0.0;
  double mutation_prob = 0.0;

  // Throws ConfigError unless k >= 2 and both probabilities are in [0, 1].
  void validate() const;
  bool operator==(const StageParams&) const = default;
};

struct StageSchedule {
  StageParams exploration{4, 0.9, 0.5};
  StageParams exploitation{2, 0.6, 0.2};
};

// kMeanFitness smooths the population mean fitness itself.
// kImprovement smooths the generation-over-generation change of the mean.
enum class DeltaMode { kMeanFitness, kImprovement };

struct SwitchState {
  double delta_fitness = 0.0;
  double lambda = 0.5;
  double alpha = 0.5;
  DeltaMode mode = DeltaMode::kMeanFitness;
  // Mean fitness of the previous generation; only read in kImprovement mode.
  double previous_mean = 0.0;

  Stage stage() const {
    return delta_fitness <= alpha ? Stage::kExploration : Stage::kExploitation;
  }
};

// delta <- lambda * signal + (1 - lambda) * delta, where signal is the
// mean fitness (or its change, in kImprovement mode). Call once per
// generation g >= 1; generation 0 keeps delta at 0.
SwitchState update_delta_fitness(SwitchState state, double mean_fitness);

StageParams stage_params(const SwitchState& state, const StageSchedule& schedule);

struct Population {
  std::size_t generation = 0;
  std::vector<Genome> individuals;
  std::vector<double> scores;

  std::size_t size() const { return individuals.size(); }
  double mean_score() const;
  double min_score() const;
  // Highest score; ties resolve to the lowest index.
  std::size_t best_index() const;
};

// Fittest of k distinct uniformly drawn indices; ties go to the lowest
// index. Throws ConfigError unless 2 <= k <= scores.size().
std::size_t k_tournament(std::span<const double> scores, std::size_t k, RandomSource& rng);

struct OffspringOptions {
  GenomeBounds bounds;
  GeneAlphabet alphabet = GeneAlphabet::full();
};

// N/2 pairs, each parent picked by its own k-tournament; a pair is
// crossed over with probability p_c (else cloned), then each child
// mutates with probability p_m. Draw order per pair: tournament A,
// tournament B, crossover coin, cuts, child-1 mutation coin and draws,
// child-2 mutation coin and draws. Throws ConfigError for odd N.
std::vector<Genome> generate_offspring(const Population& population, const StageParams& params,
                                       RandomSource& rng, const OffspringOptions& options);

inline constexpr double kRouletteEpsilon = 1e-9;

// Indices into `scores` for the survivors: the best (lowest index on
// ties) first, then `count - 1` roulette draws without replacement with
// weights score + epsilon.
std::vector<std::size_t> select_survivors(std::span<const double> scores, std::size_t count,
                                          RandomSource& rng, double epsilon = kRouletteEpsilon);

// Elitism-roulette over parents followed by offspring; returns the next
// parent population with the generation counter advanced.
Population environmental_selection(const Population& parents, std::span<const Genome> offspring,
                                   std::span<const double> offspring_scores, RandomSource& rng,
                                   double epsilon = kRouletteEpsilon);

}  // namespace gnas
