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

#include "gnas/tuning.hpp"

#include <chrono>
#include <cmath>
#include <iostream>

#include "gnas/error.hpp"

namespace gnas {

TuningResult tune(const Objective& objective, const SearchSpace& space, const Point& incumbent,
                  std::size_t n_trials, TrialHistory& history, const TpeOptions& options,
                  RandomSource& rng) {
  if (n_trials < 1) throw ConfigError("tuning needs at least one trial");
  if (!space.contains(incumbent)) throw ConfigError("incumbent lies outside the search space");

  TuningResult result;
  result.best_point = incumbent;
  bool have_best = false;
  for (std::size_t i = 0; i < n_trials; ++i) {
    const Point point = i == 0 ? incumbent : propose(history, space, options, rng).point;
    const auto start = std::chrono::steady_clock::now();
    double value = 0.0;
    try {
      value = objective(point);
    } catch (const BudgetExhausted&) {
      result.budget_exhausted = true;
      break;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.trials.push_back({i, point, value, seconds});
    if (!std::isfinite(value)) continue;
    history.push_back({point, value});
    if (!have_best || value > result.best_objective) {
      result.best_objective = value;
      result.best_point = point;
      have_best = true;
    }
  }
  if (!have_best && !result.trials.empty()) {
    result.all_failed = true;
    std::cerr << "warning: every tuning trial was non-finite; keeping the incumbent\n";
  }
  return result;
}

HyperparamTuning tune_hyperparameters(const Genome& genome, const GraphDataset& ds,
                                      const NormalizedAdjacency& adj, const HyperparamSpace& space,
                                      const HyperparamConfig& incumbent, std::size_t n_trials,
                                      std::uint64_t seed, TrialHistory& history,
                                      const TpeOptions& options, const TrainOptions& training) {
  const SearchSpace box = space.search_space();
  Rng rng(mix_seed(seed, fnv1a("tune:" + genome.to_string())));
  const Objective objective = [&](const Point& p) {
    return evaluate_fitness(genome, space.from_point(p), ds, adj, seed, training).macro_f1;
  };
  HyperparamTuning out;
  out.detail = tune(objective, box, space.to_point(incumbent), n_trials, history, options, rng);
  out.best = space.from_point(out.detail.best_point);
  out.best_objective = out.detail.best_objective;
  return out;
}

}  // namespace gnas
