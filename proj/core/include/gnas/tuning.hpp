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
#include <vector>

#include "gnas/genome.hpp"
#include "gnas/graph_data.hpp"
#include "gnas/hyperparams.hpp"
#include "gnas/tpe.hpp"
#include "gnas/trainer.hpp"

namespace gnas {

using Objective = std::function<double(const Point&)>;

struct TrialRecord {
  std::size_t index = 0;
  Point point;
  double objective = 0.0;
  double seconds = 0.0;
};

struct TuningResult {
  Point best_point;
  double best_objective = 0.0;
  std::vector<TrialRecord> trials;
  // Every evaluated trial was non-finite; best_point is the incumbent.
  bool all_failed = false;
  // The objective raised BudgetExhausted; `trials` holds what completed.
  bool budget_exhausted = false;
};

// Trial 0 evaluates the incumbent; trials 1..n-1 evaluate TPE proposals.
// Finite observations are appended to `history`, which callers may keep
// across invocations. The result is the running best, earlier trials
// winning ties, so it is never worse than the incumbent.
TuningResult tune(const Objective& objective, const SearchSpace& space, const Point& incumbent,
                  std::size_t n_trials, TrialHistory& history, const TpeOptions& options,
                  RandomSource& rng);

struct HyperparamTuning {
  HyperparamConfig best;
  double best_objective = 0.0;
  TuningResult detail;
};

// Tunes the training hyperparameters of a fixed genome against its
// validation macro-F1.
HyperparamTuning tune_hyperparameters(const Genome& genome, const GraphDataset& ds,
                                      const NormalizedAdjacency& adj, const HyperparamSpace& space,
                                      const HyperparamConfig& incumbent, std::size_t n_trials,
                                      std::uint64_t seed, TrialHistory& history,
                                      const TpeOptions& options = {},
                                      const TrainOptions& training = {});

}  // namespace gnas
