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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gnas/agos.hpp"
#include "gnas/evaluator.hpp"
#include "gnas/genome.hpp"
#include "gnas/graph_data.hpp"
#include "gnas/hyperparams.hpp"
#include "gnas/tpe.hpp"
#include "gnas/trainer.hpp"

namespace gnas {

struct DatasetSource {
  // Either three input files or a synthetic block model.
  std::optional<std::filesystem::path> edge_file;
  std::optional<std::filesystem::path> feature_file;
  std::optional<std::filesystem::path> label_file;
  SbmParams sbm{{75, 75, 75, 75}, 0.08, 0.005, 16, 0.5, 0.25, 0};
  SplitRatios splits;
  std::uint64_t split_seed = 0;

  bool uses_files() const { return edge_file.has_value(); }
};

struct AblationFlags {
  // z stays at the hyperparameter space midpoint; no tuning calls.
  bool disable_bgtm = false;
  // Stage parameters pinned to the exploitation triple.
  bool disable_adaptive = false;
  // Gene alphabet reduced to {gcn, relu}.
  bool restricted_search_space = false;
};

struct SearchConfig {
  DatasetSource dataset;
  std::size_t population_size = 20;
  std::size_t generations = 20;
  std::size_t tuning_interval = 5;
  GenomeBounds bounds;
  double lambda = 0.5;
  double alpha = 0.5;
  DeltaMode delta_mode = DeltaMode::kMeanFitness;
  StageSchedule schedule;
  HyperparamSpace space;
  TpeOptions tpe;
  std::size_t tuning_trials = 20;
  TrainOptions training;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  AblationFlags ablation;
  std::optional<std::size_t> evaluation_budget;

  // Throws ConfigError.
  void validate() const;
  GeneAlphabet alphabet() const;
  // Hash of every field that influences the search trajectory (workers
  // excluded).
  std::string hash() const;
};

struct GenerationLog {
  std::size_t generation = 0;
  Stage stage = Stage::kExploration;
  double delta_fitness = 0.0;
  StageParams params;
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
  double min_fitness = 0.0;
  std::string best_genome;
  std::size_t evaluations = 0;  // fitness trainings consumed by this row
  bool tuned = false;           // a tuning call ran at this generation
  HyperparamConfig hyperparams; // z in force after this row
  std::size_t alphabet_size = 0;
  std::size_t distinct_genes = 0;  // distinct gene tokens across the population

  bool operator==(const GenerationLog&) const = default;
};

struct TuningLog {
  std::size_t trial = 0;        // run-global index
  std::size_t generation = 0;
  HyperparamConfig hyperparams;
  double objective = 0.0;
  double seconds = 0.0;
};

struct SearchResult {
  Genome best_genome;
  HyperparamConfig best_hyperparams;
  double validation_fitness = 0.0;
  double test_macro_f1 = 0.0;
  std::vector<GenerationLog> convergence;
  std::vector<TuningLog> trials;
  std::size_t evaluations = 0;
  double seconds = 0.0;
  bool budget_exhausted = false;
  // False when the run stopped early to leave a checkpoint behind.
  bool completed = true;
  std::size_t generation = 0;
};

struct RunOptions {
  // Writes checkpoint.json here after every generation when set.
  std::optional<std::filesystem::path> checkpoint_dir;
  // Stop (with a checkpoint) once this generation has been formed.
  std::optional<std::size_t> stop_after_generation;
  // Replaces GNN training as the fitness function (tests, dry runs).
  FitnessFunction fitness_override;
};

GraphDataset build_dataset(const DatasetSource& source);

// Population initialization, initial tuning, then the adaptive generation
// loop with tuning every `tuning_interval` generations.
SearchResult run_search(const SearchConfig& config, const RunOptions& options = {});

// Continues a run from a checkpoint. Throws CheckpointError on a corrupt
// file or when `config` does not hash to the checkpointed value.
SearchResult resume_search(const std::filesystem::path& checkpoint, const SearchConfig& config,
                           const RunOptions& options = {});

// Reads the config embedded in a checkpoint.
SearchConfig checkpoint_config(const std::filesystem::path& checkpoint);

// Best of `budget` uniformly random genomes at the midpoint
// hyperparameters. Each genome costs one evaluation.
SearchResult run_random_baseline(const SearchConfig& config, std::size_t budget,
                                 const RunOptions& options = {});

// Output files.
void write_convergence_csv(const SearchResult& result, const std::filesystem::path& path);
void write_trials_csv(const SearchResult& result, const std::filesystem::path& path);
void write_result_json(const SearchResult& result, const std::filesystem::path& path);
std::string result_json(const SearchResult& result, bool include_timing = true);

}  // namespace gnas
