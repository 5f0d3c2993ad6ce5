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
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "gnas/genome.hpp"
#include "gnas/graph_data.hpp"
#include "gnas/hyperparams.hpp"
#include "gnas/model.hpp"

namespace gnas {

struct TrainOptions {
  std::size_t max_epochs = 300;
  // Epochs without a validation macro-F1 improvement before stopping.
  std::size_t patience = 30;
};

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double val_macro_f1 = 0.0;

  bool operator==(const EpochRecord&) const = default;
};

struct TrainedModel {
  ModelPlan plan;
  // Best-validation snapshot; the initialization counts as epoch 0.
  ModelParameters parameters;
  std::vector<EpochRecord> trace;
  std::size_t best_epoch = 0;
  double best_val_macro_f1 = 0.0;
  bool diverged = false;
  std::string failure;
};

// Full-batch training: NLL on the train mask, Adam (0.9, 0.999, 1e-8)
// with decoupled weight decay, fixed learning rate, early stopping on
// validation macro-F1. A non-finite loss stops training and marks the
// model diverged.
TrainedModel train(const ModelPlan& plan, const GraphDataset& ds, const NormalizedAdjacency& adj,
                   const HyperparamConfig& hp, const TrainOptions& options, std::uint64_t seed);

// Evaluation-mode macro-F1 over `nodes`.
double evaluate_macro_f1(const ModelPlan& plan, const ModelParameters& params,
                         const GraphDataset& ds, const NormalizedAdjacency& adj,
                         std::span<const int> nodes);

enum class EvaluatedOn { kValidation, kTest };

struct FitnessValue {
  double macro_f1 = 0.0;
  EvaluatedOn evaluated_on = EvaluatedOn::kValidation;
  std::string failure;  // set when training diverged and fitness was forced to 0
};

// Seed actually used to train (genome, hp) under a run seed.
std::uint64_t evaluation_seed(const Genome& genome, const HyperparamConfig& hp, std::uint64_t seed);

// Compile, train and return the best validation macro-F1.
FitnessValue evaluate_fitness(const Genome& genome, const HyperparamConfig& hp,
                              const GraphDataset& ds, const NormalizedAdjacency& adj,
                              std::uint64_t seed, const TrainOptions& options = {});

// Trains (genome, hp) exactly as evaluate_fitness does and reports the
// best snapshot's macro-F1 on the test mask.
FitnessValue evaluate_test(const Genome& genome, const HyperparamConfig& hp,
                           const GraphDataset& ds, const NormalizedAdjacency& adj,
                           std::uint64_t seed, const TrainOptions& options = {});

// CSV with header "epoch,train_loss,val_macro_f1".
void write_trace_csv(const TrainedModel& model, std::ostream& out);

// Binary layout: 8-byte magic "GNASPRM1", u64 little-endian header length,
// a JSON header {"format","version","tensors":[{"rows","cols"}...]}, then
// every tensor row-major as little-endian IEEE-754 doubles.
void save_parameters(const ModelParameters& params, const std::filesystem::path& path);
ModelParameters load_parameters(const std::filesystem::path& path);

}  // namespace gnas
