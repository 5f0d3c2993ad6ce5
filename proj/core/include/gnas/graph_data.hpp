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

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

namespace gnas {

using Edge = std::pair<int, int>;

inline constexpr int kUnlabeled = -1;

// An undirected, attributed graph for node classification. Edges are
// canonical: u < v, sorted, no duplicates, no self loops.
struct GraphDataset {
  std::size_t n_nodes = 0;
  std::vector<Edge> edges;
  Eigen::MatrixXd features;     // n_nodes x f
  std::vector<int> labels;      // class id or kUnlabeled
  int n_classes = 0;
  std::vector<std::uint8_t> train_mask;
  std::vector<std::uint8_t> val_mask;
  std::vector<std::uint8_t> test_mask;

  std::size_t feature_dim() const { return static_cast<std::size_t>(features.cols()); }
  bool has_splits() const { return train_mask.size() == n_nodes && n_nodes > 0; }

  static std::vector<int> indices(std::span<const std::uint8_t> mask);
  std::vector<int> train_nodes() const { return indices(train_mask); }
  std::vector<int> val_nodes() const { return indices(val_mask); }
  std::vector<int> test_nodes() const { return indices(test_mask); }
};

// Symmetric-normalized adjacency with self loops, plus plain neighbor
// lists (self excluded) for the sage-style aggregators.
struct NormalizedAdjacency {
  Eigen::SparseMatrix<double, Eigen::RowMajor> matrix;
  std::vector<std::vector<int>> neighbors;
};

// Sorts, symmetrizes and deduplicates edges; drops self loops.
std::vector<Edge> canonicalize_edges(std::span<const Edge> edges);

// Reads the three-file format: whitespace "u v" edge list with '#'
// comments, one CSV feature row per node, and "node_id,class_id" labels.
// Throws IngestionError naming file and line.
GraphDataset load_dataset(const std::filesystem::path& edge_file,
                          const std::filesystem::path& feature_file,
                          const std::filesystem::path& label_file);

// Writes edges.txt, features.csv and labels.csv into `dir`.
void write_dataset(const GraphDataset& ds, const std::filesystem::path& dir);

struct SplitRatios {
  double train = 0.6;
  double val = 0.2;
  double test = 0.2;
};

// Stratified per-class train/val/test masks. Every class needs at least
// three labeled nodes (SplitError otherwise).
GraphDataset make_splits(GraphDataset ds, const SplitRatios& ratios, std::uint64_t seed);

struct SbmParams {
  std::vector<std::size_t> blocks;
  double p_in = 0.0;
  double p_out = 0.0;
  std::size_t feature_dim = 16;
  double noise = 0.5;
  // Length of each class mean vector (one-hot direction per class).
  double signal = 1.0;
  std::uint64_t seed = 0;
};

// Stochastic block model with one-hot class means plus Gaussian noise.
// Labels are block ids. Masks are left empty.
GraphDataset generate_sbm(const SbmParams& params);

NormalizedAdjacency normalize_adjacency(const GraphDataset& ds);

}  // namespace gnas
