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
#include <cstddef>
#include <span>
#include <vector>

#include "gnas/genome.hpp"
#include "gnas/graph_data.hpp"
#include "gnas/hyperparams.hpp"
#include "gnas/random.hpp"

namespace gnas {

// A genome compiled against concrete dimensions: an input projection
// f -> h (no bias, no activation), one stage per gene (propagation stages
// are parameter-free, transformation stages are h -> h with bias), and a
// classifier head h -> C followed by log-softmax.
struct ModelPlan {
  Genome genome;
  std::size_t input_dim = 0;
  std::size_t hidden_dim = 0;
  std::size_t n_classes = 0;

  std::size_t stage_count() const { return genome.size(); }
  std::size_t transform_stages() const { return genome.transform_count(); }
  // f*h + T*(h*h + h) + h*C + C
  std::size_t parameter_count() const;
};

ModelPlan compile(const Genome& genome, const HyperparamConfig& hp, std::size_t input_dim,
                  std::size_t n_classes);

// Parameter tensors in a fixed order: input weight (f x h); for each
// transformation stage a weight (h x h) and a bias (1 x h); head weight
// (h x C); head bias (1 x C).
struct ModelParameters {
  std::vector<Eigen::MatrixXd> tensors;

  std::size_t count() const;
  std::size_t transform_stages() const { return (tensors.size() - 3) / 2; }

  const Eigen::MatrixXd& input_weight() const { return tensors.front(); }
  const Eigen::MatrixXd& transform_weight(std::size_t t) const { return tensors[1 + 2 * t]; }
  const Eigen::MatrixXd& transform_bias(std::size_t t) const { return tensors[2 + 2 * t]; }
  const Eigen::MatrixXd& head_weight() const { return tensors[tensors.size() - 2]; }
  const Eigen::MatrixXd& head_bias() const { return tensors.back(); }

  static ModelParameters zeros_like(const ModelParameters& other);
  bool all_finite() const;
  bool operator==(const ModelParameters& other) const;
};

// Glorot-uniform weights, zero biases.
ModelParameters init_parameters(const ModelPlan& plan, Rng& rng);

Eigen::MatrixXd propagate(PropagateOp op, const Eigen::MatrixXd& h, const NormalizedAdjacency& adj);

Eigen::MatrixXd activate(TransformOp op, const Eigen::MatrixXd& z);
Eigen::MatrixXd activation_derivative(TransformOp op, const Eigen::MatrixXd& z);

// activation(h * weight + bias)
Eigen::MatrixXd transform(TransformOp op, const Eigen::MatrixXd& weight,
                          const Eigen::MatrixXd& bias, const Eigen::MatrixXd& h);

Eigen::MatrixXd log_softmax_rows(const Eigen::MatrixXd& logits);

struct DropoutRates {
  double forward = 0.0;
  double middle = 0.0;
  double overall = 0.0;

  static DropoutRates from(const HyperparamConfig& hp) {
    return {hp.forward_dropout, hp.middle_dropout, hp.overall_dropout};
  }
};

// Evaluation-mode forward pass (no dropout). Returns n x C log-probabilities.
Eigen::MatrixXd forward(const ModelPlan& plan, const ModelParameters& params,
                        const Eigen::MatrixXd& x, const NormalizedAdjacency& adj);

// Mean negative log-likelihood over `nodes` and its gradient with respect
// to every parameter tensor, by reverse-mode accumulation through the
// stages. Dropout masks are drawn from `rng` when it is non-null; with a
// null rng the pass is deterministic and dropout-free.
double loss_and_gradient(const ModelPlan& plan, const ModelParameters& params,
                         const Eigen::MatrixXd& x, const NormalizedAdjacency& adj,
                         std::span<const int> labels, std::span<const int> nodes,
                         const DropoutRates& rates, RandomSource* rng,
                         ModelParameters* gradient);

std::vector<int> argmax_rows(const Eigen::MatrixXd& scores);

}  // namespace gnas
