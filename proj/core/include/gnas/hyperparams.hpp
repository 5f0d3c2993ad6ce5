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

#include <string>

#include "gnas/tpe.hpp"

namespace gnas {

// One point of the training-hyperparameter space.
struct HyperparamConfig {
  int hidden_dim = 32;
  double forward_dropout = 0.5;
  double middle_dropout = 0.3;
  double overall_dropout = 0.4;
  double learning_rate = 3.1622776601683795e-3;
  double weight_decay = 3.1622776601683794e-4;

  // Exact, round-trippable text key used for fitness caching.
  std::string key() const;

  bool operator==(const HyperparamConfig&) const = default;
};

// Bounds of the six tuned hyperparameters. hidden_dim, learning_rate and
// weight_decay are log-uniform; the dropout rates are uniform.
struct HyperparamSpace {
  Dimension hidden_dim{"hidden_dim", 4.0, 256.0, true, true};
  Dimension forward_dropout{"forward_dropout", 0.4, 0.6, false, false};
  Dimension middle_dropout{"middle_dropout", 0.2, 0.4, false, false};
  Dimension overall_dropout{"overall_dropout", 0.3, 0.5, false, false};
  Dimension learning_rate{"learning_rate", 1e-4, 1e-1, true, false};
  Dimension weight_decay{"weight_decay", 1e-5, 1e-2, true, false};

  // Throws ConfigError on invalid bounds or dropout rates outside [0, 1).
  void validate() const;
  SearchSpace search_space() const;

  Point to_point(const HyperparamConfig& config) const;
  HyperparamConfig from_point(const Point& point) const;

  bool contains(const HyperparamConfig& config) const;
  // Centre of every dimension in its modeling coordinate.
  HyperparamConfig midpoint() const;
};

}  // namespace gnas
