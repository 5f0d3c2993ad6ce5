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

#include "gnas/hyperparams.hpp"

#include <cmath>
#include <cstdio>

#include "gnas/error.hpp"

namespace gnas {

std::string HyperparamConfig::key() const {
  char buffer[192];
  std::snprintf(buffer, sizeof(buffer), "h=%d,fd=%a,md=%a,od=%a,lr=%a,wd=%a", hidden_dim,
                forward_dropout, middle_dropout, overall_dropout, learning_rate, weight_decay);
  return buffer;
}

void HyperparamSpace::validate() const {
  for (const auto* d : {&hidden_dim, &forward_dropout, &middle_dropout, &overall_dropout,
                        &learning_rate, &weight_decay}) {
    d->validate();
  }
  if (hidden_dim.lower < 1.0) throw ConfigError("hidden_dim lower bound must be >= 1");
  for (const auto* d : {&forward_dropout, &middle_dropout, &overall_dropout}) {
    if (d->lower < 0.0 || d->upper >= 1.0) {
      throw ConfigError("dropout '" + d->name + "' must lie in [0, 1)");
    }
  }
}

SearchSpace HyperparamSpace::search_space() const {
  return SearchSpace({hidden_dim, forward_dropout, middle_dropout, overall_dropout, learning_rate,
                      weight_decay});
}

Point HyperparamSpace::to_point(const HyperparamConfig& c) const {
  return {static_cast<double>(c.hidden_dim), c.forward_dropout, c.middle_dropout,
          c.overall_dropout, c.learning_rate, c.weight_decay};
}

HyperparamConfig HyperparamSpace::from_point(const Point& p) const {
  if (p.size() != 6) throw ConfigError("hyperparameter point must have 6 coordinates");
  HyperparamConfig c;
  c.hidden_dim = static_cast<int>(std::lround(hidden_dim.snap(p[0])));
  c.forward_dropout = p[1];
  c.middle_dropout = p[2];
  c.overall_dropout = p[3];
  c.learning_rate = p[4];
  c.weight_decay = p[5];
  return c;
}

bool HyperparamSpace::contains(const HyperparamConfig& c) const {
  return search_space().contains(to_point(c));
}

HyperparamConfig HyperparamSpace::midpoint() const {
  return from_point(search_space().midpoint());
}

}  // namespace gnas
