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

#include "gnas/metrics.hpp"

#include <stdexcept>
#include <vector>

namespace gnas {

double macro_f1(std::span<const int> predicted, std::span<const int> truth, int n_classes) {
  if (predicted.empty() || truth.empty()) throw std::invalid_argument("macro_f1: empty input");
  if (predicted.size() != truth.size()) throw std::invalid_argument("macro_f1: length mismatch");
  if (n_classes <= 0) throw std::invalid_argument("macro_f1: class count must be positive");

  const auto c = static_cast<std::size_t>(n_classes);
  std::vector<long> tp(c, 0), fp(c, 0), fn(c, 0);
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const int p = predicted[i];
    const int t = truth[i];
    if (p < 0 || p >= n_classes || t < 0 || t >= n_classes) {
      throw std::invalid_argument("macro_f1: class id out of range");
    }
    if (p == t) {
      ++tp[static_cast<std::size_t>(p)];
    } else {
      ++fp[static_cast<std::size_t>(p)];
      ++fn[static_cast<std::size_t>(t)];
    }
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < c; ++k) {
    // F1 = 2TP / (2TP + FP + FN); zero when the denominator vanishes.
    const long denom = 2 * tp[k] + fp[k] + fn[k];
    if (denom > 0) sum += 2.0 * static_cast<double>(tp[k]) / static_cast<double>(denom);
  }
  return sum / static_cast<double>(c);
}

}  // namespace gnas
