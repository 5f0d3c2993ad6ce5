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

#include <span>

namespace gnas {

// Unweighted mean of per-class F1 over all `n_classes` classes. A class
// with a zero precision/recall denominator contributes 0, including a
// class absent from both inputs. Throws std::invalid_argument on empty or
// mismatched inputs.
double macro_f1(std::span<const int> predicted, std::span<const int> truth, int n_classes);

}  // namespace gnas
