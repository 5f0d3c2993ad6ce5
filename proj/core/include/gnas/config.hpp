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

#include <filesystem>
#include <string>

#include "gnas/search.hpp"

namespace gnas {

// JSON config documents. Every key is optional; missing keys keep the
// defaults in SearchConfig. Unknown keys are rejected. Throws ConfigError.
SearchConfig parse_config(const std::string& text);
SearchConfig load_config(const std::filesystem::path& path);

// Canonical JSON for a config (all keys present).
std::string config_to_json(const SearchConfig& config);

HyperparamConfig parse_hyperparams(const std::string& text, const HyperparamConfig& defaults);
std::string hyperparams_to_json(const HyperparamConfig& hp);

}  // namespace gnas
