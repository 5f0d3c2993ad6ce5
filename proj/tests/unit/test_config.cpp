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

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "gnas/config.hpp"
#include "gnas/error.hpp"

using namespace gnas;

namespace {

void expect_config_error(const std::string& text) {
  CAPTURE(text);
  CHECK_THROWS_AS(parse_config(text), ConfigError);
}

}  // namespace

TEST_CASE("empty object gives defaults") {
  const auto c = parse_config("{}");
  const SearchConfig d;
  CHECK(c.population_size == d.population_size);
  CHECK(c.generations == d.generations);
  CHECK(c.tuning_interval == d.tuning_interval);
  CHECK(c.lambda == d.lambda);
  CHECK(c.alpha == d.alpha);
  CHECK(c.schedule.exploration.tournament_size == 4);
  CHECK(c.schedule.exploitation.crossover_prob == 0.6);
  CHECK_FALSE(c.dataset.uses_files());
  CHECK_FALSE(c.evaluation_budget.has_value());
  CHECK(c.hash() == d.hash());
}

TEST_CASE("fields are read") {
  const auto c = parse_config(R"({
    "dataset": {"sbm": {"blocks": [10, 12], "p_in": 0.3, "p_out": 0.01, "feature_dim": 4,
                        "noise": 0.1, "signal": 2.0, "seed": 5},
                "splits": {"train": 0.5, "val": 0.25, "test": 0.25}, "split_seed": 8},
    "search": {"population_size": 6, "generations": 4, "tuning_interval": 2,
               "min_length": 2, "max_length": 7, "lambda": 0.3, "alpha": 0.7,
               "delta_mode": "improvement", "seed": 99, "workers": 3, "evaluation_budget": 50},
    "stages": {"exploration": {"tournament_size": 3, "crossover_prob": 0.8, "mutation_prob": 0.4}},
    "hyperparameters": {"learning_rate": {"lower": 0.001, "upper": 0.05}},
    "tpe": {"gamma": 0.3, "n_candidates": 10, "n_startup": 3, "trials": 7},
    "training": {"max_epochs": 40, "patience": 5},
    "ablation": {"disable_bgtm": true, "restricted_search_space": true}
  })");
  CHECK(c.dataset.sbm.blocks == std::vector<std::size_t>{10, 12});
  CHECK(c.dataset.sbm.signal == 2.0);
  CHECK(c.dataset.splits.train == 0.5);
  CHECK(c.dataset.split_seed == 8);
  CHECK(c.population_size == 6);
  CHECK(c.bounds.max_length == 7);
  CHECK(c.delta_mode == DeltaMode::kImprovement);
  CHECK(c.seed == 99);
  CHECK(c.workers == 3);
  CHECK(c.evaluation_budget == std::optional<std::size_t>(50));
  CHECK(c.schedule.exploration.tournament_size == 3);
  CHECK(c.schedule.exploitation.tournament_size == 2);
  CHECK(c.space.learning_rate.lower == 0.001);
  CHECK(c.space.learning_rate.upper == 0.05);
  CHECK(c.tpe.n_candidates == 10);
  CHECK(c.tuning_trials == 7);
  CHECK(c.training.patience == 5);
  CHECK(c.ablation.disable_bgtm);
  CHECK_FALSE(c.ablation.disable_adaptive);
  CHECK(c.ablation.restricted_search_space);
  CHECK(c.alphabet().size() == 2);
}

TEST_CASE("round trip through json") {
  auto c = parse_config(R"({"search": {"population_size": 8, "generations": 10,
                                       "tuning_interval": 5, "seed": 3, "evaluation_budget": 40},
                            "dataset": {"edges": "e.txt", "features": "f.csv", "labels": "l.csv"}})");
  const auto text = config_to_json(c);
  const auto back = parse_config(text);
  CHECK(config_to_json(back) == text);
  CHECK(back.hash() == c.hash());
  CHECK(back.dataset.edge_file == std::filesystem::path("e.txt"));
}

TEST_CASE("hash ignores workers and tracks everything else") {
  SearchConfig a;
  SearchConfig b = a;
  b.workers = 8;
  CHECK(a.hash() == b.hash());
  b.seed = a.seed + 1;
  CHECK(a.hash() != b.hash());
  b = a;
  b.space.weight_decay.upper = 0.02;
  CHECK(a.hash() != b.hash());
  b = a;
  b.ablation.disable_adaptive = true;
  CHECK(a.hash() != b.hash());
  CHECK(a.hash().size() == 16);
}

TEST_CASE("rejections") {
  expect_config_error("not json");
  expect_config_error("[]");
  expect_config_error(R"({"serch": {}})");
  expect_config_error(R"({"search": {"populaton_size": 4}})");
  expect_config_error(R"({"search": {"population_size": -4}})");
  expect_config_error(R"({"search": {"population_size": 2.5}})");
  expect_config_error(R"({"search": {"population_size": "8"}})");
  expect_config_error(R"({"search": {"population_size": 7}})");
  expect_config_error(R"({"search": {"population_size": 0}})");
  expect_config_error(R"({"search": {"generations": 7, "tuning_interval": 5}})");
  expect_config_error(R"({"search": {"tuning_interval": 0}})");
  expect_config_error(R"({"search": {"lambda": 0.0}})");
  expect_config_error(R"({"search": {"lambda": 1.5}})");
  expect_config_error(R"({"search": {"min_length": 5, "max_length": 4}})");
  expect_config_error(R"({"search": {"delta_mode": "median"}})");
  expect_config_error(R"({"search": {"population_size": 10, "evaluation_budget": 5}})");
  expect_config_error(R"({"stages": {"exploitation": {"tournament_size": 1}}})");
  expect_config_error(R"({"stages": {"exploration": {"tournament_size": 64}}})");
  expect_config_error(R"({"stages": {"exploration": {"crossover_prob": 1.2}}})");
  expect_config_error(R"({"hyperparameters": {"learning_rate": {"lower": 0.0, "upper": 0.1}}})");
  expect_config_error(R"({"hyperparameters": {"forward_dropout": {"lower": 0.5, "upper": 1.0}}})");
  expect_config_error(R"({"hyperparameters": {"dropout": {"lower": 0.1, "upper": 0.2}}})");
  expect_config_error(R"({"tpe": {"gamma": 0.0}})");
  expect_config_error(R"({"dataset": {"edges": "e.txt"}})");
  expect_config_error(R"({"dataset": {"splits": {"train": 0.5, "val": 0.2, "test": 0.2}}})");
  expect_config_error(R"({"dataset": {"sbm": {"blocks": [10, -2]}}})");
  expect_config_error(R"({"ablation": {"disable_bgtm": 1}})");
}

TEST_CASE("load_config reports missing files") {
  CHECK_THROWS_AS(load_config("/nonexistent/gnas.json"), ConfigError);
  const auto path = std::filesystem::temp_directory_path() / "gnas_config_test.json";
  std::ofstream(path) << R"({"search": {"seed": 12}})";
  CHECK(load_config(path).seed == 12);
  std::filesystem::remove(path);
}

TEST_CASE("hyperparameter files") {
  const HyperparamConfig d;
  const auto hp = parse_hyperparams(R"({"hidden_dim": 64, "learning_rate": 0.01})", d);
  CHECK(hp.hidden_dim == 64);
  CHECK(hp.learning_rate == 0.01);
  CHECK(hp.weight_decay == d.weight_decay);
  CHECK(parse_hyperparams(hyperparams_to_json(hp), d) == hp);
  CHECK_THROWS_AS(parse_hyperparams(R"({"hidden_dim": 1.5})", d), ConfigError);
  CHECK_THROWS_AS(parse_hyperparams(R"({"middle_dropout": 1.0})", d), ConfigError);
  CHECK_THROWS_AS(parse_hyperparams(R"({"learning_rate": -1})", d), ConfigError);
  CHECK_THROWS_AS(parse_hyperparams(R"({"lr": 0.1})", d), ConfigError);
}
