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

#include <cmath>
#include <limits>

#include "gnas/error.hpp"
#include "gnas/graph_data.hpp"
#include "gnas/tuning.hpp"

using namespace gnas;

namespace {

const SearchSpace kLr({{"lr", 1e-4, 1e-1, true, false}});

double peaked(const Point& p) {
  const double z = std::log10(p[0]) + 2.0;
  return -z * z;
}

}  // namespace

TEST_CASE("a single trial evaluates only the incumbent") {
  TrialHistory history;
  Rng rng(1);
  int calls = 0;
  const auto r = tune([&](const Point& p) { ++calls; return p[0]; }, kLr, {1e-3}, 1, history, {}, rng);
  CHECK(calls == 1);
  CHECK(r.best_point == Point{1e-3});
  CHECK(r.best_objective == 1e-3);
  CHECK(history.size() == 1);
  CHECK_THROWS_AS(tune(peaked, kLr, {1e-3}, 0, history, {}, rng), ConfigError);
  CHECK_THROWS_AS(tune(peaked, kLr, {1.0}, 3, history, {}, rng), ConfigError);
}

TEST_CASE("best is the running maximum and the earliest wins ties") {
  TrialHistory history;
  Rng rng(7);
  const auto r = tune([](const Point& p) { return std::round(4.0 * p[0] / 0.1) / 4.0; }, kLr,
                      {1e-3}, 20, history, {}, rng);
  REQUIRE(r.trials.size() == 20);
  double best = -INFINITY;
  std::size_t at = 0;
  for (const auto& t : r.trials) {
    if (t.objective > best) {
      best = t.objective;
      at = t.index;
    }
  }
  CHECK(r.best_objective == best);
  CHECK(r.best_point == r.trials[at].point);
}

TEST_CASE("recovers a peaked learning rate") {
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    TrialHistory history;
    Rng rng(seed);
    const auto r = tune(peaked, kLr, kLr.midpoint(), 30, history, {}, rng);
    hits += r.best_point[0] >= 1e-2 / 3.0 && r.best_point[0] <= 3e-2;
  }
  CHECK(hits >= 9);
}

TEST_CASE("non-finite objectives are skipped") {
  TrialHistory history;
  Rng rng(3);
  const auto r = tune([](const Point&) { return std::numeric_limits<double>::quiet_NaN(); }, kLr,
                      {1e-3}, 6, history, {}, rng);
  CHECK(r.all_failed);
  CHECK(r.best_point == Point{1e-3});
  CHECK(r.trials.size() == 6);
  CHECK(history.empty());

  TrialHistory h2;
  const auto mixed = tune([](const Point& p) { return p[0] > 1e-2 ? INFINITY : p[0]; }, kLr,
                          {1e-3}, 10, h2, {}, rng);
  CHECK_FALSE(mixed.all_failed);
  CHECK(std::isfinite(mixed.best_objective));
  CHECK(mixed.best_point[0] <= 1e-2);
}

TEST_CASE("budget exhaustion stops tuning and keeps completed trials") {
  TrialHistory history;
  Rng rng(2);
  int calls = 0;
  const auto r = tune(
      [&](const Point& p) {
        if (++calls > 4) throw BudgetExhausted("out");
        return p[0];
      },
      kLr, {1e-3}, 10, history, {}, rng);
  CHECK(r.budget_exhausted);
  CHECK(r.trials.size() == 4);
  CHECK(history.size() == 4);
}

TEST_CASE("tuning is deterministic and the history carries over") {
  auto run = [](std::uint64_t seed) {
    TrialHistory h;
    Rng rng(seed);
    const auto a = tune(peaked, kLr, {1e-3}, 8, h, {}, rng);
    const auto b = tune(peaked, kLr, a.best_point, 8, h, {}, rng);
    return std::pair{h, b};
  };
  const auto [h1, b1] = run(11);
  const auto [h2, b2] = run(11);
  CHECK(h1.size() == 16);
  REQUIRE(h2.size() == 16);
  for (std::size_t i = 0; i < 16; ++i) CHECK(h1[i].point == h2[i].point);
  CHECK(b1.best_point == b2.best_point);
  // The second call is past cold start, so its proposals come from the model.
  TrialHistory h;
  Rng rng(11);
  tune(peaked, kLr, {1e-3}, 8, h, {}, rng);
  const auto p = propose(h, kLr, {}, rng);
  CHECK_FALSE(p.from_prior);
}

TEST_CASE("hyperparameter tuning on a small graph") {
  const auto ds = make_splits(generate_sbm({{20, 20}, 0.3, 0.02, 8, 0.3, 1.0, 4}), {}, 4);
  const auto adj = normalize_adjacency(ds);
  const auto genome = Genome::parse("P1-T1");
  const HyperparamSpace space;
  TrainOptions training;
  training.max_epochs = 20;
  TrialHistory history;
  const auto r = tune_hyperparameters(genome, ds, adj, space, space.midpoint(), 4, 5, history, {},
                                      training);
  CHECK(r.detail.trials.size() == 4);
  CHECK(space.contains(r.best));
  CHECK(r.best_objective >= r.detail.trials[0].objective);
  CHECK(r.best_objective ==
        evaluate_fitness(genome, r.best, ds, adj, 5, training).macro_f1);
}
