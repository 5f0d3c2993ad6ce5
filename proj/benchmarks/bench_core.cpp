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

#include <benchmark/benchmark.h>

#include <numeric>

#include "gnas/graph_data.hpp"
#include "gnas/model.hpp"
#include "gnas/search.hpp"
#include "gnas/tpe.hpp"

using namespace gnas;

namespace {

const GraphDataset& fixture() {
  static const GraphDataset ds = build_dataset(DatasetSource{});
  return ds;
}

void BM_Propagate(benchmark::State& state) {
  const auto& ds = fixture();
  const auto adj = normalize_adjacency(ds);
  Rng rng(1);
  Eigen::MatrixXd h(static_cast<Eigen::Index>(ds.n_nodes), state.range(1));
  for (Eigen::Index i = 0; i < h.size(); ++i) h.data()[i] = rng.normal();
  const auto op = static_cast<PropagateOp>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(propagate(op, h, adj));
  state.SetLabel(std::string(propagate_name(op)));
}
BENCHMARK(BM_Propagate)->ArgsProduct({{0, 1, 2, 3}, {32, 128}});

// One full-batch forward/backward pass, i.e. the work of a training epoch.
void BM_TrainStep(benchmark::State& state) {
  const auto& ds = fixture();
  const auto adj = normalize_adjacency(ds);
  HyperparamConfig hp;
  hp.hidden_dim = static_cast<int>(state.range(0));
  const auto plan = compile(Genome::parse("P1-T1-P2-T3-P1"), hp, ds.feature_dim(),
                            static_cast<std::size_t>(ds.n_classes));
  Rng rng(2);
  const auto params = init_parameters(plan, rng);
  const auto nodes = ds.train_nodes();
  ModelParameters grad;
  for (auto _ : state) {
    benchmark::DoNotOptimize(loss_and_gradient(plan, params, ds.features, adj, ds.labels, nodes,
                                               DropoutRates::from(hp), &rng, &grad));
  }
}
BENCHMARK(BM_TrainStep)->Arg(16)->Arg(64)->Arg(256);

void BM_TpePropose(benchmark::State& state) {
  const SearchSpace space = HyperparamSpace{}.search_space();
  Rng rng(3);
  std::vector<Trial> history;
  for (std::int64_t i = 0; i < state.range(0); ++i) {
    const Point p = space.sample_prior(rng);
    history.push_back({p, -std::abs(std::log10(p[4]) + 2.0)});
  }
  for (auto _ : state) benchmark::DoNotOptimize(propose(history, space, {}, rng));
}
BENCHMARK(BM_TpePropose)->Arg(20)->Arg(60)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
