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

#include "gnas/trainer.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <json.hpp>

#include "gnas/error.hpp"
#include "gnas/metrics.hpp"

namespace gnas {

namespace {

constexpr double kBeta1 = 0.9;
constexpr double kBeta2 = 0.999;
constexpr double kAdamEps = 1e-8;
constexpr char kParamMagic[8] = {'G', 'N', 'A', 'S', 'P', 'R', 'M', '1'};

std::uint64_t to_little_endian(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) return __builtin_bswap64(v);
  return v;
}

class AdamW {
 public:
  explicit AdamW(const ModelParameters& like)
      : m_(ModelParameters::zeros_like(like)), v_(ModelParameters::zeros_like(like)) {}

  void step(ModelParameters& params, const ModelParameters& grad, double lr, double decay) {
    ++t_;
    const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(t_));
    for (std::size_t i = 0; i < params.tensors.size(); ++i) {
      auto p = params.tensors[i].array();
      const auto g = grad.tensors[i].array();
      auto m = m_.tensors[i].array();
      auto v = v_.tensors[i].array();
      m = kBeta1 * m + (1.0 - kBeta1) * g;
      v = kBeta2 * v + (1.0 - kBeta2) * g.square();
      p -= lr * ((m / c1) / ((v / c2).sqrt() + kAdamEps) + decay * p);
    }
  }

 private:
  ModelParameters m_;
  ModelParameters v_;
  std::size_t t_ = 0;
};

}  // namespace

double evaluate_macro_f1(const ModelPlan& plan, const ModelParameters& params,
                         const GraphDataset& ds, const NormalizedAdjacency& adj,
                         std::span<const int> nodes) {
  const auto predicted = argmax_rows(forward(plan, params, ds.features, adj));
  std::vector<int> pred, truth;
  pred.reserve(nodes.size());
  truth.reserve(nodes.size());
  for (const int v : nodes) {
    pred.push_back(predicted[static_cast<std::size_t>(v)]);
    truth.push_back(ds.labels[static_cast<std::size_t>(v)]);
  }
  return macro_f1(pred, truth, ds.n_classes);
}

TrainedModel train(const ModelPlan& plan, const GraphDataset& ds, const NormalizedAdjacency& adj,
                   const HyperparamConfig& hp, const TrainOptions& options, std::uint64_t seed) {
  if (!ds.has_splits()) throw ConfigError("training requires train/val/test masks");
  const auto train_nodes = ds.train_nodes();
  const auto val_nodes = ds.val_nodes();
  if (train_nodes.empty() || val_nodes.empty()) {
    throw ConfigError("training requires non-empty train and validation masks");
  }

  Rng rng(seed);
  TrainedModel model;
  model.plan = plan;
  ModelParameters params = init_parameters(plan, rng);
  model.parameters = params;
  model.best_val_macro_f1 = evaluate_macro_f1(plan, params, ds, adj, val_nodes);

  AdamW optimizer(params);
  ModelParameters grad;
  const DropoutRates rates = DropoutRates::from(hp);
  std::size_t since_best = 0;
  for (std::size_t epoch = 1; epoch <= options.max_epochs; ++epoch) {
    const double loss = loss_and_gradient(plan, params, ds.features, adj, ds.labels, train_nodes,
                                          rates, &rng, &grad);
    if (!std::isfinite(loss) || !grad.all_finite()) {
      model.diverged = true;
      model.failure = "non-finite loss at epoch " + std::to_string(epoch);
      break;
    }
    optimizer.step(params, grad, hp.learning_rate, hp.weight_decay);
    if (!params.all_finite()) {
      model.diverged = true;
      model.failure = "non-finite parameters at epoch " + std::to_string(epoch);
      break;
    }
    const double val = evaluate_macro_f1(plan, params, ds, adj, val_nodes);
    model.trace.push_back({epoch, loss, val});
    if (val > model.best_val_macro_f1) {
      model.best_val_macro_f1 = val;
      model.best_epoch = epoch;
      model.parameters = params;
      since_best = 0;
    } else if (++since_best >= options.patience) {
      break;
    }
  }
  return model;
}

std::uint64_t evaluation_seed(const Genome& genome, const HyperparamConfig& hp, std::uint64_t seed) {
  return mix_seed(seed, fnv1a(genome.to_string() + "|" + hp.key()));
}

FitnessValue evaluate_fitness(const Genome& genome, const HyperparamConfig& hp,
                              const GraphDataset& ds, const NormalizedAdjacency& adj,
                              std::uint64_t seed, const TrainOptions& options) {
  const auto plan = compile(genome, hp, ds.feature_dim(), static_cast<std::size_t>(ds.n_classes));
  const auto model = train(plan, ds, adj, hp, options, evaluation_seed(genome, hp, seed));
  if (model.diverged) return {0.0, EvaluatedOn::kValidation, model.failure};
  return {model.best_val_macro_f1, EvaluatedOn::kValidation, {}};
}

FitnessValue evaluate_test(const Genome& genome, const HyperparamConfig& hp,
                           const GraphDataset& ds, const NormalizedAdjacency& adj,
                           std::uint64_t seed, const TrainOptions& options) {
  const auto plan = compile(genome, hp, ds.feature_dim(), static_cast<std::size_t>(ds.n_classes));
  const auto model = train(plan, ds, adj, hp, options, evaluation_seed(genome, hp, seed));
  if (model.diverged) return {0.0, EvaluatedOn::kTest, model.failure};
  const auto test_nodes = ds.test_nodes();
  if (test_nodes.empty()) return {0.0, EvaluatedOn::kTest, "empty test mask"};
  return {evaluate_macro_f1(plan, model.parameters, ds, adj, test_nodes), EvaluatedOn::kTest, {}};
}

void write_trace_csv(const TrainedModel& model, std::ostream& out) {
  out << "epoch,train_loss,val_macro_f1\n";
  const auto old = out.precision(17);
  for (const auto& r : model.trace) {
    out << r.epoch << ',' << r.train_loss << ',' << r.val_macro_f1 << '\n';
  }
  out.precision(old);
}

void save_parameters(const ModelParameters& params, const std::filesystem::path& path) {
  nlohmann::json header;
  header["format"] = "gnas-params";
  header["version"] = 1;
  header["dtype"] = "float64-le";
  header["tensors"] = nlohmann::json::array();
  for (const auto& t : params.tensors) header["tensors"].push_back({{"rows", t.rows()}, {"cols", t.cols()}});
  const std::string text = header.dump();

  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(path.string() + ": cannot write parameters");
  out.write(kParamMagic, sizeof(kParamMagic));
  const std::uint64_t len = to_little_endian(text.size());
  out.write(reinterpret_cast<const char*>(&len), sizeof(len));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  for (const auto& t : params.tensors) {
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      for (Eigen::Index j = 0; j < t.cols(); ++j) {
        const std::uint64_t bits = to_little_endian(std::bit_cast<std::uint64_t>(t(i, j)));
        out.write(reinterpret_cast<const char*>(&bits), sizeof(bits));
      }
    }
  }
  if (!out) throw Error(path.string() + ": write failed");
}

ModelParameters load_parameters(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(path.string() + ": cannot open parameters");
  char magic[8];
  std::uint64_t len = 0;
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kParamMagic, sizeof(magic)) != 0 ||
      !in.read(reinterpret_cast<char*>(&len), sizeof(len))) {
    throw Error(path.string() + ": not a parameter file");
  }
  len = to_little_endian(len);
  if (len > (1u << 24)) throw Error(path.string() + ": implausible header length");
  std::string text(len, '\0');
  if (!in.read(text.data(), static_cast<std::streamsize>(len))) {
    throw Error(path.string() + ": truncated header");
  }
  ModelParameters params;
  try {
    const auto header = nlohmann::json::parse(text);
    for (const auto& t : header.at("tensors")) {
      params.tensors.emplace_back(t.at("rows").get<Eigen::Index>(), t.at("cols").get<Eigen::Index>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(path.string() + ": bad header: " + e.what());
  }
  for (auto& t : params.tensors) {
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      for (Eigen::Index j = 0; j < t.cols(); ++j) {
        std::uint64_t bits = 0;
        if (!in.read(reinterpret_cast<char*>(&bits), sizeof(bits))) {
          throw Error(path.string() + ": truncated tensor data");
        }
        t(i, j) = std::bit_cast<double>(to_little_endian(bits));
      }
    }
  }
  return params;
}

}  // namespace gnas
