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

#include "gnas/model.hpp"

#include <algorithm>
#include <cmath>

namespace gnas {

namespace {

using Matrix = Eigen::MatrixXd;
using IndexMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

constexpr double kLeakySlope = 0.01;

double stable_sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// Sum over N(v) and v itself, optionally divided by |N(v)| + 1.
Matrix aggregate_sum(const Matrix& h, const NormalizedAdjacency& adj, bool mean) {
  Matrix out = h;
  const auto n = h.rows();
  for (Eigen::Index v = 0; v < n; ++v) {
    for (const int u : adj.neighbors[static_cast<std::size_t>(v)]) out.row(v) += h.row(u);
  }
  if (mean) {
    for (Eigen::Index v = 0; v < n; ++v) {
      out.row(v) /= static_cast<double>(adj.neighbors[static_cast<std::size_t>(v)].size() + 1);
    }
  }
  return out;
}

Matrix aggregate_max(const Matrix& h, const NormalizedAdjacency& adj, IndexMatrix* argmax) {
  Matrix out = h;
  const auto n = h.rows();
  const auto cols = h.cols();
  if (argmax) {
    argmax->resize(n, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
      for (Eigen::Index v = 0; v < n; ++v) (*argmax)(v, j) = static_cast<int>(v);
    }
  }
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index v = 0; v < n; ++v) {
      for (const int u : adj.neighbors[static_cast<std::size_t>(v)]) {
        if (h(u, j) > out(v, j)) {
          out(v, j) = h(u, j);
          if (argmax) (*argmax)(v, j) = u;
        }
      }
    }
  }
  return out;
}

Matrix propagate_backward(PropagateOp op, const Matrix& grad_out, const NormalizedAdjacency& adj,
                          const IndexMatrix& argmax) {
  switch (op) {
    case PropagateOp::kGcn:
      return adj.matrix * grad_out;  // symmetric
    case PropagateOp::kSageSum:
      return aggregate_sum(grad_out, adj, false);
    case PropagateOp::kSageMean: {
      Matrix scaled = grad_out;
      for (Eigen::Index v = 0; v < scaled.rows(); ++v) {
        scaled.row(v) /= static_cast<double>(adj.neighbors[static_cast<std::size_t>(v)].size() + 1);
      }
      return aggregate_sum(scaled, adj, false);
    }
    case PropagateOp::kSageMax: {
      Matrix grad_in = Matrix::Zero(grad_out.rows(), grad_out.cols());
      for (Eigen::Index j = 0; j < grad_out.cols(); ++j) {
        for (Eigen::Index v = 0; v < grad_out.rows(); ++v) grad_in(argmax(v, j), j) += grad_out(v, j);
      }
      return grad_in;
    }
  }
  return grad_out;
}

Matrix dropout_mask(Eigen::Index rows, Eigen::Index cols, double rate, RandomSource& rng) {
  Matrix mask(rows, cols);
  const double scale = 1.0 / (1.0 - rate);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) mask(i, j) = rng.unit() >= rate ? scale : 0.0;
  }
  return mask;
}

struct StageCache {
  Matrix input;
  Matrix pre_activation;
  IndexMatrix argmax;
  Matrix dropout;  // empty when no dropout follows this stage
};

}  // namespace

std::size_t ModelPlan::parameter_count() const {
  const std::size_t f = input_dim, h = hidden_dim, c = n_classes;
  return f * h + transform_stages() * (h * h + h) + h * c + c;
}

ModelPlan compile(const Genome& genome, const HyperparamConfig& hp, std::size_t input_dim,
                  std::size_t n_classes) {
  ModelPlan plan;
  plan.genome = genome;
  plan.input_dim = input_dim;
  plan.hidden_dim = static_cast<std::size_t>(std::max(hp.hidden_dim, 1));
  plan.n_classes = n_classes;
  return plan;
}

std::size_t ModelParameters::count() const {
  std::size_t total = 0;
  for (const auto& t : tensors) total += static_cast<std::size_t>(t.size());
  return total;
}

ModelParameters ModelParameters::zeros_like(const ModelParameters& other) {
  ModelParameters out;
  out.tensors.reserve(other.tensors.size());
  for (const auto& t : other.tensors) out.tensors.push_back(Matrix::Zero(t.rows(), t.cols()));
  return out;
}

bool ModelParameters::all_finite() const {
  return std::all_of(tensors.begin(), tensors.end(), [](const Matrix& t) { return t.allFinite(); });
}

bool ModelParameters::operator==(const ModelParameters& other) const {
  if (tensors.size() != other.tensors.size()) return false;
  for (std::size_t i = 0; i < tensors.size(); ++i) {
    if (tensors[i].rows() != other.tensors[i].rows() ||
        tensors[i].cols() != other.tensors[i].cols() || tensors[i] != other.tensors[i]) {
      return false;
    }
  }
  return true;
}

ModelParameters init_parameters(const ModelPlan& plan, Rng& rng) {
  const auto f = static_cast<Eigen::Index>(plan.input_dim);
  const auto h = static_cast<Eigen::Index>(plan.hidden_dim);
  const auto c = static_cast<Eigen::Index>(plan.n_classes);
  auto glorot = [&rng](Eigen::Index fan_in, Eigen::Index fan_out) {
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    Matrix w(fan_in, fan_out);
    for (Eigen::Index j = 0; j < fan_out; ++j) {
      for (Eigen::Index i = 0; i < fan_in; ++i) w(i, j) = limit * (2.0 * rng.unit() - 1.0);
    }
    return w;
  };

  ModelParameters params;
  params.tensors.push_back(glorot(f, h));
  for (std::size_t t = 0; t < plan.transform_stages(); ++t) {
    params.tensors.push_back(glorot(h, h));
    params.tensors.push_back(Matrix::Zero(1, h));
  }
  params.tensors.push_back(glorot(h, c));
  params.tensors.push_back(Matrix::Zero(1, c));
  return params;
}

Matrix propagate(PropagateOp op, const Matrix& h, const NormalizedAdjacency& adj) {
  switch (op) {
    case PropagateOp::kGcn:
      return adj.matrix * h;
    case PropagateOp::kSageMean:
      return aggregate_sum(h, adj, true);
    case PropagateOp::kSageMax:
      return aggregate_max(h, adj, nullptr);
    case PropagateOp::kSageSum:
      return aggregate_sum(h, adj, false);
  }
  return h;
}

Matrix activate(TransformOp op, const Matrix& z) {
  switch (op) {
    case TransformOp::kRelu:
      return z.cwiseMax(0.0);
    case TransformOp::kLinear:
      return z;
    case TransformOp::kElu:
      return z.unaryExpr([](double v) { return v > 0.0 ? v : std::expm1(v); });
    case TransformOp::kSigmoid:
      return z.unaryExpr([](double v) { return stable_sigmoid(v); });
    case TransformOp::kTanh:
      return z.array().tanh().matrix();
    case TransformOp::kRelu6:
      return z.cwiseMax(0.0).cwiseMin(6.0);
    case TransformOp::kSoftplus:
      return z.unaryExpr(
          [](double v) { return std::max(v, 0.0) + std::log1p(std::exp(-std::abs(v))); });
    case TransformOp::kLeakyRelu:
      return z.unaryExpr([](double v) { return v > 0.0 ? v : kLeakySlope * v; });
  }
  return z;
}

Matrix activation_derivative(TransformOp op, const Matrix& z) {
  switch (op) {
    case TransformOp::kRelu:
      return z.unaryExpr([](double v) { return v > 0.0 ? 1.0 : 0.0; });
    case TransformOp::kLinear:
      return Matrix::Ones(z.rows(), z.cols());
    case TransformOp::kElu:
      return z.unaryExpr([](double v) { return v > 0.0 ? 1.0 : std::exp(v); });
    case TransformOp::kSigmoid:
      return z.unaryExpr([](double v) {
        const double s = stable_sigmoid(v);
        return s * (1.0 - s);
      });
    case TransformOp::kTanh:
      return z.unaryExpr([](double v) {
        const double t = std::tanh(v);
        return 1.0 - t * t;
      });
    case TransformOp::kRelu6:
      return z.unaryExpr([](double v) { return v > 0.0 && v < 6.0 ? 1.0 : 0.0; });
    case TransformOp::kSoftplus:
      return z.unaryExpr([](double v) { return stable_sigmoid(v); });
    case TransformOp::kLeakyRelu:
      return z.unaryExpr([](double v) { return v > 0.0 ? 1.0 : kLeakySlope; });
  }
  return Matrix::Ones(z.rows(), z.cols());
}

Matrix transform(TransformOp op, const Matrix& weight, const Matrix& bias, const Matrix& h) {
  Matrix z = h * weight;
  z.rowwise() += bias.row(0);
  return activate(op, z);
}

Matrix log_softmax_rows(const Matrix& logits) {
  Matrix out(logits.rows(), logits.cols());
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    const double max = logits.row(i).maxCoeff();
    const double lse = max + std::log((logits.row(i).array() - max).exp().sum());
    out.row(i) = logits.row(i).array() - lse;
  }
  return out;
}

Matrix forward(const ModelPlan& plan, const ModelParameters& params, const Matrix& x,
               const NormalizedAdjacency& adj) {
  Matrix h = x * params.input_weight();
  std::size_t t = 0;
  for (const auto& gene : plan.genome) {
    if (gene.is_propagate()) {
      h = propagate(gene.propagate_op(), h, adj);
    } else {
      h = transform(gene.transform_op(), params.transform_weight(t), params.transform_bias(t), h);
      ++t;
    }
  }
  Matrix logits = h * params.head_weight();
  logits.rowwise() += params.head_bias().row(0);
  return log_softmax_rows(logits);
}

double loss_and_gradient(const ModelPlan& plan, const ModelParameters& params, const Matrix& x,
                         const NormalizedAdjacency& adj, std::span<const int> labels,
                         std::span<const int> nodes, const DropoutRates& rates,
                         RandomSource* rng, ModelParameters* gradient) {
  const std::size_t stages = plan.stage_count();
  const auto n = x.rows();
  auto maybe_mask = [&](Eigen::Index rows, Eigen::Index cols, double rate) {
    return (rng != nullptr && rate > 0.0) ? dropout_mask(rows, cols, rate, *rng) : Matrix();
  };

  // Forward, keeping what the backward sweep needs.
  const Matrix input_mask = maybe_mask(x.rows(), x.cols(), rates.forward);
  const Matrix x0 = input_mask.size() ? Matrix(x.cwiseProduct(input_mask)) : x;
  Matrix h = x0 * params.input_weight();

  std::vector<StageCache> cache(stages);
  std::size_t t = 0;
  for (std::size_t s = 0; s < stages; ++s) {
    const auto& gene = plan.genome[s];
    auto& c = cache[s];
    if (gene.is_propagate()) {
      if (gene.propagate_op() == PropagateOp::kSageMax) {
        h = aggregate_max(h, adj, &c.argmax);
      } else {
        h = propagate(gene.propagate_op(), h, adj);
      }
    } else {
      c.input = std::move(h);
      c.pre_activation = c.input * params.transform_weight(t);
      c.pre_activation.rowwise() += params.transform_bias(t).row(0);
      h = activate(gene.transform_op(), c.pre_activation);
      ++t;
    }
    if (s + 1 < stages) {
      c.dropout = maybe_mask(h.rows(), h.cols(), rates.middle);
      if (c.dropout.size()) h = h.cwiseProduct(c.dropout);
    }
  }
  const Matrix overall_mask = maybe_mask(h.rows(), h.cols(), rates.overall);
  if (overall_mask.size()) h = h.cwiseProduct(overall_mask);

  Matrix logits = h * params.head_weight();
  logits.rowwise() += params.head_bias().row(0);
  const Matrix log_probs = log_softmax_rows(logits);

  const double inv_count = 1.0 / static_cast<double>(nodes.size());
  double loss = 0.0;
  for (const int v : nodes) loss -= log_probs(v, labels[static_cast<std::size_t>(v)]);
  loss *= inv_count;
  if (gradient == nullptr) return loss;

  // Backward.
  *gradient = ModelParameters::zeros_like(params);
  auto& grads = gradient->tensors;
  Matrix g_logits = Matrix::Zero(n, logits.cols());
  for (const int v : nodes) {
    g_logits.row(v) = log_probs.row(v).array().exp() * inv_count;
    g_logits(v, labels[static_cast<std::size_t>(v)]) -= inv_count;
  }
  grads[grads.size() - 2] = h.transpose() * g_logits;
  grads.back() = g_logits.colwise().sum();
  Matrix g = g_logits * params.head_weight().transpose();
  if (overall_mask.size()) g = g.cwiseProduct(overall_mask);

  for (std::size_t s = stages; s-- > 0;) {
    const auto& gene = plan.genome[s];
    auto& c = cache[s];
    if (c.dropout.size()) g = g.cwiseProduct(c.dropout);
    if (gene.is_propagate()) {
      g = propagate_backward(gene.propagate_op(), g, adj, c.argmax);
    } else {
      --t;
      const Matrix g_pre = g.cwiseProduct(activation_derivative(gene.transform_op(), c.pre_activation));
      grads[1 + 2 * t] = c.input.transpose() * g_pre;
      grads[2 + 2 * t] = g_pre.colwise().sum();
      g = g_pre * params.transform_weight(t).transpose();
    }
  }
  grads.front() = x0.transpose() * g;
  return loss;
}

std::vector<int> argmax_rows(const Matrix& scores) {
  std::vector<int> out(static_cast<std::size_t>(scores.rows()));
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    Eigen::Index best = 0;
    scores.row(i).maxCoeff(&best);
    out[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
  return out;
}

}  // namespace gnas
