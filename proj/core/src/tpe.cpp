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

#include "gnas/tpe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "gnas/error.hpp"

namespace gnas {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

void Dimension::validate() const {
  if (!(std::isfinite(lower) && std::isfinite(upper)) || !(lower < upper)) {
    throw ConfigError("dimension '" + name + "' needs finite bounds with lower < upper");
  }
  if (log_scale && lower <= 0.0) {
    throw ConfigError("log-scale dimension '" + name + "' needs a positive lower bound");
  }
}

double Dimension::to_internal(double value) const { return log_scale ? std::log(value) : value; }

double Dimension::from_internal(double internal) const {
  return log_scale ? std::exp(internal) : internal;
}

double Dimension::snap(double value) const {
  if (integer) value = std::round(value);
  value = std::clamp(value, lower, upper);
  if (integer && value < lower) value = std::ceil(lower);
  return value;
}

SearchSpace::SearchSpace(std::vector<Dimension> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw ConfigError("search space needs at least one dimension");
  for (const auto& d : dims_) d.validate();
}

bool SearchSpace::contains(const Point& point) const {
  if (point.size() != dims_.size()) return false;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    const double v = point[i];
    if (!(v >= dims_[i].lower && v <= dims_[i].upper)) return false;
    if (dims_[i].integer && v != std::round(v)) return false;
  }
  return true;
}

Point SearchSpace::midpoint() const {
  Point p(dims_.size());
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    const auto& d = dims_[i];
    p[i] = d.snap(d.from_internal(0.5 * (d.internal_lower() + d.internal_upper())));
  }
  return p;
}

Point SearchSpace::sample_prior(RandomSource& rng) const {
  Point p(dims_.size());
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    const auto& d = dims_[i];
    const double lo = d.internal_lower();
    const double hi = d.internal_upper();
    p[i] = d.snap(d.from_internal(lo + (hi - lo) * rng.unit()));
  }
  return p;
}

HistorySplit split_history(std::span<const Trial> history, double gamma) {
  if (history.size() < 2) throw ConfigError("split_history needs at least two trials");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ConfigError("gamma must lie in (0, 1]");

  std::vector<double> sorted;
  sorted.reserve(history.size());
  for (const auto& t : history) sorted.push_back(t.objective);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const auto n = sorted.size();
  const auto k = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(gamma * static_cast<double>(n))), 1, n);

  HistorySplit split;
  split.threshold = sorted[k - 1];
  for (const auto& t : history) {
    (t.objective >= split.threshold ? split.good : split.bad).push_back(t);
  }
  return split;
}

double ParzenEstimator::bandwidth(std::span<const double> centers, double range) {
  const double n = static_cast<double>(centers.size());
  const double mean = std::accumulate(centers.begin(), centers.end(), 0.0) / n;
  double var = 0.0;
  for (const double c : centers) var += (c - mean) * (c - mean);
  const double sd = std::sqrt(var / n);
  const double scott = 1.06 * sd * std::pow(n, -0.2);
  const double floor = range / std::min(100.0, n + 1.0);
  return std::clamp(scott, floor, range);
}

ParzenEstimator::ParzenEstimator(std::span<const Trial> observations, const SearchSpace& space)
    : space_(&space) {
  const std::size_t dims = space.size();
  for (const auto& obs : observations) {
    std::vector<double> internal(dims);
    for (std::size_t d = 0; d < dims; ++d) internal[d] = space[d].to_internal(obs.point[d]);
    centers_.push_back(std::move(internal));
  }
  if (centers_.empty()) return;
  bandwidths_.resize(dims);
  std::vector<double> column(centers_.size());
  for (std::size_t d = 0; d < dims; ++d) {
    for (std::size_t i = 0; i < centers_.size(); ++i) column[i] = centers_[i][d];
    bandwidths_[d] =
        bandwidth(column, space[d].internal_upper() - space[d].internal_lower());
  }
}

double ParzenEstimator::marginal_density(std::size_t d, double internal) const {
  const auto& dim = (*space_)[d];
  const double lo = dim.internal_lower();
  const double hi = dim.internal_upper();
  if (internal < lo || internal > hi) return 0.0;
  if (centers_.empty()) return 1.0 / (hi - lo);
  const double sigma = bandwidths_[d];
  double sum = 0.0;
  for (const auto& c : centers_) {
    const double mass = normal_cdf((hi - c[d]) / sigma) - normal_cdf((lo - c[d]) / sigma);
    sum += normal_pdf((internal - c[d]) / sigma) / (sigma * mass);
  }
  return sum / static_cast<double>(centers_.size());
}

double ParzenEstimator::log_density(const Point& point) const {
  double total = 0.0;
  for (std::size_t d = 0; d < space_->size(); ++d) {
    total += std::log(marginal_density(d, (*space_)[d].to_internal(point[d])));
  }
  return total;
}

Point ParzenEstimator::sample(RandomSource& rng) const {
  const std::size_t dims = space_->size();
  Point p(dims);
  for (std::size_t d = 0; d < dims; ++d) {
    const auto& dim = (*space_)[d];
    const double lo = dim.internal_lower();
    const double hi = dim.internal_upper();
    double x = 0.0;
    if (centers_.empty()) {
      x = lo + (hi - lo) * rng.unit();
    } else {
      const double mu = centers_[rng.below(centers_.size())][d];
      const double sigma = bandwidths_[d];
      // Kernels sit inside the box and sigma <= range, so acceptance is
      // at least ~1/3 per draw.
      x = mu;
      for (int attempt = 0; attempt < 64; ++attempt) {
        const double u1 = 1.0 - rng.unit();
        const double u2 = rng.unit();
        const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
        const double candidate = mu + sigma * z;
        if (candidate >= lo && candidate <= hi) {
          x = candidate;
          break;
        }
      }
    }
    p[d] = dim.snap(dim.from_internal(x));
  }
  return p;
}

Proposal propose(std::span<const Trial> history, const SearchSpace& space,
                 const TpeOptions& options, RandomSource& rng) {
  std::vector<Trial> finite;
  for (const auto& t : history) {
    if (std::isfinite(t.objective)) finite.push_back(t);
  }
  Proposal proposal;
  if (finite.size() < std::max<std::size_t>(options.n_startup, 2) || options.n_candidates == 0) {
    proposal.point = space.sample_prior(rng);
    proposal.from_prior = true;
    return proposal;
  }

  const auto split = split_history(finite, options.gamma);
  const ParzenEstimator good(split.good, space);
  const ParzenEstimator bad(split.bad, space);

  double best = -std::numeric_limits<double>::infinity();
  std::size_t best_index = 0;
  for (std::size_t i = 0; i < options.n_candidates; ++i) {
    Point candidate = good.sample(rng);
    const double ratio = good.log_density(candidate) - bad.log_density(candidate);
    if (ratio > best || i == 0) {
      best = ratio;
      best_index = i;
    }
    proposal.candidates.push_back(std::move(candidate));
    proposal.log_ratios.push_back(ratio);
  }
  proposal.point = proposal.candidates[best_index];
  return proposal;
}

}  // namespace gnas
