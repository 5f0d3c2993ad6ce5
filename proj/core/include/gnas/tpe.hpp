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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gnas/random.hpp"

namespace gnas {

// One tunable scalar. Log-scale dimensions are modeled in log space;
// integer dimensions are rounded in natural space.
struct Dimension {
  std::string name;
  double lower = 0.0;
  double upper = 1.0;
  bool log_scale = false;
  bool integer = false;

  void validate() const;
  double to_internal(double value) const;
  double from_internal(double internal) const;
  double internal_lower() const { return to_internal(lower); }
  double internal_upper() const { return to_internal(upper); }
  // Rounds integer dimensions and clamps into [lower, upper].
  double snap(double value) const;
};

using Point = std::vector<double>;  // natural coordinates, one per dimension

class SearchSpace {
 public:
  SearchSpace() = default;
  explicit SearchSpace(std::vector<Dimension> dims);

  std::size_t size() const { return dims_.size(); }
  const Dimension& operator[](std::size_t i) const { return dims_[i]; }
  std::span<const Dimension> dimensions() const { return dims_; }

  bool contains(const Point& point) const;
  // Centre of every dimension in internal coordinates, snapped.
  Point midpoint() const;
  // Uniform in internal coordinates (log-uniform for log dimensions).
  Point sample_prior(RandomSource& rng) const;

 private:
  std::vector<Dimension> dims_;
};

struct Trial {
  Point point;
  double objective = 0.0;
};

using TrialHistory = std::vector<Trial>;

struct HistorySplit {
  std::vector<Trial> good;
  std::vector<Trial> bad;
  double threshold = 0.0;  // y*
};

// Maximization split: y* is the ceil(gamma * n)-th largest objective and
// every trial with objective >= y* is good. Requires at least 2 trials.
HistorySplit split_history(std::span<const Trial> history, double gamma);

// Product of per-dimension truncated-Gaussian kernel density estimates in
// internal coordinates. With no observations the estimator is the uniform
// prior over the box.
class ParzenEstimator {
 public:
  ParzenEstimator(std::span<const Trial> observations, const SearchSpace& space);

  double log_density(const Point& point) const;
  // Density of dimension `d` at an internal coordinate.
  double marginal_density(std::size_t d, double internal) const;
  // Draws a kernel uniformly, then a truncated normal inside the bounds.
  Point sample(RandomSource& rng) const;

  bool is_uniform() const { return centers_.empty(); }
  std::span<const double> bandwidths() const { return bandwidths_; }

  // Scott-style bandwidth, clipped to [range / min(100, n + 1), range].
  static double bandwidth(std::span<const double> centers, double range);

 private:
  const SearchSpace* space_;
  std::vector<std::vector<double>> centers_;  // [observation][dim], internal
  std::vector<double> bandwidths_;            // per dim
};

struct TpeOptions {
  double gamma = 0.25;
  std::size_t n_candidates = 24;
  std::size_t n_startup = 5;
};

struct Proposal {
  Point point;
  bool from_prior = false;
  std::vector<Point> candidates;
  std::vector<double> log_ratios;  // log l(x) - log g(x), aligned with candidates
};

// Below `n_startup` observations, a prior draw. Otherwise draws
// `n_candidates` snapped samples from l(x) and returns the one with the
// largest l(x)/g(x); ties go to the earliest candidate.
Proposal propose(std::span<const Trial> history, const SearchSpace& space,
                 const TpeOptions& options, RandomSource& rng);

}  // namespace gnas
