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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gnas/random.hpp"

namespace gnas {

enum class OpKind : std::uint8_t { kPropagate, kTransform };

// Propagation (aggregation) variants, in catalog order.
enum class PropagateOp : std::uint8_t { kGcn, kSageMean, kSageMax, kSageSum };

// Transformation activation variants, in catalog order.
enum class TransformOp : std::uint8_t {
  kRelu,
  kLinear,
  kElu,
  kSigmoid,
  kTanh,
  kRelu6,
  kSoftplus,
  kLeakyRelu,
};

inline constexpr std::size_t kNumPropagateOps = 4;
inline constexpr std::size_t kNumTransformOps = 8;

std::string_view propagate_name(PropagateOp op);
std::string_view transform_name(TransformOp op);

// One operation in a genome. `variant` is a 0-based catalog index; the
// textual token uses 1-based indices ("P1" is gcn, "T1" is relu).
struct OperationGene {
  OpKind kind = OpKind::kPropagate;
  std::uint8_t variant = 0;

  static OperationGene propagate(PropagateOp op) {
    return {OpKind::kPropagate, static_cast<std::uint8_t>(op)};
  }
  static OperationGene transform(TransformOp op) {
    return {OpKind::kTransform, static_cast<std::uint8_t>(op)};
  }

  bool is_propagate() const { return kind == OpKind::kPropagate; }
  PropagateOp propagate_op() const { return static_cast<PropagateOp>(variant); }
  TransformOp transform_op() const { return static_cast<TransformOp>(variant); }

  bool valid() const;
  std::string token() const;
  // Throws ConfigError for anything but an uppercase P/T token with an
  // in-range 1-based index.
  static OperationGene parse(std::string_view token);

  auto operator<=>(const OperationGene&) const = default;
};

struct GenomeBounds {
  std::size_t min_length = 3;
  std::size_t max_length = 15;

  // Throws ConfigError unless 1 <= min_length <= max_length.
  void validate() const;
  bool contains(std::size_t length) const {
    return length >= min_length && length <= max_length;
  }
};

// The set of genes random draws are taken from. The full alphabet has
// 4 + 8 = 12 entries; ablation runs shrink it.
class GeneAlphabet {
 public:
  GeneAlphabet() = default;
  explicit GeneAlphabet(std::vector<OperationGene> genes);

  static GeneAlphabet full();
  // gcn + relu only.
  static GeneAlphabet restricted();

  std::size_t size() const { return genes_.size(); }
  const OperationGene& operator[](std::size_t i) const { return genes_[i]; }
  std::span<const OperationGene> genes() const { return genes_; }
  std::optional<std::size_t> index_of(const OperationGene& gene) const;
  bool contains(const OperationGene& gene) const { return index_of(gene).has_value(); }

  OperationGene draw(RandomSource& rng) const;

  bool operator==(const GeneAlphabet&) const = default;

 private:
  std::vector<OperationGene> genes_;
};

// A variable-length sequence of propagation/transformation genes.
class Genome {
 public:
  Genome() = default;
  explicit Genome(std::vector<OperationGene> genes) : genes_(std::move(genes)) {}

  std::size_t size() const { return genes_.size(); }
  bool empty() const { return genes_.empty(); }
  const OperationGene& operator[](std::size_t i) const { return genes_[i]; }
  std::span<const OperationGene> genes() const { return genes_; }
  auto begin() const { return genes_.begin(); }
  auto end() const { return genes_.end(); }

  std::size_t transform_count() const;

  // Canonical "P3-T4-P1-T2" form.
  std::string to_string() const;
  // Inverse of to_string(). Throws ConfigError on unknown or empty tokens.
  static Genome parse(std::string_view text);

  bool operator==(const Genome&) const = default;

 private:
  std::vector<OperationGene> genes_;
};

Genome random_genome(RandomSource& rng, const GenomeBounds& bounds,
                     const GeneAlphabet& alphabet = GeneAlphabet::full());

// Explicit-position primitives. They do not check length bounds.
Genome insert_gene(const Genome& genome, std::size_t position, OperationGene gene);
Genome remove_gene(const Genome& genome, std::size_t position);
Genome exchange_genes(const Genome& genome, std::size_t i, std::size_t j);
Genome alter_gene(const Genome& genome, std::size_t position, OperationGene gene);

struct CrossoverResult {
  Genome first;
  Genome second;
  // False when the parents were returned unchanged (too short, or no cut
  // pair kept both offspring inside the length bounds).
  bool applied = false;
};

// Swaps the tails after `cut_a` genes of `a` and `cut_b` genes of `b`.
CrossoverResult crossover_at(const Genome& a, const Genome& b, std::size_t cut_a,
                             std::size_t cut_b);

// Independent uniform cut in [1, len - 1] per parent; redrawn up to
// kMaxRepairAttempts times when an offspring falls outside `bounds`.
CrossoverResult crossover_single_point(const Genome& a, const Genome& b, RandomSource& rng,
                                       const GenomeBounds& bounds);

enum class MutationKind : std::uint8_t { kAdd, kRemove, kExchange, kAlter };

struct MutationResult {
  Genome genome;
  std::optional<MutationKind> kind;  // empty when every attempt was infeasible
};

// Draws one of the four mutation kinds uniformly and applies it. A kind
// that would leave the length bounds (or an Alter with no alternative
// gene) is redrawn up to kMaxRepairAttempts times; after that the input
// comes back unchanged.
MutationResult mutate(const Genome& genome, RandomSource& rng, const GenomeBounds& bounds,
                      const GeneAlphabet& alphabet = GeneAlphabet::full());

inline constexpr int kMaxRepairAttempts = 8;

}  // namespace gnas
