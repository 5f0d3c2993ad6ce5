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

#include "gnas/genome.hpp"

#include <algorithm>
#include <charconv>

#include "gnas/error.hpp"

namespace gnas {

namespace {

constexpr std::string_view kPropagateNames[kNumPropagateOps] = {"gcn", "sage_mean", "sage_max",
                                                                "sage_sum"};
constexpr std::string_view kTransformNames[kNumTransformOps] = {
    "relu", "linear", "elu", "sigmoid", "tanh", "relu6", "softplus", "leaky_relu"};

}  // namespace

std::string_view propagate_name(PropagateOp op) {
  return kPropagateNames[static_cast<std::size_t>(op)];
}

std::string_view transform_name(TransformOp op) {
  return kTransformNames[static_cast<std::size_t>(op)];
}

bool OperationGene::valid() const {
  return is_propagate() ? variant < kNumPropagateOps : variant < kNumTransformOps;
}

std::string OperationGene::token() const {
  return (is_propagate() ? "P" : "T") + std::to_string(variant + 1);
}

OperationGene OperationGene::parse(std::string_view token) {
  if (token.size() < 2 || (token[0] != 'P' && token[0] != 'T') || token[1] == '0') {
    throw ConfigError("unknown operation token '" + std::string(token) + "'");
  }
  unsigned index = 0;
  const char* first = token.data() + 1;
  const char* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, index);
  if (ec != std::errc() || ptr != last || index == 0) {
    throw ConfigError("unknown operation token '" + std::string(token) + "'");
  }
  OperationGene gene{token[0] == 'P' ? OpKind::kPropagate : OpKind::kTransform,
                     static_cast<std::uint8_t>(std::min(index - 1, 255u))};
  if (!gene.valid()) throw ConfigError("operation index out of range in '" + std::string(token) + "'");
  return gene;
}

void GenomeBounds::validate() const {
  if (min_length < 1 || max_length < min_length) {
    throw ConfigError("genome length bounds must satisfy 1 <= min <= max (got [" +
                      std::to_string(min_length) + ", " + std::to_string(max_length) + "])");
  }
}

GeneAlphabet::GeneAlphabet(std::vector<OperationGene> genes) : genes_(std::move(genes)) {
  if (genes_.empty()) throw ConfigError("gene alphabet must not be empty");
  for (const auto& gene : genes_) {
    if (!gene.valid()) throw ConfigError("gene alphabet contains an invalid gene");
  }
}

GeneAlphabet GeneAlphabet::full() {
  std::vector<OperationGene> genes;
  for (std::size_t i = 0; i < kNumPropagateOps; ++i) {
    genes.push_back({OpKind::kPropagate, static_cast<std::uint8_t>(i)});
  }
  for (std::size_t i = 0; i < kNumTransformOps; ++i) {
    genes.push_back({OpKind::kTransform, static_cast<std::uint8_t>(i)});
  }
  return GeneAlphabet(std::move(genes));
}

GeneAlphabet GeneAlphabet::restricted() {
  return GeneAlphabet({OperationGene::propagate(PropagateOp::kGcn),
                       OperationGene::transform(TransformOp::kRelu)});
}

std::optional<std::size_t> GeneAlphabet::index_of(const OperationGene& gene) const {
  const auto it = std::find(genes_.begin(), genes_.end(), gene);
  if (it == genes_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - genes_.begin());
}

OperationGene GeneAlphabet::draw(RandomSource& rng) const {
  return genes_[rng.below(genes_.size())];
}

std::size_t Genome::transform_count() const {
  return static_cast<std::size_t>(
      std::count_if(genes_.begin(), genes_.end(), [](const auto& g) { return !g.is_propagate(); }));
}

std::string Genome::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < genes_.size(); ++i) {
    if (i > 0) out += '-';
    out += genes_[i].token();
  }
  return out;
}

Genome Genome::parse(std::string_view text) {
  std::vector<OperationGene> genes;
  std::size_t start = 0;
  while (true) {
    const std::size_t dash = text.find('-', start);
    const std::string_view token =
        text.substr(start, dash == std::string_view::npos ? std::string_view::npos : dash - start);
    genes.push_back(OperationGene::parse(token));
    if (dash == std::string_view::npos) break;
    start = dash + 1;
  }
  return Genome(std::move(genes));
}

Genome random_genome(RandomSource& rng, const GenomeBounds& bounds, const GeneAlphabet& alphabet) {
  bounds.validate();
  const std::size_t span = bounds.max_length - bounds.min_length + 1;
  const std::size_t length = bounds.min_length + rng.below(span);
  std::vector<OperationGene> genes;
  genes.reserve(length);
  for (std::size_t i = 0; i < length; ++i) genes.push_back(alphabet.draw(rng));
  return Genome(std::move(genes));
}

Genome insert_gene(const Genome& genome, std::size_t position, OperationGene gene) {
  std::vector<OperationGene> genes(genome.begin(), genome.end());
  genes.insert(genes.begin() + static_cast<std::ptrdiff_t>(position), gene);
  return Genome(std::move(genes));
}

Genome remove_gene(const Genome& genome, std::size_t position) {
  std::vector<OperationGene> genes(genome.begin(), genome.end());
  genes.erase(genes.begin() + static_cast<std::ptrdiff_t>(position));
  return Genome(std::move(genes));
}

Genome exchange_genes(const Genome& genome, std::size_t i, std::size_t j) {
  std::vector<OperationGene> genes(genome.begin(), genome.end());
  std::swap(genes[i], genes[j]);
  return Genome(std::move(genes));
}

Genome alter_gene(const Genome& genome, std::size_t position, OperationGene gene) {
  std::vector<OperationGene> genes(genome.begin(), genome.end());
  genes[position] = gene;
  return Genome(std::move(genes));
}

CrossoverResult crossover_at(const Genome& a, const Genome& b, std::size_t cut_a,
                             std::size_t cut_b) {
  const auto ga = a.genes();
  const auto gb = b.genes();
  std::vector<OperationGene> first(ga.begin(), ga.begin() + static_cast<std::ptrdiff_t>(cut_a));
  first.insert(first.end(), gb.begin() + static_cast<std::ptrdiff_t>(cut_b), gb.end());
  std::vector<OperationGene> second(gb.begin(), gb.begin() + static_cast<std::ptrdiff_t>(cut_b));
  second.insert(second.end(), ga.begin() + static_cast<std::ptrdiff_t>(cut_a), ga.end());
  return {Genome(std::move(first)), Genome(std::move(second)), true};
}

CrossoverResult crossover_single_point(const Genome& a, const Genome& b, RandomSource& rng,
                                       const GenomeBounds& bounds) {
  if (a.size() < 2 || b.size() < 2) return {a, b, false};
  for (int attempt = 0; attempt < kMaxRepairAttempts; ++attempt) {
    const std::size_t cut_a = 1 + rng.below(a.size() - 1);
    const std::size_t cut_b = 1 + rng.below(b.size() - 1);
    const std::size_t len_first = cut_a + (b.size() - cut_b);
    const std::size_t len_second = cut_b + (a.size() - cut_a);
    if (bounds.contains(len_first) && bounds.contains(len_second)) {
      return crossover_at(a, b, cut_a, cut_b);
    }
  }
  return {a, b, false};
}

MutationResult mutate(const Genome& genome, RandomSource& rng, const GenomeBounds& bounds,
                      const GeneAlphabet& alphabet) {
  const std::size_t n = genome.size();
  for (int attempt = 0; attempt < kMaxRepairAttempts; ++attempt) {
    const auto kind = static_cast<MutationKind>(rng.below(4));
    switch (kind) {
      case MutationKind::kAdd: {
        if (!bounds.contains(n + 1)) continue;
        const std::size_t position = rng.below(n + 1);
        return {insert_gene(genome, position, alphabet.draw(rng)), kind};
      }
      case MutationKind::kRemove: {
        if (n == 0 || !bounds.contains(n - 1)) continue;
        return {remove_gene(genome, rng.below(n)), kind};
      }
      case MutationKind::kExchange: {
        if (n < 2) continue;
        const std::size_t i = rng.below(n);
        std::size_t j = rng.below(n - 1);
        if (j >= i) ++j;
        return {exchange_genes(genome, i, j), kind};
      }
      case MutationKind::kAlter: {
        if (n == 0) continue;
        const std::size_t position = rng.below(n);
        const auto current = alphabet.index_of(genome[position]);
        if (!current) return {alter_gene(genome, position, alphabet.draw(rng)), kind};
        if (alphabet.size() < 2) continue;
        std::size_t pick = rng.below(alphabet.size() - 1);
        if (pick >= *current) ++pick;
        return {alter_gene(genome, position, alphabet[pick]), kind};
      }
    }
  }
  return {genome, std::nullopt};
}

}  // namespace gnas
