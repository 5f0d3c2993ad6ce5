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

#include "gnas/graph_data.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "gnas/error.hpp"
#include "gnas/random.hpp"

namespace gnas {

namespace {

[[noreturn]] void fail(const std::filesystem::path& file, std::size_t line, const std::string& what) {
  throw IngestionError(file.string() + ":" + std::to_string(line) + ": " + what);
}

std::ifstream open_input(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IngestionError(file.string() + ": cannot open file");
  return in;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool parse_long(std::string_view s, long& out) {
  s = trim(s);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  // std::from_chars for double is unavailable on older toolchains.
  std::string buffer(s);
  char* end = nullptr;
  out = std::strtod(buffer.c_str(), &end);
  return end == buffer.c_str() + buffer.size() && std::isfinite(out);
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                        : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace

std::vector<int> GraphDataset::indices(std::span<const std::uint8_t> mask) {
  std::vector<int> out;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<Edge> canonicalize_edges(std::span<const Edge> edges) {
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    out.emplace_back(u, v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

GraphDataset load_dataset(const std::filesystem::path& edge_file,
                          const std::filesystem::path& feature_file,
                          const std::filesystem::path& label_file) {
  GraphDataset ds;

  // Features fix the node count.
  {
    auto in = open_input(feature_file);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      strip_cr(line);
      if (is_blank(line)) continue;
      const auto fields = split_csv(line);
      std::vector<double> row;
      row.reserve(fields.size());
      for (const auto field : fields) {
        double value = 0.0;
        if (!parse_double(field, value)) fail(feature_file, lineno, "malformed feature value");
        row.push_back(value);
      }
      if (!rows.empty() && row.size() != rows.front().size()) {
        fail(feature_file, lineno,
             "row has " + std::to_string(row.size()) + " columns, expected " +
                 std::to_string(rows.front().size()));
      }
      rows.push_back(std::move(row));
    }
    if (rows.empty()) throw IngestionError(feature_file.string() + ": no feature rows");
    ds.n_nodes = rows.size();
    ds.features.resize(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < rows[i].size(); ++j) {
        ds.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
      }
    }
  }

  const long n = static_cast<long>(ds.n_nodes);

  {
    auto in = open_input(edge_file);
    std::vector<Edge> raw;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      strip_cr(line);
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      if (is_blank(line)) continue;
      std::istringstream fields(line);
      std::string a, b, extra;
      long u = 0, v = 0;
      if (!(fields >> a >> b) || (fields >> extra) || !parse_long(a, u) || !parse_long(b, v)) {
        fail(edge_file, lineno, "expected 'u v'");
      }
      if (u < 0 || u >= n || v < 0 || v >= n) {
        fail(edge_file, lineno, "node id out of range [0, " + std::to_string(n) + ")");
      }
      raw.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    ds.edges = canonicalize_edges(raw);
  }

  {
    auto in = open_input(label_file);
    ds.labels.assign(ds.n_nodes, kUnlabeled);
    std::string line;
    std::size_t lineno = 0;
    int max_label = -1;
    while (std::getline(in, line)) {
      ++lineno;
      strip_cr(line);
      if (is_blank(line)) continue;
      const auto fields = split_csv(line);
      long node = 0, label = 0;
      if (fields.size() != 2 || !parse_long(fields[0], node) || !parse_long(fields[1], label)) {
        if (lineno == 1 && line.find_first_of("0123456789") == std::string::npos) continue;  // header
        fail(label_file, lineno, "expected 'node_id,class_id'");
      }
      if (node < 0 || node >= n) {
        fail(label_file, lineno, "node id out of range [0, " + std::to_string(n) + ")");
      }
      if (label < 0) fail(label_file, lineno, "negative class id");
      if (ds.labels[static_cast<std::size_t>(node)] != kUnlabeled) {
        fail(label_file, lineno, "duplicate label for node " + std::to_string(node));
      }
      ds.labels[static_cast<std::size_t>(node)] = static_cast<int>(label);
      max_label = std::max(max_label, static_cast<int>(label));
    }
    if (max_label < 0) throw IngestionError(label_file.string() + ": no labels");
    ds.n_classes = max_label + 1;
  }
  return ds;
}

void write_dataset(const GraphDataset& ds, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "edges.txt");
    if (!out) throw IngestionError((dir / "edges.txt").string() + ": cannot write file");
    out << "# undirected edge list, one 'u v' pair per line\n";
    for (const auto& [u, v] : ds.edges) out << u << ' ' << v << '\n';
  }
  {
    std::ofstream out(dir / "features.csv");
    out.precision(17);
    for (Eigen::Index i = 0; i < ds.features.rows(); ++i) {
      for (Eigen::Index j = 0; j < ds.features.cols(); ++j) {
        if (j > 0) out << ',';
        out << ds.features(i, j);
      }
      out << '\n';
    }
  }
  {
    std::ofstream out(dir / "labels.csv");
    out << "node_id,class_id\n";
    for (std::size_t i = 0; i < ds.labels.size(); ++i) {
      if (ds.labels[i] != kUnlabeled) out << i << ',' << ds.labels[i] << '\n';
    }
  }
}

GraphDataset make_splits(GraphDataset ds, const SplitRatios& ratios, std::uint64_t seed) {
  std::vector<std::vector<int>> by_class(static_cast<std::size_t>(std::max(ds.n_classes, 0)));
  for (std::size_t i = 0; i < ds.labels.size(); ++i) {
    const int label = ds.labels[i];
    if (label != kUnlabeled) by_class[static_cast<std::size_t>(label)].push_back(static_cast<int>(i));
  }
  ds.train_mask.assign(ds.n_nodes, 0);
  ds.val_mask.assign(ds.n_nodes, 0);
  ds.test_mask.assign(ds.n_nodes, 0);

  const double total = ratios.train + ratios.val + ratios.test;
  Rng rng(seed);
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    auto& nodes = by_class[c];
    const std::size_t n = nodes.size();
    if (n < 3) {
      throw SplitError("class " + std::to_string(c) + " has " + std::to_string(n) +
                       " labeled nodes; at least 3 are required");
    }
    for (std::size_t i = n - 1; i > 0; --i) {
      std::swap(nodes[i], nodes[rng.below(i + 1)]);
    }
    std::size_t n_train = std::max<std::size_t>(1, static_cast<std::size_t>(
                                                       std::lround(ratios.train / total * n)));
    std::size_t n_val = std::max<std::size_t>(1, static_cast<std::size_t>(
                                                     std::lround(ratios.val / total * n)));
    while (n_train + n_val > n - 1) {
      if (n_train >= n_val && n_train > 1) {
        --n_train;
      } else {
        --n_val;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto node = static_cast<std::size_t>(nodes[i]);
      if (i < n_train) {
        ds.train_mask[node] = 1;
      } else if (i < n_train + n_val) {
        ds.val_mask[node] = 1;
      } else {
        ds.test_mask[node] = 1;
      }
    }
  }
  return ds;
}

GraphDataset generate_sbm(const SbmParams& params) {
  if (params.blocks.size() < 2) throw ConfigError("stochastic block model needs at least 2 blocks");
  if (!(params.p_in >= 0.0 && params.p_in <= 1.0) || !(params.p_out >= 0.0 && params.p_out <= 1.0)) {
    throw ConfigError("block-model probabilities must lie in [0, 1]");
  }
  if (params.feature_dim < params.blocks.size()) {
    throw ConfigError("feature dimension must be at least the block count for orthogonal means");
  }
  if (!(params.noise >= 0.0)) throw ConfigError("feature noise must be non-negative");

  GraphDataset ds;
  for (std::size_t b = 0; b < params.blocks.size(); ++b) {
    if (params.blocks[b] == 0) throw ConfigError("block sizes must be positive");
    ds.labels.insert(ds.labels.end(), params.blocks[b], static_cast<int>(b));
  }
  ds.n_nodes = ds.labels.size();
  ds.n_classes = static_cast<int>(params.blocks.size());

  Rng rng(params.seed);
  for (std::size_t u = 0; u < ds.n_nodes; ++u) {
    for (std::size_t v = u + 1; v < ds.n_nodes; ++v) {
      const double p = ds.labels[u] == ds.labels[v] ? params.p_in : params.p_out;
      if (rng.unit() < p) ds.edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
  }

  const auto n = static_cast<Eigen::Index>(ds.n_nodes);
  const auto f = static_cast<Eigen::Index>(params.feature_dim);
  ds.features.setZero(n, f);
  for (Eigen::Index i = 0; i < n; ++i) {
    ds.features(i, ds.labels[static_cast<std::size_t>(i)]) = params.signal;
    for (Eigen::Index j = 0; j < f; ++j) ds.features(i, j) += params.noise * rng.normal();
  }
  return ds;
}

NormalizedAdjacency normalize_adjacency(const GraphDataset& ds) {
  const std::size_t n = ds.n_nodes;
  NormalizedAdjacency adj;
  adj.neighbors.assign(n, {});
  for (const auto& [u, v] : ds.edges) {
    adj.neighbors[static_cast<std::size_t>(u)].push_back(v);
    adj.neighbors[static_cast<std::size_t>(v)].push_back(u);
  }
  std::vector<double> inv_sqrt(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& list = adj.neighbors[i];
    std::sort(list.begin(), list.end());
    inv_sqrt[i] = 1.0 / std::sqrt(static_cast<double>(list.size() + 1));
  }
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(n + 2 * ds.edges.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = static_cast<int>(i);
    triplets.emplace_back(row, row, inv_sqrt[i] * inv_sqrt[i]);
    for (const int j : adj.neighbors[i]) {
      triplets.emplace_back(row, j, inv_sqrt[i] * inv_sqrt[static_cast<std::size_t>(j)]);
    }
  }
  adj.matrix.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  adj.matrix.setFromTriplets(triplets.begin(), triplets.end());
  adj.matrix.makeCompressed();
  return adj;
}

}  // namespace gnas
