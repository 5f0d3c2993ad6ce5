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

#include "gnas/config.hpp"

#include <concepts>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gnas/error.hpp"

namespace gnas {
namespace {

using nlohmann::json;

// A JSON object whose keys must all be consumed.
class Section {
 public:
  Section(const json* node, std::string path) : node_(node), path_(std::move(path)) {
    if (node_ && !node_->is_object()) throw ConfigError(path_ + " must be an object");
  }

  const json* find(const std::string& key) {
    if (!node_) return nullptr;
    auto it = node_->find(key);
    if (it == node_->end()) return nullptr;
    used_.insert(key);
    return &*it;
  }

  Section child(const std::string& key) { return Section(find(key), at(key)); }

  void read(const std::string& key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) throw ConfigError(at(key) + " must be a number");
      out = v->get<double>();
    }
  }
  template <std::unsigned_integral T>
  void read(const std::string& key, T& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_unsigned()) throw ConfigError(at(key) + " must be a non-negative integer");
      out = v->get<T>();
    }
  }
  void read(const std::string& key, bool& out) {
    if (const json* v = find(key)) {
      if (!v->is_boolean()) throw ConfigError(at(key) + " must be true or false");
      out = v->get<bool>();
    }
  }
  void read(const std::string& key, std::optional<std::filesystem::path>& out) {
    if (const json* v = find(key)) {
      if (v->is_null()) {
        out.reset();
        return;
      }
      if (!v->is_string()) throw ConfigError(at(key) + " must be a path string");
      out = v->get<std::string>();
    }
  }
  void read(const std::string& key, std::optional<std::size_t>& out) {
    if (const json* v = find(key)) {
      if (v->is_null()) {
        out.reset();
        return;
      }
      if (!v->is_number_unsigned()) throw ConfigError(at(key) + " must be a non-negative integer");
      out = v->get<std::size_t>();
    }
  }

  void finish() const {
    if (!node_) return;
    for (const auto& [key, value] : node_->items()) {
      if (!used_.contains(key)) throw ConfigError("unknown key " + at(key));
    }
  }

 private:
  std::string at(const std::string& key) const {
    return path_.empty() ? "'" + key + "'" : "'" + path_ + "." + key + "'";
  }

  const json* node_;
  std::string path_;
  std::set<std::string> used_;
};

void read_stage(Section section, StageParams& params) {
  section.read("tournament_size", params.tournament_size);
  section.read("crossover_prob", params.crossover_prob);
  section.read("mutation_prob", params.mutation_prob);
  section.finish();
}

void read_dimension(Section section, Dimension& dim) {
  section.read("lower", dim.lower);
  section.read("upper", dim.upper);
  section.finish();
}

json stage_json(const StageParams& p) {
  return {{"tournament_size", p.tournament_size},
          {"crossover_prob", p.crossover_prob},
          {"mutation_prob", p.mutation_prob}};
}

json dimension_json(const Dimension& d) { return {{"lower", d.lower}, {"upper", d.upper}}; }

json path_json(const std::optional<std::filesystem::path>& p) {
  return p ? json(p->string()) : json(nullptr);
}

json to_json(const SearchConfig& c) {
  const auto& ds = c.dataset;
  json j;
  j["dataset"] = {
      {"edges", path_json(ds.edge_file)},
      {"features", path_json(ds.feature_file)},
      {"labels", path_json(ds.label_file)},
      {"sbm",
       {{"blocks", ds.sbm.blocks},
        {"p_in", ds.sbm.p_in},
        {"p_out", ds.sbm.p_out},
        {"feature_dim", ds.sbm.feature_dim},
        {"noise", ds.sbm.noise},
        {"signal", ds.sbm.signal},
        {"seed", ds.sbm.seed}}},
      {"splits", {{"train", ds.splits.train}, {"val", ds.splits.val}, {"test", ds.splits.test}}},
      {"split_seed", ds.split_seed},
  };
  j["search"] = {
      {"population_size", c.population_size},
      {"generations", c.generations},
      {"tuning_interval", c.tuning_interval},
      {"min_length", c.bounds.min_length},
      {"max_length", c.bounds.max_length},
      {"lambda", c.lambda},
      {"alpha", c.alpha},
      {"delta_mode", c.delta_mode == DeltaMode::kMeanFitness ? "mean" : "improvement"},
      {"seed", c.seed},
      {"workers", c.workers},
      {"evaluation_budget", c.evaluation_budget ? json(*c.evaluation_budget) : json(nullptr)},
  };
  j["stages"] = {{"exploration", stage_json(c.schedule.exploration)},
                 {"exploitation", stage_json(c.schedule.exploitation)}};
  j["hyperparameters"] = {
      {"hidden_dim", dimension_json(c.space.hidden_dim)},
      {"forward_dropout", dimension_json(c.space.forward_dropout)},
      {"middle_dropout", dimension_json(c.space.middle_dropout)},
      {"overall_dropout", dimension_json(c.space.overall_dropout)},
      {"learning_rate", dimension_json(c.space.learning_rate)},
      {"weight_decay", dimension_json(c.space.weight_decay)},
  };
  j["tpe"] = {{"gamma", c.tpe.gamma},
              {"n_candidates", c.tpe.n_candidates},
              {"n_startup", c.tpe.n_startup},
              {"trials", c.tuning_trials}};
  j["training"] = {{"max_epochs", c.training.max_epochs}, {"patience", c.training.patience}};
  j["ablation"] = {{"disable_bgtm", c.ablation.disable_bgtm},
                   {"disable_adaptive", c.ablation.disable_adaptive},
                   {"restricted_search_space", c.ablation.restricted_search_space}};
  return j;
}

}  // namespace

SearchConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  SearchConfig c;
  Section root(&doc, "");

  {
    auto& ds = c.dataset;
    Section s = root.child("dataset");
    s.read("edges", ds.edge_file);
    s.read("features", ds.feature_file);
    s.read("labels", ds.label_file);
    {
      Section sbm = s.child("sbm");
      if (const json* blocks = sbm.find("blocks")) {
        if (!blocks->is_array()) throw ConfigError("'dataset.sbm.blocks' must be an array");
        ds.sbm.blocks.clear();
        for (const auto& b : *blocks) {
          if (!b.is_number_unsigned()) {
            throw ConfigError("'dataset.sbm.blocks' entries must be non-negative integers");
          }
          ds.sbm.blocks.push_back(b.get<std::size_t>());
        }
      }
      sbm.read("p_in", ds.sbm.p_in);
      sbm.read("p_out", ds.sbm.p_out);
      sbm.read("feature_dim", ds.sbm.feature_dim);
      sbm.read("noise", ds.sbm.noise);
      sbm.read("signal", ds.sbm.signal);
      sbm.read("seed", ds.sbm.seed);
      sbm.finish();
    }
    {
      Section sp = s.child("splits");
      sp.read("train", ds.splits.train);
      sp.read("val", ds.splits.val);
      sp.read("test", ds.splits.test);
      sp.finish();
    }
    s.read("split_seed", ds.split_seed);
    s.finish();
  }
  {
    Section s = root.child("search");
    s.read("population_size", c.population_size);
    s.read("generations", c.generations);
    s.read("tuning_interval", c.tuning_interval);
    s.read("min_length", c.bounds.min_length);
    s.read("max_length", c.bounds.max_length);
    s.read("lambda", c.lambda);
    s.read("alpha", c.alpha);
    if (const json* mode = s.find("delta_mode")) {
      if (*mode == "mean") {
        c.delta_mode = DeltaMode::kMeanFitness;
      } else if (*mode == "improvement") {
        c.delta_mode = DeltaMode::kImprovement;
      } else {
        throw ConfigError("'search.delta_mode' must be \"mean\" or \"improvement\"");
      }
    }
    s.read("seed", c.seed);
    s.read("workers", c.workers);
    s.read("evaluation_budget", c.evaluation_budget);
    s.finish();
  }
  {
    Section s = root.child("stages");
    read_stage(s.child("exploration"), c.schedule.exploration);
    read_stage(s.child("exploitation"), c.schedule.exploitation);
    s.finish();
  }
  {
    Section s = root.child("hyperparameters");
    read_dimension(s.child("hidden_dim"), c.space.hidden_dim);
    read_dimension(s.child("forward_dropout"), c.space.forward_dropout);
    read_dimension(s.child("middle_dropout"), c.space.middle_dropout);
    read_dimension(s.child("overall_dropout"), c.space.overall_dropout);
    read_dimension(s.child("learning_rate"), c.space.learning_rate);
    read_dimension(s.child("weight_decay"), c.space.weight_decay);
    s.finish();
  }
  {
    Section s = root.child("tpe");
    s.read("gamma", c.tpe.gamma);
    s.read("n_candidates", c.tpe.n_candidates);
    s.read("n_startup", c.tpe.n_startup);
    s.read("trials", c.tuning_trials);
    s.finish();
  }
  {
    Section s = root.child("training");
    s.read("max_epochs", c.training.max_epochs);
    s.read("patience", c.training.patience);
    s.finish();
  }
  {
    Section s = root.child("ablation");
    s.read("disable_bgtm", c.ablation.disable_bgtm);
    s.read("disable_adaptive", c.ablation.disable_adaptive);
    s.read("restricted_search_space", c.ablation.restricted_search_space);
    s.finish();
  }
  root.finish();
  c.validate();
  return c;
}

SearchConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string config_to_json(const SearchConfig& config) { return to_json(config).dump(2); }

std::string SearchConfig::hash() const {
  json j = to_json(*this);
  j["search"].erase("workers");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(j.dump())));
  return buf;
}

HyperparamConfig parse_hyperparams(const std::string& text, const HyperparamConfig& defaults) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("hyperparameters are not valid JSON: ") + e.what());
  }
  HyperparamConfig hp = defaults;
  Section s(&doc, "");
  double hidden = hp.hidden_dim;
  s.read("hidden_dim", hidden);
  if (hidden != static_cast<int>(hidden) || hidden < 1) {
    throw ConfigError("'hidden_dim' must be a positive integer");
  }
  hp.hidden_dim = static_cast<int>(hidden);
  s.read("forward_dropout", hp.forward_dropout);
  s.read("middle_dropout", hp.middle_dropout);
  s.read("overall_dropout", hp.overall_dropout);
  s.read("learning_rate", hp.learning_rate);
  s.read("weight_decay", hp.weight_decay);
  s.finish();
  for (double rate : {hp.forward_dropout, hp.middle_dropout, hp.overall_dropout}) {
    if (!(rate >= 0.0 && rate < 1.0)) throw ConfigError("dropout rates must lie in [0, 1)");
  }
  if (!(hp.learning_rate >= 0.0) || !(hp.weight_decay >= 0.0)) {
    throw ConfigError("learning_rate and weight_decay must be non-negative");
  }
  return hp;
}

std::string hyperparams_to_json(const HyperparamConfig& hp) {
  const json j = {{"hidden_dim", hp.hidden_dim},
                  {"forward_dropout", hp.forward_dropout},
                  {"middle_dropout", hp.middle_dropout},
                  {"overall_dropout", hp.overall_dropout},
                  {"learning_rate", hp.learning_rate},
                  {"weight_decay", hp.weight_decay}};
  return j.dump(2);
}

}  // namespace gnas
