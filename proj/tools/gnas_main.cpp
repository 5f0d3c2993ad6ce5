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

// Command-line front end: search, baseline, eval, resume, gen-sbm.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gnas/config.hpp"
#include "gnas/error.hpp"
#include "gnas/graph_data.hpp"
#include "gnas/search.hpp"
#include "gnas/trainer.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIngestion = 3;
constexpr int kExitBudget = 4;

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  bool no_bgtm = false;
  bool no_adaptive = false;
  bool restricted = false;
  std::string out = "gnas-out";
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "JSON config file");
  cmd->add_option("--seed", f.seed, "run seed");
  cmd->add_option("--workers", f.workers, "parallel fitness evaluations")->check(CLI::PositiveNumber);
  cmd->add_flag("--no-bgtm", f.no_bgtm, "keep hyperparameters at the space midpoint");
  cmd->add_flag("--no-adaptive", f.no_adaptive, "pin the exploitation stage parameters");
  cmd->add_flag("--restricted-space", f.restricted, "restrict genes to gcn and relu");
  cmd->add_option("--out", f.out, "output directory");
}

gnas::SearchConfig resolve(const CommonFlags& f) {
  gnas::SearchConfig cfg = f.config.empty() ? gnas::SearchConfig{} : gnas::load_config(f.config);
  if (f.seed) cfg.seed = *f.seed;
  if (f.workers) cfg.workers = *f.workers;
  if (f.no_bgtm) cfg.ablation.disable_bgtm = true;
  if (f.no_adaptive) cfg.ablation.disable_adaptive = true;
  if (f.restricted) cfg.ablation.restricted_search_space = true;
  cfg.validate();
  return cfg;
}

int write_outputs(const gnas::SearchResult& result, const fs::path& out) {
  fs::create_directories(out);
  gnas::write_convergence_csv(result, out / "convergence.csv");
  gnas::write_trials_csv(result, out / "trials.csv");
  gnas::write_result_json(result, out / "result.json");
  std::cout << gnas::result_json(result) << "\n";
  if (result.budget_exhausted) {
    std::cerr << "evaluation budget exhausted; reporting the best result so far\n";
    return kExitBudget;
  }
  return kExitOk;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw gnas::ConfigError("cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::vector<std::size_t> parse_blocks(const std::string& text) {
  std::vector<std::size_t> blocks;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size() || v <= 0) throw std::invalid_argument(item);
      blocks.push_back(static_cast<std::size_t>(v));
    } catch (const std::logic_error&) {
      throw gnas::ConfigError("--blocks expects comma-separated positive sizes, got '" + text + "'");
    }
  }
  if (blocks.empty()) throw gnas::ConfigError("--blocks is empty");
  return blocks;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evolutionary GNN architecture search with periodic hyperparameter tuning"};
  app.require_subcommand(1);

  CommonFlags search_flags;
  auto* search = app.add_subcommand("search", "run the full search");
  add_common(search, search_flags);
  std::optional<std::size_t> stop_after;
  search->add_option("--stop-after", stop_after, "checkpoint and stop after this generation");

  CommonFlags baseline_flags;
  auto* baseline = app.add_subcommand("baseline", "budget-matched random search");
  add_common(baseline, baseline_flags);
  std::optional<std::size_t> budget;
  std::string match;
  baseline->add_option("--budget", budget, "number of random genomes")->check(CLI::PositiveNumber);
  baseline->add_option("--match", match, "result.json whose evaluation count sets the budget");

  CommonFlags eval_flags;
  auto* eval = app.add_subcommand("eval", "train and score one genome");
  add_common(eval, eval_flags);
  std::string genome_text;
  std::string hparams_path;
  eval->add_option("--genome", genome_text, "genome string, e.g. P1-T1-P1-T1")->required();
  eval->add_option("--hparams", hparams_path, "JSON hyperparameters (defaults: space midpoint)");

  auto* resume = app.add_subcommand("resume", "continue a checkpointed search");
  std::string checkpoint;
  std::optional<std::size_t> resume_workers;
  std::string resume_out;
  resume->add_option("checkpoint", checkpoint, "checkpoint.json")->required();
  resume->add_option("--workers", resume_workers, "parallel fitness evaluations")->check(CLI::PositiveNumber);
  resume->add_option("--out", resume_out, "output directory (default: the checkpoint's)");

  auto* gen = app.add_subcommand("gen-sbm", "write a stochastic block model dataset");
  gnas::SbmParams sbm{{75, 75, 75, 75}, 0.08, 0.005, 16, 0.5, 0.25, 0};
  std::string blocks = "75,75,75,75";
  std::string gen_out = "sbm";
  gen->add_option("--blocks", blocks, "comma-separated block sizes");
  gen->add_option("--p-in", sbm.p_in)->check(CLI::Range(0.0, 1.0));
  gen->add_option("--p-out", sbm.p_out)->check(CLI::Range(0.0, 1.0));
  gen->add_option("--feature-dim", sbm.feature_dim);
  gen->add_option("--noise", sbm.noise)->check(CLI::NonNegativeNumber);
  gen->add_option("--signal", sbm.signal);
  gen->add_option("--seed", sbm.seed);
  gen->add_option("--out", gen_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*search) {
      const auto cfg = resolve(search_flags);
      gnas::RunOptions options;
      options.checkpoint_dir = fs::path(search_flags.out);
      options.stop_after_generation = stop_after;
      return write_outputs(gnas::run_search(cfg, options), search_flags.out);
    }
    if (*baseline) {
      const auto cfg = resolve(baseline_flags);
      std::size_t n = 0;
      if (budget) {
        n = *budget;
      } else if (!match.empty()) {
        const auto doc = nlohmann::json::parse(read_file(match), nullptr, false);
        if (doc.is_discarded() || !doc.contains("evaluations")) {
          throw gnas::ConfigError(match + " has no evaluation count");
        }
        n = doc["evaluations"].get<std::size_t>();
      } else {
        throw gnas::ConfigError("baseline needs --budget or --match");
      }
      return write_outputs(gnas::run_random_baseline(cfg, n), baseline_flags.out);
    }
    if (*eval) {
      const auto cfg = resolve(eval_flags);
      const auto genome = gnas::Genome::parse(genome_text);
      if (!cfg.bounds.contains(genome.size())) {
        throw gnas::ConfigError("genome length is outside the configured bounds");
      }
      const auto defaults = cfg.space.midpoint();
      const auto hp = hparams_path.empty() ? defaults
                                           : gnas::parse_hyperparams(read_file(hparams_path), defaults);
      const auto ds = gnas::build_dataset(cfg.dataset);
      const auto adj = gnas::normalize_adjacency(ds);
      const auto plan =
          gnas::compile(genome, hp, ds.feature_dim(), static_cast<std::size_t>(ds.n_classes));
      const auto model = gnas::train(plan, ds, adj, hp, cfg.training,
                                     gnas::evaluation_seed(genome, hp, cfg.seed));
      const fs::path out = eval_flags.out;
      fs::create_directories(out);
      {
        std::ofstream trace(out / "trace.csv");
        gnas::write_trace_csv(model, trace);
      }
      gnas::save_parameters(model.parameters, out / "params.bin");
      const double test =
          model.diverged ? 0.0
                         : gnas::evaluate_macro_f1(plan, model.parameters, ds, adj, ds.test_nodes());
      nlohmann::json summary = {
          {"genome", genome.to_string()},
          {"hyperparams", nlohmann::json::parse(gnas::hyperparams_to_json(hp))},
          {"validation_fitness", model.diverged ? 0.0 : model.best_val_macro_f1},
          {"test_macro_f1", test},
          {"best_epoch", model.best_epoch},
          {"epochs", model.trace.size()},
          {"parameter_count", plan.parameter_count()},
          {"diverged", model.diverged}};
      std::ofstream(out / "result.json") << summary.dump(2) << "\n";
      std::cout << summary.dump(2) << "\n";
      return kExitOk;
    }
    if (*resume) {
      auto cfg = gnas::checkpoint_config(checkpoint);
      if (resume_workers) cfg.workers = *resume_workers;
      const fs::path out = resume_out.empty() ? fs::path(checkpoint).parent_path() : fs::path(resume_out);
      gnas::RunOptions options;
      options.checkpoint_dir = out;
      return write_outputs(gnas::resume_search(checkpoint, cfg, options), out);
    }
    if (*gen) {
      sbm.blocks = parse_blocks(blocks);
      if (sbm.feature_dim < sbm.blocks.size()) {
        throw gnas::ConfigError("--feature-dim must be at least the number of blocks");
      }
      gnas::write_dataset(gnas::generate_sbm(sbm), gen_out);
      std::cout << "wrote " << gen_out << "/{edges.txt,features.csv,labels.csv}\n";
      return kExitOk;
    }
  } catch (const gnas::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const gnas::IngestionError& e) {
    std::cerr << "ingestion error: " << e.what() << "\n";
    return kExitIngestion;
  } catch (const gnas::SplitError& e) {
    std::cerr << "ingestion error: " << e.what() << "\n";
    return kExitIngestion;
  } catch (const gnas::CheckpointError& e) {
    std::cerr << "checkpoint error: " << e.what() << "\n";
    return kExitIngestion;
  } catch (const gnas::BudgetExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
