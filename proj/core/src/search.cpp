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

#include "gnas/search.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "gnas/config.hpp"
#include "gnas/error.hpp"
#include "gnas/tuning.hpp"

namespace gnas {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr const char* kCheckpointFormat = "gnas-checkpoint";
constexpr int kCheckpointVersion = 1;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Runs fn(i) for i in [0, n) on up to `workers` threads; rethrows the
// first error by index.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min(std::max<std::size_t>(workers, 1), n);
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

json hp_json(const HyperparamConfig& hp) {
  return {{"hidden_dim", hp.hidden_dim},
          {"forward_dropout", hp.forward_dropout},
          {"middle_dropout", hp.middle_dropout},
          {"overall_dropout", hp.overall_dropout},
          {"learning_rate", hp.learning_rate},
          {"weight_decay", hp.weight_decay}};
}

HyperparamConfig hp_from(const json& j) {
  HyperparamConfig hp;
  hp.hidden_dim = j.at("hidden_dim").get<int>();
  hp.forward_dropout = j.at("forward_dropout").get<double>();
  hp.middle_dropout = j.at("middle_dropout").get<double>();
  hp.overall_dropout = j.at("overall_dropout").get<double>();
  hp.learning_rate = j.at("learning_rate").get<double>();
  hp.weight_decay = j.at("weight_decay").get<double>();
  return hp;
}

Stage stage_from(const std::string& name) {
  if (name == stage_name(Stage::kExploration)) return Stage::kExploration;
  if (name == stage_name(Stage::kExploitation)) return Stage::kExploitation;
  throw CheckpointError("unknown stage '" + name + "'");
}

json log_json(const GenerationLog& r) {
  return {{"generation", r.generation},
          {"stage", std::string(stage_name(r.stage))},
          {"delta_fitness", r.delta_fitness},
          {"tournament_size", r.params.tournament_size},
          {"crossover_prob", r.params.crossover_prob},
          {"mutation_prob", r.params.mutation_prob},
          {"best_fitness", r.best_fitness},
          {"mean_fitness", r.mean_fitness},
          {"min_fitness", r.min_fitness},
          {"best_genome", r.best_genome},
          {"evaluations", r.evaluations},
          {"tuned", r.tuned},
          {"hyperparams", hp_json(r.hyperparams)},
          {"alphabet_size", r.alphabet_size},
          {"distinct_genes", r.distinct_genes}};
}

GenerationLog log_from(const json& j) {
  GenerationLog r;
  r.generation = j.at("generation").get<std::size_t>();
  r.stage = stage_from(j.at("stage").get<std::string>());
  r.delta_fitness = j.at("delta_fitness").get<double>();
  r.params.tournament_size = j.at("tournament_size").get<std::size_t>();
  r.params.crossover_prob = j.at("crossover_prob").get<double>();
  r.params.mutation_prob = j.at("mutation_prob").get<double>();
  r.best_fitness = j.at("best_fitness").get<double>();
  r.mean_fitness = j.at("mean_fitness").get<double>();
  r.min_fitness = j.at("min_fitness").get<double>();
  r.best_genome = j.at("best_genome").get<std::string>();
  r.evaluations = j.at("evaluations").get<std::size_t>();
  r.tuned = j.at("tuned").get<bool>();
  r.hyperparams = hp_from(j.at("hyperparams"));
  r.alphabet_size = j.at("alphabet_size").get<std::size_t>();
  r.distinct_genes = j.at("distinct_genes").get<std::size_t>();
  return r;
}

std::size_t distinct_genes(const Population& pop) {
  std::set<OperationGene> seen;
  for (const auto& g : pop.individuals) seen.insert(g.begin(), g.end());
  return seen.size();
}

// Everything a checkpoint needs to continue bit-identically.
struct SearchState {
  Population population;
  SwitchState switch_state;
  HyperparamConfig hp;
  TrialHistory history;
  Rng rng;
  std::map<std::string, double> cache;
  std::size_t evaluations = 0;
  std::vector<GenerationLog> convergence;
  std::vector<TuningLog> trials;
  double seconds = 0.0;
  bool budget_exhausted = false;
};

class SearchRun {
 public:
  SearchRun(const SearchConfig& config, const RunOptions& options)
      : config_(config),
        options_(options),
        dataset_(build_dataset(config.dataset)),
        adjacency_(normalize_adjacency(dataset_)),
        alphabet_(config.alphabet()),
        fitness_(options.fitness_override ? options.fitness_override : default_fitness()),
        evaluator_(fitness_, config.seed, config.workers, config.evaluation_budget),
        start_(Clock::now()) {}

  SearchResult start() {
    state_.rng = Rng(config_.seed);
    state_.hp = config_.space.midpoint();
    state_.switch_state = {0.0, config_.lambda, config_.alpha, config_.delta_mode, 0.0};

    auto& pop = state_.population;
    pop.generation = 0;
    for (std::size_t i = 0; i < config_.population_size; ++i) {
      pop.individuals.push_back(random_genome(state_.rng, config_.bounds, alphabet_));
    }
    pop.scores = evaluator_.evaluate_batch(pop.individuals, state_.hp);

    GenerationLog row;
    row.stage = current_stage();
    row.params = current_params();
    if (!config_.ablation.disable_bgtm) row.tuned = tune_best();
    finish_row(row, 0);
    if (state_.budget_exhausted || should_stop()) return finish();
    return loop();
  }

  SearchResult resume(SearchState state) {
    state_ = std::move(state);
    evaluator_.restore(state_.cache, state_.evaluations);
    if (state_.budget_exhausted) return finish();
    return loop();
  }

 private:
  FitnessFunction default_fitness() const {
    return [this](const Genome& g, const HyperparamConfig& hp) {
      return evaluate_fitness(g, hp, dataset_, adjacency_, config_.seed, config_.training).macro_f1;
    };
  }

  Stage current_stage() const {
    return config_.ablation.disable_adaptive ? Stage::kExploitation : state_.switch_state.stage();
  }

  StageParams current_params() const {
    if (config_.ablation.disable_adaptive) return config_.schedule.exploitation;
    return stage_params(state_.switch_state, config_.schedule);
  }

  SearchResult loop() {
    while (state_.population.generation < config_.generations) {
      const std::size_t g = state_.population.generation;
      if (g >= 1) {
        state_.switch_state =
            update_delta_fitness(state_.switch_state, state_.population.mean_score());
      }
      GenerationLog row;
      row.stage = current_stage();
      row.params = current_params();

      const std::vector<Genome> offspring = generate_offspring(
          state_.population, row.params, state_.rng, {config_.bounds, alphabet_});
      std::vector<double> scores;
      try {
        scores = evaluator_.evaluate_batch(offspring, state_.hp);
      } catch (const BudgetExhausted&) {
        state_.budget_exhausted = true;
        break;
      }
      state_.population =
          environmental_selection(state_.population, offspring, scores, state_.rng);

      const std::size_t formed = state_.population.generation;
      if (!config_.ablation.disable_bgtm && formed % config_.tuning_interval == 0) {
        row.tuned = tune_best();
      }
      finish_row(row, formed);
      if (state_.budget_exhausted || should_stop()) break;
    }
    return finish();
  }

  // Re-tunes z for the current best genome; returns true when it ran.
  bool tune_best() {
    const Genome best = state_.population.individuals[state_.population.best_index()];
    const SearchSpace box = config_.space.search_space();
    const Objective objective = [&](const Point& p) {
      return evaluator_.evaluate(best, config_.space.from_point(p));
    };
    const TuningResult result =
        tune(objective, box, config_.space.to_point(state_.hp), config_.tuning_trials,
             state_.history, config_.tpe, state_.rng);
    for (const auto& trial : result.trials) {
      state_.trials.push_back({state_.trials.size(), state_.population.generation,
                               config_.space.from_point(trial.point), trial.objective,
                               trial.seconds});
    }
    state_.hp = config_.space.from_point(result.best_point);
    if (result.budget_exhausted) state_.budget_exhausted = true;
    return true;
  }

  void finish_row(GenerationLog& row, std::size_t generation) {
    const auto& pop = state_.population;
    row.generation = generation;
    row.delta_fitness = state_.switch_state.delta_fitness;
    row.best_fitness = pop.scores[pop.best_index()];
    row.mean_fitness = pop.mean_score();
    row.min_fitness = pop.min_score();
    row.best_genome = pop.individuals[pop.best_index()].to_string();
    std::size_t before = 0;
    for (const auto& r : state_.convergence) before += r.evaluations;
    row.evaluations = evaluator_.evaluations() - before;
    row.hyperparams = state_.hp;
    row.alphabet_size = alphabet_.size();
    row.distinct_genes = distinct_genes(pop);
    state_.convergence.push_back(row);
    if (options_.checkpoint_dir) write_checkpoint();
  }

  bool should_stop() const {
    return options_.stop_after_generation &&
           state_.population.generation >= *options_.stop_after_generation;
  }

  void write_checkpoint();

  SearchResult finish() {
    SearchResult result;
    const auto& pop = state_.population;
    result.best_genome = pop.individuals[pop.best_index()];
    result.best_hyperparams = state_.hp;
    result.convergence = state_.convergence;
    result.trials = state_.trials;
    result.evaluations = evaluator_.evaluations();
    result.budget_exhausted = state_.budget_exhausted;
    result.generation = pop.generation;
    result.completed = state_.budget_exhausted || pop.generation >= config_.generations;

    if (result.completed) {
      // Re-measured outside the budget so the reported value always
      // matches a standalone evaluation of (I*, z*).
      const auto key = evaluator_.cache_key(result.best_genome, result.best_hyperparams);
      const auto hit = evaluator_.cache().find(key);
      result.validation_fitness = hit != evaluator_.cache().end()
                                      ? hit->second
                                      : fitness_(result.best_genome, result.best_hyperparams);
      if (!options_.fitness_override) {
        result.test_macro_f1 = evaluate_test(result.best_genome, result.best_hyperparams,
                                             dataset_, adjacency_, config_.seed, config_.training)
                                   .macro_f1;
      }
    } else {
      result.validation_fitness = pop.scores[pop.best_index()];
    }
    result.seconds = state_.seconds + seconds_since(start_);
    return result;
  }

  const SearchConfig& config_;
  const RunOptions& options_;
  GraphDataset dataset_;
  NormalizedAdjacency adjacency_;
  GeneAlphabet alphabet_;
  FitnessFunction fitness_;
  FitnessEvaluator evaluator_;
  Clock::time_point start_;
  SearchState state_;
};

json state_json(const SearchState& s, const FitnessEvaluator& evaluator, double seconds) {
  json pop = json::array();
  for (const auto& g : s.population.individuals) pop.push_back(g.to_string());
  json history = json::array();
  for (const auto& t : s.history) history.push_back({{"point", t.point}, {"objective", t.objective}});
  json rows = json::array();
  for (const auto& r : s.convergence) rows.push_back(log_json(r));
  json trials = json::array();
  for (const auto& t : s.trials) {
    trials.push_back({{"trial", t.trial},
                      {"generation", t.generation},
                      {"hyperparams", hp_json(t.hyperparams)},
                      {"objective", t.objective},
                      {"seconds", t.seconds}});
  }
  return {{"generation", s.population.generation},
          {"population", pop},
          {"scores", s.population.scores},
          {"delta_fitness", s.switch_state.delta_fitness},
          {"previous_mean", s.switch_state.previous_mean},
          {"hyperparams", hp_json(s.hp)},
          {"history", history},
          {"rng", s.rng.serialize()},
          {"evaluations", evaluator.evaluations()},
          {"cache", evaluator.cache()},
          {"convergence", rows},
          {"trials", trials},
          {"seconds", seconds},
          {"budget_exhausted", s.budget_exhausted}};
}

SearchState state_from(const json& j, const SearchConfig& config) {
  SearchState s;
  s.population.generation = j.at("generation").get<std::size_t>();
  for (const auto& g : j.at("population")) {
    s.population.individuals.push_back(Genome::parse(g.get<std::string>()));
  }
  s.population.scores = j.at("scores").get<std::vector<double>>();
  if (s.population.scores.size() != s.population.individuals.size() ||
      s.population.individuals.size() != config.population_size) {
    throw CheckpointError("population size does not match the config");
  }
  s.switch_state = {j.at("delta_fitness").get<double>(), config.lambda, config.alpha,
                    config.delta_mode, j.at("previous_mean").get<double>()};
  s.hp = hp_from(j.at("hyperparams"));
  for (const auto& t : j.at("history")) {
    s.history.push_back({t.at("point").get<Point>(), t.at("objective").get<double>()});
  }
  s.rng.deserialize(j.at("rng").get<std::string>());
  s.evaluations = j.at("evaluations").get<std::size_t>();
  s.cache = j.at("cache").get<std::map<std::string, double>>();
  for (const auto& r : j.at("convergence")) s.convergence.push_back(log_from(r));
  for (const auto& t : j.at("trials")) {
    s.trials.push_back({t.at("trial").get<std::size_t>(), t.at("generation").get<std::size_t>(),
                        hp_from(t.at("hyperparams")), t.at("objective").get<double>(),
                        t.at("seconds").get<double>()});
  }
  s.seconds = j.at("seconds").get<double>();
  s.budget_exhausted = j.at("budget_exhausted").get<bool>();
  return s;
}

void SearchRun::write_checkpoint() {
  const json doc = {{"format", kCheckpointFormat},
                    {"version", kCheckpointVersion},
                    {"config_hash", config_.hash()},
                    {"config", json::parse(config_to_json(config_))},
                    {"state", state_json(state_, evaluator_, state_.seconds + seconds_since(start_))}};
  std::filesystem::create_directories(*options_.checkpoint_dir);
  const auto path = *options_.checkpoint_dir / "checkpoint.json";
  const auto tmp = *options_.checkpoint_dir / "checkpoint.json.tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CheckpointError("cannot write " + tmp.string());
    out << doc.dump();
    if (!out) throw CheckpointError("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

json read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open checkpoint " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  json doc;
  try {
    doc = json::parse(text.str());
  } catch (const json::exception& e) {
    throw CheckpointError("checkpoint " + path.string() + " is corrupt: " + e.what());
  }
  if (!doc.is_object() || doc.value("format", "") != kCheckpointFormat ||
      doc.value("version", 0) != kCheckpointVersion) {
    throw CheckpointError("checkpoint " + path.string() + " has an unknown format");
  }
  return doc;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string hp_csv(const HyperparamConfig& hp) {
  return std::to_string(hp.hidden_dim) + "," + num(hp.forward_dropout) + "," +
         num(hp.middle_dropout) + "," + num(hp.overall_dropout) + "," + num(hp.learning_rate) +
         "," + num(hp.weight_decay);
}

}  // namespace

void SearchConfig::validate() const {
  if (population_size < 2 || population_size % 2 != 0) {
    throw ConfigError("population_size must be even and at least 2");
  }
  if (tuning_interval < 1) throw ConfigError("tuning_interval must be at least 1");
  if (generations % tuning_interval != 0) {
    throw ConfigError("generations must be a multiple of tuning_interval");
  }
  bounds.validate();
  if (!(lambda > 0.0 && lambda <= 1.0)) throw ConfigError("lambda must lie in (0, 1]");
  if (!std::isfinite(alpha)) throw ConfigError("alpha must be finite");
  for (const auto* p : {&schedule.exploration, &schedule.exploitation}) {
    p->validate();
    if (p->tournament_size > population_size) {
      throw ConfigError("tournament_size cannot exceed population_size");
    }
  }
  space.validate();
  if (!(tpe.gamma > 0.0 && tpe.gamma <= 1.0)) throw ConfigError("tpe gamma must lie in (0, 1]");
  if (tpe.n_candidates < 1) throw ConfigError("tpe n_candidates must be at least 1");
  if (tuning_trials < 1) throw ConfigError("tpe trials must be at least 1");
  if (training.max_epochs < 1) throw ConfigError("max_epochs must be at least 1");
  if (workers < 1) throw ConfigError("workers must be at least 1");
  if (evaluation_budget && *evaluation_budget < population_size) {
    throw ConfigError("evaluation_budget must cover the initial population");
  }
  const auto& ds = dataset;
  const bool any_file = ds.edge_file || ds.feature_file || ds.label_file;
  const bool all_files = ds.edge_file && ds.feature_file && ds.label_file;
  if (any_file && !all_files) {
    throw ConfigError("dataset needs all of edges, features and labels, or none");
  }
  if (!any_file) {
    if (ds.sbm.blocks.empty()) throw ConfigError("sbm needs at least one block");
    for (double p : {ds.sbm.p_in, ds.sbm.p_out}) {
      if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("sbm probabilities must lie in [0, 1]");
    }
    if (ds.sbm.feature_dim < ds.sbm.blocks.size()) {
      throw ConfigError("sbm feature_dim must be at least the number of blocks");
    }
    if (!(ds.sbm.noise >= 0.0)) throw ConfigError("sbm noise must be non-negative");
  }
  const auto& r = ds.splits;
  if (!(r.train > 0.0 && r.val > 0.0 && r.test > 0.0) ||
      std::abs(r.train + r.val + r.test - 1.0) > 1e-9) {
    throw ConfigError("split ratios must be positive and sum to 1");
  }
}

GeneAlphabet SearchConfig::alphabet() const {
  return ablation.restricted_search_space ? GeneAlphabet::restricted() : GeneAlphabet::full();
}

GraphDataset build_dataset(const DatasetSource& source) {
  GraphDataset ds = source.uses_files()
                        ? load_dataset(*source.edge_file, *source.feature_file, *source.label_file)
                        : generate_sbm(source.sbm);
  return make_splits(std::move(ds), source.splits, source.split_seed);
}

SearchResult run_search(const SearchConfig& config, const RunOptions& options) {
  config.validate();
  SearchRun run(config, options);
  return run.start();
}

SearchConfig checkpoint_config(const std::filesystem::path& checkpoint) {
  const json doc = read_checkpoint(checkpoint);
  try {
    return parse_config(doc.at("config").dump());
  } catch (const json::exception& e) {
    throw CheckpointError("checkpoint config is unreadable: " + std::string(e.what()));
  } catch (const ConfigError& e) {
    throw CheckpointError("checkpoint config is invalid: " + std::string(e.what()));
  }
}

SearchResult resume_search(const std::filesystem::path& checkpoint, const SearchConfig& config,
                           const RunOptions& options) {
  config.validate();
  const json doc = read_checkpoint(checkpoint);
  const std::string hash = doc.value("config_hash", "");
  if (hash != config.hash()) {
    throw CheckpointError("checkpoint config hash " + hash + " does not match " + config.hash());
  }
  SearchState state;
  try {
    state = state_from(doc.at("state"), config);
  } catch (const json::exception& e) {
    throw CheckpointError("checkpoint state is corrupt: " + std::string(e.what()));
  } catch (const ConfigError& e) {
    throw CheckpointError("checkpoint state is corrupt: " + std::string(e.what()));
  }
  SearchRun run(config, options);
  return run.resume(std::move(state));
}

SearchResult run_random_baseline(const SearchConfig& config, std::size_t budget,
                                 const RunOptions& options) {
  config.validate();
  if (budget < 1) throw ConfigError("baseline budget must be at least 1");
  const auto start = Clock::now();
  const GraphDataset ds = build_dataset(config.dataset);
  const NormalizedAdjacency adj = normalize_adjacency(ds);
  const GeneAlphabet alphabet = config.alphabet();
  const HyperparamConfig hp = config.space.midpoint();
  const FitnessFunction fitness =
      options.fitness_override
          ? options.fitness_override
          : FitnessFunction([&](const Genome& g, const HyperparamConfig& z) {
              return evaluate_fitness(g, z, ds, adj, config.seed, config.training).macro_f1;
            });

  SearchResult result;
  std::size_t n = budget;
  if (config.evaluation_budget && *config.evaluation_budget < n) {
    n = *config.evaluation_budget;
    result.budget_exhausted = true;
  }
  Rng rng(mix_seed(config.seed, fnv1a("baseline")));
  std::vector<Genome> genomes;
  for (std::size_t i = 0; i < n; ++i) genomes.push_back(random_genome(rng, config.bounds, alphabet));
  std::vector<double> scores(n, 0.0);
  parallel_for(n, config.workers, [&](std::size_t i) { scores[i] = fitness(genomes[i], hp); });

  std::size_t best = 0;
  double sum = 0.0;
  double lowest = scores[0];
  for (std::size_t i = 0; i < n; ++i) {
    if (scores[i] > scores[best]) best = i;
    sum += scores[i];
    lowest = std::min(lowest, scores[i]);
    GenerationLog row;
    row.generation = i;
    row.stage = Stage::kExploration;
    row.params = {};
    row.best_fitness = scores[best];
    row.mean_fitness = sum / static_cast<double>(i + 1);
    row.min_fitness = lowest;
    row.best_genome = genomes[best].to_string();
    row.evaluations = 1;
    row.hyperparams = hp;
    row.alphabet_size = alphabet.size();
    std::set<OperationGene> seen;
    for (std::size_t k = 0; k <= i; ++k) seen.insert(genomes[k].begin(), genomes[k].end());
    row.distinct_genes = seen.size();
    result.convergence.push_back(row);
  }
  result.best_genome = genomes[best];
  result.best_hyperparams = hp;
  result.validation_fitness = scores[best];
  if (!options.fitness_override) {
    result.test_macro_f1 =
        evaluate_test(genomes[best], hp, ds, adj, config.seed, config.training).macro_f1;
  }
  result.evaluations = n;
  result.completed = true;
  result.generation = 0;
  result.seconds = seconds_since(start);
  return result;
}

void write_convergence_csv(const SearchResult& result, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "generation,stage,delta_fitness,tournament_size,crossover_prob,mutation_prob,"
         "best_fitness,mean_fitness,min_fitness,best_genome,evaluations,tuned,hidden_dim,"
         "forward_dropout,middle_dropout,overall_dropout,learning_rate,weight_decay,"
         "alphabet_size,distinct_genes\n";
  for (const auto& r : result.convergence) {
    out << r.generation << ',' << stage_name(r.stage) << ',' << num(r.delta_fitness) << ','
        << r.params.tournament_size << ',' << num(r.params.crossover_prob) << ','
        << num(r.params.mutation_prob) << ',' << num(r.best_fitness) << ','
        << num(r.mean_fitness) << ',' << num(r.min_fitness) << ',' << r.best_genome << ','
        << r.evaluations << ',' << (r.tuned ? 1 : 0) << ',' << hp_csv(r.hyperparams) << ','
        << r.alphabet_size << ',' << r.distinct_genes << '\n';
  }
  write_text(path, out.str());
}

void write_trials_csv(const SearchResult& result, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "trial,generation,hidden_dim,forward_dropout,middle_dropout,overall_dropout,"
         "learning_rate,weight_decay,objective,seconds\n";
  for (const auto& t : result.trials) {
    out << t.trial << ',' << t.generation << ',' << hp_csv(t.hyperparams) << ','
        << num(t.objective) << ',' << num(t.seconds) << '\n';
  }
  write_text(path, out.str());
}

std::string result_json(const SearchResult& result, bool include_timing) {
  json j = {{"best_genome", result.best_genome.to_string()},
            {"hyperparams", hp_json(result.best_hyperparams)},
            {"validation_fitness", result.validation_fitness},
            {"test_macro_f1", result.test_macro_f1},
            {"evaluations", result.evaluations},
            {"generation", result.generation},
            {"budget_exhausted", result.budget_exhausted},
            {"completed", result.completed}};
  if (include_timing) j["seconds"] = result.seconds;
  return j.dump(2);
}

void write_result_json(const SearchResult& result, const std::filesystem::path& path) {
  write_text(path, result_json(result) + "\n");
}

}  // namespace gnas
