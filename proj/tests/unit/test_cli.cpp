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

#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path kRoot = fs::temp_directory_path() / "gnas_cli_test";

int run(const std::string& args) {
  const std::string cmd = std::string(GNAS_CLI_PATH) + " " + args + " > " +
                          (kRoot / "last.log").string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::stringstream s;
  s << std::ifstream(p).rdbuf();
  return s.str();
}

fs::path write(const std::string& name, const std::string& text) {
  const auto p = kRoot / name;
  std::ofstream(p) << text;
  return p;
}

const char* kTiny = R"({
  "dataset": {"sbm": {"blocks": [12, 12], "p_in": 0.3, "p_out": 0.02, "feature_dim": 4,
                      "noise": 0.3, "signal": 1.0, "seed": 2}},
  "search": {"population_size": 4, "generations": 2, "tuning_interval": 2,
             "min_length": 1, "max_length": 4, "seed": 5},
  "tpe": {"trials": 2},
  "training": {"max_epochs": 8, "patience": 4}
})";

struct Fixture {
  Fixture() {
    fs::remove_all(kRoot);
    fs::create_directories(kRoot);
  }
  ~Fixture() { fs::remove_all(kRoot); }
};

}  // namespace

TEST_CASE_FIXTURE(Fixture, "search writes every output") {
  const auto cfg = write("tiny.json", kTiny);
  const auto out = kRoot / "run";
  REQUIRE(run("search --config " + cfg.string() + " --out " + out.string()) == 0);
  for (const char* f : {"convergence.csv", "trials.csv", "result.json", "checkpoint.json"}) {
    CAPTURE(f);
    CHECK(fs::exists(out / f));
  }
  CHECK(slurp(out / "result.json").find("\"completed\": true") != std::string::npos);

  // Flags override the file.
  const auto ablated = kRoot / "ablated";
  REQUIRE(run("search --config " + cfg.string() + " --seed 9 --workers 2 --no-bgtm --no-adaptive "
              "--restricted-space --out " + ablated.string()) == 0);
  const auto trials = slurp(ablated / "trials.csv");
  CHECK(std::count(trials.begin(), trials.end(), '\n') == 1);
  const auto conv = slurp(ablated / "convergence.csv");
  CHECK(conv.find("exploration") == std::string::npos);
}

TEST_CASE_FIXTURE(Fixture, "stop, resume and baseline") {
  const auto cfg = write("tiny.json", kTiny);
  const auto full = kRoot / "full";
  const auto part = kRoot / "part";
  REQUIRE(run("search --config " + cfg.string() + " --out " + full.string()) == 0);
  REQUIRE(run("search --config " + cfg.string() + " --stop-after 1 --out " + part.string()) == 0);
  CHECK(slurp(part / "result.json").find("\"completed\": false") != std::string::npos);
  REQUIRE(run("resume " + (part / "checkpoint.json").string()) == 0);
  CHECK(slurp(part / "convergence.csv") == slurp(full / "convergence.csv"));

  const auto base = kRoot / "base";
  REQUIRE(run("baseline --config " + cfg.string() + " --match " + (full / "result.json").string() +
              " --out " + base.string()) == 0);
  CHECK(fs::exists(base / "result.json"));
  CHECK(run("baseline --config " + cfg.string() + " --out " + base.string()) == 2);
  CHECK(run("baseline --config " + cfg.string() + " --budget 3 --out " + base.string()) == 0);
}

TEST_CASE_FIXTURE(Fixture, "eval and gen-sbm") {
  const auto data = kRoot / "data";
  REQUIRE(run("gen-sbm --blocks 10,10 --p-in 0.3 --p-out 0.02 --feature-dim 4 --seed 3 --out " +
              data.string()) == 0);
  for (const char* f : {"edges.txt", "features.csv", "labels.csv"}) CHECK(fs::exists(data / f));
  const auto cfg = write("files.json", R"({"dataset": {"edges": ")" + (data / "edges.txt").string() +
                                           R"(", "features": ")" + (data / "features.csv").string() +
                                           R"(", "labels": ")" + (data / "labels.csv").string() +
                                           R"("}, "training": {"max_epochs": 10}})");
  const auto hp = write("hp.json", R"({"hidden_dim": 8, "learning_rate": 0.01})");
  const auto out = kRoot / "eval";
  REQUIRE(run("eval --config " + cfg.string() + " --genome P1-T1-P1-T1 --hparams " + hp.string() +
              " --out " + out.string()) == 0);
  for (const char* f : {"trace.csv", "params.bin", "result.json"}) CHECK(fs::exists(out / f));
  CHECK(slurp(out / "result.json").find("\"hidden_dim\": 8") != std::string::npos);
  CHECK(run("eval --config " + cfg.string() + " --genome P9 --out " + out.string()) == 2);
  CHECK(run("gen-sbm --blocks 10,x --out " + data.string()) == 2);
}

TEST_CASE_FIXTURE(Fixture, "config errors exit with 2") {
  CHECK(run("") == 2);
  CHECK(run("search --bogus") == 2);
  CHECK(run("search --config " + (kRoot / "missing.json").string()) == 2);
  CHECK(run("search --config " + write("bad.json", R"({"search": {"colour": 1}})").string()) == 2);
  CHECK(run("search --config " + write("odd.json", R"({"search": {"population_size": 5}})").string()) == 2);
  CHECK(run("search --workers 0") == 2);
  CHECK(run("eval") == 2);
}

TEST_CASE_FIXTURE(Fixture, "ingestion errors exit with 3") {
  write("edges.txt", "0 1\n1 2\n");
  write("features.csv", "1,0\n0,1\n1,1\n");
  write("labels.csv", "0,0\n1,1\nnot-a-label\n");
  const auto cfg = write("files.json", R"({"dataset": {"edges": ")" + (kRoot / "edges.txt").string() +
                                           R"(", "features": ")" + (kRoot / "features.csv").string() +
                                           R"(", "labels": ")" + (kRoot / "labels.csv").string() +
                                           R"("}})");
  CHECK(run("search --config " + cfg.string() + " --out " + (kRoot / "x").string()) == 3);
  CHECK(slurp(kRoot / "last.log").find("labels.csv:3") != std::string::npos);

  // Too few labeled nodes per class to split.
  write("labels.csv", "0,0\n1,1\n2,1\n");
  CHECK(run("search --config " + cfg.string() + " --out " + (kRoot / "x").string()) == 3);

  write("ckpt.json", R"({"format": "gnas-checkpoint", "version": 1, "config)");
  CHECK(run("resume " + (kRoot / "ckpt.json").string()) == 3);
}

TEST_CASE_FIXTURE(Fixture, "an exhausted budget exits with 4 and still writes results") {
  std::string text = kTiny;
  text.replace(text.find("\"seed\": 5"), 9, "\"seed\": 5, \"evaluation_budget\": 5");
  const auto cfg = write("budget.json", text);
  const auto out = kRoot / "budget";
  CHECK(run("search --config " + cfg.string() + " --out " + out.string()) == 4);
  CHECK(slurp(out / "result.json").find("\"budget_exhausted\": true") != std::string::npos);
}
