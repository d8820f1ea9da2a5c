// Copyright 2026 ctpkit developers
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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ctpkit/ingest.hpp"
#include "ctpkit/metrics.hpp"
#include "support.hpp"

using namespace ctpkit;
using namespace testsupport;

namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string golden_path() { return std::string(CTPKIT_TEST_DATA_DIR) + "/golden.eplog"; }

bool same_log(const EpisodeLog& a, const EpisodeLog& b) {
  if (a.episode_id != b.episode_id || a.protocol_id != b.protocol_id ||
      a.cost_unit != b.cost_unit || a.task.task_id != b.task.task_id ||
      a.task.output_kind != b.task.output_kind || a.task.loss_kind != b.task.loss_kind ||
      a.task.labels != b.task.labels || a.records.size() != b.records.size())
    return false;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const InteractionRecord& x = a.records[i];
    const InteractionRecord& y = b.records[i];
    if (x.instance_id != y.instance_id || x.y_true != y.y_true || x.y_human != y.y_human ||
        x.y_ai != y.y_ai || x.y_team != y.y_team || x.cost != y.cost ||
        x.timestamp != y.timestamp || x.rounds != y.rounds)
      return false;
  }
  return true;
}

fs::path fresh_dir(const char* name) {
  const fs::path dir = fs::temp_directory_path() / ("ctpkit-test-" + std::string(name));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

EpisodeLog random_log(Gen& gen, bool categorical) {
  TaskSpec task = categorical ? binary_task("rt") : real_task("rt");
  std::vector<InteractionRecord> records;
  const std::size_t n = 1 + gen.below(12);
  const bool with_timestamp = gen.below(2) == 0;
  const bool with_rounds = gen.below(2) == 0;
  for (std::size_t i = 0; i < n; ++i) {
    InteractionRecord record;
    record.instance_id = "case-" + std::to_string(i);
    if (categorical) {
      const char* labels[2] = {"neg", "pos"};
      record.y_true = std::string(labels[gen.below(2)]);
      record.y_human = std::string(labels[gen.below(2)]);
      record.y_ai = std::string(labels[gen.below(2)]);
      record.y_team = std::string(labels[gen.below(2)]);
    } else {
      // Mix magnitudes so shortest round-trip formatting gets stressed.
      auto value = [&gen]() {
        const double base = gen.uniform(-1, 1);
        const int scale = static_cast<int>(gen.below(41)) - 20;
        return base * std::pow(10.0, scale);
      };
      record.y_true = value();
      record.y_human = value();
      record.y_ai = value();
      record.y_team = value();
    }
    record.cost = gen.uniform(0, 3);
    if (with_timestamp && gen.below(3) != 0) record.timestamp = "2026-01-02T03:04:05Z";
    if (with_rounds && gen.below(3) != 0) record.rounds = gen.below(9);
    records.push_back(std::move(record));
  }
  return episode(task, std::move(records), "episode-" + std::to_string(gen.below(1000)));
}

}  // namespace

TEST_CASE("golden file: write(read(f)) is byte-identical") {
  const std::string bytes = slurp(golden_path());
  const EpisodeLog log = read_log(bytes);
  CHECK(write_log(log) == bytes);
  CHECK(log.records.size() == 10);

  const GainReport report = evaluate_episode(log, 0.1);
  CHECK(report.ctp == 1);
  CHECK(report.gross_gain == 0.1875);
  CHECK(report.net_gain == 0.0875);
}

TEST_CASE("read after write is the identity on random valid logs") {
  Gen gen(404);
  for (int i = 0; i < 100; ++i) {
    const EpisodeLog log = random_log(gen, i % 3 == 0);
    const std::string bytes = write_log(log);
    const EpisodeLog back = read_log(bytes);
    CHECK(same_log(log, back));
    CHECK(write_log(back) == bytes);  // and the canonical form is stable
  }
}

TEST_CASE("write_log is deterministic and omits absent optional columns") {
  const EpisodeLog log = contraction_episode(1.0, 3);
  const std::string once = write_log(log);
  CHECK(once == write_log(log));
  CHECK(once.find("timestamp") == std::string::npos);
  CHECK(once.find("rounds") == std::string::npos);

  EpisodeLog stamped = log;
  stamped.records[1].timestamp = "2026-03-04T05:06:07Z";
  const std::string bytes = write_log(stamped);
  CHECK(bytes.find("timestamp") != std::string::npos);
  CHECK(bytes.find("\t-\n") != std::string::npos);  // absent stamps use the dash
}

TEST_CASE("writing an empty episode fails") {
  CHECK_THROWS_AS(write_log(episode(real_task(), {})), Error);
}

TEST_CASE("parse errors carry 1-based line numbers") {
  const std::string good = slurp(golden_path());

  SUBCASE("non-numeric cost names its line") {
    std::string bad = good;
    const std::string needle = "r0001\t0\t-1\t0.5\t-0.25\t0";
    bad.replace(bad.find(needle), needle.size(), "r0001\t0\t-1\t0.5\t-0.25\tcheap");
    try {
      read_log(bad);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 10);  // 8 header lines, bad record is the second one
      CHECK(e.column() == 6);
      CHECK(std::string(e.what()).find("cost") != std::string::npos);
    }
  }
  SUBCASE("wrong magic") {
    CHECK_THROWS_AS(read_log("ctpkit-log v9\n"), ParseError);
  }
  SUBCASE("unknown header key") {
    std::string bad = good;
    bad.insert(bad.find("columns"), "mood\tgood\n");
    CHECK_THROWS_AS(read_log(bad), ParseError);
  }
  SUBCASE("wrong field count") {
    std::string bad = good + "r0010\t0\t-1\n";
    CHECK_THROWS_AS(read_log(bad), ParseError);
  }
  SUBCASE("duplicate instance id") {
    std::string bad = good + "r0000\t0\t-1\t0.5\t-0.25\t0\n";
    CHECK_THROWS_AS(read_log(bad), ParseError);
  }
  SUBCASE("negative cost is rejected at parse time") {
    std::string bad = good;
    const std::string needle = "r0001\t0\t-1\t0.5\t-0.25\t0";
    bad.replace(bad.find(needle), needle.size(), "r0001\t0\t-1\t0.5\t-0.25\t-2");
    CHECK_THROWS_AS(read_log(bad), ParseError);
  }
  SUBCASE("unknown label for a categorical task") {
    const EpisodeLog log = episode(binary_task(), {label_record("a", "pos", "pos", "pos", "pos")});
    std::string bytes = write_log(log);
    const std::string needle = "a\tpos\tpos\tpos\tpos";
    bytes.replace(bytes.find(needle), needle.size(), "a\tmaybe\tpos\tpos\tpos");
    try {
      read_log(bytes);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("maybe") != std::string::npos);
      CHECK(e.column() == 2);
    }
  }
  SUBCASE("no records") {
    const std::string header = good.substr(0, good.find("r0000"));
    CHECK_THROWS_AS(read_log(header), ParseError);
  }
}

TEST_CASE("study round trip through a manifest directory") {
  const fs::path dir = fresh_dir("study");
  Gen gen(777);
  std::vector<EpisodeLog> logs;
  for (int i = 0; i < 3; ++i) logs.push_back(random_log(gen, false));
  logs[0].episode_id = "first";
  logs[1].episode_id = "second";
  logs[2].episode_id = "third";

  const std::vector<std::string> names = write_study(dir.string(), logs);
  CHECK(names == std::vector<std::string>{"first.eplog", "second.eplog", "third.eplog"});
  CHECK(fs::exists(dir / kManifestName));

  const std::vector<EpisodeLog> back = read_study(dir.string());
  REQUIRE(back.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(same_log(logs[i], back[i]));

  CHECK_THROWS_AS(read_study((dir / "nowhere").string()), Error);
  fs::remove_all(dir);
}

TEST_CASE("scenario parsing") {
  const std::string text = R"(# synthetic regression teams
format = ctpkit-scenario/1
scenario_id = demo
seed = 42
lambda = 0.1
n_records = 8
n_episodes = 3
cost_unit = minutes

[task]
task_id = demo-task
output_kind = real-scalar
loss_kind = squared-error

[truth]
distribution = uniform-real
lo = 0
hi = 10

[human]
kind = additive-bias
bias = -1
noise_sd = 0

[ai]
kind = additive-bias
bias = 0.5
noise_sd = 0

[protocol]
protocol_id = avg
kind = averaging
weight_human = 0.5
base_cost = 0.125
)";
  const ScenarioConfig config = read_scenario(text);
  CHECK(config.scenario_id == "demo");
  CHECK(config.seed == 42);
  CHECK(config.lambda == 0.1);
  CHECK(config.n_records == 8);
  CHECK(config.cost_unit == "minutes");
  CHECK(config.human.bias == -1.0);
  CHECK(config.protocol.kind == ProtocolKind::Averaging);
  CHECK(config.truth_hi == 10.0);

  SUBCASE("unknown keys carry their line") {
    std::string bad = text;
    bad += "\n[protocol]\nvolume = 11\n";
    CHECK_THROWS_AS(read_scenario(bad), ParseError);
  }
  SUBCASE("missing required key") {
    std::string bad = text;
    const std::size_t at = bad.find("lambda = 0.1\n");
    bad.erase(at, std::string("lambda = 0.1\n").size());
    CHECK_THROWS_WITH_AS(read_scenario(bad), "missing required key 'lambda'", Error);
  }
  SUBCASE("semantic violations name the field") {
    std::string bad = text;
    const std::size_t at = bad.find("n_records = 8");
    bad.replace(at, std::string("n_records = 8").size(), "n_records = 0");
    try {
      read_scenario(bad);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("n_records") != std::string::npos);
    }
  }
}

TEST_CASE("scenario parsing: categorical tasks with confusion rows") {
  const std::string text = R"(format = ctpkit-scenario/1
scenario_id = cat
seed = 1
lambda = 0.5
n_records = 5
n_episodes = 2

[task]
task_id = triage
output_kind = binary
loss_kind = zero-one
labels = neg pos

[truth]
distribution = categorical-weights
weights = 0.75 0.25

[human]
kind = label-flip
error_rate = 0.2
confusion_neg = 0.25 0.75
confusion_pos = 0.5 0.5

[ai]
kind = perfect

[protocol]
protocol_id = defer
kind = threshold-selector
)";
  const ScenarioConfig config = read_scenario(text);
  CHECK(config.task.labels == std::vector<std::string>{"neg", "pos"});
  CHECK(config.weights == std::vector<double>{0.75, 0.25});
  REQUIRE(config.human.confusion.size() == 2);
  CHECK(config.human.confusion[0] == std::vector<double>{0.25, 0.75});
  CHECK(config.human.confusion[1] == std::vector<double>{0.5, 0.5});
  CHECK(config.ai.kind == AgentKind::Perfect);
}

TEST_CASE("sweep table round trip") {
  SweepTable table;
  table.scenario_id = "demo";
  table.axis = "lambda";
  table.rows = {{0.05, 0.1875, 1.0, 0.1375}, {0.5, 0.1875, 1.0, -0.3125}};
  const std::string bytes = write_sweep(table);
  CHECK(bytes == write_sweep(table));
  const SweepTable back = read_sweep(bytes);
  CHECK(back.scenario_id == table.scenario_id);
  CHECK(back.axis == table.axis);
  REQUIRE(back.rows.size() == 2);
  CHECK(back.rows[0].value == 0.05);
  CHECK(back.rows[1].mean_net_gain == -0.3125);
  CHECK(write_sweep(back) == bytes);
}

TEST_CASE("format_double uses shortest round-trip decimals") {
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-0.25) == "-0.25");
  CHECK(format_double(0.1875) == "0.1875");
  Gen gen(31);
  for (int i = 0; i < 500; ++i) {
    const double value = gen.uniform(-1, 1) * std::pow(10.0, static_cast<int>(gen.below(41)) - 20);
    double parsed = 0.0;
    const std::string text = format_double(value);
    std::istringstream(text) >> parsed;
    CHECK(parsed == value);
  }
}
