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
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ctpkit/core.hpp"
#include "ctpkit/protocols.hpp"

// Synthesizes episode logs from configurable error models: ground truths are
// sampled from the truth distribution, each agent's prediction from its
// model, and the protocol produces the team output and the per-record cost.
// Everything is keyed RNG (see rng.hpp), so a config is a pure function of
// its seed.

namespace ctpkit {

enum class AgentKind { AdditiveBias, LabelFlip, Perfect };

// Error model for one agent. additive-bias emits truth + bias + noise_sd * N(0,1)
// on real tasks. label-flip errs with probability error_rate; the erroneous
// label is uniform over the other labels, or drawn from the confusion row of
// the true label when a confusion matrix is given. perfect emits the truth.
struct AgentModel {
  AgentKind kind = AgentKind::Perfect;
  double bias = 0.0;
  double noise_sd = 0.0;
  double error_rate = 0.0;
  std::vector<std::vector<double>> confusion;  // empty = none; rows sum to 1
};

enum class TruthKind { UniformReal, CategoricalWeights };

struct ScenarioConfig {
  std::string scenario_id;
  TaskSpec task;
  std::size_t n_records = 0;
  std::size_t n_episodes = 0;
  AgentModel human;
  AgentModel ai;
  ProtocolSpec protocol;
  TruthKind truth_kind = TruthKind::UniformReal;
  double truth_lo = 0.0;         // uniform-real
  double truth_hi = 0.0;
  std::vector<double> weights;   // categorical-weights, aligned with task.labels
  double lambda = 0.0;
  std::uint64_t seed = 0;
  std::string cost_unit = "units";
};

// One sweep result row; gains and stability are aggregated over the row's
// episodes.
struct SweepRow {
  double value = 0.0;
  double mean_gross_gain = 0.0;
  double stability = 0.0;
  double mean_net_gain = 0.0;
};

struct SweepTable {
  std::string scenario_id;
  std::string axis;
  std::vector<SweepRow> rows;
};

// Every violation in the config, each naming the offending field; empty
// means valid.
std::vector<Violation> validate_scenario(const ScenarioConfig& config);

// n_episodes logs of n_records each. Bit-identical output for identical
// configs; episodes may be generated in any order or in parallel without
// changing the result. Throws Error on an invalid config.
std::vector<EpisodeLog> simulate(const ScenarioConfig& config);

// Runs one simulation per value with `axis` overridden; row k uses seed
// rng::derive_row(config.seed, k). Throws Error on unknown or ambiguous
// axis names.
SweepTable sweep(const ScenarioConfig& config, const std::string& axis,
                 std::span<const double> values);

// Dotted numeric fields accepted as sweep axes.
std::vector<std::string> sweep_axes();

const char* to_string(AgentKind kind);
const char* to_string(TruthKind kind);
std::optional<AgentKind> agent_kind_from(const std::string& name);
std::optional<TruthKind> truth_kind_from(const std::string& name);

}  // namespace ctpkit
