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
#include "ctpkit/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ctpkit/metrics.hpp"
#include "ctpkit/rng.hpp"

namespace ctpkit {

namespace {

constexpr double kWeightSumTolerance = 1e-9;

std::string padded(const char* prefix, std::size_t value, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%0*zu", prefix, width, value);
  return buf;
}

std::size_t label_index(const TaskSpec& task, const std::string& label) {
  return static_cast<std::size_t>(
      std::find(task.labels.begin(), task.labels.end(), label) - task.labels.begin());
}

Prediction sample_truth(const ScenarioConfig& config, std::uint64_t episode, std::uint64_t record) {
  const double u = rng::uniform01(rng::word(config.seed, rng::Tag::Truth, episode, record, 0));
  if (config.truth_kind == TruthKind::UniformReal)
    return config.truth_lo + u * (config.truth_hi - config.truth_lo);
  double cumulative = 0.0;
  for (std::size_t k = 0; k < config.weights.size(); ++k) {
    cumulative += config.weights[k];
    if (u < cumulative) return config.task.labels[k];
  }
  return config.task.labels.back();
}

Prediction sample_agent(const AgentModel& agent, const Prediction& truth,
                        const ScenarioConfig& config, rng::Tag tag, std::uint64_t episode,
                        std::uint64_t record) {
  switch (agent.kind) {
    case AgentKind::Perfect:
      return truth;

    case AgentKind::AdditiveBias: {
      double value = std::get<double>(truth) + agent.bias;
      if (agent.noise_sd > 0.0)
        value += agent.noise_sd * rng::gaussian(rng::word(config.seed, tag, episode, record, 0),
                                                rng::word(config.seed, tag, episode, record, 1));
      return value;
    }

    case AgentKind::LabelFlip: {
      const std::vector<std::string>& labels = config.task.labels;
      const double u = rng::uniform01(rng::word(config.seed, tag, episode, record, 0));
      if (u >= agent.error_rate || labels.size() < 2) return truth;
      const std::size_t truth_idx = label_index(config.task, std::get<std::string>(truth));
      const double u2 = rng::uniform01(rng::word(config.seed, tag, episode, record, 1));
      if (!agent.confusion.empty()) {
        const std::vector<double>& row = agent.confusion[truth_idx];
        double cumulative = 0.0;
        for (std::size_t k = 0; k < row.size(); ++k) {
          cumulative += row[k];
          if (u2 < cumulative) return labels[k];
        }
        return labels.back();
      }
      // Uniform over the other labels, in label order.
      std::size_t pick = static_cast<std::size_t>(u2 * static_cast<double>(labels.size() - 1));
      pick = std::min(pick, labels.size() - 2);
      return labels[pick >= truth_idx ? pick + 1 : pick];
    }
  }
  return truth;
}

void check_weights_row(std::span<const double> row, const char* field,
                       std::vector<Violation>& out) {
  double sum = 0.0;
  for (double w : row) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      out.push_back({"", field, std::string(field) + " entries must be non-negative reals"});
      return;
    }
    sum += w;
  }
  if (std::fabs(sum - 1.0) > kWeightSumTolerance)
    out.push_back({"", field, std::string(field) + " must sum to 1 within 1e-9"});
}

void validate_agent(const AgentModel& agent, const TaskSpec& task, const char* who,
                    std::vector<Violation>& out) {
  auto add = [&](const std::string& field, std::string message) {
    out.push_back({"", std::string(who) + "." + field, std::move(message)});
  };
  switch (agent.kind) {
    case AgentKind::Perfect:
      break;
    case AgentKind::AdditiveBias:
      if (task.categorical()) add("kind", "additive-bias requires a real-scalar task");
      if (!(agent.noise_sd >= 0.0) || !std::isfinite(agent.noise_sd))
        add("noise_sd", "noise_sd must be a finite non-negative real");
      if (!std::isfinite(agent.bias)) add("bias", "bias must be finite");
      break;
    case AgentKind::LabelFlip:
      if (!task.categorical()) add("kind", "label-flip requires a categorical or binary task");
      if (!(agent.error_rate >= 0.0 && agent.error_rate <= 1.0))
        add("error_rate", "error_rate must lie in [0, 1]");
      if (!agent.confusion.empty()) {
        if (agent.confusion.size() != task.labels.size()) {
          add("confusion", "confusion needs one row per label");
        } else {
          for (std::size_t i = 0; i < agent.confusion.size(); ++i) {
            if (agent.confusion[i].size() != task.labels.size()) {
              add("confusion", "confusion rows need one entry per label");
              break;
            }
            std::vector<Violation> row_violations;
            check_weights_row(agent.confusion[i], "confusion", row_violations);
            for (Violation& v : row_violations)
              add("confusion", v.message + " (row '" + task.labels[i] + "')");
          }
        }
      }
      break;
  }
}

}  // namespace

std::vector<Violation> validate_scenario(const ScenarioConfig& config) {
  std::vector<Violation> out;
  auto add = [&](std::string field, std::string message) {
    out.push_back({"", std::move(field), std::move(message)});
  };

  if (config.scenario_id.empty()) add("scenario_id", "scenario_id must be non-empty");
  if (config.n_records < 1) add("n_records", "n_records must be >= 1");
  if (config.n_episodes < 1) add("n_episodes", "n_episodes must be >= 1");
  if (!(config.lambda > 0.0) || !std::isfinite(config.lambda))
    add("lambda", "lambda must be > 0");
  if (config.cost_unit.empty()) add("cost_unit", "cost_unit must be non-empty");
  if (config.task.task_id.empty()) add("task.task_id", "task_id must be non-empty");
  if (!loss_compatible(config.task.loss_kind, config.task.output_kind))
    add("task.loss_kind", "loss kind is incompatible with the output kind");
  if (config.task.categorical() && config.task.labels.empty())
    add("task.labels", "categorical task needs labels");
  if (config.task.output_kind == OutputKind::Binary && config.task.labels.size() != 2)
    add("task.labels", "binary task needs exactly 2 labels");

  if (config.truth_kind == TruthKind::UniformReal) {
    if (config.task.categorical())
      add("truth.distribution", "uniform-real requires a real-scalar task");
    if (!(config.truth_lo <= config.truth_hi) || !std::isfinite(config.truth_lo) ||
        !std::isfinite(config.truth_hi))
      add("truth.lo", "uniform-real needs finite lo <= hi");
  } else {
    if (!config.task.categorical())
      add("truth.distribution", "categorical-weights requires a categorical or binary task");
    else if (config.weights.size() != config.task.labels.size())
      add("truth.weights", "weights need one entry per label");
    else
      check_weights_row(config.weights, "truth.weights", out);
  }

  validate_agent(config.human, config.task, "human", out);
  validate_agent(config.ai, config.task, "ai", out);
  for (Violation& v : validate_protocol(config.protocol, config.task))
    out.push_back({"", "protocol." + v.field, v.message});
  return out;
}

std::vector<EpisodeLog> simulate(const ScenarioConfig& config) {
  const std::vector<Violation> violations = validate_scenario(config);
  if (!violations.empty())
    throw Error("invalid scenario: " + violations.front().field + ": " +
                violations.front().message);

  const bool record_rounds = config.protocol.kind == ProtocolKind::IterativeDeliberation;
  std::vector<EpisodeLog> logs(config.n_episodes);
  for (std::size_t e = 0; e < config.n_episodes; ++e) {
    EpisodeLog& log = logs[e];
    log.episode_id = padded((config.scenario_id + "-ep").c_str(), e, 3);
    log.task = config.task;
    log.protocol_id = config.protocol.protocol_id;
    log.cost_unit = config.cost_unit;
    log.records.reserve(config.n_records);
    for (std::size_t i = 0; i < config.n_records; ++i) {
      const Prediction truth = sample_truth(config, e, i);
      const Prediction y_human = sample_agent(config.human, truth, config, rng::Tag::Human, e, i);
      const Prediction y_ai = sample_agent(config.ai, truth, config, rng::Tag::Ai, e, i);
      const ProtocolOutcome outcome =
          run_protocol(config.protocol, y_human, y_ai, truth, config.task);

      InteractionRecord record;
      record.instance_id = padded("r", i, 4);
      record.y_true = truth;
      record.y_human = y_human;
      record.y_ai = y_ai;
      record.y_team = outcome.y_team;
      record.cost = outcome.cost_incurred;
      if (record_rounds) record.rounds = outcome.rounds_used;
      log.records.push_back(std::move(record));
    }
  }
  return logs;
}

std::vector<std::string> sweep_axes() {
  return {"lambda",
          "human.bias", "human.noise_sd", "human.error_rate",
          "ai.bias", "ai.noise_sd", "ai.error_rate",
          "protocol.threshold", "protocol.weight_human", "protocol.step",
          "protocol.rounds", "protocol.per_round_cost", "protocol.base_cost"};
}

namespace {

void apply_axis(ScenarioConfig& config, const std::string& axis, double value) {
  // Bare protocol field names are accepted; agent fields need a human./ai.
  // prefix because they exist on both sides.
  std::string name = axis;
  for (const char* bare : {"threshold", "weight_human", "step", "rounds", "per_round_cost",
                           "base_cost"})
    if (name == bare) name = "protocol." + name;
  for (const char* ambiguous : {"bias", "noise_sd", "error_rate"})
    if (name == ambiguous)
      throw Error("ambiguous axis '" + axis + "': use human." + axis + " or ai." + axis);

  if (name == "protocol.rounds") {
    if (!(value >= 0.0) || value != std::floor(value))
      throw Error("axis 'rounds' needs non-negative integer values");
    config.protocol.rounds = static_cast<std::uint64_t>(value);
    return;
  }

  double* slot = nullptr;
  if (name == "lambda") slot = &config.lambda;
  else if (name == "human.bias") slot = &config.human.bias;
  else if (name == "human.noise_sd") slot = &config.human.noise_sd;
  else if (name == "human.error_rate") slot = &config.human.error_rate;
  else if (name == "ai.bias") slot = &config.ai.bias;
  else if (name == "ai.noise_sd") slot = &config.ai.noise_sd;
  else if (name == "ai.error_rate") slot = &config.ai.error_rate;
  else if (name == "protocol.threshold") slot = &config.protocol.threshold;
  else if (name == "protocol.weight_human") slot = &config.protocol.weight_human;
  else if (name == "protocol.step") slot = &config.protocol.step;
  else if (name == "protocol.per_round_cost") slot = &config.protocol.per_round_cost;
  else if (name == "protocol.base_cost") slot = &config.protocol.base_cost;
  if (slot == nullptr) throw Error("unknown axis '" + axis + "'");
  *slot = value;
}

}  // namespace

SweepTable sweep(const ScenarioConfig& config, const std::string& axis,
                 std::span<const double> values) {
  if (values.empty()) throw Error("sweep needs at least one value");

  SweepTable table;
  table.scenario_id = config.scenario_id;
  table.axis = axis;
  for (std::size_t row = 0; row < values.size(); ++row) {
    ScenarioConfig variant = config;
    apply_axis(variant, axis, values[row]);
    variant.seed = rng::derive_row(config.seed, row);

    const std::vector<EpisodeLog> logs = simulate(variant);
    double gross = 0.0, net = 0.0;
    std::size_t achieved = 0;
    for (const EpisodeLog& log : logs) {
      const GainReport report = evaluate_episode(log, variant.lambda);
      gross += report.gross_gain;
      net += report.net_gain;
      achieved += static_cast<std::size_t>(report.ctp);
    }
    const double episodes = static_cast<double>(logs.size());
    table.rows.push_back({values[row], gross / episodes,
                          static_cast<double>(achieved) / episodes, net / episodes});
  }
  return table;
}

const char* to_string(AgentKind kind) {
  switch (kind) {
    case AgentKind::AdditiveBias: return "additive-bias";
    case AgentKind::LabelFlip: return "label-flip";
    case AgentKind::Perfect: return "perfect";
  }
  return "?";
}

const char* to_string(TruthKind kind) {
  switch (kind) {
    case TruthKind::UniformReal: return "uniform-real";
    case TruthKind::CategoricalWeights: return "categorical-weights";
  }
  return "?";
}

std::optional<AgentKind> agent_kind_from(const std::string& name) {
  if (name == "additive-bias") return AgentKind::AdditiveBias;
  if (name == "label-flip") return AgentKind::LabelFlip;
  if (name == "perfect") return AgentKind::Perfect;
  return std::nullopt;
}

std::optional<TruthKind> truth_kind_from(const std::string& name) {
  if (name == "uniform-real") return TruthKind::UniformReal;
  if (name == "categorical-weights") return TruthKind::CategoricalWeights;
  return std::nullopt;
}

}  // namespace ctpkit
