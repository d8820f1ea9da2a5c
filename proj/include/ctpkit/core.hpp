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
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

// Domain types shared by every other module: prediction tasks, interaction
// records, episode logs, and the reports computed from them. Pure data with
// validation; no I/O here.

namespace ctpkit {

// Base error for all domain failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable or unwritable path.
class IoError : public Error {
 public:
  using Error::Error;
};

// Parse failure with a 1-based line (and optional column) position.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column = 0)
      : Error(format(message, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

  // Same error with "<prefix>: " prepended (typically a file name).
  ParseError contextualized(const std::string& prefix) const {
    return ParseError(PreFormatted{}, prefix + ": " + what(), line_, column_);
  }

 private:
  struct PreFormatted {};
  ParseError(PreFormatted, const std::string& text, std::size_t line, std::size_t column)
      : Error(text), line_(line), column_(column) {}

  static std::string format(const std::string& message, std::size_t line, std::size_t column) {
    std::string s = "line " + std::to_string(line);
    if (column > 0) s += ", column " + std::to_string(column);
    return s + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
};

enum class OutputKind { RealScalar, Categorical, Binary };

// Pointwise loss l(y_hat, y) >= 0 with l(y, y) = 0.
enum class LossKind { SquaredError, AbsoluteError, ZeroOne };

// A prediction is either a real value or a label from the task's label set.
// Binary tasks are categorical tasks with a two-label set.
using Prediction = std::variant<double, std::string>;

// The prediction task: output-space kind plus the pointwise loss used to
// score predictions against ground truth. Categorical and binary tasks carry
// their label set.
struct TaskSpec {
  std::string task_id;
  OutputKind output_kind = OutputKind::RealScalar;
  LossKind loss_kind = LossKind::SquaredError;
  std::vector<std::string> labels;

  bool categorical() const { return output_kind != OutputKind::RealScalar; }
};

// One evaluated instance: ground truth, the two agent predictions, the team
// output, and the interaction cost attributed to this instance. `rounds`
// counts interaction-function applications when the protocol records them.
struct InteractionRecord {
  std::string instance_id;
  Prediction y_true;
  Prediction y_human;
  Prediction y_ai;
  Prediction y_team;
  double cost = 0.0;
  std::optional<std::string> timestamp;  // ISO-8601 instant
  std::optional<std::uint64_t> rounds;
};

// An ordered dataset evaluated under one task and one protocol.
struct EpisodeLog {
  std::string episode_id;
  TaskSpec task;
  std::string protocol_id;
  std::string cost_unit;
  std::vector<InteractionRecord> records;
};

enum class Efficiency { Efficient, Inefficient, UndefinedZeroCost };

// Everything the gain analysis produces for one episode. Invariants:
// ctp == 1 iff gross_gain > 0; net_gain == gross_gain - lambda * total_cost;
// efficiency is UndefinedZeroCost exactly when total_cost == 0.
struct GainReport {
  std::string episode_id;
  std::size_t n = 0;
  double loss_human = 0.0;
  double loss_ai = 0.0;
  double loss_team = 0.0;
  int ctp = 0;
  double gross_gain = 0.0;
  double total_cost = 0.0;
  double lambda = 0.0;
  double net_gain = 0.0;
  Efficiency efficiency = Efficiency::UndefinedZeroCost;
};

// Per-instance reliance behaviour. NonRelianceOutput is assigned exactly when
// the team output matches neither agent's prediction.
enum class RelianceVerdict {
  AppropriateSelfReliance,
  AppropriateAiReliance,
  InappropriateSelfReliance,
  InappropriateAiReliance,
  BothCorrectSelection,
  BothWrongSelection,
  NonRelianceOutput,
};

// One invariant violation found by validate_episode. `instance_id` is empty
// for episode-level violations.
struct Violation {
  std::string instance_id;
  std::string field;
  std::string message;
};

// Reports every invariant violation in the log; an empty result means the
// log is valid. Never throws, never mutates.
std::vector<Violation> validate_episode(const EpisodeLog& log);

// True when the value fits the task's output kind (finite real for
// real-scalar tasks, known label otherwise).
bool conforms(const Prediction& value, const TaskSpec& task);

// Pointwise loss. Throws Error("incompatible loss") when the values do not
// fit the loss kind.
double pointwise_loss(LossKind kind, const Prediction& predicted, const Prediction& truth);

// True when the loss kind applies to the output kind (squared/absolute error
// need real-scalar outputs; zero-one needs categorical or binary ones).
bool loss_compatible(LossKind loss, OutputKind output);

// Minimal ISO-8601 instant check: YYYY-MM-DDTHH:MM:SS with optional
// fractional seconds and optional Z or +-HH:MM offset.
bool valid_timestamp(const std::string& s);

const char* to_string(OutputKind kind);
const char* to_string(LossKind kind);
const char* to_string(Efficiency verdict);
const char* to_string(RelianceVerdict verdict);
std::optional<OutputKind> output_kind_from(const std::string& name);
std::optional<LossKind> loss_kind_from(const std::string& name);

}  // namespace ctpkit
