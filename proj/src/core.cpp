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
#include "ctpkit/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_set>

namespace ctpkit {

namespace {

bool plain_token(const std::string& s) {
  if (s.empty()) return false;
  return s.find_first_of("\t\n\r") == std::string::npos;
}

bool two_digits(const std::string& s, std::size_t at) {
  return at + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[at])) &&
         std::isdigit(static_cast<unsigned char>(s[at + 1]));
}

}  // namespace

bool loss_compatible(LossKind loss, OutputKind output) {
  switch (loss) {
    case LossKind::SquaredError:
    case LossKind::AbsoluteError:
      return output == OutputKind::RealScalar;
    case LossKind::ZeroOne:
      return output == OutputKind::Categorical || output == OutputKind::Binary;
  }
  return false;
}

bool conforms(const Prediction& value, const TaskSpec& task) {
  if (task.output_kind == OutputKind::RealScalar) {
    const double* r = std::get_if<double>(&value);
    return r != nullptr && std::isfinite(*r);
  }
  const std::string* label = std::get_if<std::string>(&value);
  if (label == nullptr) return false;
  return std::find(task.labels.begin(), task.labels.end(), *label) != task.labels.end();
}

double pointwise_loss(LossKind kind, const Prediction& predicted, const Prediction& truth) {
  if (kind == LossKind::ZeroOne) {
    const std::string* a = std::get_if<std::string>(&predicted);
    const std::string* b = std::get_if<std::string>(&truth);
    if (a == nullptr || b == nullptr) throw Error("incompatible loss: zero-one needs labels");
    return *a == *b ? 0.0 : 1.0;
  }
  const double* a = std::get_if<double>(&predicted);
  const double* b = std::get_if<double>(&truth);
  if (a == nullptr || b == nullptr) throw Error("incompatible loss: real loss needs real values");
  const double d = *a - *b;
  return kind == LossKind::SquaredError ? d * d : std::fabs(d);
}

bool valid_timestamp(const std::string& s) {
  // YYYY-MM-DDTHH:MM:SS[.fff...][Z|+HH:MM|-HH:MM]
  if (s.size() < 19) return false;
  for (std::size_t i = 0; i < 4; ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  if (s[4] != '-' || !two_digits(s, 5) || s[7] != '-' || !two_digits(s, 8)) return false;
  if (s[10] != 'T') return false;
  if (!two_digits(s, 11) || s[13] != ':' || !two_digits(s, 14) || s[16] != ':' ||
      !two_digits(s, 17))
    return false;
  std::size_t i = 19;
  if (i < s.size() && s[i] == '.') {
    ++i;
    std::size_t digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
    if (digits == 0) return false;
  }
  if (i == s.size()) return true;
  if (s[i] == 'Z') return i + 1 == s.size();
  if (s[i] == '+' || s[i] == '-')
    return i + 6 == s.size() && two_digits(s, i + 1) && s[i + 3] == ':' && two_digits(s, i + 4);
  return false;
}

std::vector<Violation> validate_episode(const EpisodeLog& log) {
  std::vector<Violation> out;
  auto add = [&out](std::string instance, std::string field, std::string message) {
    out.push_back({std::move(instance), std::move(field), std::move(message)});
  };

  if (log.episode_id.empty()) add("", "episode_id", "episode_id must be non-empty");
  if (log.cost_unit.empty()) add("", "cost_unit", "cost_unit must be non-empty");
  if (log.task.task_id.empty()) add("", "task_id", "task_id must be non-empty");

  const TaskSpec& task = log.task;
  if (task.categorical()) {
    if (task.labels.empty()) add("", "labels", "categorical task needs a non-empty label set");
    std::unordered_set<std::string> seen;
    for (const std::string& label : task.labels) {
      if (!plain_token(label)) add("", "labels", "label must be a non-empty single-line token");
      if (!seen.insert(label).second) add("", "labels", "duplicate label '" + label + "'");
    }
    if (task.output_kind == OutputKind::Binary && task.labels.size() != 2)
      add("", "labels", "binary task needs exactly 2 labels");
  } else if (!task.labels.empty()) {
    add("", "labels", "real-scalar task must not carry labels");
  }
  if (!loss_compatible(task.loss_kind, task.output_kind))
    add("", "loss_kind", std::string("loss '") + to_string(task.loss_kind) +
                             "' is incompatible with output kind '" +
                             to_string(task.output_kind) + "'");

  if (log.records.empty()) add("", "records", "episode has no records (n >= 1 required)");

  std::unordered_set<std::string> ids;
  for (const InteractionRecord& record : log.records) {
    const std::string& id = record.instance_id;
    if (!plain_token(id)) add(id, "instance_id", "instance_id must be a non-empty single-line token");
    if (!ids.insert(id).second) add(id, "instance_id", "duplicate instance_id '" + id + "'");

    auto check_value = [&](const Prediction& value, const char* field) {
      if (!conforms(value, task))
        add(id, field, std::string(field) + " does not conform to output kind '" +
                           to_string(task.output_kind) + "'");
    };
    check_value(record.y_true, "y_true");
    check_value(record.y_human, "y_human");
    check_value(record.y_ai, "y_ai");
    check_value(record.y_team, "y_team");

    if (!(record.cost >= 0.0) || !std::isfinite(record.cost))
      add(id, "cost", "cost must be a finite non-negative real");
    if (record.timestamp && !valid_timestamp(*record.timestamp))
      add(id, "timestamp", "timestamp is not an ISO-8601 instant");
  }
  return out;
}

const char* to_string(OutputKind kind) {
  switch (kind) {
    case OutputKind::RealScalar: return "real-scalar";
    case OutputKind::Categorical: return "categorical";
    case OutputKind::Binary: return "binary";
  }
  return "?";
}

const char* to_string(LossKind kind) {
  switch (kind) {
    case LossKind::SquaredError: return "squared-error";
    case LossKind::AbsoluteError: return "absolute-error";
    case LossKind::ZeroOne: return "zero-one";
  }
  return "?";
}

const char* to_string(Efficiency verdict) {
  switch (verdict) {
    case Efficiency::Efficient: return "efficient";
    case Efficiency::Inefficient: return "inefficient";
    case Efficiency::UndefinedZeroCost: return "undefined-zero-cost";
  }
  return "?";
}

const char* to_string(RelianceVerdict verdict) {
  switch (verdict) {
    case RelianceVerdict::AppropriateSelfReliance: return "appropriate-self-reliance";
    case RelianceVerdict::AppropriateAiReliance: return "appropriate-ai-reliance";
    case RelianceVerdict::InappropriateSelfReliance: return "inappropriate-self-reliance";
    case RelianceVerdict::InappropriateAiReliance: return "inappropriate-ai-reliance";
    case RelianceVerdict::BothCorrectSelection: return "both-correct-selection";
    case RelianceVerdict::BothWrongSelection: return "both-wrong-selection";
    case RelianceVerdict::NonRelianceOutput: return "non-reliance-output";
  }
  return "?";
}

std::optional<OutputKind> output_kind_from(const std::string& name) {
  if (name == "real-scalar") return OutputKind::RealScalar;
  if (name == "categorical") return OutputKind::Categorical;
  if (name == "binary") return OutputKind::Binary;
  return std::nullopt;
}

std::optional<LossKind> loss_kind_from(const std::string& name) {
  if (name == "squared-error") return LossKind::SquaredError;
  if (name == "absolute-error") return LossKind::AbsoluteError;
  if (name == "zero-one") return LossKind::ZeroOne;
  return std::nullopt;
}

}  // namespace ctpkit
