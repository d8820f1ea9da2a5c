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
#include "ctpkit/protocols.hpp"

#include <cmath>

namespace ctpkit {

namespace {

double as_real(const Prediction& value, const char* what) {
  const double* r = std::get_if<double>(&value);
  if (r == nullptr) throw Error(std::string("protocol requires real-scalar outputs: ") + what);
  return *r;
}

}  // namespace

bool is_trivial(const ProtocolSpec& spec) {
  switch (spec.kind) {
    case ProtocolKind::SelfReliance:
    case ProtocolKind::AiReliance:
    case ProtocolKind::OracleSelector:
    case ProtocolKind::ThresholdSelector:
      return true;
    case ProtocolKind::Averaging:
    case ProtocolKind::IterativeDeliberation:
      return false;
  }
  return false;
}

std::vector<Violation> validate_protocol(const ProtocolSpec& spec, const TaskSpec& task) {
  std::vector<Violation> out;
  auto add = [&](std::string field, std::string message) {
    out.push_back({spec.protocol_id, std::move(field), std::move(message)});
  };

  if (spec.protocol_id.empty()) add("protocol_id", "protocol_id must be non-empty");
  if (is_trivial(spec) && spec.rounds != 0)
    add("rounds", "trivial protocols take rounds = 0");
  if (spec.kind == ProtocolKind::Averaging &&
      !(spec.weight_human >= 0.0 && spec.weight_human <= 1.0))
    add("weight_human", "weight_human must lie in [0, 1]");
  if (spec.kind == ProtocolKind::IterativeDeliberation &&
      !(spec.step > 0.0 && spec.step <= 1.0))
    add("step", "step must lie in (0, 1]");
  if ((spec.kind == ProtocolKind::Averaging || spec.kind == ProtocolKind::IterativeDeliberation) &&
      task.categorical())
    add("kind", std::string(to_string(spec.kind)) + " requires a real-scalar task");
  if (spec.kind == ProtocolKind::ThresholdSelector && !task.categorical() &&
      !(spec.threshold >= 0.0))
    add("threshold", "threshold must be non-negative");
  if (!(spec.base_cost >= 0.0) || !std::isfinite(spec.base_cost))
    add("base_cost", "base_cost must be a finite non-negative real");
  if (!(spec.per_round_cost >= 0.0) || !std::isfinite(spec.per_round_cost))
    add("per_round_cost", "per_round_cost must be a finite non-negative real");
  return out;
}

ProtocolOutcome run_protocol(const ProtocolSpec& spec, const Prediction& y_human,
                             const Prediction& y_ai, const std::optional<Prediction>& y_true,
                             const TaskSpec& task) {
  ProtocolOutcome outcome;
  outcome.trace.emplace_back(y_human, y_ai);

  switch (spec.kind) {
    case ProtocolKind::SelfReliance:
      outcome.y_team = y_human;
      break;

    case ProtocolKind::AiReliance:
      outcome.y_team = y_ai;
      break;

    case ProtocolKind::OracleSelector: {
      if (!y_true) throw Error("oracle requires ground truth");
      const double human_loss = pointwise_loss(task.loss_kind, y_human, *y_true);
      const double ai_loss = pointwise_loss(task.loss_kind, y_ai, *y_true);
      // Ties keep the human's prediction.
      outcome.y_team = ai_loss < human_loss ? y_ai : y_human;
      break;
    }

    case ProtocolKind::ThresholdSelector: {
      bool defer;
      if (task.categorical()) {
        defer = y_human == y_ai;
      } else {
        defer = std::fabs(as_real(y_human, "threshold-selector") -
                          as_real(y_ai, "threshold-selector")) <= spec.threshold;
      }
      outcome.y_team = defer ? y_ai : y_human;
      break;
    }

    case ProtocolKind::Averaging: {
      const double h = as_real(y_human, "averaging");
      const double a = as_real(y_ai, "averaging");
      outcome.y_team = spec.weight_human * h + (1.0 - spec.weight_human) * a;
      break;
    }

    case ProtocolKind::IterativeDeliberation: {
      double h = as_real(y_human, "iterative-deliberation");
      double a = as_real(y_ai, "iterative-deliberation");
      for (std::uint64_t t = 0; t < spec.rounds; ++t) {
        const double mid = 0.5 * (h + a);
        h += spec.step * (mid - h);
        a += spec.step * (mid - a);
        outcome.trace.emplace_back(h, a);
      }
      outcome.rounds_used = spec.rounds;
      outcome.y_team = 0.5 * (h + a);
      break;
    }
  }

  outcome.cost_incurred =
      spec.base_cost + static_cast<double>(outcome.rounds_used) * spec.per_round_cost;
  return outcome;
}

const char* to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::SelfReliance: return "self-reliance";
    case ProtocolKind::AiReliance: return "ai-reliance";
    case ProtocolKind::OracleSelector: return "oracle-selector";
    case ProtocolKind::ThresholdSelector: return "threshold-selector";
    case ProtocolKind::Averaging: return "averaging";
    case ProtocolKind::IterativeDeliberation: return "iterative-deliberation";
  }
  return "?";
}

std::optional<ProtocolKind> protocol_kind_from(const std::string& name) {
  if (name == "self-reliance") return ProtocolKind::SelfReliance;
  if (name == "ai-reliance") return ProtocolKind::AiReliance;
  if (name == "oracle-selector") return ProtocolKind::OracleSelector;
  if (name == "threshold-selector") return ProtocolKind::ThresholdSelector;
  if (name == "averaging") return ProtocolKind::Averaging;
  if (name == "iterative-deliberation") return ProtocolKind::IterativeDeliberation;
  return std::nullopt;
}

}  // namespace ctpkit
