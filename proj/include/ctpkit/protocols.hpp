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
#include <string>
#include <utility>
#include <vector>

#include "ctpkit/core.hpp"

// Interaction protocols: how the two agent predictions are (possibly)
// updated over rounds and then combined into one team output, with linear
// cost accounting (base_cost + rounds * per_round_cost, charged per record).

namespace ctpkit {

// The oracle selector consumes ground truth, which no deployable protocol
// has at decision time; it is an ex-post audit device that bounds what any
// per-instance selector could have achieved.
enum class ProtocolKind {
  SelfReliance,          // team = human prediction
  AiReliance,            // team = AI prediction
  OracleSelector,        // team = whichever input is pointwise closer to truth
  ThresholdSelector,     // defer to AI on (near-)agreement, else keep human
  Averaging,             // real-scalar: weight_human * human + (1-w) * ai
  IterativeDeliberation, // real-scalar: both inputs contract toward the midpoint
};

struct ProtocolSpec {
  std::string protocol_id;
  ProtocolKind kind = ProtocolKind::SelfReliance;
  double threshold = 0.0;      // threshold-selector: max |human - ai| for deference
  double weight_human = 0.5;   // averaging, in [0, 1]
  std::uint64_t rounds = 0;    // iterative-deliberation
  double step = 1.0;           // iterative-deliberation, in (0, 1]
  double per_round_cost = 0.0;
  double base_cost = 0.0;
};

// Result of one protocol execution. The trace holds the (human, ai) input
// pair before any update plus one entry per round; selector protocols never
// update, so their trace has exactly one entry.
struct ProtocolOutcome {
  Prediction y_team;
  std::uint64_t rounds_used = 0;
  double cost_incurred = 0.0;
  std::vector<std::pair<Prediction, Prediction>> trace;
};

// Validates the protocol parameters against the task it will run under;
// empty result means usable. Violations use the protocol_id as the instance field.
std::vector<Violation> validate_protocol(const ProtocolSpec& spec, const TaskSpec& task);

// Executes one interaction. y_true is required by the oracle selector only.
// Throws Error for protocol/task mismatches ("protocol requires real-scalar
// outputs") and for a missing oracle truth ("oracle requires ground truth").
ProtocolOutcome run_protocol(const ProtocolSpec& spec, const Prediction& y_human,
                             const Prediction& y_ai, const std::optional<Prediction>& y_true,
                             const TaskSpec& task);

// True exactly for the four selector kinds, whose team output always equals
// one of the two inputs. Averaging and deliberation leave that set: they
// augment the output space.
bool is_trivial(const ProtocolSpec& spec);

const char* to_string(ProtocolKind kind);
std::optional<ProtocolKind> protocol_kind_from(const std::string& name);

}  // namespace ctpkit
