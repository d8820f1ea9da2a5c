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

#include <algorithm>
#include <cmath>

#include "ctpkit/protocols.hpp"
#include "support.hpp"

using namespace ctpkit;
using namespace testsupport;

namespace {

ProtocolSpec make(ProtocolKind kind) {
  ProtocolSpec spec;
  spec.protocol_id = "p";
  spec.kind = kind;
  return spec;
}

}  // namespace

TEST_CASE("self- and AI-reliance pass the chosen input through") {
  const TaskSpec task = real_task();
  const ProtocolOutcome self =
      run_protocol(make(ProtocolKind::SelfReliance), 3.0, 9.0, std::nullopt, task);
  CHECK(std::get<double>(self.y_team) == 3.0);
  CHECK(self.trace.size() == 1);
  CHECK(self.rounds_used == 0);

  const ProtocolOutcome ai =
      run_protocol(make(ProtocolKind::AiReliance), 3.0, 9.0, std::nullopt, task);
  CHECK(std::get<double>(ai.y_team) == 9.0);
  CHECK(ai.trace.size() == 1);
}

TEST_CASE("averaging forms the weighted mean") {
  ProtocolSpec spec = make(ProtocolKind::Averaging);
  spec.weight_human = 0.5;
  const TaskSpec task = real_task();
  const double eps = 3.25;
  const ProtocolOutcome outcome =
      run_protocol(spec, Prediction(-eps), Prediction(0.5 * eps), std::nullopt, task);
  CHECK(std::get<double>(outcome.y_team) == -0.25 * eps);
  CHECK(outcome.trace.size() == 1);

  spec.weight_human = 1.0;
  CHECK(std::get<double>(run_protocol(spec, 2.0, 8.0, std::nullopt, task).y_team) == 2.0);
  spec.weight_human = 0.0;
  CHECK(std::get<double>(run_protocol(spec, 2.0, 8.0, std::nullopt, task).y_team) == 8.0);
}

TEST_CASE("iterative deliberation contracts to the midpoint") {
  ProtocolSpec spec = make(ProtocolKind::IterativeDeliberation);
  spec.rounds = 1;
  spec.step = 1.0;
  spec.base_cost = 0.5;
  spec.per_round_cost = 0.25;
  const TaskSpec task = real_task();

  const ProtocolOutcome outcome = run_protocol(spec, 2.0, 8.0, std::nullopt, task);
  CHECK(outcome.rounds_used == 1);
  CHECK(outcome.trace.size() == 2);
  CHECK(std::get<double>(outcome.trace[1].first) == 5.0);
  CHECK(std::get<double>(outcome.trace[1].second) == 5.0);
  CHECK(std::get<double>(outcome.y_team) == 5.0);
  CHECK(outcome.cost_incurred == 0.75);

  spec.rounds = 4;
  spec.step = 0.5;
  const ProtocolOutcome partial = run_protocol(spec, 2.0, 8.0, std::nullopt, task);
  CHECK(partial.trace.size() == 5);
  CHECK(std::get<double>(partial.y_team) == 5.0);  // the midpoint is invariant
  CHECK(partial.cost_incurred == 0.5 + 4 * 0.25);
}

TEST_CASE("oracle selector picks the closer input, human on ties") {
  const TaskSpec task = real_task();
  const ProtocolOutcome closer =
      run_protocol(make(ProtocolKind::OracleSelector), 4.0, 7.0, Prediction(5.0), task);
  CHECK(std::get<double>(closer.y_team) == 4.0);

  const ProtocolOutcome tie =
      run_protocol(make(ProtocolKind::OracleSelector), 4.0, 6.0, Prediction(5.0), task);
  CHECK(std::get<double>(tie.y_team) == 4.0);

  const TaskSpec diagnosis = binary_task();
  const ProtocolOutcome labels = run_protocol(make(ProtocolKind::OracleSelector),
                                              Prediction(std::string("neg")),
                                              Prediction(std::string("pos")),
                                              Prediction(std::string("pos")), diagnosis);
  CHECK(std::get<std::string>(labels.y_team) == "pos");
}

TEST_CASE("threshold selector defers on (near-)agreement") {
  ProtocolSpec spec = make(ProtocolKind::ThresholdSelector);
  spec.threshold = 1.0;
  const TaskSpec task = real_task();
  CHECK(std::get<double>(run_protocol(spec, 4.0, 4.8, std::nullopt, task).y_team) == 4.8);
  CHECK(std::get<double>(run_protocol(spec, 4.0, 5.5, std::nullopt, task).y_team) == 4.0);
  CHECK(std::get<double>(run_protocol(spec, 4.0, 5.0, std::nullopt, task).y_team) == 5.0);

  const TaskSpec diagnosis = binary_task();
  CHECK(std::get<std::string>(run_protocol(spec, Prediction(std::string("pos")),
                                           Prediction(std::string("pos")), std::nullopt,
                                           diagnosis)
                                  .y_team) == "pos");
  CHECK(std::get<std::string>(run_protocol(spec, Prediction(std::string("neg")),
                                           Prediction(std::string("pos")), std::nullopt,
                                           diagnosis)
                                  .y_team) == "neg");
}

TEST_CASE("protocol error paths") {
  const TaskSpec diagnosis = binary_task();
  ProtocolSpec averaging = make(ProtocolKind::Averaging);
  CHECK_THROWS_AS(run_protocol(averaging, Prediction(std::string("pos")),
                               Prediction(std::string("neg")), std::nullopt, diagnosis),
                  Error);
  ProtocolSpec iterative = make(ProtocolKind::IterativeDeliberation);
  iterative.rounds = 2;
  CHECK_THROWS_AS(run_protocol(iterative, Prediction(std::string("pos")),
                               Prediction(std::string("neg")), std::nullopt, diagnosis),
                  Error);
  CHECK_THROWS_WITH_AS(
      run_protocol(make(ProtocolKind::OracleSelector), 1.0, 2.0, std::nullopt, real_task()),
      "oracle requires ground truth", Error);
}

TEST_CASE("triviality matches the selector family") {
  CHECK(is_trivial(make(ProtocolKind::SelfReliance)));
  CHECK(is_trivial(make(ProtocolKind::AiReliance)));
  CHECK(is_trivial(make(ProtocolKind::OracleSelector)));
  CHECK(is_trivial(make(ProtocolKind::ThresholdSelector)));
  ProtocolSpec averaging = make(ProtocolKind::Averaging);
  averaging.weight_human = 0.5;
  CHECK(!is_trivial(averaging));  // the averaged output augments the output space
  ProtocolSpec iterative = make(ProtocolKind::IterativeDeliberation);
  iterative.rounds = 3;
  iterative.step = 0.5;
  CHECK(!is_trivial(iterative));
}

TEST_CASE("validate_protocol flags bad parameters") {
  const TaskSpec task = real_task();
  ProtocolSpec averaging = make(ProtocolKind::Averaging);
  averaging.weight_human = 1.5;
  CHECK(!validate_protocol(averaging, task).empty());

  ProtocolSpec iterative = make(ProtocolKind::IterativeDeliberation);
  iterative.step = 0.0;
  CHECK(!validate_protocol(iterative, task).empty());

  ProtocolSpec selector = make(ProtocolKind::SelfReliance);
  selector.rounds = 2;
  CHECK(!validate_protocol(selector, task).empty());

  ProtocolSpec negative_cost = make(ProtocolKind::SelfReliance);
  negative_cost.base_cost = -1;
  CHECK(!validate_protocol(negative_cost, task).empty());

  ProtocolSpec fine = make(ProtocolKind::ThresholdSelector);
  fine.threshold = 0.5;
  CHECK(validate_protocol(fine, task).empty());
}

TEST_CASE("property: selector outputs stay in the input pair") {
  Gen gen(77);
  const TaskSpec task = real_task();
  const ProtocolKind selectors[] = {ProtocolKind::SelfReliance, ProtocolKind::AiReliance,
                                    ProtocolKind::OracleSelector, ProtocolKind::ThresholdSelector};
  for (int i = 0; i < 1000; ++i) {
    ProtocolSpec spec = make(selectors[gen.below(4)]);
    spec.threshold = gen.uniform(0, 3);
    const double human = gen.uniform(-10, 10);
    const double ai = gen.uniform(-10, 10);
    const double truth = gen.uniform(-10, 10);
    const ProtocolOutcome outcome = run_protocol(spec, human, ai, Prediction(truth), task);
    const double team = std::get<double>(outcome.y_team);
    CHECK((team == human || team == ai));
    CHECK(outcome.trace.size() == 1);
  }
}

TEST_CASE("property: oracle outcome never loses to either input") {
  Gen gen(78);
  const TaskSpec task = real_task();
  for (int i = 0; i < 1000; ++i) {
    const double truth = gen.uniform(-10, 10);
    const double human = gen.uniform(-10, 10);
    const double ai = gen.uniform(-10, 10);
    const ProtocolOutcome outcome =
        run_protocol(make(ProtocolKind::OracleSelector), human, ai, Prediction(truth), task);
    const double team_loss = pointwise_loss(task.loss_kind, outcome.y_team, truth);
    CHECK(team_loss <= pointwise_loss(task.loss_kind, human, truth));
    CHECK(team_loss <= pointwise_loss(task.loss_kind, ai, truth));
  }
}

TEST_CASE("property: combination outputs stay between the inputs") {
  Gen gen(79);
  const TaskSpec task = real_task();
  for (int i = 0; i < 1000; ++i) {
    const double human = gen.uniform(-50, 50);
    const double ai = gen.uniform(-50, 50);
    const double lo = std::min(human, ai);
    const double hi = std::max(human, ai);

    ProtocolSpec averaging = make(ProtocolKind::Averaging);
    averaging.weight_human = gen.uniform(0, 1);
    const double averaged =
        std::get<double>(run_protocol(averaging, human, ai, std::nullopt, task).y_team);
    CHECK(averaged >= lo);
    CHECK(averaged <= hi);

    ProtocolSpec iterative = make(ProtocolKind::IterativeDeliberation);
    iterative.rounds = gen.below(6);
    iterative.step = gen.uniform(0.1, 1.0);
    const double deliberated =
        std::get<double>(run_protocol(iterative, human, ai, std::nullopt, task).y_team);
    CHECK(deliberated >= lo);
    CHECK(deliberated <= hi);
  }
}

TEST_CASE("property: cost grows with rounds and runs are deterministic") {
  Gen gen(80);
  const TaskSpec task = real_task();
  for (int i = 0; i < 200; ++i) {
    ProtocolSpec spec = make(ProtocolKind::IterativeDeliberation);
    spec.step = 0.5;
    spec.base_cost = gen.uniform(0, 1);
    spec.per_round_cost = gen.uniform(0, 1);
    const double human = gen.uniform(-10, 10);
    const double ai = gen.uniform(-10, 10);

    double previous = -1;
    for (std::uint64_t rounds = 0; rounds < 4; ++rounds) {
      spec.rounds = rounds;
      const ProtocolOutcome outcome = run_protocol(spec, human, ai, std::nullopt, task);
      CHECK(outcome.cost_incurred >= previous);
      previous = outcome.cost_incurred;
      CHECK(outcome.trace.size() == rounds + 1);

      const ProtocolOutcome again = run_protocol(spec, human, ai, std::nullopt, task);
      CHECK(std::get<double>(again.y_team) == std::get<double>(outcome.y_team));
      CHECK(again.trace.size() == outcome.trace.size());
      for (std::size_t t = 0; t < again.trace.size(); ++t) {
        CHECK(std::get<double>(again.trace[t].first) ==
              std::get<double>(outcome.trace[t].first));
        CHECK(std::get<double>(again.trace[t].second) ==
              std::get<double>(outcome.trace[t].second));
      }
    }
  }
}
