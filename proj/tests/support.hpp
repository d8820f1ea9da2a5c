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
#include <string>
#include <vector>

#include "ctpkit/core.hpp"

// Test-side helpers. The generator below is written from scratch (SplitMix64
// stream) so that generated inputs do not depend on the library's keyed RNG.

namespace testsupport {

struct Gen {
  std::uint64_t state;

  explicit Gen(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

  std::uint64_t below(std::uint64_t n) { return next() % n; }

  // Dyadic rational i / 2^frac_bits with |value| <= magnitude; exactly
  // representable, so double arithmetic on small products stays exact.
  double dyadic(double magnitude, int frac_bits) {
    const double scale = static_cast<double>(std::int64_t(1) << frac_bits);
    const std::int64_t steps = static_cast<std::int64_t>(magnitude * scale);
    const std::int64_t i = static_cast<std::int64_t>(below(2 * steps + 1)) - steps;
    return static_cast<double>(i) / scale;
  }

  double positive_dyadic(double magnitude, int frac_bits) {
    const double scale = static_cast<double>(std::int64_t(1) << frac_bits);
    const std::int64_t steps = static_cast<std::int64_t>(magnitude * scale);
    return static_cast<double>(1 + below(steps)) / scale;
  }
};

inline ctpkit::TaskSpec real_task(const std::string& id = "regr",
                                  ctpkit::LossKind loss = ctpkit::LossKind::SquaredError) {
  ctpkit::TaskSpec task;
  task.task_id = id;
  task.output_kind = ctpkit::OutputKind::RealScalar;
  task.loss_kind = loss;
  return task;
}

inline ctpkit::TaskSpec binary_task(const std::string& id = "diag") {
  ctpkit::TaskSpec task;
  task.task_id = id;
  task.output_kind = ctpkit::OutputKind::Binary;
  task.loss_kind = ctpkit::LossKind::ZeroOne;
  task.labels = {"neg", "pos"};
  return task;
}

inline ctpkit::InteractionRecord real_record(const std::string& id, double y_true,
                                             double y_human, double y_ai, double y_team,
                                             double cost = 0.0) {
  ctpkit::InteractionRecord record;
  record.instance_id = id;
  record.y_true = y_true;
  record.y_human = y_human;
  record.y_ai = y_ai;
  record.y_team = y_team;
  record.cost = cost;
  return record;
}

inline ctpkit::InteractionRecord label_record(const std::string& id, const std::string& y_true,
                                              const std::string& y_human,
                                              const std::string& y_ai, const std::string& y_team,
                                              double cost = 0.0) {
  ctpkit::InteractionRecord record;
  record.instance_id = id;
  record.y_true = y_true;
  record.y_human = y_human;
  record.y_ai = y_ai;
  record.y_team = y_team;
  record.cost = cost;
  return record;
}

inline ctpkit::EpisodeLog episode(ctpkit::TaskSpec task,
                                  std::vector<ctpkit::InteractionRecord> records,
                                  const std::string& id = "ep-test",
                                  const std::string& protocol = "test-protocol") {
  ctpkit::EpisodeLog log;
  log.episode_id = id;
  log.task = std::move(task);
  log.protocol_id = protocol;
  log.cost_unit = "minutes";
  log.records = std::move(records);
  return log;
}

// The analytic construction used throughout: truths at 0, human at -eps, AI
// at +eps/2, team at the unweighted average -eps/4. All values and losses
// are exact in binary floating point.
inline ctpkit::EpisodeLog contraction_episode(double eps, std::size_t n, double first_cost = 0.0,
                                              const std::string& id = "contraction") {
  std::vector<ctpkit::InteractionRecord> records;
  for (std::size_t i = 0; i < n; ++i)
    records.push_back(real_record("r" + std::to_string(i), 0.0, -eps, 0.5 * eps, -0.25 * eps,
                                  i == 0 ? first_cost : 0.0));
  return episode(real_task(), std::move(records), id, "averaging-0.5");
}

}  // namespace testsupport
