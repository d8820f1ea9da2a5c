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
#include <vector>

#include "ctpkit/core.hpp"

// Quantitative evaluation of an episode: empirical losses, the binary
// complementarity indicator, gross/net gain with the cost-aware efficiency
// verdict, per-instance reliance classification, stability across windows,
// and bootstrap uncertainty. All functions are pure.

namespace ctpkit {

// The three empirical mean losses over one dataset.
struct LossSummary {
  double loss_human = 0.0;
  double loss_ai = 0.0;
  double loss_team = 0.0;
  std::size_t n = 0;
};

// CTP and gain per window plus the fraction of windows achieving
// complementarity. window_size is the window length in records for windowed
// single-episode profiles and 1 (one episode per window) for cross-episode
// profiles.
struct StabilityProfile {
  std::size_t window_size = 0;
  std::vector<int> ctp_series;
  double stability = 0.0;
  std::vector<double> gain_series;
};

enum class GainStatistic { GrossGain, NetGain, LossTeam };

// Percentile bootstrap interval; deterministic under a fixed seed. lower <=
// upper always holds; lower <= point <= upper is not guaranteed in
// pathological resampling cases.
struct BootstrapInterval {
  GainStatistic statistic = GainStatistic::GrossGain;
  double point = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.0;
  std::uint64_t resamples = 0;
  std::uint64_t seed = 0;
};

// Mean pointwise loss of each predictor column under log.task.loss_kind.
// Throws Error on an empty episode or a loss/output-kind mismatch.
LossSummary aggregate_losses(const EpisodeLog& log);

// Binary complementarity indicator: 1 iff the team improves on the better
// standalone agent by strictly more than `tolerance` (default 0 is the
// strict definition; a positive value gives the tolerance-based variant).
int ctp(const LossSummary& summary, double tolerance = 0.0);

// min(loss_human, loss_ai) - loss_team. Defined for every episode; negative
// and zero values are reported rather than suppressed, preserving
// ctp == 1 iff gross_gain > 0.
double gross_gain(const LossSummary& summary);

// gross - lambda * total_cost, with lambda in loss-units per cost-unit.
// Throws Error when lambda <= 0.
double net_gain(double gross, double lambda, double total_cost);

// UndefinedZeroCost when total_cost == 0 (the ratio test needs c > 0);
// otherwise Efficient exactly when net_gain > 0, equivalently when
// gross / total_cost > lambda.
Efficiency efficiency_verdict(double gross, double lambda, double total_cost);

// Full gain analysis for one episode; total_cost is the sum of record costs.
GainReport evaluate_episode(const EpisodeLog& log, double lambda);

// Per-instance reliance behaviour. For categorical tasks an agent is right
// when it matches y_true exactly; for real-scalar tasks it is right when its
// pointwise loss is strictly below the other agent's, ties being scored as
// both-correct (both losses zero) or both-wrong.
RelianceVerdict classify_reliance(const InteractionRecord& record, const TaskSpec& task);

// One window per episode, in input order. All episodes must share task and
// protocol; throws Error("heterogeneous episodes") otherwise.
StabilityProfile stability_profile(std::span<const EpisodeLog> logs, double lambda);

// Splits one episode into consecutive windows of `window` records (the last
// window may be shorter) and profiles the windows in order.
StabilityProfile windowed_stability(const EpisodeLog& log, std::size_t window, double lambda);

// Percentile bootstrap over record-level resampling with replacement.
// Resample b draws record indices word(seed, Tag::Bootstrap, b, j, 0) % n for
// j = 0..n-1; the percentile at q interpolates linearly between order
// statistics at rank q * (resamples - 1). Requires resamples >= 100,
// 0 < level < 1, n >= 2.
BootstrapInterval bootstrap_gain(const EpisodeLog& log, double lambda, std::uint64_t resamples,
                                 double level, std::uint64_t seed,
                                 GainStatistic statistic = GainStatistic::GrossGain);

const char* to_string(GainStatistic statistic);

}  // namespace ctpkit
