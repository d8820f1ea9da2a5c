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
#include "ctpkit/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "ctpkit/rng.hpp"

namespace ctpkit {

namespace {

void require_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw Error("invalid conversion rate: lambda must be > 0");
}

// Mean losses over [first, last) of the episode's records.
LossSummary summarize_range(const EpisodeLog& log, std::size_t first, std::size_t last) {
  const LossKind loss = log.task.loss_kind;
  double human = 0.0, ai = 0.0, team = 0.0;
  for (std::size_t i = first; i < last; ++i) {
    const InteractionRecord& r = log.records[i];
    human += pointwise_loss(loss, r.y_human, r.y_true);
    ai += pointwise_loss(loss, r.y_ai, r.y_true);
    team += pointwise_loss(loss, r.y_team, r.y_true);
  }
  const double n = static_cast<double>(last - first);
  return {human / n, ai / n, team / n, last - first};
}

bool same_task(const TaskSpec& a, const TaskSpec& b) {
  return a.task_id == b.task_id && a.output_kind == b.output_kind &&
         a.loss_kind == b.loss_kind && a.labels == b.labels;
}

double percentile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

LossSummary aggregate_losses(const EpisodeLog& log) {
  if (log.records.empty()) throw Error("empty dataset");
  if (!loss_compatible(log.task.loss_kind, log.task.output_kind)) throw Error("incompatible loss");
  return summarize_range(log, 0, log.records.size());
}

int ctp(const LossSummary& summary, double tolerance) {
  return gross_gain(summary) > tolerance ? 1 : 0;
}

double gross_gain(const LossSummary& summary) {
  return std::min(summary.loss_human, summary.loss_ai) - summary.loss_team;
}

double net_gain(double gross, double lambda, double total_cost) {
  require_lambda(lambda);
  if (total_cost < 0.0) throw Error("total_cost must be non-negative");
  return std::fma(-lambda, total_cost, gross);
}

Efficiency efficiency_verdict(double gross, double lambda, double total_cost) {
  require_lambda(lambda);
  if (total_cost == 0.0) return Efficiency::UndefinedZeroCost;
  return net_gain(gross, lambda, total_cost) > 0.0 ? Efficiency::Efficient
                                                   : Efficiency::Inefficient;
}

GainReport evaluate_episode(const EpisodeLog& log, double lambda) {
  require_lambda(lambda);
  const std::vector<Violation> violations = validate_episode(log);
  if (!violations.empty())
    throw Error("invalid episode '" + log.episode_id + "': " + violations.front().field + ": " +
                violations.front().message);

  const LossSummary summary = aggregate_losses(log);
  double total_cost = 0.0;
  for (const InteractionRecord& r : log.records) total_cost += r.cost;

  GainReport report;
  report.episode_id = log.episode_id;
  report.n = summary.n;
  report.loss_human = summary.loss_human;
  report.loss_ai = summary.loss_ai;
  report.loss_team = summary.loss_team;
  report.ctp = ctp(summary);
  report.gross_gain = gross_gain(summary);
  report.total_cost = total_cost;
  report.lambda = lambda;
  report.net_gain = net_gain(report.gross_gain, lambda, total_cost);
  report.efficiency = efficiency_verdict(report.gross_gain, lambda, total_cost);
  return report;
}

RelianceVerdict classify_reliance(const InteractionRecord& record, const TaskSpec& task) {
  if (record.y_team != record.y_human && record.y_team != record.y_ai)
    return RelianceVerdict::NonRelianceOutput;

  bool human_right = false;
  bool ai_right = false;
  if (task.categorical()) {
    human_right = record.y_human == record.y_true;
    ai_right = record.y_ai == record.y_true;
  } else {
    const double human_loss = pointwise_loss(task.loss_kind, record.y_human, record.y_true);
    const double ai_loss = pointwise_loss(task.loss_kind, record.y_ai, record.y_true);
    if (human_loss == ai_loss) {
      human_right = ai_right = (human_loss == 0.0);
    } else {
      human_right = human_loss < ai_loss;
      ai_right = !human_right;
    }
  }

  if (human_right && ai_right) return RelianceVerdict::BothCorrectSelection;
  if (!human_right && !ai_right) return RelianceVerdict::BothWrongSelection;

  const bool followed_self = record.y_team == record.y_human;
  if (human_right)
    return followed_self ? RelianceVerdict::AppropriateSelfReliance
                         : RelianceVerdict::InappropriateAiReliance;
  return followed_self ? RelianceVerdict::InappropriateSelfReliance
                       : RelianceVerdict::AppropriateAiReliance;
}

StabilityProfile stability_profile(std::span<const EpisodeLog> logs, double lambda) {
  require_lambda(lambda);
  if (logs.empty()) throw Error("stability profile needs at least one episode");
  for (const EpisodeLog& log : logs) {
    if (!same_task(log.task, logs.front().task) || log.protocol_id != logs.front().protocol_id)
      throw Error("heterogeneous episodes");
  }

  StabilityProfile profile;
  profile.window_size = 1;
  std::size_t ones = 0;
  for (const EpisodeLog& log : logs) {
    const LossSummary summary = aggregate_losses(log);
    const int indicator = ctp(summary);
    ones += static_cast<std::size_t>(indicator);
    profile.ctp_series.push_back(indicator);
    profile.gain_series.push_back(gross_gain(summary));
  }
  profile.stability = static_cast<double>(ones) / static_cast<double>(logs.size());
  return profile;
}

StabilityProfile windowed_stability(const EpisodeLog& log, std::size_t window, double lambda) {
  require_lambda(lambda);
  if (window == 0) throw Error("window must be >= 1");
  if (log.records.empty()) throw Error("empty dataset");

  StabilityProfile profile;
  profile.window_size = window;
  std::size_t ones = 0;
  for (std::size_t first = 0; first < log.records.size(); first += window) {
    const std::size_t last = std::min(first + window, log.records.size());
    const LossSummary summary = summarize_range(log, first, last);
    const int indicator = ctp(summary);
    ones += static_cast<std::size_t>(indicator);
    profile.ctp_series.push_back(indicator);
    profile.gain_series.push_back(gross_gain(summary));
  }
  profile.stability = static_cast<double>(ones) / static_cast<double>(profile.ctp_series.size());
  return profile;
}

BootstrapInterval bootstrap_gain(const EpisodeLog& log, double lambda, std::uint64_t resamples,
                                 double level, std::uint64_t seed, GainStatistic statistic) {
  require_lambda(lambda);
  if (log.records.size() < 2) throw Error("insufficient records: bootstrap needs n >= 2");
  if (resamples < 100) throw Error("resamples must be >= 100");
  if (!(level > 0.0) || !(level < 1.0)) throw Error("level must lie in (0, 1)");

  const std::size_t n = log.records.size();
  const LossKind loss = log.task.loss_kind;
  std::vector<double> human(n), ai(n), team(n), cost(n);
  for (std::size_t i = 0; i < n; ++i) {
    const InteractionRecord& r = log.records[i];
    human[i] = pointwise_loss(loss, r.y_human, r.y_true);
    ai[i] = pointwise_loss(loss, r.y_ai, r.y_true);
    team[i] = pointwise_loss(loss, r.y_team, r.y_true);
    cost[i] = r.cost;
  }

  auto statistic_of = [&](auto index_at) {
    double h = 0.0, a = 0.0, t = 0.0, c = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t i = index_at(j);
      h += human[i];
      a += ai[i];
      t += team[i];
      c += cost[i];
    }
    const double dn = static_cast<double>(n);
    const double gross = std::min(h / dn, a / dn) - t / dn;
    switch (statistic) {
      case GainStatistic::GrossGain: return gross;
      case GainStatistic::NetGain: return net_gain(gross, lambda, c);
      case GainStatistic::LossTeam: return t / dn;
    }
    return gross;
  };

  BootstrapInterval interval;
  interval.statistic = statistic;
  interval.level = level;
  interval.resamples = resamples;
  interval.seed = seed;
  interval.point = statistic_of([](std::size_t j) { return j; });

  std::vector<double> stats(resamples);
  for (std::uint64_t b = 0; b < resamples; ++b) {
    stats[b] = statistic_of([&](std::size_t j) {
      return static_cast<std::size_t>(rng::word(seed, rng::Tag::Bootstrap, b, j, 0) % n);
    });
  }
  std::sort(stats.begin(), stats.end());
  const double alpha = 1.0 - level;
  interval.lower = percentile(stats, alpha / 2.0);
  interval.upper = percentile(stats, 1.0 - alpha / 2.0);
  return interval;
}

const char* to_string(GainStatistic statistic) {
  switch (statistic) {
    case GainStatistic::GrossGain: return "gross-gain";
    case GainStatistic::NetGain: return "net-gain";
    case GainStatistic::LossTeam: return "loss-team";
  }
  return "?";
}

}  // namespace ctpkit
