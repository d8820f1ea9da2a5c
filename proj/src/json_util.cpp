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
#include "json_util.hpp"

namespace ctpkit::jsonutil {

using nlohmann::json;

namespace {

Efficiency efficiency_from(const std::string& name) {
  if (name == "efficient") return Efficiency::Efficient;
  if (name == "inefficient") return Efficiency::Inefficient;
  if (name == "undefined-zero-cost") return Efficiency::UndefinedZeroCost;
  throw Error("unknown efficiency verdict '" + name + "'");
}

GainStatistic statistic_from(const std::string& name) {
  if (name == "gross-gain") return GainStatistic::GrossGain;
  if (name == "net-gain") return GainStatistic::NetGain;
  if (name == "loss-team") return GainStatistic::LossTeam;
  throw Error("unknown statistic '" + name + "'");
}

}  // namespace

json task_to_json(const TaskSpec& task) {
  json j;
  j["task_id"] = task.task_id;
  j["output_kind"] = to_string(task.output_kind);
  j["loss_kind"] = to_string(task.loss_kind);
  if (task.categorical()) j["labels"] = task.labels;
  return j;
}

TaskSpec task_from_json(const json& j) {
  TaskSpec task;
  task.task_id = j.at("task_id").get<std::string>();
  const auto output = output_kind_from(j.at("output_kind").get<std::string>());
  if (!output) throw Error("unknown output_kind");
  task.output_kind = *output;
  const auto loss = loss_kind_from(j.at("loss_kind").get<std::string>());
  if (!loss) throw Error("unknown loss_kind");
  task.loss_kind = *loss;
  if (j.contains("labels")) task.labels = j.at("labels").get<std::vector<std::string>>();
  return task;
}

json gain_to_json(const GainReport& report) {
  json j;
  j["episode_id"] = report.episode_id;
  j["n"] = report.n;
  j["loss_human"] = report.loss_human;
  j["loss_ai"] = report.loss_ai;
  j["loss_team"] = report.loss_team;
  j["ctp"] = report.ctp;
  j["gross_gain"] = report.gross_gain;
  j["total_cost"] = report.total_cost;
  j["lambda"] = report.lambda;
  j["net_gain"] = report.net_gain;
  j["efficiency"] = to_string(report.efficiency);
  return j;
}

GainReport gain_from_json(const json& j) {
  GainReport report;
  report.episode_id = j.at("episode_id").get<std::string>();
  report.n = j.at("n").get<std::size_t>();
  report.loss_human = j.at("loss_human").get<double>();
  report.loss_ai = j.at("loss_ai").get<double>();
  report.loss_team = j.at("loss_team").get<double>();
  report.ctp = j.at("ctp").get<int>();
  report.gross_gain = j.at("gross_gain").get<double>();
  report.total_cost = j.at("total_cost").get<double>();
  report.lambda = j.at("lambda").get<double>();
  report.net_gain = j.at("net_gain").get<double>();
  report.efficiency = efficiency_from(j.at("efficiency").get<std::string>());
  return report;
}

json stability_to_json(const StabilityProfile& profile) {
  json j;
  j["window_size"] = profile.window_size;
  j["ctp_series"] = profile.ctp_series;
  j["stability"] = profile.stability;
  j["gain_series"] = profile.gain_series;
  return j;
}

StabilityProfile stability_from_json(const json& j) {
  StabilityProfile profile;
  profile.window_size = j.at("window_size").get<std::size_t>();
  profile.ctp_series = j.at("ctp_series").get<std::vector<int>>();
  profile.stability = j.at("stability").get<double>();
  profile.gain_series = j.at("gain_series").get<std::vector<double>>();
  return profile;
}

json bootstrap_to_json(const BootstrapInterval& interval) {
  json j;
  j["statistic"] = to_string(interval.statistic);
  j["point"] = interval.point;
  j["lower"] = interval.lower;
  j["upper"] = interval.upper;
  j["level"] = interval.level;
  j["resamples"] = interval.resamples;
  j["seed"] = interval.seed;
  return j;
}

BootstrapInterval bootstrap_from_json(const json& j) {
  BootstrapInterval interval;
  interval.statistic = statistic_from(j.at("statistic").get<std::string>());
  interval.point = j.at("point").get<double>();
  interval.lower = j.at("lower").get<double>();
  interval.upper = j.at("upper").get<double>();
  interval.level = j.at("level").get<double>();
  interval.resamples = j.at("resamples").get<std::uint64_t>();
  interval.seed = j.at("seed").get<std::uint64_t>();
  return interval;
}

}  // namespace ctpkit::jsonutil
