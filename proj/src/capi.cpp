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
#include "ctpkit/ctpkit.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "ctpkit/assurance.hpp"
#include "ctpkit/core.hpp"
#include "ctpkit/ingest.hpp"
#include "ctpkit/metrics.hpp"
#include "ctpkit/simulator.hpp"
#include "ctpkit/version.hpp"
#include "json_util.hpp"

struct ctpk_log {
  ctpkit::EpisodeLog owned;
  const ctpkit::EpisodeLog* ref = nullptr;  // points at owned or at a logset entry

  const ctpkit::EpisodeLog& get() const { return ref ? *ref : owned; }
};

struct ctpk_logset {
  std::vector<ctpkit::EpisodeLog> logs;
  std::vector<ctpk_log> views;

  void build_views() {
    views.clear();
    views.reserve(logs.size());
    for (const ctpkit::EpisodeLog& log : logs) {
      ctpk_log view;
      view.ref = &log;
      views.push_back(std::move(view));
    }
  }
};

struct ctpk_scenario {
  ctpkit::ScenarioConfig config;
};

struct ctpk_assurance {
  ctpkit::AssuranceReport report;
};

namespace {

thread_local std::string g_last_error;

ctpk_status fail(ctpk_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class F>
ctpk_status guarded(F&& body) {
  try {
    body();
    return CTPK_OK;
  } catch (const ctpkit::ParseError& e) {
    return fail(CTPK_ERR_PARSE, e.what());
  } catch (const ctpkit::IoError& e) {
    return fail(CTPK_ERR_IO, e.what());
  } catch (const ctpkit::Error& e) {
    return fail(CTPK_ERR_DOMAIN, e.what());
  } catch (const std::exception& e) {
    return fail(CTPK_ERR_DOMAIN, e.what());
  }
}

char* alloc_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

bool null_arg(const void* p) { return p == nullptr; }

ctpk_status null_error() { return fail(CTPK_ERR_INVALID_ARGUMENT, "null argument"); }

int degenerate_of(const ctpkit::GainReport& report) {
  int flag = 0;
  if (report.loss_ai == 0.0) flag |= 1;
  if (report.loss_human == 0.0) flag |= 2;
  return flag;
}

void fill_gain(const ctpkit::GainReport& report, ctpk_gain* out) {
  out->n = report.n;
  out->loss_human = report.loss_human;
  out->loss_ai = report.loss_ai;
  out->loss_team = report.loss_team;
  out->ctp = report.ctp;
  out->gross_gain = report.gross_gain;
  out->total_cost = report.total_cost;
  out->lambda = report.lambda;
  out->net_gain = report.net_gain;
  out->efficiency = report.efficiency == ctpkit::Efficiency::Efficient      ? 1
                    : report.efficiency == ctpkit::Efficiency::Inefficient ? 0
                                                                            : -1;
  out->degenerate = degenerate_of(report);
}

ctpk_status copy_stability(const ctpkit::StabilityProfile& profile, double* out_stability,
                           int* ctp_series, double* gain_series, size_t capacity,
                           size_t* out_windows) {
  const std::size_t windows = profile.ctp_series.size();
  if ((ctp_series != nullptr || gain_series != nullptr) && capacity < windows)
    return fail(CTPK_ERR_INVALID_ARGUMENT,
                "series capacity " + std::to_string(capacity) + " is below the window count " +
                    std::to_string(windows));
  if (out_stability != nullptr) *out_stability = profile.stability;
  if (ctp_series != nullptr)
    std::memcpy(ctp_series, profile.ctp_series.data(), windows * sizeof(int));
  if (gain_series != nullptr)
    std::memcpy(gain_series, profile.gain_series.data(), windows * sizeof(double));
  if (out_windows != nullptr) *out_windows = windows;
  return CTPK_OK;
}

}  // namespace

extern "C" {

const char* ctpk_version(void) { return ctpkit::kVersion; }

const char* ctpk_last_error(void) { return g_last_error.c_str(); }

void ctpk_string_free(char* s) { std::free(s); }

/* --- episode logs ------------------------------------------------------- */

ctpk_status ctpk_log_read_file(const char* path, ctpk_log** out) {
  if (null_arg(path) || null_arg(out)) return null_error();
  return guarded([&] {
    auto log = std::make_unique<ctpk_log>();
    log->owned = ctpkit::read_log_file(path);
    *out = log.release();
  });
}

ctpk_status ctpk_log_parse(const char* bytes, size_t len, ctpk_log** out) {
  if (null_arg(bytes) || null_arg(out)) return null_error();
  return guarded([&] {
    auto log = std::make_unique<ctpk_log>();
    log->owned = ctpkit::read_log(std::string_view(bytes, len));
    *out = log.release();
  });
}

ctpk_status ctpk_log_render(const ctpk_log* log, char** out) {
  if (null_arg(log) || null_arg(out)) return null_error();
  return guarded([&] { *out = alloc_string(ctpkit::write_log(log->get())); });
}

ctpk_status ctpk_log_write_file(const ctpk_log* log, const char* path) {
  if (null_arg(log) || null_arg(path)) return null_error();
  return guarded([&] { ctpkit::write_log_file(log->get(), path); });
}

ctpk_status ctpk_log_validate(const ctpk_log* log, char** out) {
  if (null_arg(log) || null_arg(out)) return null_error();
  return guarded([&] {
    std::string text;
    for (const ctpkit::Violation& v : ctpkit::validate_episode(log->get())) {
      if (!v.instance_id.empty()) text += v.instance_id + ": ";
      text += v.field + ": " + v.message + "\n";
    }
    *out = alloc_string(text);
  });
}

const char* ctpk_log_episode_id(const ctpk_log* log) {
  return log == nullptr ? "" : log->get().episode_id.c_str();
}

size_t ctpk_log_record_count(const ctpk_log* log) {
  return log == nullptr ? 0 : log->get().records.size();
}

void ctpk_log_free(ctpk_log* log) { delete log; }

/* --- metrics ------------------------------------------------------------ */

ctpk_status ctpk_log_evaluate(const ctpk_log* log, double lambda, ctpk_gain* out) {
  if (null_arg(log) || null_arg(out)) return null_error();
  return guarded([&] { fill_gain(ctpkit::evaluate_episode(log->get(), lambda), out); });
}

ctpk_status ctpk_log_bootstrap(const ctpk_log* log, double lambda, uint64_t resamples,
                               double level, uint64_t seed, ctpk_interval* out) {
  if (null_arg(log) || null_arg(out)) return null_error();
  return guarded([&] {
    const ctpkit::BootstrapInterval interval =
        ctpkit::bootstrap_gain(log->get(), lambda, resamples, level, seed);
    out->point = interval.point;
    out->lower = interval.lower;
    out->upper = interval.upper;
    out->level = interval.level;
    out->resamples = interval.resamples;
    out->seed = interval.seed;
  });
}

ctpk_status ctpk_log_stability(const ctpk_log* log, size_t window, double lambda,
                               double* out_stability, int* ctp_series, double* gain_series,
                               size_t capacity, size_t* out_windows) {
  if (null_arg(log)) return null_error();
  ctpk_status status = CTPK_OK;
  const ctpk_status run = guarded([&] {
    const ctpkit::StabilityProfile profile =
        ctpkit::windowed_stability(log->get(), window, lambda);
    status = copy_stability(profile, out_stability, ctp_series, gain_series, capacity,
                            out_windows);
  });
  return run != CTPK_OK ? run : status;
}

ctpk_status ctpk_logset_stability(const ctpk_logset* set, double lambda, double* out_stability,
                                  int* ctp_series, double* gain_series, size_t capacity,
                                  size_t* out_windows) {
  if (null_arg(set)) return null_error();
  ctpk_status status = CTPK_OK;
  const ctpk_status run = guarded([&] {
    const ctpkit::StabilityProfile profile = ctpkit::stability_profile(set->logs, lambda);
    status = copy_stability(profile, out_stability, ctp_series, gain_series, capacity,
                            out_windows);
  });
  return run != CTPK_OK ? run : status;
}

ctpk_status ctpk_log_evaluate_render(const ctpk_log* log, double lambda, size_t window,
                                     int with_bootstrap, uint64_t resamples, double level,
                                     uint64_t seed, char** out_json) {
  if (null_arg(log) || null_arg(out_json)) return null_error();
  return guarded([&] {
    const ctpkit::GainReport report = ctpkit::evaluate_episode(log->get(), lambda);
    nlohmann::json j = ctpkit::jsonutil::gain_to_json(report);
    j["schema"] = "ctpkit-evaluate/1";
    const int degenerate = degenerate_of(report);
    j["degenerate"] = degenerate == 0   ? nlohmann::json(nullptr)
                      : degenerate == 1 ? nlohmann::json("perfect-ai")
                      : degenerate == 2 ? nlohmann::json("perfect-human")
                                        : nlohmann::json("perfect-both");
    if (window > 0)
      j["stability"] = ctpkit::jsonutil::stability_to_json(
          ctpkit::windowed_stability(log->get(), window, lambda));
    if (with_bootstrap != 0)
      j["bootstrap"] = ctpkit::jsonutil::bootstrap_to_json(
          ctpkit::bootstrap_gain(log->get(), lambda, resamples, level, seed));
    *out_json = alloc_string(j.dump(2) + "\n");
  });
}

/* --- studies ------------------------------------------------------------- */

ctpk_status ctpk_logset_read_dir(const char* dir, ctpk_logset** out) {
  if (null_arg(dir) || null_arg(out)) return null_error();
  return guarded([&] {
    auto set = std::make_unique<ctpk_logset>();
    set->logs = ctpkit::read_study(dir);
    set->build_views();
    *out = set.release();
  });
}

ctpk_status ctpk_logset_write_dir(const ctpk_logset* set, const char* dir) {
  if (null_arg(set) || null_arg(dir)) return null_error();
  return guarded([&] { ctpkit::write_study(dir, set->logs); });
}

size_t ctpk_logset_count(const ctpk_logset* set) {
  return set == nullptr ? 0 : set->logs.size();
}

const ctpk_log* ctpk_logset_at(const ctpk_logset* set, size_t index) {
  if (set == nullptr || index >= set->views.size()) return nullptr;
  return &set->views[index];
}

void ctpk_logset_free(ctpk_logset* set) { delete set; }

/* --- simulation ---------------------------------------------------------- */

ctpk_status ctpk_scenario_read_file(const char* path, ctpk_scenario** out) {
  if (null_arg(path) || null_arg(out)) return null_error();
  return guarded([&] {
    auto scenario = std::make_unique<ctpk_scenario>();
    scenario->config = ctpkit::read_scenario_file(path);
    *out = scenario.release();
  });
}

ctpk_status ctpk_scenario_parse(const char* bytes, size_t len, ctpk_scenario** out) {
  if (null_arg(bytes) || null_arg(out)) return null_error();
  return guarded([&] {
    auto scenario = std::make_unique<ctpk_scenario>();
    scenario->config = ctpkit::read_scenario(std::string_view(bytes, len));
    *out = scenario.release();
  });
}

double ctpk_scenario_lambda(const ctpk_scenario* scenario) {
  return scenario == nullptr ? 0.0 : scenario->config.lambda;
}

const char* ctpk_scenario_id(const ctpk_scenario* scenario) {
  return scenario == nullptr ? "" : scenario->config.scenario_id.c_str();
}

void ctpk_scenario_free(ctpk_scenario* scenario) { delete scenario; }

ctpk_status ctpk_simulate(const ctpk_scenario* scenario, ctpk_logset** out) {
  if (null_arg(scenario) || null_arg(out)) return null_error();
  return guarded([&] {
    auto set = std::make_unique<ctpk_logset>();
    set->logs = ctpkit::simulate(scenario->config);
    set->build_views();
    *out = set.release();
  });
}

ctpk_status ctpk_sweep_render(const ctpk_scenario* scenario, const char* axis,
                              const double* values, size_t count, char** out) {
  if (null_arg(scenario) || null_arg(axis) || null_arg(values) || null_arg(out))
    return null_error();
  return guarded([&] {
    const ctpkit::SweepTable table =
        ctpkit::sweep(scenario->config, axis, std::span<const double>(values, count));
    *out = alloc_string(ctpkit::write_sweep(table));
  });
}

/* --- assurance ------------------------------------------------------------ */

ctpk_status ctpk_assurance_build(const ctpk_logset* set, double lambda, const char* narrative,
                                 const char* created_at, ctpk_assurance** out) {
  if (null_arg(set) || null_arg(out)) return null_error();
  return guarded([&] {
    const ctpkit::NarrativeFields fields =
        narrative == nullptr ? ctpkit::NarrativeFields{} : ctpkit::parse_narrative(narrative);
    auto report = std::make_unique<ctpk_assurance>();
    report->report = ctpkit::build_report(
        set->logs, lambda, fields, "",
        created_at == nullptr ? ctpkit::kEpochInstant : created_at);
    *out = report.release();
  });
}

ctpk_status ctpk_assurance_parse(const char* bytes, size_t len, ctpk_assurance** out) {
  if (null_arg(bytes) || null_arg(out)) return null_error();
  return guarded([&] {
    auto report = std::make_unique<ctpk_assurance>();
    report->report = ctpkit::parse_report(std::string_view(bytes, len));
    *out = report.release();
  });
}

ctpk_status ctpk_assurance_render(const ctpk_assurance* report, int style, char** out) {
  if (null_arg(report) || null_arg(out)) return null_error();
  return guarded([&] {
    *out = alloc_string(ctpkit::render_report(
        report->report, style == 0 ? ctpkit::ReportStyle::Machine : ctpkit::ReportStyle::Human));
  });
}

ctpk_status ctpk_assurance_validate(const ctpk_assurance* report, char** out) {
  if (null_arg(report) || null_arg(out)) return null_error();
  return guarded([&] {
    std::string text;
    for (const ctpkit::Deficiency& deficiency : ctpkit::validate_report(report->report))
      text += ctpkit::describe(deficiency) + "\n";
    *out = alloc_string(text);
  });
}

size_t ctpk_assurance_missing_items(const ctpk_assurance* report) {
  if (report == nullptr) return 0;
  size_t missing = 0;
  for (const ctpkit::Deficiency& deficiency : ctpkit::validate_report(report->report))
    if (deficiency.kind == ctpkit::DeficiencyKind::MissingItem) ++missing;
  return missing;
}

void ctpk_assurance_free(ctpk_assurance* report) { delete report; }

}  // extern "C"
