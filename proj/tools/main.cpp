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

// Command-line front end. Everything goes through the C API in
// ctpkit/ctpkit.h; this translation unit only parses flags, moves bytes, and
// formats human tables.
//
// Exit codes: 0 success, 1 domain error (bad input data), 2 usage error.

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ctpkit/ctpkit.h"

namespace {

constexpr uint64_t kDefaultSeed = 42;  // fixed default; never wall-clock entropy

int g_label_width = 14;

bool use_color() {
  static const bool enabled = ::isatty(1) != 0 && std::getenv("NO_COLOR") == nullptr;
  return enabled;
}

std::string colored(const std::string& text, const char* code) {
  if (!use_color()) return text;
  return std::string("\033[") + code + "m" + text + "\033[0m";
}

std::string six(double value) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

void row(const std::string& label, const std::string& value) {
  std::printf("  %-*s %s\n", g_label_width, label.c_str(), value.c_str());
}

int domain_error(const std::string& message) {
  std::fprintf(stderr, "ctpkit: error: %s\n", message.c_str());
  return 1;
}

int api_error() { return domain_error(ctpk_last_error()); }

int usage_error(const std::string& message) {
  std::fprintf(stderr, "ctpkit: usage error: %s\n", message.c_str());
  return 2;
}

struct StringOut {
  char* value = nullptr;
  ~StringOut() { ctpk_string_free(value); }
};

bool read_whole_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  out = buffer.str();
  return true;
}

const char* efficiency_name(int verdict) {
  return verdict == 1 ? "efficient" : verdict == 0 ? "inefficient" : "undefined-zero-cost";
}

std::string efficiency_colored(int verdict) {
  const char* name = efficiency_name(verdict);
  if (verdict == 1) return colored(name, "32");
  if (verdict == 0) return colored(name, "31");
  return colored(name, "33");
}

void print_gain_table(const char* episode_id, const ctpk_gain& gain) {
  std::printf("Gain report: %s\n", episode_id);
  row("n", std::to_string(gain.n));
  row("loss_human", six(gain.loss_human));
  row("loss_ai", six(gain.loss_ai));
  row("loss_team", six(gain.loss_team));
  row("ctp", std::to_string(gain.ctp));
  row("gross_gain", six(gain.gross_gain));
  row("total_cost", six(gain.total_cost));
  row("lambda", six(gain.lambda));
  row("net_gain", six(gain.net_gain));
  row("efficiency", efficiency_colored(gain.efficiency));
  if (gain.degenerate != 0) {
    const char* who = gain.degenerate == 1   ? "perfect AI"
                      : gain.degenerate == 2 ? "perfect human"
                                             : "perfect AI and human";
    std::printf("%s\n",
                colored("note: degenerate case (" + std::string(who) +
                            "): strict complementarity is impossible, CTP = 0",
                        "33")
                    .c_str());
  }
}

struct EvaluateArgs {
  std::string log_path;
  double lambda = 0.0;
  std::size_t window = 0;
  bool bootstrap = false;
  uint64_t resamples = 1000;
  double level = 0.95;
  uint64_t seed = kDefaultSeed;
  std::string format = "human";
};

int run_evaluate(const EvaluateArgs& args) {
  if (!(args.lambda > 0.0)) return usage_error("--lambda must be > 0");

  ctpk_log* raw = nullptr;
  if (ctpk_log_read_file(args.log_path.c_str(), &raw) != CTPK_OK) return api_error();
  std::unique_ptr<ctpk_log, decltype(&ctpk_log_free)> log(raw, ctpk_log_free);

  if (args.format == "machine") {
    StringOut json;
    if (ctpk_log_evaluate_render(log.get(), args.lambda, args.window, args.bootstrap ? 1 : 0,
                                 args.resamples, args.level, args.seed, &json.value) != CTPK_OK)
      return api_error();
    std::fputs(json.value, stdout);
    return 0;
  }

  ctpk_gain gain;
  if (ctpk_log_evaluate(log.get(), args.lambda, &gain) != CTPK_OK) return api_error();
  print_gain_table(ctpk_log_episode_id(log.get()), gain);

  if (args.window > 0) {
    size_t windows = 0;
    if (ctpk_log_stability(log.get(), args.window, args.lambda, nullptr, nullptr, nullptr, 0,
                           &windows) != CTPK_OK)
      return api_error();
    std::vector<int> ctp_series(windows);
    std::vector<double> gain_series(windows);
    double stability = 0.0;
    if (ctpk_log_stability(log.get(), args.window, args.lambda, &stability, ctp_series.data(),
                           gain_series.data(), windows, &windows) != CTPK_OK)
      return api_error();
    std::printf("Stability (window = %zu records)\n", args.window);
    row("windows", std::to_string(windows));
    row("stability", six(stability));
    std::string ctp_text, gain_text;
    for (size_t i = 0; i < windows; ++i) {
      ctp_text += (i ? " " : "") + std::to_string(ctp_series[i]);
      gain_text += (i ? " " : "") + six(gain_series[i]);
    }
    row("ctp_series", ctp_text);
    row("gain_series", gain_text);
  }

  if (args.bootstrap) {
    ctpk_interval interval;
    if (ctpk_log_bootstrap(log.get(), args.lambda, args.resamples, args.level, args.seed,
                           &interval) != CTPK_OK)
      return api_error();
    std::printf("Bootstrap (gross gain)\n");
    row("point", six(interval.point));
    row("interval", "[" + six(interval.lower) + ", " + six(interval.upper) + "]");
    row("level", six(interval.level));
    row("resamples", std::to_string(interval.resamples));
    row("seed", std::to_string(interval.seed));
  }
  return 0;
}

int run_simulate(const std::string& config_path, const std::string& out_dir,
                 const std::string& format) {
  ctpk_scenario* raw_scenario = nullptr;
  if (ctpk_scenario_read_file(config_path.c_str(), &raw_scenario) != CTPK_OK) return api_error();
  std::unique_ptr<ctpk_scenario, decltype(&ctpk_scenario_free)> scenario(raw_scenario,
                                                                         ctpk_scenario_free);

  ctpk_logset* raw_set = nullptr;
  if (ctpk_simulate(scenario.get(), &raw_set) != CTPK_OK) return api_error();
  std::unique_ptr<ctpk_logset, decltype(&ctpk_logset_free)> set(raw_set, ctpk_logset_free);

  if (ctpk_logset_write_dir(set.get(), out_dir.c_str()) != CTPK_OK) return api_error();

  const double lambda = ctpk_scenario_lambda(scenario.get());
  const size_t count = ctpk_logset_count(set.get());
  if (format == "machine") {
    for (size_t i = 0; i < count; ++i) {
      StringOut json;
      if (ctpk_log_evaluate_render(ctpk_logset_at(set.get(), i), lambda, 0, 0, 0, 0.95, 0,
                                   &json.value) != CTPK_OK)
        return api_error();
      std::fputs(json.value, stdout);
    }
  } else {
    std::printf("wrote %zu episode(s) to %s\n", count, out_dir.c_str());
    std::printf("%-24s %4s %12s %12s  %s\n", "episode", "ctp", "gross_gain", "net_gain",
                "efficiency");
    for (size_t i = 0; i < count; ++i) {
      const ctpk_log* log = ctpk_logset_at(set.get(), i);
      ctpk_gain gain;
      if (ctpk_log_evaluate(log, lambda, &gain) != CTPK_OK) return api_error();
      std::printf("%-24s %4d %12s %12s  %s\n", ctpk_log_episode_id(log), gain.ctp,
                  six(gain.gross_gain).c_str(), six(gain.net_gain).c_str(),
                  efficiency_colored(gain.efficiency).c_str());
    }
  }
  return 0;
}

int run_sweep(const std::string& config_path, const std::string& axis,
              const std::string& values_text, const std::string& out_path) {
  std::vector<double> values;
  std::stringstream stream(values_text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    try {
      std::size_t used = 0;
      const double value = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      values.push_back(value);
    } catch (const std::exception&) {
      return usage_error("--values: '" + token + "' is not a number");
    }
  }
  if (values.empty()) return usage_error("--values needs at least one number");

  ctpk_scenario* raw_scenario = nullptr;
  if (ctpk_scenario_read_file(config_path.c_str(), &raw_scenario) != CTPK_OK) return api_error();
  std::unique_ptr<ctpk_scenario, decltype(&ctpk_scenario_free)> scenario(raw_scenario,
                                                                         ctpk_scenario_free);

  StringOut table;
  if (ctpk_sweep_render(scenario.get(), axis.c_str(), values.data(), values.size(),
                        &table.value) != CTPK_OK) {
    const std::string message = ctpk_last_error();
    if (message.rfind("unknown axis", 0) == 0 || message.rfind("ambiguous axis", 0) == 0)
      return usage_error(message);
    return domain_error(message);
  }

  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) return domain_error("cannot write '" + out_path + "'");
    out << table.value;
  }
  std::fputs(table.value, stdout);
  return 0;
}

int run_report(const std::string& log_dir, double lambda, const std::string& narrative_path,
               const std::string& out_path, const std::string& created_at,
               const std::string& format) {
  if (!(lambda > 0.0)) return usage_error("--lambda must be > 0");

  std::string narrative;
  if (!narrative_path.empty() && !read_whole_file(narrative_path, narrative))
    return domain_error("cannot read '" + narrative_path + "'");

  ctpk_logset* raw_set = nullptr;
  if (ctpk_logset_read_dir(log_dir.c_str(), &raw_set) != CTPK_OK) return api_error();
  std::unique_ptr<ctpk_logset, decltype(&ctpk_logset_free)> set(raw_set, ctpk_logset_free);

  ctpk_assurance* raw_report = nullptr;
  if (ctpk_assurance_build(set.get(), lambda, narrative_path.empty() ? nullptr : narrative.c_str(),
                           created_at.empty() ? nullptr : created_at.c_str(),
                           &raw_report) != CTPK_OK)
    return api_error();
  std::unique_ptr<ctpk_assurance, decltype(&ctpk_assurance_free)> report(raw_report,
                                                                         ctpk_assurance_free);

  StringOut machine;
  if (ctpk_assurance_render(report.get(), 0, &machine.value) != CTPK_OK) return api_error();
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) return domain_error("cannot write '" + out_path + "'");
    out << machine.value;
  }

  if (format == "machine") {
    std::fputs(machine.value, stdout);
  } else {
    StringOut human;
    if (ctpk_assurance_render(report.get(), 1, &human.value) != CTPK_OK) return api_error();
    std::fputs(human.value, stdout);
  }

  const size_t missing = ctpk_assurance_missing_items(report.get());
  if (missing == 0) {
    std::fprintf(stderr, "checklist: 11/11 complete\n");
  } else {
    std::fprintf(stderr, "checklist: %zu of 11 items missing\n", missing);
    StringOut deficiencies;
    if (ctpk_assurance_validate(report.get(), &deficiencies.value) == CTPK_OK)
      std::fputs(deficiencies.value, stderr);
  }
  return 0;
}

int run_validate(const std::string& path) {
  std::string bytes;
  if (!read_whole_file(path, bytes)) return domain_error("cannot read '" + path + "'");

  std::size_t start = bytes.find_first_not_of(" \t\r\n");
  if (start == std::string::npos) return domain_error(path + ": empty file");

  if (bytes[start] == '{') {
    ctpk_assurance* raw = nullptr;
    if (ctpk_assurance_parse(bytes.c_str(), bytes.size(), &raw) != CTPK_OK) return api_error();
    std::unique_ptr<ctpk_assurance, decltype(&ctpk_assurance_free)> report(raw,
                                                                           ctpk_assurance_free);
    StringOut deficiencies;
    if (ctpk_assurance_validate(report.get(), &deficiencies.value) != CTPK_OK) return api_error();
    if (deficiencies.value[0] == '\0') {
      std::printf("assurance report: complete (11/11 items)\n");
    } else {
      std::fputs(deficiencies.value, stdout);
    }
    return 0;
  }

  if (bytes.compare(start, 10, "ctpkit-log") == 0) {
    ctpk_log* raw = nullptr;
    if (ctpk_log_parse(bytes.c_str(), bytes.size(), &raw) != CTPK_OK) return api_error();
    std::unique_ptr<ctpk_log, decltype(&ctpk_log_free)> log(raw, ctpk_log_free);
    std::printf("episode log: valid (%zu records)\n", ctpk_log_record_count(log.get()));
    return 0;
  }

  if (bytes.find("ctpkit-scenario/1") != std::string::npos) {
    ctpk_scenario* raw = nullptr;
    if (ctpk_scenario_parse(bytes.c_str(), bytes.size(), &raw) != CTPK_OK) return api_error();
    std::unique_ptr<ctpk_scenario, decltype(&ctpk_scenario_free)> scenario(raw,
                                                                           ctpk_scenario_free);
    std::printf("scenario '%s': valid\n", ctpk_scenario_id(scenario.get()));
    return 0;
  }

  return domain_error(path + ": unrecognized file type");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ctpkit " + std::string(ctpk_version()) +
               " -- evaluation toolkit for human-AI prediction teams"};
  app.require_subcommand(1);
  app.add_option("--width", g_label_width, "label column width for human tables")
      ->check(CLI::Range(8, 40));

  EvaluateArgs eval;
  CLI::App* evaluate = app.add_subcommand("evaluate", "score one episode log");
  evaluate->add_option("log", eval.log_path, "episode log file")->required();
  evaluate->add_option("--lambda", eval.lambda, "loss-units per cost-unit (> 0)")->required();
  evaluate->add_option("--window", eval.window, "stability window in records (0 = off)");
  evaluate->add_flag("--bootstrap", eval.bootstrap, "bootstrap interval for the gross gain");
  evaluate->add_option("--resamples", eval.resamples, "bootstrap resamples (default 1000)");
  evaluate->add_option("--level", eval.level, "bootstrap confidence level (default 0.95)");
  evaluate->add_option("--seed", eval.seed, "bootstrap seed (default 42)");
  evaluate->add_option("--format", eval.format, "human | machine")
      ->check(CLI::IsMember({"human", "machine"}));

  std::string sim_config, sim_out, sim_format = "human";
  CLI::App* simulate = app.add_subcommand("simulate", "generate episodes from a scenario");
  simulate->add_option("config", sim_config, "scenario config file")->required();
  simulate->add_option("--out", sim_out, "output directory for episodes + manifest")->required();
  simulate->add_option("--format", sim_format, "human | machine")
      ->check(CLI::IsMember({"human", "machine"}));

  std::string sweep_config, sweep_axis, sweep_values, sweep_out;
  CLI::App* sweep = app.add_subcommand("sweep", "vary one scenario parameter");
  sweep->add_option("config", sweep_config, "scenario config file")->required();
  sweep->add_option("--axis", sweep_axis, "numeric field to vary (e.g. lambda, ai.noise_sd)")
      ->required();
  sweep->add_option("--values", sweep_values, "comma-separated values")->required();
  sweep->add_option("--out", sweep_out, "output file for the sweep table");

  std::string rep_dir, rep_narrative, rep_out, rep_created_at, rep_format = "human";
  double rep_lambda = 0.0;
  CLI::App* report = app.add_subcommand("report", "build an assurance report from a study");
  report->add_option("log_dir", rep_dir, "directory with episodes + manifest")->required();
  report->add_option("--lambda", rep_lambda, "loss-units per cost-unit (> 0)")->required();
  report->add_option("--narrative", rep_narrative, "narrative fields file (item-id = text)");
  report->add_option("--out", rep_out, "output file for the machine report")->required();
  report->add_option("--created-at", rep_created_at,
                     "ISO-8601 stamp (defaults to the fixed epoch for reproducibility)");
  report->add_option("--format", rep_format, "human | machine")
      ->check(CLI::IsMember({"human", "machine"}));

  std::string val_path;
  CLI::App* validate = app.add_subcommand("validate", "check a log, scenario, or report file");
  validate->add_option("file", val_path, "file to validate")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (evaluate->parsed()) return run_evaluate(eval);
  if (simulate->parsed()) return run_simulate(sim_config, sim_out, sim_format);
  if (sweep->parsed()) return run_sweep(sweep_config, sweep_axis, sweep_values, sweep_out);
  if (report->parsed())
    return run_report(rep_dir, rep_lambda, rep_narrative, rep_out, rep_created_at, rep_format);
  if (validate->parsed()) return run_validate(val_path);
  return 2;
}
