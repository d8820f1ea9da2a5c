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
#include "ctpkit/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace ctpkit {

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("cannot write '" + path + "'");
}

std::optional<double> parse_double(std::string_view token) {
  double value = 0.0;
  const char* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::optional<std::uint64_t> parse_u64(std::string_view token) {
  std::uint64_t value = 0;
  const char* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::vector<std::string> split_spaces(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ') ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

// Walks a buffer line by line, tracking 1-based line numbers.
struct LineReader {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t number = 0;

  std::optional<std::string_view> next() {
    if (pos >= text.size()) return std::nullopt;
    const std::size_t eol = text.find('\n', pos);
    std::string_view line;
    if (eol == std::string_view::npos) {
      line = text.substr(pos);
      pos = text.size();
    } else {
      line = text.substr(pos, eol - pos);
      pos = eol + 1;
    }
    ++number;
    return line;
  }
};

constexpr const char* kRequiredColumns[] = {"instance_id", "y_true", "y_human",
                                            "y_ai",        "y_team", "cost"};

Prediction parse_prediction(std::string_view token, const TaskSpec& task, std::size_t line,
                            std::size_t column, const char* field) {
  if (task.output_kind == OutputKind::RealScalar) {
    const std::optional<double> value = parse_double(token);
    if (!value)
      throw ParseError(std::string(field) + ": expected a finite real, got '" +
                           std::string(token) + "'",
                       line, column);
    return *value;
  }
  std::string label(token);
  if (std::find(task.labels.begin(), task.labels.end(), label) == task.labels.end())
    throw ParseError(std::string(field) + ": unknown label '" + label + "'", line, column);
  return Prediction(std::move(label));
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  (void)ec;
  return std::string(buf, ptr);
}

EpisodeLog read_log(std::string_view bytes) {
  LineReader reader{bytes};

  const std::optional<std::string_view> magic = reader.next();
  if (!magic || *magic != kLogMagic)
    throw ParseError(std::string("expected magic line '") + kLogMagic + "'", 1);

  EpisodeLog log;
  bool has_timestamp = false;
  bool has_rounds = false;
  bool saw_columns = false;
  std::unordered_set<std::string> seen_keys;

  while (!saw_columns) {
    const std::optional<std::string_view> line = reader.next();
    if (!line) throw ParseError("missing 'columns' header line", reader.number);
    const std::vector<std::string_view> fields = split_tabs(*line);
    const std::string key(fields[0]);
    if (!seen_keys.insert(key).second)
      throw ParseError("duplicate header key '" + key + "'", reader.number);

    auto single_value = [&]() -> std::string {
      if (fields.size() != 2)
        throw ParseError("header key '" + key + "' takes exactly one value", reader.number);
      return std::string(fields[1]);
    };

    if (key == "episode_id") {
      log.episode_id = single_value();
    } else if (key == "task_id") {
      log.task.task_id = single_value();
    } else if (key == "output_kind") {
      const std::optional<OutputKind> kind = output_kind_from(single_value());
      if (!kind) throw ParseError("unknown output_kind", reader.number);
      log.task.output_kind = *kind;
    } else if (key == "loss_kind") {
      const std::optional<LossKind> kind = loss_kind_from(single_value());
      if (!kind) throw ParseError("unknown loss_kind", reader.number);
      log.task.loss_kind = *kind;
    } else if (key == "labels") {
      if (fields.size() < 2) throw ParseError("labels needs at least one label", reader.number);
      for (std::size_t i = 1; i < fields.size(); ++i) log.task.labels.emplace_back(fields[i]);
    } else if (key == "protocol_id") {
      log.protocol_id = single_value();
    } else if (key == "cost_unit") {
      log.cost_unit = single_value();
    } else if (key == "columns") {
      for (std::size_t i = 0; i < 6; ++i) {
        if (fields.size() <= i + 1 || fields[i + 1] != kRequiredColumns[i])
          throw ParseError(std::string("columns must start with: instance_id y_true y_human ") +
                               "y_ai y_team cost",
                           reader.number);
      }
      std::size_t i = 7;
      if (i < fields.size() && fields[i] == "timestamp") {
        has_timestamp = true;
        ++i;
      }
      if (i < fields.size() && fields[i] == "rounds") {
        has_rounds = true;
        ++i;
      }
      if (i != fields.size())
        throw ParseError("unknown column '" + std::string(fields[i]) + "'", reader.number, i);
      saw_columns = true;
    } else {
      throw ParseError("unknown header key '" + key + "'", reader.number);
    }
  }

  for (const char* required : {"episode_id", "task_id", "output_kind", "loss_kind",
                               "protocol_id", "cost_unit"}) {
    if (!seen_keys.count(required))
      throw ParseError("missing header key '" + std::string(required) + "'", reader.number);
  }
  if (log.task.categorical() && !seen_keys.count("labels"))
    throw ParseError("categorical task needs a 'labels' header line", reader.number);
  if (!log.task.categorical() && seen_keys.count("labels"))
    throw ParseError("real-scalar task must not carry labels", reader.number);
  if (!loss_compatible(log.task.loss_kind, log.task.output_kind))
    throw ParseError("loss_kind is incompatible with output_kind", reader.number);

  const std::size_t expected_fields =
      6 + (has_timestamp ? 1u : 0u) + (has_rounds ? 1u : 0u);
  std::unordered_set<std::string> ids;
  while (const std::optional<std::string_view> line = reader.next()) {
    if (line->empty() && reader.pos >= bytes.size()) break;  // trailing newline
    const std::vector<std::string_view> fields = split_tabs(*line);
    if (fields.size() != expected_fields)
      throw ParseError("expected " + std::to_string(expected_fields) + " fields, got " +
                           std::to_string(fields.size()),
                       reader.number);

    InteractionRecord record;
    record.instance_id = std::string(fields[0]);
    if (record.instance_id.empty())
      throw ParseError("instance_id must be non-empty", reader.number, 1);
    if (!ids.insert(record.instance_id).second)
      throw ParseError("duplicate instance_id '" + record.instance_id + "'", reader.number, 1);
    record.y_true = parse_prediction(fields[1], log.task, reader.number, 2, "y_true");
    record.y_human = parse_prediction(fields[2], log.task, reader.number, 3, "y_human");
    record.y_ai = parse_prediction(fields[3], log.task, reader.number, 4, "y_ai");
    record.y_team = parse_prediction(fields[4], log.task, reader.number, 5, "y_team");

    const std::optional<double> cost = parse_double(fields[5]);
    if (!cost || *cost < 0.0)
      throw ParseError("cost: expected a finite non-negative real, got '" +
                           std::string(fields[5]) + "'",
                       reader.number, 6);
    record.cost = *cost;

    std::size_t i = 6;
    if (has_timestamp) {
      if (fields[i] != "-") {
        std::string stamp(fields[i]);
        if (!valid_timestamp(stamp))
          throw ParseError("timestamp is not an ISO-8601 instant", reader.number, i + 1);
        record.timestamp = std::move(stamp);
      }
      ++i;
    }
    if (has_rounds) {
      if (fields[i] != "-") {
        const std::optional<std::uint64_t> rounds = parse_u64(fields[i]);
        if (!rounds)
          throw ParseError("rounds: expected a non-negative integer", reader.number, i + 1);
        record.rounds = *rounds;
      }
      ++i;
    }
    log.records.push_back(std::move(record));
  }

  if (log.records.empty()) throw ParseError("empty dataset: no record lines", reader.number + 1);

  const std::vector<Violation> violations = validate_episode(log);
  if (!violations.empty())
    throw Error("invalid episode: " + violations.front().field + ": " +
                violations.front().message);
  return log;
}

EpisodeLog read_log_file(const std::string& path) {
  try {
    return read_log(read_file(path));
  } catch (const ParseError& e) {
    throw e.contextualized(path);
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

std::string write_log(const EpisodeLog& log) {
  const std::vector<Violation> violations = validate_episode(log);
  if (!violations.empty())
    throw Error("cannot write invalid episode: " + violations.front().field + ": " +
                violations.front().message);

  bool has_timestamp = false;
  bool has_rounds = false;
  for (const InteractionRecord& record : log.records) {
    has_timestamp |= record.timestamp.has_value();
    has_rounds |= record.rounds.has_value();
  }

  std::string out;
  out += kLogMagic;
  out += '\n';
  out += "episode_id\t" + log.episode_id + "\n";
  out += "task_id\t" + log.task.task_id + "\n";
  out += std::string("output_kind\t") + to_string(log.task.output_kind) + "\n";
  if (log.task.categorical()) {
    out += "labels";
    for (const std::string& label : log.task.labels) out += "\t" + label;
    out += '\n';
  }
  out += std::string("loss_kind\t") + to_string(log.task.loss_kind) + "\n";
  out += "protocol_id\t" + log.protocol_id + "\n";
  out += "cost_unit\t" + log.cost_unit + "\n";
  out += "columns\tinstance_id\ty_true\ty_human\ty_ai\ty_team\tcost";
  if (has_timestamp) out += "\ttimestamp";
  if (has_rounds) out += "\trounds";
  out += '\n';

  auto value_token = [](const Prediction& value) {
    if (const double* r = std::get_if<double>(&value)) return format_double(*r);
    return std::get<std::string>(value);
  };
  for (const InteractionRecord& record : log.records) {
    out += record.instance_id;
    out += '\t' + value_token(record.y_true);
    out += '\t' + value_token(record.y_human);
    out += '\t' + value_token(record.y_ai);
    out += '\t' + value_token(record.y_team);
    out += '\t' + format_double(record.cost);
    if (has_timestamp) out += '\t' + (record.timestamp ? *record.timestamp : std::string("-"));
    if (has_rounds)
      out += '\t' + (record.rounds ? std::to_string(*record.rounds) : std::string("-"));
    out += '\n';
  }
  return out;
}

void write_log_file(const EpisodeLog& log, const std::string& path) {
  write_file(path, write_log(log));
}

std::vector<EpisodeLog> read_study(const std::string& dir) {
  const std::string manifest_path = (fs::path(dir) / kManifestName).string();
  const std::string manifest = read_file(manifest_path);
  LineReader reader{manifest};
  const std::optional<std::string_view> magic = reader.next();
  if (!magic || *magic != kManifestMagic)
    throw Error(manifest_path + ": expected magic line '" + kManifestMagic + "'");

  std::vector<EpisodeLog> logs;
  while (const std::optional<std::string_view> line = reader.next()) {
    if (line->empty()) continue;
    logs.push_back(read_log_file((fs::path(dir) / std::string(*line)).string()));
  }
  if (logs.empty()) throw Error(manifest_path + ": manifest lists no episodes");
  return logs;
}

std::vector<std::string> write_study(const std::string& dir, std::span<const EpisodeLog> logs) {
  if (logs.empty()) throw Error("study needs at least one episode");
  std::unordered_set<std::string> ids;
  for (const EpisodeLog& log : logs)
    if (!ids.insert(log.episode_id).second)
      throw Error("duplicate episode_id '" + log.episode_id + "' in study");

  fs::create_directories(dir);
  std::vector<std::string> names;
  std::string manifest = std::string(kManifestMagic) + "\n";
  for (const EpisodeLog& log : logs) {
    const std::string name = log.episode_id + ".eplog";
    write_log_file(log, (fs::path(dir) / name).string());
    manifest += name + "\n";
    names.push_back(name);
  }
  write_file((fs::path(dir) / kManifestName).string(), manifest);
  return names;
}

namespace {

double need_double(const std::string& value, const std::string& field, std::size_t line) {
  const std::optional<double> parsed = parse_double(value);
  if (!parsed) throw ParseError(field + ": expected a finite real", line);
  return *parsed;
}

std::uint64_t need_u64(const std::string& value, const std::string& field, std::size_t line) {
  const std::optional<std::uint64_t> parsed = parse_u64(value);
  if (!parsed) throw ParseError(field + ": expected a non-negative integer", line);
  return *parsed;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace

ScenarioConfig read_scenario(std::string_view bytes) {
  static const std::unordered_map<std::string, std::vector<std::string>> kKnownKeys = {
      {"", {"format", "scenario_id", "seed", "lambda", "n_records", "n_episodes", "cost_unit"}},
      {"task", {"task_id", "output_kind", "loss_kind", "labels"}},
      {"truth", {"distribution", "lo", "hi", "weights"}},
      {"human", {"kind", "bias", "noise_sd", "error_rate"}},
      {"ai", {"kind", "bias", "noise_sd", "error_rate"}},
      {"protocol", {"protocol_id", "kind", "threshold", "weight_human", "rounds", "step",
                    "per_round_cost", "base_cost"}},
  };

  LineReader reader{bytes};
  std::string section;
  std::map<std::string, std::pair<std::string, std::size_t>> entries;
  std::vector<std::tuple<std::string, std::string, std::string, std::size_t>> confusion_rows;

  while (const std::optional<std::string_view> raw = reader.next()) {
    const std::string_view line = trim(*raw);
    if (line.empty() || line.front() == '#') continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", reader.number);
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!kKnownKeys.count(section))
        throw ParseError("unknown section [" + section + "]", reader.number);
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("expected 'key = value'", reader.number);
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ParseError("empty key", reader.number);
    if (value.empty()) throw ParseError("key '" + key + "' has no value", reader.number);

    if ((section == "human" || section == "ai") && key.rfind("confusion_", 0) == 0) {
      confusion_rows.emplace_back(section, key.substr(10), value, reader.number);
      continue;
    }
    const std::vector<std::string>& known = kKnownKeys.at(section);
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ParseError("unknown key '" + key + "' in section [" + section + "]", reader.number);
    const std::string qualified = section.empty() ? key : section + "." + key;
    if (!entries.emplace(qualified, std::make_pair(value, reader.number)).second)
      throw ParseError("duplicate key '" + qualified + "'", reader.number);
  }

  auto get = [&](const std::string& name) -> const std::pair<std::string, std::size_t>* {
    const auto it = entries.find(name);
    return it == entries.end() ? nullptr : &it->second;
  };
  auto require = [&](const std::string& name) -> const std::pair<std::string, std::size_t>& {
    const auto* found = get(name);
    if (!found) throw Error("missing required key '" + name + "'");
    return *found;
  };

  const auto& format = require("format");
  if (format.first != kScenarioFormat)
    throw ParseError(std::string("format must be '") + kScenarioFormat + "'", format.second);

  ScenarioConfig config;
  config.scenario_id = require("scenario_id").first;
  { const auto& e = require("seed"); config.seed = need_u64(e.first, "seed", e.second); }
  { const auto& e = require("lambda"); config.lambda = need_double(e.first, "lambda", e.second); }
  { const auto& e = require("n_records");
    config.n_records = static_cast<std::size_t>(need_u64(e.first, "n_records", e.second)); }
  { const auto& e = require("n_episodes");
    config.n_episodes = static_cast<std::size_t>(need_u64(e.first, "n_episodes", e.second)); }
  if (const auto* e = get("cost_unit")) config.cost_unit = e->first;

  config.task.task_id = require("task.task_id").first;
  { const auto& e = require("task.output_kind");
    const std::optional<OutputKind> kind = output_kind_from(e.first);
    if (!kind) throw ParseError("unknown output_kind '" + e.first + "'", e.second);
    config.task.output_kind = *kind; }
  { const auto& e = require("task.loss_kind");
    const std::optional<LossKind> kind = loss_kind_from(e.first);
    if (!kind) throw ParseError("unknown loss_kind '" + e.first + "'", e.second);
    config.task.loss_kind = *kind; }
  if (const auto* e = get("task.labels")) config.task.labels = split_spaces(e->first);

  { const auto& e = require("truth.distribution");
    const std::optional<TruthKind> kind = truth_kind_from(e.first);
    if (!kind) throw ParseError("unknown truth distribution '" + e.first + "'", e.second);
    config.truth_kind = *kind; }
  if (config.truth_kind == TruthKind::UniformReal) {
    { const auto& e = require("truth.lo"); config.truth_lo = need_double(e.first, "truth.lo", e.second); }
    { const auto& e = require("truth.hi"); config.truth_hi = need_double(e.first, "truth.hi", e.second); }
  } else {
    const auto& e = require("truth.weights");
    for (const std::string& token : split_spaces(e.first))
      config.weights.push_back(need_double(token, "truth.weights", e.second));
  }

  auto load_agent = [&](const std::string& who, AgentModel& agent) {
    const auto& e = require(who + ".kind");
    const std::optional<AgentKind> kind = agent_kind_from(e.first);
    if (!kind) throw ParseError("unknown agent kind '" + e.first + "'", e.second);
    agent.kind = *kind;
    if (const auto* v = get(who + ".bias")) agent.bias = need_double(v->first, who + ".bias", v->second);
    if (const auto* v = get(who + ".noise_sd"))
      agent.noise_sd = need_double(v->first, who + ".noise_sd", v->second);
    if (const auto* v = get(who + ".error_rate"))
      agent.error_rate = need_double(v->first, who + ".error_rate", v->second);

    std::map<std::string, std::vector<double>> rows;
    for (const auto& [agent_name, label, value, line] : confusion_rows) {
      if (agent_name != who) continue;
      if (std::find(config.task.labels.begin(), config.task.labels.end(), label) ==
          config.task.labels.end())
        throw ParseError("confusion row for unknown label '" + label + "'", line);
      std::vector<double> row;
      for (const std::string& token : split_spaces(value))
        row.push_back(need_double(token, who + ".confusion_" + label, line));
      if (!rows.emplace(label, std::move(row)).second)
        throw ParseError("duplicate confusion row '" + label + "'", line);
    }
    if (!rows.empty()) {
      if (rows.size() != config.task.labels.size())
        throw Error(who + ".confusion: needs one row per label");
      for (const std::string& label : config.task.labels)
        agent.confusion.push_back(rows.at(label));
    }
  };
  load_agent("human", config.human);
  load_agent("ai", config.ai);

  config.protocol.protocol_id = require("protocol.protocol_id").first;
  { const auto& e = require("protocol.kind");
    const std::optional<ProtocolKind> kind = protocol_kind_from(e.first);
    if (!kind) throw ParseError("unknown protocol kind '" + e.first + "'", e.second);
    config.protocol.kind = *kind; }
  if (const auto* e = get("protocol.threshold"))
    config.protocol.threshold = need_double(e->first, "protocol.threshold", e->second);
  if (const auto* e = get("protocol.weight_human"))
    config.protocol.weight_human = need_double(e->first, "protocol.weight_human", e->second);
  if (const auto* e = get("protocol.rounds"))
    config.protocol.rounds = need_u64(e->first, "protocol.rounds", e->second);
  if (const auto* e = get("protocol.step"))
    config.protocol.step = need_double(e->first, "protocol.step", e->second);
  if (const auto* e = get("protocol.per_round_cost"))
    config.protocol.per_round_cost = need_double(e->first, "protocol.per_round_cost", e->second);
  if (const auto* e = get("protocol.base_cost"))
    config.protocol.base_cost = need_double(e->first, "protocol.base_cost", e->second);

  const std::vector<Violation> violations = validate_scenario(config);
  if (!violations.empty())
    throw Error("invalid scenario: " + violations.front().field + ": " +
                violations.front().message);
  return config;
}

ScenarioConfig read_scenario_file(const std::string& path) {
  try {
    return read_scenario(read_file(path));
  } catch (const ParseError& e) {
    throw e.contextualized(path);
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

std::string write_sweep(const SweepTable& table) {
  std::string out;
  out += kSweepMagic;
  out += '\n';
  out += "scenario\t" + table.scenario_id + "\n";
  out += "axis\t" + table.axis + "\n";
  out += "columns\tvalue\tmean_gross_gain\tstability\tmean_net_gain\n";
  for (const SweepRow& row : table.rows) {
    out += format_double(row.value);
    out += '\t' + format_double(row.mean_gross_gain);
    out += '\t' + format_double(row.stability);
    out += '\t' + format_double(row.mean_net_gain);
    out += '\n';
  }
  return out;
}

SweepTable read_sweep(std::string_view bytes) {
  LineReader reader{bytes};
  const std::optional<std::string_view> magic = reader.next();
  if (!magic || *magic != kSweepMagic)
    throw ParseError(std::string("expected magic line '") + kSweepMagic + "'", 1);

  SweepTable table;
  auto header = [&](const char* key) -> std::string {
    const std::optional<std::string_view> line = reader.next();
    if (!line) throw ParseError(std::string("missing '") + key + "' line", reader.number + 1);
    const std::vector<std::string_view> fields = split_tabs(*line);
    if (fields.size() != 2 || fields[0] != key)
      throw ParseError(std::string("expected '") + key + "\t...'", reader.number);
    return std::string(fields[1]);
  };
  table.scenario_id = header("scenario");
  table.axis = header("axis");

  const std::optional<std::string_view> columns = reader.next();
  if (!columns || *columns != "columns\tvalue\tmean_gross_gain\tstability\tmean_net_gain")
    throw ParseError("unexpected columns line", reader.number);

  while (const std::optional<std::string_view> line = reader.next()) {
    if (line->empty() && reader.pos >= bytes.size()) break;
    const std::vector<std::string_view> fields = split_tabs(*line);
    if (fields.size() != 4) throw ParseError("expected 4 fields", reader.number);
    SweepRow row;
    auto field = [&](std::size_t i) {
      const std::optional<double> value = parse_double(fields[i]);
      if (!value) throw ParseError("expected a finite real", reader.number, i + 1);
      return *value;
    };
    row.value = field(0);
    row.mean_gross_gain = field(1);
    row.stability = field(2);
    row.mean_net_gain = field(3);
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace ctpkit
