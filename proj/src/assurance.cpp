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
#include "ctpkit/assurance.hpp"

#include <algorithm>
#include <cstdio>

#include "ctpkit/version.hpp"
#include "json_util.hpp"

namespace ctpkit {

using nlohmann::json;

namespace {

constexpr CanonicalItem kChecklist[] = {
    {"ai-scope", "AI scope and conditions of use",
     "intended use, in-/out-of-scope cases, environment assumptions, and "
     "abstention/escalation boundaries",
     {RICategory::RI2, RICategory::RI3}, 2, false},
    {"protocol", "Protocol",
     "how the human consults and integrates AI outputs, disagreement handling and "
     "escalation, and how the team output is produced",
     {RICategory::RI1, RICategory::RI3}, 2, false},
    {"user-competence", "User competence",
     "who is authorized, training content and cadence, competence checks, and covered "
     "failure modes",
     {RICategory::RI3, RICategory::RI3}, 1, false},
    {"performance", "Performance",
     "empirical losses of the human, the AI, and the team",
     {RICategory::RI1, RICategory::RI1}, 1, true},
    {"complementarity-evidence", "Complementarity evidence",
     "CTP with gross and net gain, reported with magnitude and stability across time",
     {RICategory::RI1, RICategory::RI1}, 1, true},
    {"interaction-cost", "Interaction cost",
     "the cost term with an explicit unit, its categories, and how it is estimated",
     {RICategory::RI3, RICategory::RI3}, 1, true},
    {"efficient-complementarity", "Efficient complementarity",
     "net gain and its sign, the gain-per-cost ratio, the threshold lambda, and how "
     "lambda is justified",
     {RICategory::RI1, RICategory::RI3}, 2, true},
    {"uncertainty-discipline", "Uncertainty discipline",
     "when prediction uncertainty triggers human review and how it is communicated and "
     "acted upon",
     {RICategory::RI1, RICategory::RI2}, 2, false},
    {"epistemic-validity", "Epistemic validity",
     "why the target, labels, and features are appropriate for the decision purpose",
     {RICategory::RI2, RICategory::RI2}, 1, false},
    {"update-drift", "Update and drift management",
     "versioning, remodeling and evaluation triggers, and change communication",
     {RICategory::RI3, RICategory::RI3}, 1, false},
    {"monitoring-accountability", "Monitoring and accountability",
     "post-deployment tracking, incident reporting, auditing, and responsibility "
     "assignment",
     {RICategory::RI3, RICategory::RI3}, 1, false},
};

std::vector<RICategory> tags_of(const CanonicalItem& item) {
  return {item.tags, item.tags + item.tag_count};
}

bool same_task_spec(const TaskSpec& a, const TaskSpec& b) {
  return a.task_id == b.task_id && a.output_kind == b.output_kind &&
         a.loss_kind == b.loss_kind && a.labels == b.labels;
}

std::string six_digits(double value) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

ItemStatus status_from(const std::string& name) {
  if (name == "complete") return ItemStatus::Complete;
  if (name == "missing") return ItemStatus::Missing;
  return ItemStatus::Invalid;
}

std::optional<RICategory> category_from(const std::string& name) {
  if (name == "RI1") return RICategory::RI1;
  if (name == "RI2") return RICategory::RI2;
  if (name == "RI3") return RICategory::RI3;
  return std::nullopt;
}

}  // namespace

std::span<const CanonicalItem> checklist() { return kChecklist; }

NarrativeFields parse_narrative(std::string_view bytes) {
  NarrativeFields fields;
  std::size_t pos = 0;
  std::size_t number = 0;
  while (pos <= bytes.size()) {
    const std::size_t eol = bytes.find('\n', pos);
    std::string_view line =
        eol == std::string_view::npos ? bytes.substr(pos) : bytes.substr(pos, eol - pos);
    pos = eol == std::string_view::npos ? bytes.size() + 1 : eol + 1;
    ++number;

    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
      line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'item-id = text'", number);
    std::string_view key = line.substr(0, eq);
    std::string_view value = line.substr(eq + 1);
    while (!key.empty() && key.back() == ' ') key.remove_suffix(1);
    while (!value.empty() && value.front() == ' ') value.remove_prefix(1);
    if (key.empty()) throw ParseError("empty item id", number);
    if (!fields.emplace(std::string(key), std::string(value)).second)
      throw ParseError("duplicate narrative item '" + std::string(key) + "'", number);
  }
  return fields;
}

const CanonicalItem* canonical_item(std::string_view item_id) {
  for (const CanonicalItem& item : kChecklist)
    if (item_id == item.id) return &item;
  return nullptr;
}

AssuranceReport build_report(std::span<const EpisodeLog> logs, double lambda,
                             const NarrativeFields& narrative, std::string report_id,
                             std::string created_at) {
  if (!(lambda > 0.0)) throw Error("invalid conversion rate: lambda must be > 0");
  if (logs.empty()) throw Error("report needs at least one episode");
  for (const EpisodeLog& log : logs) {
    if (!same_task_spec(log.task, logs.front().task) ||
        log.protocol_id != logs.front().protocol_id ||
        log.cost_unit != logs.front().cost_unit)
      throw Error("heterogeneous episodes");
  }
  for (const auto& [key, value] : narrative) {
    (void)value;
    if (key != "lambda-justification" && canonical_item(key) == nullptr)
      throw Error("unknown narrative item '" + key + "'");
  }

  // Pooled gain over every record of every episode; instance ids are only
  // unique per episode, so the losses are accumulated directly.
  GainReport pooled;
  pooled.episode_id = "pooled";
  pooled.lambda = lambda;
  {
    const LossKind loss = logs.front().task.loss_kind;
    double human = 0.0, ai = 0.0, team = 0.0, cost = 0.0;
    std::size_t n = 0;
    for (const EpisodeLog& log : logs) {
      const std::vector<Violation> violations = validate_episode(log);
      if (!violations.empty())
        throw Error("invalid episode '" + log.episode_id + "': " + violations.front().field +
                    ": " + violations.front().message);
      for (const InteractionRecord& record : log.records) {
        human += pointwise_loss(loss, record.y_human, record.y_true);
        ai += pointwise_loss(loss, record.y_ai, record.y_true);
        team += pointwise_loss(loss, record.y_team, record.y_true);
        cost += record.cost;
        ++n;
      }
    }
    const double dn = static_cast<double>(n);
    const LossSummary summary{human / dn, ai / dn, team / dn, n};
    pooled.n = n;
    pooled.loss_human = summary.loss_human;
    pooled.loss_ai = summary.loss_ai;
    pooled.loss_team = summary.loss_team;
    pooled.ctp = ctp(summary);
    pooled.gross_gain = gross_gain(summary);
    pooled.total_cost = cost;
    pooled.net_gain = net_gain(pooled.gross_gain, lambda, cost);
    pooled.efficiency = efficiency_verdict(pooled.gross_gain, lambda, cost);
  }
  const StabilityProfile stability = stability_profile(logs, lambda);

  AssuranceReport report;
  report.task = logs.front().task;
  report.protocol_id = logs.front().protocol_id;
  report.cost_unit = logs.front().cost_unit;
  report.report_id =
      report_id.empty() ? report.task.task_id + "-" + report.protocol_id : std::move(report_id);
  report.lambda = lambda;
  if (const auto it = narrative.find("lambda-justification"); it != narrative.end())
    report.lambda_justification = it->second;
  report.created_at = std::move(created_at);
  report.toolkit_version = kVersion;

  for (const CanonicalItem& canonical : kChecklist) {
    ChecklistItem item;
    item.item_id = canonical.id;
    item.ri_tags = tags_of(canonical);
    if (const auto it = narrative.find(canonical.id); it != narrative.end())
      item.text = it->second;
    if (canonical.quantitative) {
      item.gain = pooled;
      if (item.item_id == "complementarity-evidence") item.stability = stability;
      item.status = ItemStatus::Complete;
    } else {
      item.status = item.text.empty() ? ItemStatus::Missing : ItemStatus::Complete;
    }
    report.items.push_back(std::move(item));
  }
  return report;
}

std::vector<Deficiency> validate_report(const AssuranceReport& report) {
  std::vector<Deficiency> out;

  for (const CanonicalItem& canonical : kChecklist) {
    const ChecklistItem* found = nullptr;
    std::size_t copies = 0;
    for (const ChecklistItem& item : report.items) {
      if (item.item_id == canonical.id) {
        found = &item;
        ++copies;
      }
    }
    if (found == nullptr) {
      out.push_back({canonical.id, DeficiencyKind::MissingItem, canonical.requirement,
                     "item is absent from the report"});
      continue;
    }
    if (copies > 1) {
      out.push_back({canonical.id, DeficiencyKind::InvalidItem, canonical.requirement,
                     "item appears " + std::to_string(copies) + " times"});
      continue;
    }
    if (found->ri_tags != tags_of(canonical)) {
      out.push_back({canonical.id, DeficiencyKind::InvalidItem, canonical.requirement,
                     "RI tags do not match the checklist assignment"});
      continue;
    }
    if (canonical.quantitative) {
      if (!found->gain) {
        out.push_back({canonical.id, DeficiencyKind::MissingItem, canonical.requirement,
                       "quantitative item lacks an attached gain report"});
      } else if (found->status != ItemStatus::Complete) {
        out.push_back({canonical.id, DeficiencyKind::InvalidItem, canonical.requirement,
                       "status contradicts the attached evidence"});
      }
      continue;
    }
    if (found->text.empty()) {
      out.push_back({canonical.id, DeficiencyKind::MissingItem, canonical.requirement,
                     "narrative item has no content"});
    } else if (found->status != ItemStatus::Complete) {
      out.push_back({canonical.id, DeficiencyKind::InvalidItem, canonical.requirement,
                     "status contradicts the supplied content"});
    }
  }

  // The lambda justification is checked only when the efficiency item is
  // otherwise sound; an absent item already covers it.
  const bool efficiency_item_sound =
      std::none_of(out.begin(), out.end(),
                   [](const Deficiency& d) { return d.item_id == "efficient-complementarity"; });
  if (efficiency_item_sound) {
    if (!(report.lambda > 0.0)) {
      out.push_back({"efficient-complementarity", DeficiencyKind::InvalidItem,
                     canonical_item("efficient-complementarity")->requirement,
                     "lambda must be positive"});
    } else if (report.lambda_justification.empty()) {
      out.push_back({"efficient-complementarity", DeficiencyKind::MissingJustification,
                     "how lambda is justified",
                     "no justification is given for the efficiency threshold lambda"});
    }
  }
  return out;
}

namespace {

json item_to_json(const ChecklistItem& item) {
  json j;
  j["item_id"] = item.item_id;
  json tags = json::array();
  for (RICategory tag : item.ri_tags) tags.push_back(to_string(tag));
  j["ri_tags"] = tags;
  j["status"] = to_string(item.status);
  j["text"] = item.text;
  if (item.gain) j["gain_report"] = jsonutil::gain_to_json(*item.gain);
  if (item.stability) j["stability"] = jsonutil::stability_to_json(*item.stability);
  if (item.bootstrap) j["bootstrap"] = jsonutil::bootstrap_to_json(*item.bootstrap);
  return j;
}

ChecklistItem item_from_json(const json& j) {
  ChecklistItem item;
  item.item_id = j.value("item_id", "");
  if (j.contains("ri_tags")) {
    for (const json& tag : j.at("ri_tags")) {
      const std::optional<RICategory> category = category_from(tag.get<std::string>());
      if (!category) throw Error("unknown RI tag");
      item.ri_tags.push_back(*category);
    }
  }
  item.status = status_from(j.value("status", "missing"));
  item.text = j.value("text", "");
  if (j.contains("gain_report")) item.gain = jsonutil::gain_from_json(j.at("gain_report"));
  if (j.contains("stability")) item.stability = jsonutil::stability_from_json(j.at("stability"));
  if (j.contains("bootstrap")) item.bootstrap = jsonutil::bootstrap_from_json(j.at("bootstrap"));
  return item;
}

std::string render_human(const AssuranceReport& report) {
  std::string out;
  out += "ASSURANCE REPORT  " + report.report_id + "\n";
  out += std::string(18 + report.report_id.size(), '=') + "\n";
  out += "task:        " + report.task.task_id + " (" + to_string(report.task.output_kind) +
         ", " + to_string(report.task.loss_kind) + ")\n";
  out += "protocol:    " + report.protocol_id + "\n";
  out += "lambda:      " + six_digits(report.lambda) + " loss-units per " + report.cost_unit +
         (report.lambda_justification.empty() ? " (justification missing)"
                                              : " -- " + report.lambda_justification) +
         "\n";
  out += "created_at:  " + report.created_at + "\n";
  out += "toolkit:     ctpkit " + report.toolkit_version + "\n";

  std::size_t index = 0;
  for (const CanonicalItem& canonical : kChecklist) {
    ++index;
    const ChecklistItem* found = nullptr;
    for (const ChecklistItem& item : report.items)
      if (item.item_id == canonical.id) { found = &item; break; }

    std::string tags;
    for (RICategory tag : tags_of(canonical)) tags += (tags.empty() ? "" : " ") + to_string(tag);
    char head[96];
    std::snprintf(head, sizeof head, "\n%2zu. %-36s [%s]", index, canonical.title, tags.c_str());
    out += head;
    if (found == nullptr || (found->status != ItemStatus::Complete)) out += "  ** MISSING **";
    out += "\n";

    if (found == nullptr) continue;
    if (!found->text.empty()) out += "    " + found->text + "\n";
    if (found->gain) {
      const GainReport& g = *found->gain;
      if (canonical.id == std::string("performance")) {
        out += "    L_H=" + six_digits(g.loss_human) + "  L_AI=" + six_digits(g.loss_ai) +
               "  L_HAI=" + six_digits(g.loss_team) + "  (n=" + std::to_string(g.n) + ")\n";
      } else if (canonical.id == std::string("complementarity-evidence")) {
        out += "    CTP=" + std::to_string(g.ctp) + "  gross_gain=" + six_digits(g.gross_gain) +
               "  net_gain=" + six_digits(g.net_gain) + "\n";
      } else if (canonical.id == std::string("interaction-cost")) {
        out += "    total_cost=" + six_digits(g.total_cost) + " " + report.cost_unit + "\n";
      } else if (canonical.id == std::string("efficient-complementarity")) {
        out += "    net_gain=" + six_digits(g.net_gain) + "  verdict=" +
               to_string(g.efficiency);
        if (g.total_cost > 0.0)
          out += "  gain/cost=" + six_digits(g.gross_gain / g.total_cost) +
                 "  lambda=" + six_digits(g.lambda);
        out += "\n";
      }
    }
    if (found->stability) {
      const StabilityProfile& s = *found->stability;
      out += "    stability=" + six_digits(s.stability) + " over " +
             std::to_string(s.ctp_series.size()) + " window(s)\n";
    }
    if (found->bootstrap) {
      const BootstrapInterval& b = *found->bootstrap;
      out += std::string("    ") + to_string(b.statistic) + " " + six_digits(b.point) + " [" +
             six_digits(b.lower) + ", " + six_digits(b.upper) + "] at level " +
             six_digits(b.level) + "\n";
    }
  }
  return out;
}

}  // namespace

std::string render_report(const AssuranceReport& report, ReportStyle style) {
  if (style == ReportStyle::Human) return render_human(report);

  json j;
  j["schema"] = "ctpkit-assurance/1";
  j["report_id"] = report.report_id;
  j["task"] = jsonutil::task_to_json(report.task);
  j["protocol_id"] = report.protocol_id;
  j["cost_unit"] = report.cost_unit;
  j["lambda"] = report.lambda;
  j["lambda_justification"] = report.lambda_justification;
  j["created_at"] = report.created_at;
  j["toolkit_version"] = report.toolkit_version;
  json items = json::array();
  for (const ChecklistItem& item : report.items) items.push_back(item_to_json(item));
  j["items"] = items;
  return j.dump(2) + "\n";
}

AssuranceReport parse_report(std::string_view bytes) {
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::exception& e) {
    throw ParseError(std::string("assurance report: ") + e.what(), 1);
  }
  try {
    if (!j.is_object() || j.value("schema", "") != std::string("ctpkit-assurance/1"))
      throw ParseError("assurance report: unknown or missing schema identifier", 1);
    AssuranceReport report;
    report.report_id = j.value("report_id", "");
    if (j.contains("task")) report.task = jsonutil::task_from_json(j.at("task"));
    report.protocol_id = j.value("protocol_id", "");
    report.cost_unit = j.value("cost_unit", "");
    report.lambda = j.value("lambda", 0.0);
    report.lambda_justification = j.value("lambda_justification", "");
    report.created_at = j.value("created_at", "");
    report.toolkit_version = j.value("toolkit_version", "");
    if (j.contains("items"))
      for (const json& item : j.at("items")) report.items.push_back(item_from_json(item));
    return report;
  } catch (const json::exception& e) {
    throw ParseError(std::string("assurance report: ") + e.what(), 1);
  }
}

std::string to_string(RICategory category) {
  switch (category) {
    case RICategory::RI1: return "RI1";
    case RICategory::RI2: return "RI2";
    case RICategory::RI3: return "RI3";
  }
  return "?";
}

const char* to_string(ItemStatus status) {
  switch (status) {
    case ItemStatus::Complete: return "complete";
    case ItemStatus::Missing: return "missing";
    case ItemStatus::Invalid: return "invalid";
  }
  return "?";
}

std::string describe(const Deficiency& deficiency) {
  return deficiency.item_id + ": " + deficiency.message + " (requires: " +
         deficiency.requirement + ")";
}

}  // namespace ctpkit
