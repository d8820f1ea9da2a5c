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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ctpkit/core.hpp"
#include "ctpkit/metrics.hpp"

// The minimal assurance checklist: eleven canonical items, each tagged with
// the reliability-indicator families it evidences (RI1 interaction
// performance, RI2 epistemic/scientific fit, RI3 socio-technical
// stabilization). Four items are quantitative and auto-populated from the
// metrics module; the other seven are narrative. Reports render to a
// versioned machine format (lossless round-trip) and a fixed-order human
// text format.

namespace ctpkit {

enum class RICategory { RI1, RI2, RI3 };

enum class ItemStatus { Complete, Missing, Invalid };

// The frozen definition of one checklist item.
struct CanonicalItem {
  const char* id;
  const char* title;
  const char* requirement;
  RICategory tags[2];
  int tag_count;
  bool quantitative;
};

// The eleven items, in report order.
std::span<const CanonicalItem> checklist();
const CanonicalItem* canonical_item(std::string_view item_id);

struct ChecklistItem {
  std::string item_id;
  std::vector<RICategory> ri_tags;
  std::string text;
  std::optional<GainReport> gain;
  std::optional<StabilityProfile> stability;
  std::optional<BootstrapInterval> bootstrap;
  ItemStatus status = ItemStatus::Missing;
};

struct AssuranceReport {
  std::string report_id;
  TaskSpec task;
  std::string protocol_id;
  std::string cost_unit;
  double lambda = 0.0;
  std::string lambda_justification;
  std::string created_at;
  std::string toolkit_version;
  std::vector<ChecklistItem> items;
};

enum class DeficiencyKind { MissingItem, InvalidItem, MissingJustification };

struct Deficiency {
  std::string item_id;
  DeficiencyKind kind = DeficiencyKind::MissingItem;
  std::string requirement;  // what the checklist asks for
  std::string message;
};

enum class ReportStyle { Machine, Human };

// Narrative text is keyed by item id; the extra key "lambda-justification"
// fills the report-level justification for the efficiency threshold.
using NarrativeFields = std::map<std::string, std::string>;

// Parses "item-id = text" lines (# comments and blank lines allowed) into
// narrative fields. Throws ParseError on malformed lines.
NarrativeFields parse_narrative(std::string_view bytes);

// Default created_at stamp; commands stay deterministic unless the caller
// supplies a real instant.
inline constexpr const char* kEpochInstant = "1970-01-01T00:00:00Z";

// Builds a report over one or more episodes of the same task and protocol:
// quantitative items are computed from the pooled records plus a
// per-episode stability profile; narrative items are filled from
// `narrative` or marked missing. Throws Error for heterogeneous episodes,
// non-positive lambda, or unknown narrative keys.
AssuranceReport build_report(std::span<const EpisodeLog> logs, double lambda,
                             const NarrativeFields& narrative, std::string report_id = "",
                             std::string created_at = kEpochInstant);

// One deficiency per missing or invalid canonical item, plus one when the
// lambda justification is absent from an otherwise sound report. Empty
// exactly when the report is fully complete.
std::vector<Deficiency> validate_report(const AssuranceReport& report);

// Machine style is versioned JSON (schema "ctpkit-assurance/1") that
// round-trips through parse_report; rendering the same report twice yields
// identical bytes. Human style is fixed-order plain text with RI tags and a
// MISSING marker on incomplete items.
std::string render_report(const AssuranceReport& report, ReportStyle style);

AssuranceReport parse_report(std::string_view bytes);

std::string to_string(RICategory category);
const char* to_string(ItemStatus status);
std::string describe(const Deficiency& deficiency);

}  // namespace ctpkit
