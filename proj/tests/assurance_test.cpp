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
#include <set>

#include "ctpkit/assurance.hpp"
#include "support.hpp"

using namespace ctpkit;
using namespace testsupport;

namespace {

const char* kNarrativeIds[] = {"ai-scope",           "protocol",
                               "user-competence",    "uncertainty-discipline",
                               "epistemic-validity", "update-drift",
                               "monitoring-accountability"};

NarrativeFields full_narrative() {
  NarrativeFields fields;
  for (const char* id : kNarrativeIds) fields[id] = std::string("documented: ") + id;
  fields["lambda-justification"] = "one minute of review must buy 0.1 loss units";
  return fields;
}

std::vector<EpisodeLog> sample_logs() {
  return {contraction_episode(1.0, 8, 1.0, "s-ep0"), contraction_episode(1.0, 8, 1.0, "s-ep1")};
}

}  // namespace

TEST_CASE("the checklist is pinned: ids, order, tags, and kind") {
  const auto items = checklist();
  REQUIRE(items.size() == 11);

  using T = std::vector<RICategory>;
  const std::vector<std::pair<std::string, T>> expected = {
      {"ai-scope", {RICategory::RI2, RICategory::RI3}},
      {"protocol", {RICategory::RI1, RICategory::RI3}},
      {"user-competence", {RICategory::RI3}},
      {"performance", {RICategory::RI1}},
      {"complementarity-evidence", {RICategory::RI1}},
      {"interaction-cost", {RICategory::RI3}},
      {"efficient-complementarity", {RICategory::RI1, RICategory::RI3}},
      {"uncertainty-discipline", {RICategory::RI1, RICategory::RI2}},
      {"epistemic-validity", {RICategory::RI2}},
      {"update-drift", {RICategory::RI3}},
      {"monitoring-accountability", {RICategory::RI3}},
  };
  for (std::size_t i = 0; i < 11; ++i) {
    CHECK(items[i].id == expected[i].first);
    CHECK(T(items[i].tags, items[i].tags + items[i].tag_count) == expected[i].second);
  }

  // Exactly four items are auto-populated with quantitative artifacts.
  std::size_t quantitative = 0;
  for (const CanonicalItem& item : items) quantitative += item.quantitative ? 1u : 0u;
  CHECK(quantitative == 4);
  CHECK(canonical_item("performance") != nullptr);
  CHECK(canonical_item("vibes") == nullptr);
}

TEST_CASE("build_report with a full narrative completes every item") {
  const std::vector<EpisodeLog> logs = sample_logs();
  const AssuranceReport report = build_report(logs, 0.1, full_narrative());
  REQUIRE(report.items.size() == 11);
  for (const ChecklistItem& item : report.items) CHECK(item.status == ItemStatus::Complete);
  CHECK(validate_report(report).empty());
  CHECK(report.lambda == 0.1);
  CHECK(report.cost_unit == "minutes");
  CHECK(report.created_at == kEpochInstant);
  CHECK(!report.lambda_justification.empty());

  // Quantitative artifacts are pooled over both episodes.
  const ChecklistItem& performance = report.items[3];
  REQUIRE(performance.gain.has_value());
  CHECK(performance.gain->n == 16);
  CHECK(performance.gain->loss_human == 1.0);
  CHECK(performance.gain->gross_gain == 0.1875);
  CHECK(performance.gain->total_cost == 2.0);

  const ChecklistItem& evidence = report.items[4];
  REQUIRE(evidence.stability.has_value());
  CHECK(evidence.stability->ctp_series == std::vector<int>{1, 1});
  CHECK(evidence.stability->stability == 1.0);
}

TEST_CASE("build_report with no narrative leaves exactly the seven narrative items missing") {
  const std::vector<EpisodeLog> logs = sample_logs();
  const AssuranceReport report = build_report(logs, 0.1, {});

  std::set<std::string> missing;
  for (const ChecklistItem& item : report.items)
    if (item.status == ItemStatus::Missing) missing.insert(item.item_id);
  CHECK(missing == std::set<std::string>(std::begin(kNarrativeIds), std::end(kNarrativeIds)));

  std::size_t complete = 0;
  for (const ChecklistItem& item : report.items)
    complete += item.status == ItemStatus::Complete ? 1u : 0u;
  CHECK(complete == 4);

  // Validation reports the seven missing items plus the absent lambda
  // justification.
  const std::vector<Deficiency> deficiencies = validate_report(report);
  CHECK(deficiencies.size() == 8);
  std::size_t missing_items = 0;
  bool justification_flagged = false;
  for (const Deficiency& d : deficiencies) {
    if (d.kind == DeficiencyKind::MissingItem) ++missing_items;
    if (d.kind == DeficiencyKind::MissingJustification) {
      justification_flagged = true;
      CHECK(d.item_id == "efficient-complementarity");
      CHECK(d.requirement == "how lambda is justified");
    }
  }
  CHECK(missing_items == 7);
  CHECK(justification_flagged);
}

TEST_CASE("build_report error paths") {
  const std::vector<EpisodeLog> logs = sample_logs();
  CHECK_THROWS_AS(build_report(logs, 0.0, {}), Error);
  CHECK_THROWS_AS(build_report(std::vector<EpisodeLog>{}, 0.1, {}), Error);
  CHECK_THROWS_AS(build_report(logs, 0.1, {{"strange-item", "text"}}), Error);

  std::vector<EpisodeLog> mixed = sample_logs();
  mixed[1].task.task_id = "different";
  CHECK_THROWS_WITH_AS(build_report(mixed, 0.1, {}), "heterogeneous episodes", Error);
}

TEST_CASE("validate_report on an itemless report lists all eleven items") {
  AssuranceReport report;
  report.lambda = 0.1;
  report.lambda_justification = "n/a";
  const std::vector<Deficiency> deficiencies = validate_report(report);
  CHECK(deficiencies.size() == 11);
  for (const Deficiency& d : deficiencies) CHECK(d.kind == DeficiencyKind::MissingItem);
}

TEST_CASE("a complete report lacking only the lambda justification gets one deficiency") {
  NarrativeFields narrative = full_narrative();
  narrative.erase("lambda-justification");
  const AssuranceReport report = build_report(sample_logs(), 0.1, narrative);
  const std::vector<Deficiency> deficiencies = validate_report(report);
  REQUIRE(deficiencies.size() == 1);
  CHECK(deficiencies[0].kind == DeficiencyKind::MissingJustification);
  CHECK(deficiencies[0].requirement == "how lambda is justified");
  CHECK(describe(deficiencies[0]).find("how lambda is justified") != std::string::npos);
}

TEST_CASE("tampered RI tags are flagged as invalid") {
  AssuranceReport report = build_report(sample_logs(), 0.1, full_narrative());
  report.items[3].ri_tags = {RICategory::RI3};  // performance is an RI1 item
  bool invalid = false;
  for (const Deficiency& d : validate_report(report))
    invalid |= d.item_id == "performance" && d.kind == DeficiencyKind::InvalidItem;
  CHECK(invalid);
}

TEST_CASE("machine rendering is byte-stable and round-trips") {
  AssuranceReport report = build_report(sample_logs(), 0.1, full_narrative());
  // Attach a bootstrap interval to exercise every optional artifact.
  BootstrapInterval interval;
  interval.statistic = GainStatistic::GrossGain;
  interval.point = 0.1875;
  interval.lower = 0.17;
  interval.upper = 0.19;
  interval.level = 0.95;
  interval.resamples = 1000;
  interval.seed = 42;
  report.items[7].bootstrap = interval;

  const std::string bytes = render_report(report, ReportStyle::Machine);
  CHECK(bytes == render_report(report, ReportStyle::Machine));
  CHECK(bytes.find("\"schema\": \"ctpkit-assurance/1\"") != std::string::npos);

  const AssuranceReport back = parse_report(bytes);
  CHECK(render_report(back, ReportStyle::Machine) == bytes);
  CHECK(back.report_id == report.report_id);
  CHECK(back.lambda == report.lambda);
  CHECK(back.items.size() == 11);
  REQUIRE(back.items[7].bootstrap.has_value());
  CHECK(back.items[7].bootstrap->resamples == 1000);
  REQUIRE(back.items[3].gain.has_value());
  CHECK(back.items[3].gain->gross_gain == 0.1875);
  CHECK(validate_report(back).empty());
}

TEST_CASE("human rendering keeps the checklist order and flags gaps") {
  const AssuranceReport complete = build_report(sample_logs(), 0.1, full_narrative());
  const std::string text = render_report(complete, ReportStyle::Human);

  const char* titles[] = {"AI scope and conditions of use",
                          "Protocol",
                          "User competence",
                          "Performance",
                          "Complementarity evidence",
                          "Interaction cost",
                          "Efficient complementarity",
                          "Uncertainty discipline",
                          "Epistemic validity",
                          "Update and drift management",
                          "Monitoring and accountability"};
  std::size_t cursor = 0;
  for (const char* title : titles) {
    const std::size_t at = text.find(title, cursor);
    REQUIRE(at != std::string::npos);
    cursor = at;
  }
  CHECK(text.find("** MISSING **") == std::string::npos);
  CHECK(text.find("[RI1 RI3]") != std::string::npos);

  const AssuranceReport sparse = build_report(sample_logs(), 0.1, {});
  CHECK(render_report(sparse, ReportStyle::Human).find("** MISSING **") != std::string::npos);
}

TEST_CASE("parse_report rejects foreign documents") {
  CHECK_THROWS_AS(parse_report("not json"), Error);
  CHECK_THROWS_AS(parse_report("{\"schema\": \"something-else\"}"), Error);
  const AssuranceReport empty = parse_report("{\"schema\": \"ctpkit-assurance/1\"}");
  CHECK(validate_report(empty).size() == 11);
}

TEST_CASE("narrative field parsing") {
  const NarrativeFields fields = parse_narrative(
      "# comment\n"
      "ai-scope = dermoscopic lesions, adult patients\n"
      "protocol = review then decide\n"
      "\n"
      "lambda-justification = policy fixed\n");
  CHECK(fields.size() == 3);
  CHECK(fields.at("ai-scope") == "dermoscopic lesions, adult patients");
  CHECK(fields.at("lambda-justification") == "policy fixed");

  CHECK_THROWS_AS(parse_narrative("ai-scope\n"), ParseError);
  CHECK_THROWS_AS(parse_narrative("a = 1\na = 2\n"), ParseError);
}
