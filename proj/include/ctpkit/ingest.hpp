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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ctpkit/core.hpp"
#include "ctpkit/simulator.hpp"

// Bit-exact readers and writers for the three on-disk formats.
//
// Episode log (*.eplog), tab-separated with a header block:
//
//   ctpkit-log v1
//   episode_id <tab> ...
//   task_id <tab> ...
//   output_kind <tab> real-scalar | categorical | binary
//   labels <tab> a <tab> b          (categorical/binary only)
//   loss_kind <tab> squared-error | absolute-error | zero-one
//   protocol_id <tab> ...
//   cost_unit <tab> ...
//   columns <tab> instance_id y_true y_human y_ai y_team cost [timestamp] [rounds]
//   one record per line in column order; "-" marks an absent optional value
//
// Canonical form (what write_log emits): exactly that key order, LF line
// endings, a trailing newline, optional columns present only when some
// record carries the value, and shortest round-trip decimal for every
// number. read_log accepts header keys in any order and reports the first
// problem with its 1-based line (and column, for record fields).
//
// Costs are per record and sum to the episode total. A study that only
// knows an episode-level cost stores it on the first record with zeros
// elsewhere; the total is the same and windowed analyses simply attribute
// the whole cost to the first window.
//
// A multi-episode study is a directory containing one file per episode plus
// a manifest listing the episode files in temporal order:
//
//   ctpkit-manifest v1
//   <filename>
//   ...
//
// Scenario configs are INI-style text (see read_scenario and the bundled
// scenarios/ files); sweep tables are tab-separated with a fixed header.

namespace ctpkit {

inline constexpr const char* kLogMagic = "ctpkit-log v1";
inline constexpr const char* kManifestMagic = "ctpkit-manifest v1";
inline constexpr const char* kSweepMagic = "ctpkit-sweep v1";
inline constexpr const char* kScenarioFormat = "ctpkit-scenario/1";
inline constexpr const char* kManifestName = "manifest.txt";

// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

EpisodeLog read_log(std::string_view bytes);
EpisodeLog read_log_file(const std::string& path);

// Canonical bytes for a valid log; throws Error when the log is invalid.
std::string write_log(const EpisodeLog& log);
void write_log_file(const EpisodeLog& log, const std::string& path);

// Reads every episode named by the directory's manifest, in manifest order.
std::vector<EpisodeLog> read_study(const std::string& dir);

// Writes one file per episode (named <episode_id>.eplog) plus the manifest;
// returns the file names in order. Episode ids must be unique.
std::vector<std::string> write_study(const std::string& dir, std::span<const EpisodeLog> logs);

// Parses and validates a scenario config; throws ParseError (with line) for
// malformed text and Error naming the field for semantic violations.
ScenarioConfig read_scenario(std::string_view bytes);
ScenarioConfig read_scenario_file(const std::string& path);

std::string write_sweep(const SweepTable& table);
SweepTable read_sweep(std::string_view bytes);

}  // namespace ctpkit
