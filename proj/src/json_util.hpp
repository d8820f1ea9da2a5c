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

#include <json.hpp>

#include "ctpkit/core.hpp"
#include "ctpkit/metrics.hpp"

// JSON encodings shared by the machine report formats. nlohmann::json keeps
// object keys sorted, so rendered documents are byte-stable.

namespace ctpkit::jsonutil {

nlohmann::json task_to_json(const TaskSpec& task);
TaskSpec task_from_json(const nlohmann::json& j);

nlohmann::json gain_to_json(const GainReport& report);
GainReport gain_from_json(const nlohmann::json& j);

nlohmann::json stability_to_json(const StabilityProfile& profile);
StabilityProfile stability_from_json(const nlohmann::json& j);

nlohmann::json bootstrap_to_json(const BootstrapInterval& interval);
BootstrapInterval bootstrap_from_json(const nlohmann::json& j);

}  // namespace ctpkit::jsonutil
