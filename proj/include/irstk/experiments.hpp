// SPDX-License-Identifier: Apache-2.0
//
// irs-toolkit — link-level simulation and deployment optimization for
// IRS-aided wireless networks
// Copyright (C) 2026 irs-toolkit contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "irstk/result_table.hpp"
#include "irstk/scenario.hpp"

namespace irstk::cli {

// Known experiment names, in CLI order:
// fig2, fig3, fig4, placement, coverage, routing, fieldtrial.
std::vector<std::string> experiment_names();

// Runs one named experiment; sweep points are evaluated with up to `jobs`
// worker threads, with results ordered by sweep index regardless of
// scheduling.
std::vector<ResultTable> run_experiment(const std::string &name, const Scenario &scenario,
                                        unsigned jobs = 1);

// Example drive-test log used when the fieldtrial experiment has no log_file.
const char *builtin_fieldtrial_log();

} // namespace irstk::cli
