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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace irstk::fieldtrial {

// One drive-test sample. Any of the metric fields may be absent.
struct MeasurementRecord {
    std::string location_id;
    std::optional<double> rsrp_off_dbm;
    std::optional<double> rsrp_on_dbm;
    std::optional<double> thr_off_mbps;
    std::optional<double> thr_on_mbps;
};

struct MeasurementLog {
    std::vector<MeasurementRecord> records;
};

// Delimited text with a header row naming any of: location_id, rsrp_off,
// rsrp_on, thr_off, thr_on. Comma- or whitespace-separated; unknown columns
// are ignored; empty cells mean "absent".
MeasurementLog read_log(std::istream &in);
MeasurementLog read_log_file(const std::string &path);

// Right-continuous empirical CDF: one (value, count<=value / n) step per
// distinct value, ascending.
struct CdfPoint {
    double value = 0.0;
    double fraction = 0.0;
};

std::vector<CdfPoint> cdf(std::vector<double> values);

// P(X <= x) under the step function.
double cdf_fraction_at_or_below(const std::vector<CdfPoint> &steps, double x);

// Smallest value with CDF >= p (p in (0, 1]).
double cdf_quantile(const std::vector<CdfPoint> &steps, double p);

// With/without-IRS improvement per location group. RSRP means and the gain
// are dB-domain arithmetic; throughput gain is a percentage of the off mean.
struct GroupStats {
    std::string group;
    std::size_t rsrp_pairs = 0;
    std::size_t thr_pairs = 0;
    double mean_rsrp_off_dbm = 0.0;
    double mean_rsrp_on_dbm = 0.0;
    double rsrp_gain_db = 0.0;
    double mean_thr_off_mbps = 0.0;
    double mean_thr_on_mbps = 0.0;
    double thr_gain_percent = 0.0;
};

// One entry per distinct location_id (first-appearance order) plus a final
// "all" aggregate. Records missing one side of a pair are skipped for that
// metric; a log with no usable pair at all is an error.
std::vector<GroupStats> improvement_stats(const MeasurementLog &log);

} // namespace irstk::fieldtrial
