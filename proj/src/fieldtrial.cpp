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

#include "irstk/fieldtrial.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace irstk::fieldtrial {

namespace {

std::vector<std::string> split_fields(const std::string &line, bool comma) {
    std::vector<std::string> out;
    if (comma) {
        std::string cell;
        std::istringstream ss(line);
        while (std::getline(ss, cell, ',')) {
            // trim surrounding whitespace
            const auto b = cell.find_first_not_of(" \t\r");
            const auto e = cell.find_last_not_of(" \t\r");
            out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
        }
        if (!line.empty() && line.back() == ',') {
            out.push_back("");
        }
    } else {
        std::istringstream ss(line);
        std::string cell;
        while (ss >> cell) {
            out.push_back(cell);
        }
    }
    return out;
}

std::optional<double> parse_cell(const std::string &cell, std::size_t line_no) {
    if (cell.empty() || cell == "na" || cell == "NA" || cell == "-") {
        return std::nullopt;
    }
    bool ok = true;
    double v = 0.0;
    try {
        std::size_t used = 0;
        v = std::stod(cell, &used);
        ok = used == cell.size() && std::isfinite(v);
    } catch (const std::exception &) {
        ok = false;
    }
    if (!ok) {
        throw std::invalid_argument("measurement log line " + std::to_string(line_no) +
                                    ": bad numeric cell '" + cell + "'");
    }
    return v;
}

} // namespace

MeasurementLog read_log(std::istream &in) {
    std::string line;
    std::size_t line_no = 0;
    // header: first non-comment, non-empty line
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line[0] != '#') {
            have_header = true;
            break;
        }
    }
    if (!have_header) {
        throw std::invalid_argument("measurement log: missing header row");
    }
    const bool comma = line.find(',') != std::string::npos;
    const auto header = split_fields(line, comma);
    int col_loc = -1, col_rsrp_off = -1, col_rsrp_on = -1, col_thr_off = -1, col_thr_on = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "location_id") col_loc = static_cast<int>(i);
        if (header[i] == "rsrp_off") col_rsrp_off = static_cast<int>(i);
        if (header[i] == "rsrp_on") col_rsrp_on = static_cast<int>(i);
        if (header[i] == "thr_off") col_thr_off = static_cast<int>(i);
        if (header[i] == "thr_on") col_thr_on = static_cast<int>(i);
    }
    MeasurementLog log;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const auto cells = split_fields(line, comma);
        if (cells.empty()) {
            continue;
        }
        auto cell_at = [&](int idx) -> std::string {
            return idx >= 0 && idx < static_cast<int>(cells.size()) ? cells[idx] : "";
        };
        MeasurementRecord rec;
        rec.location_id = cell_at(col_loc);
        rec.rsrp_off_dbm = parse_cell(cell_at(col_rsrp_off), line_no);
        rec.rsrp_on_dbm = parse_cell(cell_at(col_rsrp_on), line_no);
        rec.thr_off_mbps = parse_cell(cell_at(col_thr_off), line_no);
        rec.thr_on_mbps = parse_cell(cell_at(col_thr_on), line_no);
        log.records.push_back(std::move(rec));
    }
    if (log.records.empty()) {
        throw std::invalid_argument("measurement log: no records");
    }
    return log;
}

MeasurementLog read_log_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("measurement log: cannot open '" + path + "'");
    }
    return read_log(in);
}

std::vector<CdfPoint> cdf(std::vector<double> values) {
    if (values.empty()) {
        throw std::invalid_argument("cdf: empty input");
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("cdf: non-finite value");
        }
    }
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    std::vector<CdfPoint> steps;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i + 1 == values.size() || values[i + 1] != values[i]) {
            steps.push_back({values[i], static_cast<double>(i + 1) / n});
        }
    }
    return steps;
}

double cdf_fraction_at_or_below(const std::vector<CdfPoint> &steps, double x) {
    double frac = 0.0;
    for (const auto &s : steps) {
        if (s.value <= x) {
            frac = s.fraction;
        } else {
            break;
        }
    }
    return frac;
}

double cdf_quantile(const std::vector<CdfPoint> &steps, double p) {
    if (steps.empty() || !(p > 0.0) || p > 1.0) {
        throw std::invalid_argument("cdf_quantile: p must be in (0, 1]");
    }
    for (const auto &s : steps) {
        if (s.fraction >= p - 1e-15) {
            return s.value;
        }
    }
    return steps.back().value;
}

std::vector<GroupStats> improvement_stats(const MeasurementLog &log) {
    struct Acc {
        double rsrp_off = 0.0, rsrp_on = 0.0;
        double thr_off = 0.0, thr_on = 0.0;
        std::size_t n_rsrp = 0, n_thr = 0;
    };
    std::vector<std::string> order;
    std::map<std::string, Acc> acc;
    auto feed = [&](const std::string &key, const MeasurementRecord &rec) {
        if (acc.find(key) == acc.end()) {
            order.push_back(key);
        }
        Acc &a = acc[key];
        if (rec.rsrp_off_dbm && rec.rsrp_on_dbm) {
            a.rsrp_off += *rec.rsrp_off_dbm;
            a.rsrp_on += *rec.rsrp_on_dbm;
            ++a.n_rsrp;
        }
        if (rec.thr_off_mbps && rec.thr_on_mbps) {
            a.thr_off += *rec.thr_off_mbps;
            a.thr_on += *rec.thr_on_mbps;
            ++a.n_thr;
        }
    };
    for (const auto &rec : log.records) {
        feed(rec.location_id.empty() ? std::string("unlabeled") : rec.location_id, rec);
    }
    // first-appearance group order, then the pooled aggregate
    std::vector<GroupStats> out;
    Acc total;
    for (const auto &key : order) {
        const Acc &a = acc[key];
        total.rsrp_off += a.rsrp_off;
        total.rsrp_on += a.rsrp_on;
        total.thr_off += a.thr_off;
        total.thr_on += a.thr_on;
        total.n_rsrp += a.n_rsrp;
        total.n_thr += a.n_thr;
    }
    if (total.n_rsrp == 0 && total.n_thr == 0) {
        throw std::invalid_argument("improvement_stats: no paired on/off records");
    }
    auto finish = [](const std::string &name, const Acc &a) {
        GroupStats g;
        g.group = name;
        g.rsrp_pairs = a.n_rsrp;
        g.thr_pairs = a.n_thr;
        if (a.n_rsrp > 0) {
            g.mean_rsrp_off_dbm = a.rsrp_off / static_cast<double>(a.n_rsrp);
            g.mean_rsrp_on_dbm = a.rsrp_on / static_cast<double>(a.n_rsrp);
            g.rsrp_gain_db = g.mean_rsrp_on_dbm - g.mean_rsrp_off_dbm;
        }
        if (a.n_thr > 0) {
            g.mean_thr_off_mbps = a.thr_off / static_cast<double>(a.n_thr);
            g.mean_thr_on_mbps = a.thr_on / static_cast<double>(a.n_thr);
            if (g.mean_thr_off_mbps != 0.0) {
                g.thr_gain_percent =
                    100.0 * (g.mean_thr_on_mbps - g.mean_thr_off_mbps) / g.mean_thr_off_mbps;
            }
        }
        return g;
    };
    for (const auto &key : order) {
        out.push_back(finish(key, acc[key]));
    }
    out.push_back(finish("all", total));
    return out;
}

} // namespace irstk::fieldtrial
