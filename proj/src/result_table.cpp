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

#include "irstk/result_table.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace irstk::cli {

void ResultTable::add_row(std::vector<double> row) {
    if (row.size() != columns.size()) {
        throw std::invalid_argument("ResultTable '" + name + "': row width mismatch");
    }
    rows.push_back(std::move(row));
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fnv1a_hex(const std::string &payload) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : payload) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void emit_delimited(const ResultTable &table, std::ostream &out) {
    out << "# table: " << table.name << "\n";
    out << "# toolkit_version: " << kToolkitVersion << "\n";
    for (const auto &[key, value] : table.metadata) {
        out << "# " << key << ": " << value << "\n";
    }
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out << (i ? "," : "") << table.columns[i];
    }
    out << "\n";
    for (const auto &row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << format_value(row[i]);
        }
        out << "\n";
    }
}

void emit_delimited_file(const ResultTable &table, const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("emit: cannot write '" + path + "'");
    }
    emit_delimited(table, out);
    if (!out) {
        throw std::runtime_error("emit: write failed for '" + path + "'");
    }
}

void emit_report(const std::vector<ResultTable> &tables, std::ostream &out) {
    for (const auto &table : tables) {
        out << "== " << table.name << " ==\n";
        for (const auto &[key, value] : table.metadata) {
            out << "  " << key << ": " << value << "\n";
        }
        out << "  columns: ";
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            out << (i ? ", " : "") << table.columns[i];
        }
        out << "\n  rows: " << table.rows.size() << "\n";
        const std::size_t show = std::min<std::size_t>(table.rows.size(), 8);
        for (std::size_t r = 0; r < show; ++r) {
            out << "    ";
            for (std::size_t i = 0; i < table.rows[r].size(); ++i) {
                out << (i ? "  " : "") << format_value(table.rows[r][i]);
            }
            out << "\n";
        }
        if (show < table.rows.size()) {
            out << "    ... (" << table.rows.size() - show << " more)\n";
        }
        out << "\n";
    }
}

ResultTable read_delimited(std::istream &in) {
    ResultTable table;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            const auto colon = line.find(':');
            if (colon != std::string::npos) {
                std::string key = line.substr(1, colon - 1);
                std::string value = line.substr(colon + 1);
                auto trim = [](std::string &s) {
                    const auto b = s.find_first_not_of(" \t");
                    const auto e = s.find_last_not_of(" \t");
                    s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
                };
                trim(key);
                trim(value);
                if (key == "table") {
                    table.name = value;
                } else {
                    table.metadata[key] = value;
                }
            }
            continue;
        }
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ss(line);
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        if (!have_header) {
            table.columns = cells;
            have_header = true;
            continue;
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto &c : cells) {
            row.push_back(std::stod(c));
        }
        table.add_row(std::move(row));
    }
    if (!have_header) {
        throw std::invalid_argument("read_delimited: missing header row");
    }
    return table;
}

ResultTable read_delimited_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("read_delimited: cannot open '" + path + "'");
    }
    return read_delimited(in);
}

} // namespace irstk::cli
