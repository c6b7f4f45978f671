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

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace irstk::cli {

inline constexpr const char *kToolkitVersion = "0.1.0";

// Rectangular numeric table plus provenance metadata.
struct ResultTable {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::map<std::string, std::string> metadata; // emitted as comment lines

    void add_row(std::vector<double> row);
};

// Fixed 12-significant-digit representation used in every emitted file.
std::string format_value(double v);

// FNV-1a over a string, hex-encoded; stamps outputs with the scenario they
// came from.
std::string fnv1a_hex(const std::string &payload);

// Delimited text: '#' metadata lines, a header row, comma-separated values.
void emit_delimited(const ResultTable &table, std::ostream &out);
void emit_delimited_file(const ResultTable &table, const std::string &path);

// Human-readable summary of one or more tables.
void emit_report(const std::vector<ResultTable> &tables, std::ostream &out);

// Parses a file produced by emit_delimited (round-trip support).
ResultTable read_delimited(std::istream &in);
ResultTable read_delimited_file(const std::string &path);

} // namespace irstk::cli
