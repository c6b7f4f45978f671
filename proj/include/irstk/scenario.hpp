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
#include <optional>
#include <string>
#include <vector>

#include "irstk/deploy_opt.hpp"
#include "irstk/link_eval.hpp"

namespace irstk::cli {

// dBm <-> watts
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

struct BsSpec {
    std::string id = "bs0";
    Position position{0.0, 0.0, 10.0};
    std::size_t antennas = 4;
    Vec3 orientation{0.0, 1.0, 0.0}; // antenna array axis
};

struct UserSpec {
    std::string id = "ue0";
    Position position{80.0, 0.0, 1.5};
    std::size_t antennas = 1;
    Vec3 orientation{0.0, 1.0, 0.0};
};

struct IrsSpec {
    std::string id = "irs0";
    Position position{4.0, 2.0, 10.0};
    std::size_t elements = 64;
    double spacing_wavelengths = 0.5;
    Vec3 orientation{1.0, 0.0, 0.0};
    bool planar = false;
    std::size_t rows = 0, cols = 0;
    irs::PanelKind kind = irs::PanelKind::passive;
    double amp_power_dbm = 10.0;
    irs::PowerConstraint amp_constraint = irs::PowerConstraint::total;
    double amp_noise_dbm = -70.0;
    std::size_t n_active = 0; // hybrid only
};

struct AreaKnob {
    double x0 = 196.5, x1 = 203.5;
    double y0 = -3.5, y1 = 3.5;
    double z = 1.5;
    std::size_t nx = 21, ny = 21;
};

struct Fig2Knobs {
    std::size_t n_total = 256;
    std::size_t mimo_antennas = 4; // both ends of the point-to-point link
    std::vector<std::size_t> k_list{1, 2, 4};
    std::vector<double> pt_dbm; // filled by defaults: -20..45 step 5
    std::vector<Position> irs_positions{
        {65.0, 25.0, 10.0}, {65.0, -25.0, 10.0}, {40.0, 60.0, 10.0}, {40.0, -60.0, 10.0}};
};

struct Fig3Knobs {
    std::vector<std::size_t> n_values{8, 16, 32, 64, 128, 256, 512};
    std::vector<Position> user_positions{{56.57, -56.57, 1.5},
                                         {77.27, -20.71, 1.5},
                                         {77.27, 20.71, 1.5},
                                         {56.57, 56.57, 1.5}};
    Position centralized_position{3.0, 0.0, 10.0};
    double distributed_standoff = 5.0; // meters from each user toward the BS
    double panel_z = 5.0;
};

struct Fig4Knobs {
    std::vector<std::size_t> n_values{16, 32, 64, 128, 256, 512};
    std::size_t position_count = 5;
    std::size_t split_count = 7;
    double pt_dbm = 20.0;
    // A tight amplification budget: the order trade-off lives where the
    // active panel saturates as elements grow.
    double amp_power_dbm = 0.0;
    double amp_noise_dbm = -70.0;
};

struct PlacementKnobs {
    std::string kind = "passive"; // passive | active | hybrid
    double resolution = 2.0;
    int refinement_levels = 4;
};

struct CoverageKnobs {
    std::vector<std::size_t> n_values{16, 32, 64, 128, 256};
    std::vector<std::size_t> b_values{1, 2, 4, 8};
    std::size_t fixed_n = 64; // element count for the B sweep
    AreaKnob area;
    Position bs_side_position{5.0, 0.0, 10.0};
    Position user_side_position{185.0, 0.0, 10.0};
    // compact cluster on a 15 m arc behind the panel, equidistant from it
    std::vector<Position> dmimo_bs_positions{
        {-4.64, 11.49, 10.0}, {-7.18, 8.76, 10.0},  {-8.96, 5.49, 10.0},  {-9.88, 1.87, 10.0},
        {-9.88, -1.87, 10.0}, {-8.96, -5.49, 10.0}, {-7.18, -8.76, 10.0}, {-4.64, -11.49, 10.0}};
};

struct ObstacleKnob {
    std::string type = "box"; // box | segment
    double x1 = 0.0, y1 = 0.0, x2 = 0.0, y2 = 0.0;
};

struct RoutingKnobs {
    std::size_t max_hops = 3;
    std::vector<ObstacleKnob> obstacles{{"box", 28.0, -20.0, 32.0, 20.0}};
};

struct FieldtrialKnobs {
    std::string log_file; // empty: use the built-in example log
};

// Full experiment description. Everything except the seed has a documented
// default, echoed back by normalized_dump().
struct Scenario {
    std::uint64_t seed = 1;
    double carrier_ghz = 2.6;
    double transmit_power_dbm = 20.0;
    double noise_power_dbm = -90.0;

    double beta0_db = -30.0;
    double alpha_bs_irs = 2.2;
    double alpha_irs_user = 2.8;
    double alpha_inter_irs = 2.2;
    double alpha_direct = 3.5;

    std::optional<double> k_factor_db; // absent: pure LoS everywhere

    std::vector<BsSpec> bs;
    std::vector<UserSpec> users;
    std::vector<IrsSpec> irs_panels;

    Fig2Knobs fig2;
    Fig3Knobs fig3;
    Fig4Knobs fig4;
    PlacementKnobs placement;
    CoverageKnobs coverage;
    RoutingKnobs routing;
    FieldtrialKnobs fieldtrial;

    double wavelength() const { return propagation::kSpeedOfLight / (carrier_ghz * 1e9); }
    linkeval::Environment environment() const;
    linkeval::TransmitBudget budget() const;
};

// A scenario populated with every default (shared by all experiments).
Scenario default_scenario(std::uint64_t seed);

// Parses and validates a scenario file. Defaults fill every absent field;
// unknown keys are rejected by name; the seed is mandatory.
Scenario parse_scenario(const std::string &path);
Scenario parse_scenario_text(const std::string &text, const std::string &context);

// Canonical full dump; parse(normalized_dump(s)) == s.
std::string normalized_dump(const Scenario &scenario);

// Hash of the normalized dump, stamped into result tables.
std::string scenario_hash(const Scenario &scenario);

// Node helpers.
propagation::ArrayNode bs_node(const BsSpec &spec, double wavelength);
propagation::ArrayNode user_node(const UserSpec &spec, double wavelength);
propagation::ArrayGeometry irs_geometry(const IrsSpec &spec, double wavelength);
irs::IrsPanel irs_panel_from_spec(const IrsSpec &spec, double wavelength);
deploy::PanelTemplate irs_template_from_spec(const IrsSpec &spec, double wavelength);

} // namespace irstk::cli
