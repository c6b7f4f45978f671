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

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "irstk/experiments.hpp"
#include "irstk/result_table.hpp"
#include "irstk/scenario.hpp"

using namespace irstk;
using namespace irstk::cli;

TEST_CASE("minimal scenario files fill documented defaults") {
    const auto s = parse_scenario_text(R"({
        "seed": 7,
        "nodes": {
            "bs": [{"id": "b", "position": [0, 0, 12], "antennas": 2}],
            "users": [{"id": "u", "position": [50, 0, 1.5]}],
            "irs": [{"id": "r", "position": [5, 1, 8], "elements": 32, "kind": "passive"}]
        }
    })",
                                       "test");
    CHECK(s.seed == 7);
    CHECK(s.carrier_ghz == Catch::Approx(2.6));
    CHECK(s.transmit_power_dbm == Catch::Approx(20.0));
    CHECK(s.noise_power_dbm == Catch::Approx(-90.0));
    CHECK(s.alpha_bs_irs == Catch::Approx(2.2));
    CHECK(s.alpha_irs_user == Catch::Approx(2.8));
    CHECK(s.alpha_direct == Catch::Approx(3.5));
    CHECK_FALSE(s.k_factor_db.has_value());
    CHECK(s.bs.size() == 1);
    CHECK(s.bs[0].antennas == 2);
    CHECK(s.irs_panels[0].elements == 32);
    CHECK(s.fig2.n_total == 256);
    CHECK(s.fig3.user_positions.size() == 4);
    CHECK(s.routing.max_hops == 3);

    const auto env = s.environment();
    CHECK(env.wavelength == Catch::Approx(propagation::kSpeedOfLight / 2.6e9));
    CHECK(env.bs_irs.beta0 == Catch::Approx(1e-3));
    const auto budget = s.budget();
    CHECK(budget.p_t == Catch::Approx(0.1));
    CHECK(budget.noise_power == Catch::Approx(1e-12));
}

TEST_CASE("seed is mandatory") {
    CHECK_THROWS_WITH(parse_scenario_text(R"({"carrier_ghz": 2.6})", "t"),
                      Catch::Matchers::ContainsSubstring("seed"));
}

TEST_CASE("unknown keys are rejected by name") {
    SECTION("top level") {
        CHECK_THROWS_WITH(parse_scenario_text(R"({"seed": 1, "carier_ghz": 2.6})", "t"),
                          Catch::Matchers::ContainsSubstring("carier_ghz"));
    }
    SECTION("nested") {
        CHECK_THROWS_WITH(
            parse_scenario_text(R"({"seed": 1, "path_loss": {"beta_db": -30}})", "t"),
            Catch::Matchers::ContainsSubstring("beta_db"));
        CHECK_THROWS_WITH(
            parse_scenario_text(R"({"seed": 1, "experiment": {"fig9": {}}})", "t"),
            Catch::Matchers::ContainsSubstring("fig9"));
    }
}

TEST_CASE("schema violations name the field") {
    CHECK_THROWS_WITH(parse_scenario_text(R"({"seed": 1, "carrier_ghz": "fast"})", "t"),
                      Catch::Matchers::ContainsSubstring("carrier_ghz"));
    CHECK_THROWS_WITH(
        parse_scenario_text(
            R"({"seed": 1, "nodes": {"bs": [{"position": [1, 2]}]}})", "t"),
        Catch::Matchers::ContainsSubstring("position"));
    CHECK_THROWS_WITH(
        parse_scenario_text(
            R"({"seed": 1, "nodes": {"irs": [{"elements": 8, "layout": {"rows": 3, "cols": 3}}]}})",
            "t"),
        Catch::Matchers::ContainsSubstring("layout"));
    CHECK_THROWS_WITH(
        parse_scenario_text(
            R"({"seed": 1, "nodes": {"bs": [{"id": "x"}], "users": [{"id": "x"}]}})", "t"),
        Catch::Matchers::ContainsSubstring("unique"));
}

TEST_CASE("normalized dump round-trips") {
    const auto s = default_scenario(99);
    const auto dump = normalized_dump(s);
    const auto reparsed = parse_scenario_text(dump, "roundtrip");
    CHECK(normalized_dump(reparsed) == dump);
    CHECK(scenario_hash(reparsed) == scenario_hash(s));

    // a touched field changes the hash
    auto other = s;
    other.transmit_power_dbm += 1.0;
    CHECK(scenario_hash(other) != scenario_hash(s));
}

TEST_CASE("result table emission") {
    ResultTable t;
    t.name = "demo";
    t.columns = {"a", "b"};
    t.metadata["seed"] = "1";

    SECTION("empty table keeps its header") {
        std::ostringstream out;
        emit_delimited(t, out);
        const auto text = out.str();
        CHECK(text.find("a,b\n") != std::string::npos);
        std::istringstream in(text);
        const auto back = read_delimited(in);
        CHECK(back.columns == t.columns);
        CHECK(back.rows.empty());
    }
    SECTION("12-significant-digit round trip") {
        t.add_row({1.0 / 3.0, 2.99792458e8});
        t.add_row({-1.23456789012e-7, 0.0});
        std::ostringstream out;
        emit_delimited(t, out);
        std::istringstream in(out.str());
        const auto back = read_delimited(in);
        REQUIRE(back.rows.size() == 2);
        for (std::size_t r = 0; r < 2; ++r) {
            for (std::size_t c = 0; c < 2; ++c) {
                if (t.rows[r][c] == 0.0) {
                    CHECK(back.rows[r][c] == 0.0);
                } else {
                    CHECK(back.rows[r][c] ==
                          Catch::Approx(t.rows[r][c]).epsilon(1e-11));
                }
            }
        }
        CHECK(out.str().find("0.333333333333") != std::string::npos);
    }
    SECTION("row width is enforced") {
        CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
    }
}

TEST_CASE("experiments are deterministic and reject unknown names") {
    const auto s = default_scenario(5);
    CHECK_THROWS_WITH(run_experiment("fig5", s, 1),
                      Catch::Matchers::ContainsSubstring("fig5"));

    const auto a = run_experiment("fig3", s, 1);
    const auto b = run_experiment("fig3", s, 4);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::ostringstream sa, sb;
        emit_delimited(a[i], sa);
        emit_delimited(b[i], sb);
        CHECK(sa.str() == sb.str()); // byte-identical across thread counts
    }
}

TEST_CASE("every experiment runs on the default scenario") {
    const auto s = default_scenario(3);
    for (const auto &name : experiment_names()) {
        if (name == "fig4" || name == "coverage") {
            continue; // exercised separately; they dominate runtime
        }
        const auto tables = run_experiment(name, s, 2);
        CHECK_FALSE(tables.empty());
        for (const auto &t : tables) {
            CHECK_FALSE(t.columns.empty());
            CHECK(t.metadata.count("scenario_hash") == 1);
        }
    }
}

TEST_CASE("emit rejects unwritable paths") {
    ResultTable t;
    t.name = "x";
    t.columns = {"a"};
    CHECK_THROWS_AS(emit_delimited_file(t, "/nonexistent-dir/out.csv"), std::runtime_error);
}

TEST_CASE("fig2 rows are reproducible by direct evaluator calls") {
    const auto s = default_scenario(2);
    const auto tables = run_experiment("fig2", s, 2);
    const auto &t = tables.at(0);
    const auto env = s.environment();
    for (std::size_t idx : {0ul, t.rows.size() / 2, t.rows.size() - 1}) {
        const double pt_dbm = t.rows[idx][0];
        linkeval::TransmitBudget budget = s.budget();
        budget.p_t = dbm_to_watts(pt_dbm);
        // rebuild the K=1 point from the building blocks
        const double half = s.wavelength() / 2.0;
        const propagation::ArrayNode bs{
            s.bs[0].position,
            propagation::linear_array(s.fig2.mimo_antennas, half, s.bs[0].orientation)};
        const propagation::ArrayNode user{
            s.users[0].position,
            propagation::linear_array(s.fig2.mimo_antennas, half, s.users[0].orientation)};
        auto panel = irs::make_passive_panel(
            s.fig2.irs_positions[0],
            propagation::linear_array(s.fig2.n_total, half, {0, 1, 0}));
        const propagation::ArrayNode node{panel.position, panel.geometry};
        const auto h1 = propagation::los_channel(bs, node, env.bs_irs, env.wavelength);
        const auto h2 = propagation::los_channel(node, user, env.irs_user, env.wavelength);
        panel = irs::with_config(panel, linkeval::rank1_cascade_config(h1, h2));
        const auto h_eff = linkeval::assemble_multi_irs_channel(env, bs, user, {panel});
        const double expected = linkeval::mimo_capacity(budget, h_eff).rate;
        CHECK(t.rows[idx][1] == Catch::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("experiment tables are reproducible point-by-point") {
    // three spot checks of fig3 against direct evaluator calls
    const auto s = default_scenario(11);
    const auto tables = run_experiment("fig3", s, 2);
    REQUIRE(tables.size() == 1);
    const auto &t = tables[0];
    const auto env = s.environment();
    const auto budget = s.budget();
    const auto bs = bs_node(s.bs[0], s.wavelength());
    std::vector<propagation::ArrayNode> users;
    std::vector<Position> panel_pos;
    for (const auto &up : s.fig3.user_positions) {
        users.push_back(propagation::point_node(up));
        Position p = up + unit_direction(up, bs.position) * s.fig3.distributed_standoff;
        p.z = s.fig3.panel_z;
        panel_pos.push_back(p);
    }
    const auto geometry = propagation::linear_array(2, s.wavelength() / 2.0, {0, 1, 0});
    for (std::size_t idx : {0ul, 3ul, t.rows.size() - 1}) {
        const std::size_t n = static_cast<std::size_t>(t.rows[idx][0]);
        const auto cmp = deploy::compare_architectures(
            env, budget, bs, users, s.fig3.centralized_position, panel_pos, geometry, {n});
        CHECK(t.rows[idx][1] == Catch::Approx(cmp.rows[0].centralized_sum_rate).epsilon(1e-12));
        CHECK(t.rows[idx][2] == Catch::Approx(cmp.rows[0].distributed_sum_rate).epsilon(1e-12));
    }
}
