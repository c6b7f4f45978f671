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

#include "irstk/experiments.hpp"

#include <algorithm>
#include <sstream>

#include "irstk/beam_routing.hpp"
#include "irstk/fieldtrial.hpp"
#include "irstk/parallel.hpp"

namespace irstk::cli {

namespace {

using linkeval::Environment;
using linkeval::TransmitBudget;
using propagation::ArrayNode;

void stamp(ResultTable &table, const Scenario &s, const std::string &experiment) {
    table.metadata["scenario_hash"] = scenario_hash(s);
    table.metadata["seed"] = std::to_string(s.seed);
    table.metadata["experiment"] = experiment;
}

propagation::ArrayGeometry sweep_geometry(const Scenario &s, std::size_t n, const Vec3 &axis) {
    return propagation::linear_array(n, 0.5 * s.wavelength(), axis);
}

// --- fig2: point-to-point MIMO capacity vs transmit power, K IRSs ---------

double fig2_capacity(const Scenario &s, std::size_t k, double pt_dbm) {
    const Environment env = s.environment();
    TransmitBudget budget = s.budget();
    budget.p_t = dbm_to_watts(pt_dbm);

    const double half = 0.5 * s.wavelength();
    const ArrayNode bs{s.bs.at(0).position,
                       propagation::linear_array(s.fig2.mimo_antennas, half, s.bs.at(0).orientation)};
    const ArrayNode user{s.users.at(0).position, propagation::linear_array(
                                                     s.fig2.mimo_antennas, half,
                                                     s.users.at(0).orientation)};

    std::vector<irs::IrsPanel> panels;
    panels.reserve(k);
    const std::size_t per_panel = s.fig2.n_total / k;
    for (std::size_t i = 0; i < k; ++i) {
        irs::IrsPanel panel = irs::make_passive_panel(
            s.fig2.irs_positions.at(i), sweep_geometry(s, per_panel, {0.0, 1.0, 0.0}));
        const ArrayNode panel_node{panel.position, panel.geometry};
        const auto h1 = propagation::los_channel(bs, panel_node, env.bs_irs, env.wavelength);
        const auto h2 = propagation::los_channel(panel_node, user, env.irs_user, env.wavelength);
        panels.push_back(irs::with_config(panel, linkeval::rank1_cascade_config(h1, h2)));
    }
    const auto h_eff = linkeval::assemble_multi_irs_channel(env, bs, user, panels);
    return linkeval::mimo_capacity(budget, h_eff).rate;
}

std::vector<ResultTable> run_fig2(const Scenario &s, unsigned jobs) {
    ResultTable table;
    table.name = "fig2_capacity";
    table.columns.push_back("pt_dbm");
    for (std::size_t k : s.fig2.k_list) {
        table.columns.push_back("capacity_k" + std::to_string(k) + "_bps_hz");
    }
    std::vector<std::vector<double>> rows(s.fig2.pt_dbm.size());
    parallel_for(s.fig2.pt_dbm.size(), jobs, [&](std::size_t i) {
        std::vector<double> row{s.fig2.pt_dbm[i]};
        for (std::size_t k : s.fig2.k_list) {
            row.push_back(fig2_capacity(s, k, s.fig2.pt_dbm[i]));
        }
        rows[i] = std::move(row);
    });
    for (auto &row : rows) {
        table.add_row(std::move(row));
    }
    stamp(table, s, "fig2");
    return {table};
}

// --- fig3: centralized vs distributed multi-user sum-rate vs N ------------

std::vector<ResultTable> run_fig3(const Scenario &s, unsigned jobs) {
    const Environment env = s.environment();
    const TransmitBudget budget = s.budget();
    const ArrayNode bs = bs_node(s.bs.at(0), s.wavelength());

    std::vector<ArrayNode> users;
    std::vector<Position> dist_pos;
    for (const auto &up : s.fig3.user_positions) {
        users.push_back(propagation::point_node(up));
        const Vec3 toward_bs = unit_direction(up, bs.position);
        Position p = up + toward_bs * s.fig3.distributed_standoff;
        p.z = s.fig3.panel_z;
        dist_pos.push_back(p);
    }
    const auto geometry_proto = sweep_geometry(s, 2, {0.0, 1.0, 0.0});

    ResultTable table;
    table.name = "fig3_sumrate";
    table.columns = {"n", "centralized_sum_rate_bps_hz", "distributed_sum_rate_bps_hz"};
    std::vector<std::vector<double>> rows(s.fig3.n_values.size());
    parallel_for(s.fig3.n_values.size(), jobs, [&](std::size_t i) {
        const std::size_t n = s.fig3.n_values[i];
        const auto cmp = deploy::compare_architectures(env, budget, bs, users,
                                                       s.fig3.centralized_position, dist_pos,
                                                       geometry_proto, {n});
        rows[i] = {static_cast<double>(n), cmp.rows[0].centralized_sum_rate,
                   cmp.rows[0].distributed_sum_rate};
    });
    std::optional<std::size_t> crossover;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        table.add_row(std::move(rows[i]));
        if (!crossover && table.rows[i][2] >= table.rows[i][1]) {
            crossover = s.fig3.n_values[i];
        }
    }
    stamp(table, s, "fig3");
    table.metadata["crossover_n"] = crossover ? std::to_string(*crossover) : "none";
    return {table};
}

// --- fig4: BAPU vs BPAU rate vs N ------------------------------------------

std::vector<ResultTable> run_fig4(const Scenario &s, unsigned jobs) {
    const Environment env = s.environment();
    TransmitBudget budget = s.budget();
    budget.p_t = dbm_to_watts(s.fig4.pt_dbm);
    const ArrayNode bs = bs_node(s.bs.at(0), s.wavelength());
    const Position user = s.users.at(0).position;

    irs::ActiveConfig active;
    active.power_budget_w = dbm_to_watts(s.fig4.amp_power_dbm);
    active.noise_power_w = dbm_to_watts(s.fig4.amp_noise_dbm);
    active.constraint = irs::PowerConstraint::total;
    const auto geometry_proto = sweep_geometry(s, 2, {0.0, 1.0, 0.0});

    ResultTable table;
    table.name = "fig4_order_rate";
    table.columns = {"n", "bapu_rate_bps_hz", "bpau_rate_bps_hz"};
    std::vector<std::vector<double>> rows(s.fig4.n_values.size());
    parallel_for(s.fig4.n_values.size(), jobs, [&](std::size_t i) {
        const std::size_t n = s.fig4.n_values[i];
        const auto res =
            deploy::order_hybrid_double(env, budget, bs, user, active, geometry_proto, {n},
                                        s.fig4.position_count, s.fig4.split_count);
        rows[i] = {static_cast<double>(n), res.rows[0].bapu_rate, res.rows[0].bpau_rate};
    });
    std::optional<std::size_t> crossover;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        table.add_row(std::move(rows[i]));
        if (!crossover && table.rows[i][2] >= table.rows[i][1]) {
            crossover = s.fig4.n_values[i];
        }
    }
    stamp(table, s, "fig4");
    table.metadata["crossover_n"] = crossover ? std::to_string(*crossover) : "none";
    return {table};
}

// --- placement: SNR trace over candidate IRS positions ---------------------

std::vector<ResultTable> run_placement(const Scenario &s, unsigned /*jobs*/) {
    const Environment env = s.environment();
    const TransmitBudget budget = s.budget();
    const ArrayNode bs = bs_node(s.bs.at(0), s.wavelength());
    const Position user = s.users.at(0).position;

    deploy::PanelTemplate proto = irs_template_from_spec(s.irs_panels.at(0), s.wavelength());
    if (s.placement.kind == "passive") {
        proto.kind = irs::PanelKind::passive;
    } else if (s.placement.kind == "active") {
        proto.kind = irs::PanelKind::active;
        proto.n_active = proto.geometry.element_count;
    } else {
        proto.kind = irs::PanelKind::hybrid;
        proto.n_active = std::max<std::size_t>(1, proto.geometry.element_count / 2);
    }

    Position seg_a = bs.position;
    Position seg_b = user;
    seg_a.z = s.irs_panels.at(0).position.z;
    seg_b.z = s.irs_panels.at(0).position.z;
    const auto grid = deploy::segment_grid(seg_a, seg_b, s.placement.resolution,
                                           s.placement.refinement_levels);
    const auto sol = deploy::place_single_irs(env, budget, bs, user, proto, grid);

    ResultTable table;
    table.name = "placement_trace";
    table.columns = {"x_m", "y_m", "z_m", "snr"};
    for (const auto &[pos, snr] : sol.trace) {
        table.add_row({pos.x, pos.y, pos.z, snr});
    }
    stamp(table, s, "placement");
    table.metadata["kind"] = s.placement.kind;
    table.metadata["best_x_m"] = format_value(sol.positions[0].x);
    table.metadata["best_y_m"] = format_value(sol.positions[0].y);
    table.metadata["best_z_m"] = format_value(sol.positions[0].z);
    table.metadata["best_snr"] = format_value(sol.objective);
    return {table};
}

// --- coverage: point-to-area min power -------------------------------------

linkeval::AreaSpec area_from_knob(const AreaKnob &a) {
    linkeval::AreaSpec spec;
    spec.x0 = a.x0;
    spec.x1 = a.x1;
    spec.y0 = a.y0;
    spec.y1 = a.y1;
    spec.z = a.z;
    spec.nx = a.nx;
    spec.ny = a.ny;
    return spec;
}

std::vector<ResultTable> run_coverage(const Scenario &s, unsigned jobs) {
    const Environment env = s.environment();
    const TransmitBudget budget = s.budget();
    const ArrayNode bs = bs_node(s.bs.at(0), s.wavelength());
    const auto area = area_from_knob(s.coverage.area);
    const Vec3 panel_axis{0.0, 1.0, 0.0};

    auto static_min_power = [&](const Position &panel_pos, std::size_t n) {
        irs::IrsPanel panel = irs::make_passive_panel(panel_pos, sweep_geometry(s, n, panel_axis));
        panel = irs::with_config(panel, linkeval::area_coverage_config(env, bs, panel, area));
        return linkeval::area_min_power(env, budget, bs, panel, area).min_power_w;
    };

    ResultTable table_static;
    table_static.name = "coverage_static";
    table_static.columns = {"n", "bs_side_min_power_w", "user_side_min_power_w"};
    std::vector<std::vector<double>> rows(s.coverage.n_values.size());
    parallel_for(s.coverage.n_values.size(), jobs, [&](std::size_t i) {
        const std::size_t n = s.coverage.n_values[i];
        rows[i] = {static_cast<double>(n),
                   static_min_power(s.coverage.bs_side_position, n),
                   static_min_power(s.coverage.user_side_position, n)};
    });
    for (auto &row : rows) {
        table_static.add_row(std::move(row));
    }
    stamp(table_static, s, "coverage");

    auto dmimo_min_power = [&](std::size_t b, std::size_t n) {
        std::vector<ArrayNode> stations;
        for (std::size_t i = 0; i < b; ++i) {
            stations.push_back(propagation::point_node(s.coverage.dmimo_bs_positions.at(i)));
        }
        const irs::IrsPanel panel = irs::make_passive_panel(
            s.coverage.bs_side_position, sweep_geometry(s, n, panel_axis));
        return deploy::dmimo_associate(env, budget, stations, panel, area).min_power_w;
    };

    ResultTable table_b;
    table_b.name = "coverage_dmimo_b";
    table_b.columns = {"b", "min_power_w"};
    std::vector<std::vector<double>> rows_b(s.coverage.b_values.size());
    parallel_for(s.coverage.b_values.size(), jobs, [&](std::size_t i) {
        const std::size_t b = s.coverage.b_values[i];
        rows_b[i] = {static_cast<double>(b), dmimo_min_power(b, s.coverage.fixed_n)};
    });
    for (auto &row : rows_b) {
        table_b.add_row(std::move(row));
    }
    stamp(table_b, s, "coverage");
    table_b.metadata["fixed_n"] = std::to_string(s.coverage.fixed_n);

    const std::size_t b_max =
        *std::max_element(s.coverage.b_values.begin(), s.coverage.b_values.end());
    ResultTable table_n;
    table_n.name = "coverage_dmimo_n";
    table_n.columns = {"n", "min_power_w"};
    std::vector<std::vector<double>> rows_n(s.coverage.n_values.size());
    parallel_for(s.coverage.n_values.size(), jobs, [&](std::size_t i) {
        rows_n[i] = {static_cast<double>(s.coverage.n_values[i]),
                     dmimo_min_power(b_max, s.coverage.n_values[i])};
    });
    for (auto &row : rows_n) {
        table_n.add_row(std::move(row));
    }
    stamp(table_n, s, "coverage");
    table_n.metadata["b"] = std::to_string(b_max);

    return {table_static, table_b, table_n};
}

// --- routing: best reflection path -----------------------------------------

routing::IrsGraph graph_from_scenario(const Scenario &s) {
    std::vector<routing::GraphNode> nodes;
    {
        routing::GraphNode n;
        n.id = s.bs.at(0).id;
        n.role = routing::NodeRole::bs;
        n.position = s.bs.at(0).position;
        n.array = bs_node(s.bs.at(0), s.wavelength()).geometry;
        nodes.push_back(n);
    }
    {
        routing::GraphNode n;
        n.id = s.users.at(0).id;
        n.role = routing::NodeRole::user;
        n.position = s.users.at(0).position;
        n.array = propagation::linear_array(1, 0.0);
        nodes.push_back(n);
    }
    for (const auto &spec : s.irs_panels) {
        routing::GraphNode n;
        n.id = spec.id;
        n.role = routing::NodeRole::irs;
        n.position = spec.position;
        n.panel = irs_panel_from_spec(spec, s.wavelength());
        nodes.push_back(n);
    }
    std::vector<routing::Obstacle> obstacles;
    for (const auto &o : s.routing.obstacles) {
        routing::Obstacle ob;
        ob.kind = o.type == "box" ? routing::Obstacle::Kind::box : routing::Obstacle::Kind::segment;
        ob.x1 = o.x1;
        ob.y1 = o.y1;
        ob.x2 = o.x2;
        ob.y2 = o.y2;
        obstacles.push_back(ob);
    }
    return routing::build_graph(std::move(nodes), std::move(obstacles));
}

std::vector<ResultTable> run_routing(const Scenario &s, unsigned /*jobs*/) {
    const Environment env = s.environment();
    const TransmitBudget budget = s.budget();
    const auto graph = graph_from_scenario(s);
    const auto best = routing::best_path(env, budget, graph, s.routing.max_hops);

    ResultTable table;
    table.name = "routing_best_path";
    table.columns = {"hop", "from_node", "to_node", "distance_m", "path_loss",
                     "panel_elements", "amplitude"};
    stamp(table, s, "routing");
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
        table.metadata["node_" + std::to_string(i)] = graph.nodes[i].id;
    }
    table.metadata["paths_considered"] = std::to_string(best.paths_considered);
    if (!best.found) {
        table.metadata["result"] = "disconnected";
        return {table};
    }
    std::ostringstream ids;
    for (std::size_t i = 0; i < best.path.node_sequence.size(); ++i) {
        ids << (i ? " -> " : "") << graph.nodes[best.path.node_sequence[i]].id;
    }
    table.metadata["result"] = ids.str();
    table.metadata["snr"] = format_value(best.path.report.snr);
    table.metadata["rate_bps_hz"] = format_value(best.path.report.rate);
    for (std::size_t i = 0; i < best.path.hops.size(); ++i) {
        const auto &hop = best.path.hops[i];
        table.add_row({static_cast<double>(i), static_cast<double>(hop.from),
                       static_cast<double>(hop.to), hop.distance_m, hop.path_loss,
                       static_cast<double>(hop.panel_elements), hop.amplitude});
    }
    return {table};
}

// --- fieldtrial: CDFs and improvement statistics ----------------------------

std::vector<ResultTable> run_fieldtrial(const Scenario &s, unsigned /*jobs*/) {
    fieldtrial::MeasurementLog log;
    if (s.fieldtrial.log_file.empty()) {
        std::istringstream in(builtin_fieldtrial_log());
        log = fieldtrial::read_log(in);
    } else {
        log = fieldtrial::read_log_file(s.fieldtrial.log_file);
    }

    std::vector<ResultTable> tables;
    const auto stats = fieldtrial::improvement_stats(log);
    ResultTable table;
    table.name = "fieldtrial_stats";
    table.columns = {"group_index",      "rsrp_pairs",       "thr_pairs",
                     "mean_rsrp_off_dbm", "mean_rsrp_on_dbm", "rsrp_gain_db",
                     "mean_thr_off_mbps", "mean_thr_on_mbps", "thr_gain_percent"};
    stamp(table, s, "fieldtrial");
    for (std::size_t i = 0; i < stats.size(); ++i) {
        table.metadata["group_" + std::to_string(i)] = stats[i].group;
        table.add_row({static_cast<double>(i), static_cast<double>(stats[i].rsrp_pairs),
                       static_cast<double>(stats[i].thr_pairs), stats[i].mean_rsrp_off_dbm,
                       stats[i].mean_rsrp_on_dbm, stats[i].rsrp_gain_db,
                       stats[i].mean_thr_off_mbps, stats[i].mean_thr_on_mbps,
                       stats[i].thr_gain_percent});
    }
    tables.push_back(std::move(table));

    auto cdf_table = [&](const char *name, auto field) {
        std::vector<double> values;
        for (const auto &rec : log.records) {
            if (rec.*field) {
                values.push_back(*(rec.*field));
            }
        }
        if (values.empty()) {
            return;
        }
        ResultTable t;
        t.name = name;
        t.columns = {"value", "fraction"};
        for (const auto &pt : fieldtrial::cdf(values)) {
            t.add_row({pt.value, pt.fraction});
        }
        stamp(t, s, "fieldtrial");
        tables.push_back(std::move(t));
    };
    cdf_table("fieldtrial_cdf_rsrp_off", &fieldtrial::MeasurementRecord::rsrp_off_dbm);
    cdf_table("fieldtrial_cdf_rsrp_on", &fieldtrial::MeasurementRecord::rsrp_on_dbm);
    cdf_table("fieldtrial_cdf_thr_off", &fieldtrial::MeasurementRecord::thr_off_mbps);
    cdf_table("fieldtrial_cdf_thr_on", &fieldtrial::MeasurementRecord::thr_on_mbps);
    return tables;
}

} // namespace

std::vector<std::string> experiment_names() {
    return {"fig2", "fig3", "fig4", "placement", "coverage", "routing", "fieldtrial"};
}

std::vector<ResultTable> run_experiment(const std::string &name, const Scenario &scenario,
                                        unsigned jobs) {
    if (jobs == 0) {
        jobs = 1;
    }
    if (name == "fig2") return run_fig2(scenario, jobs);
    if (name == "fig3") return run_fig3(scenario, jobs);
    if (name == "fig4") return run_fig4(scenario, jobs);
    if (name == "placement") return run_placement(scenario, jobs);
    if (name == "coverage") return run_coverage(scenario, jobs);
    if (name == "routing") return run_routing(scenario, jobs);
    if (name == "fieldtrial") return run_fieldtrial(scenario, jobs);
    throw std::invalid_argument("run_experiment: unknown experiment '" + name + "'");
}

const char *builtin_fieldtrial_log() {
    return "location_id,rsrp_off,rsrp_on,thr_off,thr_on\n"
           "ue1,-85.48,-75.21,725.94,2660.72\n"
           "ue1,-84.48,-74.21,845.94,2780.72\n"
           "ue2,-88.89,-73.77,506.34,2547.29\n"
           "ue2,-87.89,-72.77,626.34,2667.29\n";
}

} // namespace irstk::cli
