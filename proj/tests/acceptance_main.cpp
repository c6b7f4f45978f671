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
//
// End-to-end acceptance suite. Each criterion prints exactly one PASS/FAIL
// line; run with a criterion number (1..13) or no argument for all.

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "irstk/beam_routing.hpp"
#include "irstk/deploy_opt.hpp"
#include "irstk/experiments.hpp"
#include "irstk/fieldtrial.hpp"
#include "irstk/rng.hpp"
#include "oracles.hpp"

using namespace irstk;
using linkeval::Environment;
using linkeval::TransmitBudget;
using propagation::ArrayNode;
using propagation::linear_array;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string &msg) {
        if (!cond && ok) {
            ok = false;
            detail = msg;
        }
    }
};

double fit_loglog_slope(const std::vector<double> &x, const std::vector<double> &y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
        sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
    }
    return sxy / sxx;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

// shared desk-scale defaults
Environment default_env() { return Environment{}; }
const TransmitBudget kBudget{0.1, 1e-12};

// --- criterion 1: beamforming-gain scaling laws ----------------------------

Check criterion_scaling() {
    Check c;
    const Environment env = default_env();
    const ArrayNode bs{{0, 0, 10}, linear_array(1, 0.0)};
    const Position user{60.0, 0.0, 1.5};

    std::vector<double> ns, snrs;
    for (std::size_t n = 8; n <= 512; n *= 2) {
        const auto panel = irs::make_passive_panel(
            {20.0, 10.0, 10.0}, linear_array(n, env.wavelength / 2.0, {0, 1, 0}));
        ns.push_back(static_cast<double>(n));
        snrs.push_back(linkeval::single_reflection_auto(env, kBudget, bs, user, panel).snr);
    }
    const double single_slope = fit_loglog_slope(ns, snrs);
    c.require(std::abs(single_slope - 2.0) <= 0.01,
              "single-reflection slope " + fmt(single_slope));

    std::vector<double> ns2, snrs2;
    for (std::size_t n = 8; n <= 512; n *= 2) {
        const auto p1 = irs::make_passive_panel(
            {2.0, 3.0, 10.0}, linear_array(n / 2, env.wavelength / 2.0, {0, 1, 0}));
        const auto p2 = irs::make_passive_panel(
            {58.0, 3.0, 10.0}, linear_array(n / 2, env.wavelength / 2.0, {0, 1, 0}));
        ns2.push_back(static_cast<double>(n));
        snrs2.push_back(linkeval::double_reflection_auto(env, kBudget, bs, user, p1, p2).snr);
    }
    const double double_slope = fit_loglog_slope(ns2, snrs2);
    c.require(std::abs(double_slope - 4.0) <= 0.05,
              "double-reflection slope " + fmt(double_slope));
    if (c.ok) {
        c.detail = "single slope " + fmt(single_slope) + ", double slope " + fmt(double_slope);
    }
    return c;
}

// --- criterion 2: placement rules -------------------------------------------

// independent feasible-interval computation along the segment
std::pair<double, double> feasible_interval(const Position &a, const Position &b,
                                            const Position &bs, const Position &user) {
    const double len = distance(a, b);
    const Vec3 dir = unit_direction(a, b);
    auto ok = [&](double t) {
        const Position p = a + dir * t;
        return distance(p, bs) >= deploy::kMinStandoff &&
               distance(p, user) >= deploy::kMinStandoff;
    };
    double lo = 0.0, hi = len;
    if (!ok(lo)) {
        double bad = lo, good = len / 2.0;
        for (int i = 0; i < 80; ++i) {
            const double mid = 0.5 * (bad + good);
            (ok(mid) ? good : bad) = mid;
        }
        lo = good;
    }
    if (!ok(hi)) {
        double bad = hi, good = len / 2.0;
        for (int i = 0; i < 80; ++i) {
            const double mid = 0.5 * (bad + good);
            (ok(mid) ? good : bad) = mid;
        }
        hi = good;
    }
    return {lo, hi};
}

Check criterion_placement() {
    Check c;
    const Environment env = default_env();
    const irs::ActiveConfig quiet_active{1e-3, irs::PowerConstraint::total, 1e-14};
    Rng rng(2024);

    for (int rep = 0; rep < 21 && c.ok; ++rep) {
        Position bs_pos{0.0, 0.0, 10.0};
        Position user_pos{60.0, 0.0, 10.0};
        if (rep > 0) {
            bs_pos = {20.0 * rng.uniform(), 20.0 * rng.uniform(), 10.0};
            user_pos = {40.0 + 60.0 * rng.uniform(), 20.0 * rng.uniform(), 10.0};
        }
        const ArrayNode bs{bs_pos, linear_array(1, 0.0)};
        const auto grid = deploy::segment_grid(bs_pos, user_pos, 3.0, 5);
        const auto [t_lo, t_hi] = feasible_interval(bs_pos, user_pos, bs_pos, user_pos);
        const Vec3 dir = unit_direction(bs_pos, user_pos);

        const auto geometry = linear_array(32, env.wavelength / 2.0, {0, 1, 0});
        const auto passive = deploy::place_single_irs(env, kBudget, bs, user_pos,
                                                      deploy::passive_template(geometry), grid);
        const double t_passive = dot(passive.positions[0] - bs_pos, dir);
        const bool at_edge = std::abs(t_passive - t_lo) <= passive.final_step + 1e-6 ||
                             std::abs(t_passive - t_hi) <= passive.final_step + 1e-6;
        c.require(at_edge, "passive argmax off-boundary at rep " + std::to_string(rep) +
                               " (t=" + fmt(t_passive) + ")");

        const auto active = deploy::place_single_irs(
            env, kBudget, bs, user_pos, deploy::active_template(geometry, quiet_active), grid);
        const double t_active = dot(active.positions[0] - bs_pos, dir);
        c.require(std::abs(t_active - t_hi) <= active.final_step + 1e-6,
                  "active argmax not at receiver-side boundary at rep " + std::to_string(rep) +
                      " (t=" + fmt(t_active) + " of " + fmt(t_hi) + ")");
    }
    if (c.ok) {
        c.detail = "passive at a boundary and active at the receiver-side boundary, 21 geometries";
    }
    return c;
}

// --- criterion 3: multi-IRS MIMO capacity versus transmit power -------------

Check criterion_fig2() {
    Check c;
    const auto s = cli::default_scenario(1);
    const auto tables = cli::run_experiment("fig2", s, 4);
    const auto &t = tables.at(0);
    std::size_t col_k1 = 0, col_k4 = 0;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (t.columns[i] == "capacity_k1_bps_hz") col_k1 = i;
        if (t.columns[i] == "capacity_k4_bps_hz") col_k4 = i;
    }
    c.require(col_k1 > 0 && col_k4 > 0, "fig2 table missing K columns");
    bool high_gap = false, low_gap = false;
    double best_gap = -1e9;
    for (const auto &row : t.rows) {
        const double gap = (row[col_k4] - row[col_k1]) / row[col_k1];
        best_gap = std::max(best_gap, gap);
        if (gap >= 0.20) high_gap = true;
        if (gap <= 0.05) low_gap = true;
    }
    c.require(high_gap, "no transmit power with K=4 at least 20% above K=1 (best " +
                            fmt(100.0 * best_gap) + "%)");
    c.require(low_gap, "no transmit power with gap <= 5%");
    if (c.ok) {
        c.detail = "K=4 over K=1 reaches +" + fmt(100.0 * best_gap) + "% at high power";
    }
    return c;
}

// --- criterion 4: centralized versus distributed sum-rates ------------------

Check criterion_fig3() {
    Check c;
    const auto s = cli::default_scenario(1);
    const auto tables = cli::run_experiment("fig3", s, 4);
    const auto &t = tables.at(0);
    const auto &first = t.rows.front();
    const auto &last = t.rows.back();
    c.require(first[1] > first[2], "centralized does not win at the smallest N");
    c.require(last[2] > last[1], "distributed does not win at the largest N");
    int sign_changes = 0;
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
        const bool prev = t.rows[i - 1][2] >= t.rows[i - 1][1];
        const bool cur = t.rows[i][2] >= t.rows[i][1];
        if (prev != cur) {
            ++sign_changes;
        }
    }
    c.require(sign_changes == 1, "expected a single crossover, found " +
                                     std::to_string(sign_changes) + " sign changes");
    c.require(t.metadata.count("crossover_n") == 1 && t.metadata.at("crossover_n") != "none",
              "crossover not reported");
    if (c.ok) {
        c.detail = "crossover at N* = " + t.metadata.at("crossover_n");
    }
    return c;
}

// --- criterion 5: BAPU versus BPAU ------------------------------------------

Check criterion_fig4() {
    Check c;
    const auto s = cli::default_scenario(1);
    const auto tables = cli::run_experiment("fig4", s, 4);
    const auto &t = tables.at(0);
    c.require(t.rows.front()[1] >= t.rows.front()[2], "BAPU does not win at the smallest N");
    c.require(t.rows.back()[2] >= t.rows.back()[1], "BPAU does not win at the largest N");
    c.require(t.metadata.count("crossover_n") == 1 && t.metadata.at("crossover_n") != "none",
              "crossover not reported");
    if (c.ok) {
        c.detail = "order crossover at N* = " + t.metadata.at("crossover_n");
    }
    return c;
}

// --- criterion 6: point-to-area coverage ------------------------------------

Check criterion_coverage() {
    Check c;
    const auto s = cli::default_scenario(1);
    const auto tables = cli::run_experiment("coverage", s, 4);
    const auto &t_static = tables.at(0);
    const auto &t_n = tables.at(2);

    std::vector<double> ns, bs_side, dmimo;
    for (const auto &row : t_static.rows) {
        ns.push_back(row[0]);
        bs_side.push_back(row[1]);
        c.require(row[1] >= row[2], "user-side beats BS-side at N=" + fmt(row[0]));
    }
    const double static_slope = fit_loglog_slope(ns, bs_side);
    c.require(static_slope >= 0.8 && static_slope <= 1.3,
              "static min-power slope " + fmt(static_slope));

    std::vector<double> ns2;
    for (const auto &row : t_n.rows) {
        ns2.push_back(row[0]);
        dmimo.push_back(row[1]);
    }
    const double dmimo_slope = fit_loglog_slope(ns2, dmimo);
    c.require(dmimo_slope >= 1.7 && dmimo_slope <= 2.2,
              "D-MIMO B=8 min-power slope " + fmt(dmimo_slope));
    if (c.ok) {
        c.detail = "static slope " + fmt(static_slope) + ", D-MIMO slope " + fmt(dmimo_slope);
    }
    return c;
}

// --- criterion 7: element allocation ----------------------------------------

Check criterion_allocation() {
    Check c;
    Environment env = default_env();
    const ArrayNode bs{{0, 0, 10}, linear_array(1, 0.0)};

    // symmetric double passive: equal link classes, mirrored geometry
    Environment sym = env;
    sym.irs_user = sym.bs_irs;
    const Position user_sym{40.0, 0.0, 10.0};
    for (std::size_t total : {8ul, 16ul, 32ul, 64ul}) {
        const auto res = deploy::allocate_elements(total, [&](std::size_t a, std::size_t b) {
            const auto p1 = irs::make_passive_panel(
                {1.0, 3.0, 10.0}, linear_array(a, sym.wavelength / 2.0, {0, 1, 0}));
            const auto p2 = irs::make_passive_panel(
                {39.0, 3.0, 10.0}, linear_array(b, sym.wavelength / 2.0, {0, 1, 0}));
            return linkeval::double_reflection_auto(sym, kBudget, bs, user_sym, p1, p2).snr;
        });
        c.require(res.n1 == total / 2 && res.n2 == total / 2,
                  "symmetric N=" + std::to_string(total) + " split (" +
                      std::to_string(res.n1) + "," + std::to_string(res.n2) + ")");
    }

    // double active, default geometry: the user-side panel takes the larger share
    const Position user{60.0, 0.0, 1.5};
    const irs::ActiveConfig active{1e-2, irs::PowerConstraint::per_element, 1e-12};
    const auto res = deploy::allocate_elements(64, [&](std::size_t a, std::size_t b) {
        const auto p1 = irs::make_active_panel(
            {1.0, 2.0, 10.0}, linear_array(a, env.wavelength / 2.0, {0, 1, 0}), active);
        const auto p2 = irs::make_active_panel(
            {59.0, 2.0, 10.0}, linear_array(b, env.wavelength / 2.0, {0, 1, 0}), active);
        return linkeval::double_reflection_auto(env, kBudget, bs, user, p1, p2).snr;
    });
    c.require(res.n2 >= res.n1, "double-active split (" + std::to_string(res.n1) + "," +
                                    std::to_string(res.n2) + ")");
    if (c.ok) {
        c.detail = "even passive splits; double-active split (" + std::to_string(res.n1) + "," +
                   std::to_string(res.n2) + ")";
    }
    return c;
}

// --- criterion 8: Monte-Carlo signal-equation agreement ----------------------

Check criterion_oracle() {
    Check c;
    Rng rng(31337);
    const TransmitBudget budget{0.5, 1e-9};
    double worst = 0.0;
    int done = 0;

    auto random_vec = [&](std::size_t n, double scale) {
        arma::cx_vec h(n);
        for (auto &e : h) {
            e = rng.complex_gaussian(scale);
        }
        return h;
    };
    auto random_panel = [&](std::size_t n, bool active_kind, std::uint64_t /*tag*/) {
        irs::IrsPanel p =
            active_kind
                ? irs::make_active_panel({0, 0, 1}, linear_array(n, 0.05),
                                         {1e-5, irs::PowerConstraint::total, 2e-9})
                : irs::make_passive_panel({0, 0, 1}, linear_array(n, 0.05));
        irs::ReflectionConfig cfg;
        cfg.phases.set_size(n);
        cfg.amplitudes.set_size(n);
        for (std::size_t i = 0; i < n; ++i) {
            cfg.phases(i) = 2.0 * M_PI * rng.uniform();
            cfg.amplitudes(i) = p.element_is_active(i) ? 1.0 + 2.0 * rng.uniform() : 1.0;
        }
        return irs::with_config(p, cfg);
    };
    auto record = [&](double closed, double mc, const char *what) {
        const double err = std::abs(closed - mc) / mc;
        worst = std::max(worst, err);
        ++done;
        c.require(err <= 0.01, std::string(what) + " relative error " + fmt(err));
    };

    // 20 single-reflection configurations (half active)
    for (int rep = 0; rep < 20 && c.ok; ++rep) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() * 5);
        const auto h1 = random_vec(n, 1e-3);
        const auto h2 = random_vec(n, 1e-3);
        const auto panel = random_panel(n, rep % 2 == 0, rep);
        const auto closed = linkeval::siso_single_reflection(budget, h1, h2, panel);
        const double mc =
            test::mc_single_reflection_snr(budget, h1, h2, panel, 1000000, 5000 + rep);
        record(closed.snr, mc, "single");
    }
    // 20 double-reflection configurations (passive, mixed, double-active)
    for (int rep = 0; rep < 20 && c.ok; ++rep) {
        const std::size_t n1 = 2 + static_cast<std::size_t>(rng.uniform() * 3);
        const std::size_t n2 = 2 + static_cast<std::size_t>(rng.uniform() * 3);
        const auto h1 = random_vec(n1, 1e-2);
        const auto h2 = random_vec(n2, 1e-2);
        propagation::ChannelMatrix d;
        d.entries.set_size(n2, n1);
        for (auto &e : d.entries) {
            e = rng.complex_gaussian(1e-2);
        }
        const auto p1 = random_panel(n1, rep % 2 == 0, rep);
        const auto p2 = random_panel(n2, rep % 3 == 0, rep);
        const auto closed = linkeval::double_reflection(budget, h1, d, h2, p1, p2);
        const double mc = test::mc_double_reflection_snr(budget, h1, d.entries, h2, p1, p2,
                                                         1000000, 6000 + rep);
        record(closed.snr, mc, "double");
    }
    // 10 three-hop cascades
    for (int rep = 0; rep < 10 && c.ok; ++rep) {
        const std::size_t n = 3;
        std::vector<irs::IrsPanel> panels_store;
        panels_store.push_back(random_panel(n, rep % 2 == 0, rep));
        panels_store.push_back(random_panel(n, rep % 3 == 0, rep));
        panels_store.push_back(random_panel(n, false, rep));
        std::vector<arma::cx_mat> channels;
        channels.push_back(arma::cx_mat(random_vec(n, 1e-2)));
        for (int hop = 0; hop < 2; ++hop) {
            arma::cx_mat d(n, n);
            for (auto &e : d) {
                e = rng.complex_gaussian(1e-2);
            }
            channels.push_back(d);
        }
        const arma::cx_rowvec h_out = random_vec(n, 1e-2).st();
        std::vector<linkeval::CascadeStage> stages(3);
        std::vector<const irs::IrsPanel *> panels(3);
        for (int i = 0; i < 3; ++i) {
            stages[i] = {channels[i], &panels_store[i]};
            panels[i] = &panels_store[i];
        }
        const auto closed = linkeval::cascade_link(budget, stages, h_out);
        const double mc = test::mc_cascade_snr(budget, channels, panels, h_out, 400000,
                                               7000 + rep);
        record(closed.snr, mc, "3-hop");
    }
    if (c.ok) {
        c.detail = std::to_string(done) + " configurations, worst relative error " + fmt(worst);
    }
    return c;
}

// --- criterion 9: water-filling against KKT and grid search ------------------

Check criterion_waterfilling() {
    Check c;
    Rng rng(271828);
    double worst_gap = 0.0;
    for (int rep = 0; rep < 100 && c.ok; ++rep) {
        const double s1 = 0.2 + rng.uniform();
        const double s2 = 0.01 + 0.5 * rng.uniform();
        const TransmitBudget budget{0.2 + 5.0 * rng.uniform(), 0.005 + 0.05 * rng.uniform()};
        propagation::ChannelMatrix h;
        h.entries = arma::cx_mat(2, 2, arma::fill::zeros);
        h.entries(0, 0) = {s1, 0.0};
        h.entries(1, 1) = {s2, 0.0};
        const auto wf = linkeval::mimo_capacity(budget, h);

        c.require(std::abs(arma::accu(wf.powers) - budget.p_t) <= 1e-9 * budget.p_t,
                  "power conservation violated");
        for (std::size_t i = 0; i < wf.powers.n_elem; ++i) {
            const double inv_gain =
                budget.noise_power / (wf.singular_values(i) * wf.singular_values(i));
            c.require(wf.powers(i) >= -1e-12, "negative power");
            if (wf.powers(i) > 0.0) {
                c.require(std::abs(wf.powers(i) + inv_gain - wf.water_level) <=
                              1e-9 * wf.water_level,
                          "active mode off the water level");
            } else {
                c.require(wf.water_level <= inv_gain * (1.0 + 1e-9),
                          "inactive mode below the water level");
            }
        }
        const double grid = test::wf_grid_search_rate(budget, s1, s2);
        worst_gap = std::max(worst_gap, std::abs(wf.rate - grid));
        c.require(std::abs(wf.rate - grid) <= 1e-4, "grid-search gap " +
                                                        fmt(std::abs(wf.rate - grid)));
    }
    if (c.ok) {
        c.detail = "100 spectra, worst grid gap " + fmt(worst_gap) + " bits/s/Hz";
    }
    return c;
}

// --- criterion 10: quantization loss bound -----------------------------------

Check criterion_quantization() {
    Check c;
    Rng rng(1618);
    for (int b = 1; b <= 4 && c.ok; ++b) {
        const double floor = std::cos(M_PI / std::pow(2.0, b));
        for (int rep = 0; rep < 100 && c.ok; ++rep) {
            const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 63);
            arma::cx_vec h1(n), h2(n);
            for (std::size_t i = 0; i < n; ++i) {
                h1(i) = rng.complex_gaussian(1.0);
                h2(i) = rng.complex_gaussian(1.0);
            }
            const auto cfg = irs::co_phase_align(h1, h2);
            const auto q = irs::quantize_phases(cfg, b);
            auto power = [&](const arma::vec &phases) {
                std::complex<double> acc{0.0, 0.0};
                for (std::size_t i = 0; i < n; ++i) {
                    acc += h2(i) * std::polar(1.0, phases(i)) * h1(i);
                }
                return std::norm(acc);
            };
            const double full = power(cfg.phases);
            const double quant = power(q.phases);
            c.require(quant >= full * floor * floor * (1.0 - 1e-12),
                      "bound violated at b=" + std::to_string(b));
        }
    }
    if (c.ok) {
        c.detail = "cos^2(pi/2^b) floor held for b in {1,2,3,4}, 100 channels each";
    }
    return c;
}

// --- criterion 11: routing against the independent enumerator ----------------

Check criterion_routing() {
    Check c;
    const Environment env = default_env();
    Rng rng(90210);

    for (int rep = 0; rep < 50 && c.ok; ++rep) {
        std::vector<routing::GraphNode> nodes;
        {
            routing::GraphNode n;
            n.id = "bs";
            n.role = routing::NodeRole::bs;
            n.position = {0.0, 0.0, 10.0};
            n.array = linear_array(1, 0.0);
            nodes.push_back(n);
        }
        {
            routing::GraphNode n;
            n.id = "ue";
            n.role = routing::NodeRole::user;
            n.position = {60.0, 0.0, 1.5};
            n.array = linear_array(1, 0.0);
            nodes.push_back(n);
        }
        const int n_irs = 3 + static_cast<int>(rng.uniform() * 4); // <= 8 nodes
        for (int i = 0; i < n_irs; ++i) {
            routing::GraphNode n;
            n.id = "i" + std::to_string(i);
            n.role = routing::NodeRole::irs;
            n.position = {60.0 * rng.uniform(), 40.0 * (rng.uniform() - 0.5),
                          4.0 + 8.0 * rng.uniform()};
            n.panel = irs::make_passive_panel(
                n.position, linear_array(4 + 4 * static_cast<std::size_t>(rng.uniform() * 3),
                                         env.wavelength / 2.0, {0, 1, 0}));
            nodes.push_back(n);
        }
        std::vector<routing::Obstacle> obstacles;
        if (rng.uniform() < 0.7) {
            routing::Obstacle o;
            o.kind = routing::Obstacle::Kind::box;
            o.x1 = 20.0 + 20.0 * rng.uniform();
            o.y1 = -12.0;
            o.x2 = o.x1 + 4.0;
            o.y2 = 12.0;
            obstacles.push_back(o);
        }
        const auto graph = routing::build_graph(nodes, obstacles);
        const std::size_t max_hops = 1 + static_cast<std::size_t>(rng.uniform() * 3);
        const auto best = routing::best_path(env, kBudget, graph, max_hops);
        const auto oracle = test::oracle_best_path(env, kBudget, graph, max_hops);
        c.require(best.found == oracle.found, "feasibility disagreement at rep " +
                                                  std::to_string(rep));
        if (best.found) {
            const double err = std::abs(best.path.report.snr - oracle.snr) / oracle.snr;
            c.require(err <= 1e-12, "snr disagreement at rep " + std::to_string(rep));
        }
    }

    // default blocked scenario: the chosen route passes through the active IRS
    const auto s = cli::default_scenario(1);
    const auto tables = cli::run_experiment("routing", s, 1);
    const auto &meta = tables.at(0).metadata;
    c.require(meta.count("result") == 1 &&
                  meta.at("result").find("irs_s1") != std::string::npos,
              "default best path does not include the active IRS (got '" +
                  (meta.count("result") ? meta.at("result") : "") + "')");
    if (c.ok) {
        c.detail = "50 random graphs agree; default path = " + meta.at("result");
    }
    return c;
}

// --- criterion 12: field-trial statistics ------------------------------------

Check criterion_fieldtrial() {
    Check c;
    fieldtrial::MeasurementLog log;
    log.records.push_back({"ue1", -84.98, -74.71, 785.94, 2720.72});
    log.records.push_back({"ue2", -88.39, -73.27, 566.34, 2607.29});
    const auto stats = fieldtrial::improvement_stats(log);
    auto close2 = [](double v, double expect) { return std::abs(v - expect) < 0.005; };
    c.require(close2(stats[0].rsrp_gain_db, 10.27),
              "ue1 rsrp gain " + fmt(stats[0].rsrp_gain_db));
    c.require(close2(stats[0].thr_gain_percent, 246.17),
              "ue1 throughput gain " + fmt(stats[0].thr_gain_percent));
    c.require(close2(stats[1].thr_gain_percent, 360.38),
              "ue2 throughput gain " + fmt(stats[1].thr_gain_percent));
    c.require(close2(stats[1].mean_rsrp_off_dbm, -88.39) &&
                  close2(stats[1].mean_rsrp_on_dbm, -73.27) &&
                  close2(stats[1].rsrp_gain_db, 15.12),
              "ue2 rsrp gain " + fmt(stats[1].rsrp_gain_db));
    if (c.ok) {
        c.detail = "10.27 dB, +246.17%, +360.38%, 15.12 dB reproduced to two decimals";
    }
    return c;
}

// --- criterion 13: determinism across parallelism -----------------------------

Check criterion_determinism() {
    Check c;
    const auto s = cli::default_scenario(17);
    for (const auto &name : cli::experiment_names()) {
        const auto a = cli::run_experiment(name, s, 1);
        const auto b = cli::run_experiment(name, s, 8);
        c.require(a.size() == b.size(), name + ": table count differs");
        for (std::size_t i = 0; i < a.size() && c.ok; ++i) {
            std::ostringstream sa, sb;
            cli::emit_delimited(a[i], sa);
            cli::emit_delimited(b[i], sb);
            c.require(sa.str() == sb.str(), name + ": table " + a[i].name +
                                                " differs between jobs=1 and jobs=8");
        }
    }
    if (c.ok) {
        c.detail = "all experiments byte-identical at jobs 1 and 8";
    }
    return c;
}

struct Criterion {
    int id;
    const char *summary;
    std::function<Check()> run;
};

const std::vector<Criterion> &criteria() {
    static const std::vector<Criterion> all{
        {1, "beamforming-gain scaling laws (N^2 single, N^4 double)", criterion_scaling},
        {2, "placement rules (passive endpoint, active receiver-side)", criterion_placement},
        {3, "multi-IRS MIMO capacity vs transmit power", criterion_fig2},
        {4, "centralized vs distributed sum-rate crossover", criterion_fig3},
        {5, "BAPU vs BPAU order crossover", criterion_fig4},
        {6, "point-to-area min-power scaling and D-MIMO recovery", criterion_coverage},
        {7, "element allocation (even passive split, user-side active)", criterion_allocation},
        {8, "closed-form vs Monte-Carlo signal equation (1%)", criterion_oracle},
        {9, "water-filling KKT and grid-search agreement", criterion_waterfilling},
        {10, "quantized co-phasing power floor", criterion_quantization},
        {11, "best-path enumeration vs independent oracle", criterion_routing},
        {12, "field-trial improvement statistics, two decimals", criterion_fieldtrial},
        {13, "byte-identical replay across --jobs 1 and 8", criterion_determinism},
    };
    return all;
}

} // namespace

int main(int argc, char **argv) {
    int selected = 0;
    if (argc > 1) {
        selected = std::atoi(argv[1]);
        if (selected < 1 || selected > static_cast<int>(criteria().size())) {
            std::fprintf(stderr, "usage: %s [1..%zu]\n", argv[0], criteria().size());
            return 2;
        }
    }
    int failures = 0;
    for (const auto &criterion : criteria()) {
        if (selected != 0 && criterion.id != selected) {
            continue;
        }
        Check result;
        try {
            result = criterion.run();
        } catch (const std::exception &e) {
            result.ok = false;
            result.detail = std::string("exception: ") + e.what();
        }
        std::printf("%s criterion %2d: %s%s%s\n", result.ok ? "PASS" : "FAIL", criterion.id,
                    criterion.summary, result.detail.empty() ? "" : " — ",
                    result.detail.c_str());
        std::fflush(stdout);
        if (!result.ok) {
            ++failures;
        }
    }
    return failures;
}
