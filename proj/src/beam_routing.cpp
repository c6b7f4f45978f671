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

#include "irstk/beam_routing.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace irstk::routing {

namespace {

double cross2(double ox, double oy, double ax, double ay, double bx, double by) {
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox);
}

bool on_segment(double px, double py, double qx, double qy, double rx, double ry) {
    return std::min(px, rx) <= qx && qx <= std::max(px, rx) && std::min(py, ry) <= qy &&
           qy <= std::max(py, ry);
}

} // namespace

bool segments_intersect_2d(double ax, double ay, double bx, double by, double cx, double cy,
                           double dx, double dy) {
    const double d1 = cross2(cx, cy, dx, dy, ax, ay);
    const double d2 = cross2(cx, cy, dx, dy, bx, by);
    const double d3 = cross2(ax, ay, bx, by, cx, cy);
    const double d4 = cross2(ax, ay, bx, by, dx, dy);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
        return true;
    }
    if (d1 == 0 && on_segment(cx, cy, ax, ay, dx, dy)) return true;
    if (d2 == 0 && on_segment(cx, cy, bx, by, dx, dy)) return true;
    if (d3 == 0 && on_segment(ax, ay, cx, cy, bx, by)) return true;
    if (d4 == 0 && on_segment(ax, ay, dx, dy, bx, by)) return true;
    return false;
}

bool segment_blocked(const Position &a, const Position &b, const Obstacle &obstacle) {
    if (obstacle.kind == Obstacle::Kind::segment) {
        return segments_intersect_2d(a.x, a.y, b.x, b.y, obstacle.x1, obstacle.y1, obstacle.x2,
                                     obstacle.y2);
    }
    // slab clip of the parametric segment against the box
    const double x0 = std::min(obstacle.x1, obstacle.x2);
    const double x1 = std::max(obstacle.x1, obstacle.x2);
    const double y0 = std::min(obstacle.y1, obstacle.y2);
    const double y1 = std::max(obstacle.y1, obstacle.y2);
    double t_lo = 0.0, t_hi = 1.0;
    const double d[2] = {b.x - a.x, b.y - a.y};
    const double p[2] = {a.x, a.y};
    const double lo[2] = {x0, y0};
    const double hi[2] = {x1, y1};
    for (int axis = 0; axis < 2; ++axis) {
        if (d[axis] == 0.0) {
            if (p[axis] < lo[axis] || p[axis] > hi[axis]) {
                return false;
            }
            continue;
        }
        double t1 = (lo[axis] - p[axis]) / d[axis];
        double t2 = (hi[axis] - p[axis]) / d[axis];
        if (t1 > t2) {
            std::swap(t1, t2);
        }
        t_lo = std::max(t_lo, t1);
        t_hi = std::min(t_hi, t2);
        if (t_lo > t_hi) {
            return false;
        }
    }
    return true;
}

std::optional<std::size_t> IrsGraph::find(const std::string &id) const {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].id == id) {
            return i;
        }
    }
    return std::nullopt;
}

IrsGraph build_graph(std::vector<GraphNode> nodes, std::vector<Obstacle> obstacles) {
    const std::size_t n = nodes.size();
    for (std::size_t i = 0; i < n; ++i) {
        check_position(nodes[i].position, "build_graph node " + nodes[i].id);
        if (nodes[i].role == NodeRole::irs) {
            if (!nodes[i].panel) {
                throw std::invalid_argument("build_graph: IRS node " + nodes[i].id +
                                            " carries no panel");
            }
            if (distance(nodes[i].panel->position, nodes[i].position) > 0.0) {
                throw std::invalid_argument("build_graph: panel position mismatch on node " +
                                            nodes[i].id);
            }
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            if (distance(nodes[i].position, nodes[j].position) == 0.0) {
                throw std::invalid_argument("build_graph: duplicate node positions (" +
                                            nodes[i].id + ", " + nodes[j].id + ")");
            }
        }
    }
    IrsGraph g;
    g.nodes = std::move(nodes);
    g.obstacles = std::move(obstacles);
    g.adjacency = arma::zeros<arma::umat>(n, n);
    g.distances = arma::zeros<arma::mat>(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Position &a = g.nodes[i].position;
            const Position &b = g.nodes[j].position;
            bool blocked = false;
            for (const auto &obs : g.obstacles) {
                if (segment_blocked(a, b, obs)) {
                    blocked = true;
                    break;
                }
            }
            g.adjacency(i, j) = g.adjacency(j, i) = blocked ? 0 : 1;
            g.distances(i, j) = g.distances(j, i) = distance(a, b);
        }
    }
    return g;
}

namespace {

const propagation::PathLossModel &hop_model(const Environment &env, NodeRole from, NodeRole to) {
    if (from == NodeRole::bs && to == NodeRole::user) return env.direct;
    if (from == NodeRole::bs || to == NodeRole::bs) return env.bs_irs;
    if (from == NodeRole::user || to == NodeRole::user) return env.irs_user;
    return env.inter_irs;
}

void validate_sequence(const IrsGraph &graph, const std::vector<std::size_t> &seq) {
    if (seq.size() < 2) {
        throw std::invalid_argument("path_snr: path needs at least BS and user");
    }
    if (graph.nodes.at(seq.front()).role != NodeRole::bs ||
        graph.nodes.at(seq.back()).role != NodeRole::user) {
        throw std::invalid_argument("path_snr: path must run BS -> ... -> user");
    }
    for (std::size_t i = 1; i + 1 < seq.size(); ++i) {
        if (graph.nodes.at(seq[i]).role != NodeRole::irs) {
            throw std::invalid_argument("path_snr: intermediate nodes must be IRSs");
        }
    }
    for (std::size_t i = 0; i < seq.size(); ++i) {
        for (std::size_t j = i + 1; j < seq.size(); ++j) {
            if (seq[i] == seq[j]) {
                throw std::invalid_argument("path_snr: node repeated along path");
            }
        }
    }
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        if (!graph.has_edge(seq[i], seq[i + 1])) {
            throw std::invalid_argument("path_snr: path uses a missing edge");
        }
    }
}

} // namespace

ReflectionPath path_snr(const Environment &env, const TransmitBudget &budget,
                        const IrsGraph &graph, const std::vector<std::size_t> &node_sequence) {
    validate_sequence(graph, node_sequence);
    ReflectionPath out;
    out.node_sequence = node_sequence;

    const GraphNode &bs = graph.nodes[node_sequence.front()];
    const GraphNode &user = graph.nodes[node_sequence.back()];
    if (user.array.element_count != 1) {
        throw std::invalid_argument("path_snr: user must be single-antenna");
    }

    // direct BS -> user transmission (0 reflections)
    if (node_sequence.size() == 2) {
        const double d = graph.distances(node_sequence[0], node_sequence[1]);
        const double pl = propagation::path_loss(d, env.direct);
        const double m = static_cast<double>(bs.array.element_count);
        out.hops.push_back({node_sequence[0], node_sequence[1], d, pl, 0, 1.0});
        out.report = linkeval::make_link_report(budget.p_t * m * pl,
                                                {{"receiver_thermal", budget.noise_power}});
        return out;
    }

    const std::size_t hops = node_sequence.size() - 2;
    std::vector<const IrsPanel *> raw_panels(hops);
    for (std::size_t i = 0; i < hops; ++i) {
        raw_panels[i] = &*graph.nodes[node_sequence[i + 1]].panel;
    }

    // forward pass: fix each panel's phases for this route and derive the
    // amplification factor from the power actually reaching the panel
    std::vector<IrsPanel> tuned;
    tuned.reserve(hops);
    std::vector<arma::cx_mat> channels(hops); // channel INTO panel i
    arma::cx_vec x; // signal amplitude per element at the current panel input
    arma::vec nu;   // upstream amplification-noise power per element
    for (std::size_t i = 0; i < hops; ++i) {
        const IrsPanel &panel = *raw_panels[i];
        const std::size_t prev = node_sequence[i];
        const std::size_t next = node_sequence[i + 2];
        const GraphNode &prev_node = graph.nodes[prev];

        if (i == 0) {
            x = linkeval::incident_from_bs(env, {prev_node.position, prev_node.array}, panel);
            channels[0] = arma::cx_mat(x);
            nu = arma::zeros<arma::vec>(panel.element_count());
        }

        // out-factor of this panel along the route
        arma::cx_vec out_vec;
        if (i + 1 == hops) {
            out_vec = linkeval::panel_to_point(env, panel, user.position);
        } else {
            out_vec = arma::conj(propagation::steering_vector(
                panel.geometry, unit_direction(panel.position, graph.nodes[next].position),
                env.wavelength));
        }

        const double p_in = budget.p_t * arma::mean(arma::square(arma::abs(x))) + arma::mean(nu);
        irs::ReflectionConfig cfg = irs::co_phase_align(x, out_vec);
        double amplitude = 1.0;
        if (panel.n_active > 0) {
            amplitude = irs::amplification_factor(panel, p_in).amplitude;
            for (std::size_t e = 0; e < panel.n_active; ++e) {
                cfg.amplitudes(e) = amplitude;
            }
        }
        tuned.push_back(irs::with_config(panel, cfg));

        const double d_in = graph.distances(prev, node_sequence[i + 1]);
        out.hops.push_back({prev, node_sequence[i + 1], d_in,
                            propagation::path_loss(
                                d_in, hop_model(env, prev_node.role, NodeRole::irs)),
                            panel.element_count(), amplitude});

        // propagate signal and per-element noise power to the next stage
        arma::cx_vec coeff(panel.element_count());
        for (std::size_t e = 0; e < panel.element_count(); ++e) {
            coeff(e) = std::polar(tuned[i].amplitudes(e), tuned[i].phases(e));
        }
        arma::vec nu_out(panel.element_count());
        for (std::size_t e = 0; e < panel.element_count(); ++e) {
            const double injected =
                panel.element_is_active(e) ? panel.active.noise_power_w : 0.0;
            nu_out(e) = std::norm(coeff(e)) * (nu(e) + injected);
        }
        if (i + 1 < hops) {
            const IrsPanel &next_panel = *raw_panels[i + 1];
            const propagation::ChannelMatrix d_ch = propagation::los_channel(
                {panel.position, panel.geometry}, {next_panel.position, next_panel.geometry},
                hop_model(env, NodeRole::irs, NodeRole::irs), env.wavelength);
            channels[i + 1] = d_ch.entries;
            x = d_ch.entries * (coeff % x);
            nu = arma::square(arma::abs(d_ch.entries)) * nu_out;
        }
    }

    // last hop into the user
    {
        const std::size_t last_irs = node_sequence[node_sequence.size() - 2];
        const double d = graph.distances(last_irs, node_sequence.back());
        out.hops.push_back({last_irs, node_sequence.back(), d,
                            propagation::path_loss(d, hop_model(env, NodeRole::irs, NodeRole::user)),
                            0, 1.0});
    }

    // the first stage channel already carries the BS beamforming gain
    std::vector<linkeval::CascadeStage> stages(hops);
    for (std::size_t i = 0; i < hops; ++i) {
        stages[i].channel_in = channels[i];
        stages[i].panel = &tuned[i];
    }
    const arma::cx_rowvec h_out =
        linkeval::panel_to_point(env, tuned.back(), user.position).st();
    out.report = linkeval::cascade_link(budget, stages, h_out);
    return out;
}

namespace {

struct PathRank {
    double snr = -1.0;
    std::vector<std::string> ids;

    bool better_than(const PathRank &other, std::size_t hops, std::size_t other_hops) const {
        if (snr != other.snr) {
            return snr > other.snr;
        }
        if (hops != other_hops) {
            return hops < other_hops;
        }
        return ids < other.ids;
    }
};

std::vector<std::string> id_sequence(const IrsGraph &g, const std::vector<std::size_t> &seq) {
    std::vector<std::string> ids;
    ids.reserve(seq.size());
    for (std::size_t i : seq) {
        ids.push_back(g.nodes[i].id);
    }
    return ids;
}

void locate_endpoints(const IrsGraph &graph, std::size_t &bs, std::size_t &user) {
    std::optional<std::size_t> bs_idx, user_idx;
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
        if (graph.nodes[i].role == NodeRole::bs) {
            if (bs_idx) {
                throw std::invalid_argument("best_path: graph must contain exactly one BS");
            }
            bs_idx = i;
        }
        if (graph.nodes[i].role == NodeRole::user) {
            if (user_idx) {
                throw std::invalid_argument("best_path: graph must contain exactly one user");
            }
            user_idx = i;
        }
    }
    if (!bs_idx || !user_idx) {
        throw std::invalid_argument("best_path: graph needs a BS and a user");
    }
    bs = *bs_idx;
    user = *user_idx;
}

} // namespace

BestPathResult best_path(const Environment &env, const TransmitBudget &budget,
                         const IrsGraph &graph, std::size_t max_hops) {
    if (max_hops < 1) {
        throw std::invalid_argument("best_path: max_hops must be >= 1");
    }
    std::size_t bs = 0, user = 0;
    locate_endpoints(graph, bs, user);

    BestPathResult result;
    PathRank best;
    std::size_t best_hops = 0;

    std::vector<std::size_t> seq{bs};
    std::vector<bool> used(graph.nodes.size(), false);
    used[bs] = true;

    auto consider = [&](const std::vector<std::size_t> &full) {
        const ReflectionPath p = path_snr(env, budget, graph, full);
        ++result.paths_considered;
        PathRank rank{p.report.snr, id_sequence(graph, full)};
        const std::size_t hops = full.size() - 2;
        if (!result.found || rank.better_than(best, hops, best_hops)) {
            result.found = true;
            best = rank;
            best_hops = hops;
            result.path = p;
        }
    };

    // depth-first over simple IRS sequences, ending whenever the user is visible
    std::function<void()> dfs = [&] {
        const std::size_t tail = seq.back();
        if (graph.has_edge(tail, user)) {
            std::vector<std::size_t> full = seq;
            full.push_back(user);
            consider(full);
        }
        if (seq.size() - 1 >= max_hops) {
            return;
        }
        for (std::size_t next = 0; next < graph.nodes.size(); ++next) {
            if (used[next] || graph.nodes[next].role != NodeRole::irs ||
                !graph.has_edge(tail, next)) {
                continue;
            }
            used[next] = true;
            seq.push_back(next);
            dfs();
            seq.pop_back();
            used[next] = false;
        }
    };
    dfs();
    return result;
}

BestPathResult best_path_fast(const Environment &env, const TransmitBudget &budget,
                              const IrsGraph &graph, std::size_t max_hops) {
    if (max_hops < 1) {
        throw std::invalid_argument("best_path_fast: max_hops must be >= 1");
    }
    const std::size_t n = graph.nodes.size();
    if (n > 20) {
        throw std::invalid_argument("best_path_fast: graph too large for mask DP");
    }
    for (const auto &node : graph.nodes) {
        if (node.panel && node.panel->n_active > 0) {
            throw std::invalid_argument(
                "best_path_fast: log-domain shortcut is valid for passive-only graphs");
        }
    }
    std::size_t bs = 0, user = 0;
    locate_endpoints(graph, bs, user);

    // additive log-gain of entering IRS j from node i (hop path loss plus the
    // co-phased N^2 reflection gain of j)
    auto hop_log = [&](std::size_t i, std::size_t j) {
        const auto &from = graph.nodes[i];
        const auto &to = graph.nodes[j];
        const double pl = propagation::path_loss(graph.distances(i, j),
                                                 hop_model(env, from.role, to.role));
        double g = std::log(pl);
        if (to.role == NodeRole::irs) {
            const double ne = static_cast<double>(to.panel->element_count());
            g += 2.0 * std::log(ne);
        }
        return g;
    };

    struct State {
        bool reachable = false;
        double log_gain = 0.0;
        std::uint32_t mask = 0;
        std::vector<std::size_t> seq;
    };
    // states indexed by (visited IRS mask, last node); last is an IRS or the BS
    std::vector<std::vector<State>> dp(1u << n, std::vector<State>(n));
    dp[1u << bs][bs] = {true, std::log(static_cast<double>(graph.nodes[bs].array.element_count)),
                        static_cast<std::uint32_t>(1u << bs),
                        {bs}};

    BestPathResult result;
    PathRank best;
    std::size_t best_hops = 0;

    auto finish = [&](const State &st) {
        if (!graph.has_edge(st.seq.back(), user)) {
            return;
        }
        std::vector<std::size_t> full = st.seq;
        full.push_back(user);
        const ReflectionPath p = path_snr(env, budget, graph, full);
        ++result.paths_considered;
        PathRank rank{p.report.snr, id_sequence(graph, full)};
        const std::size_t hops = full.size() - 2;
        if (!result.found || rank.better_than(best, hops, best_hops)) {
            result.found = true;
            best = rank;
            best_hops = hops;
            result.path = p;
        }
    };

    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        for (std::size_t last = 0; last < n; ++last) {
            const State &st = dp[mask][last];
            if (!st.reachable) {
                continue;
            }
            finish(st);
            if (st.seq.size() - 1 >= max_hops) {
                continue;
            }
            for (std::size_t next = 0; next < n; ++next) {
                if (graph.nodes[next].role != NodeRole::irs || (mask & (1u << next)) != 0 ||
                    !graph.has_edge(last, next)) {
                    continue;
                }
                State cand = st;
                cand.log_gain += hop_log(last, next);
                cand.mask |= 1u << next;
                cand.seq.push_back(next);
                State &slot = dp[cand.mask][next];
                if (!slot.reachable || cand.log_gain > slot.log_gain) {
                    slot = std::move(cand);
                }
            }
        }
    }
    return result;
}

} // namespace irstk::routing
