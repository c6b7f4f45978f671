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

#include <optional>
#include <string>
#include <vector>

#include "irstk/link_eval.hpp"

namespace irstk::routing {

using irs::IrsPanel;
using linkeval::Environment;
using linkeval::LinkReport;
using linkeval::TransmitBudget;

enum class NodeRole { bs, irs, user };

struct GraphNode {
    std::string id;
    NodeRole role = NodeRole::irs;
    Position position;
    propagation::ArrayGeometry array = propagation::linear_array(1, 0.0); // BS/user antennas
    std::optional<IrsPanel> panel; // IRS nodes; position must match the node's
};

// 2-D blockage primitive; z is ignored for line-of-sight tests.
struct Obstacle {
    enum class Kind { segment, box };
    Kind kind = Kind::segment;
    double x1 = 0.0, y1 = 0.0; // segment endpoints, or box min corner
    double x2 = 0.0, y2 = 0.0; // segment endpoints, or box max corner
};

// Touching an obstacle counts as blocked.
bool segments_intersect_2d(double ax, double ay, double bx, double by, double cx, double cy,
                           double dx, double dy);
bool segment_blocked(const Position &a, const Position &b, const Obstacle &obstacle);

struct IrsGraph {
    std::vector<GraphNode> nodes;
    arma::umat adjacency; // 1 iff LoS
    arma::mat distances;  // Euclidean, meters
    std::vector<Obstacle> obstacles;

    std::optional<std::size_t> find(const std::string &id) const;
    bool has_edge(std::size_t a, std::size_t b) const { return adjacency(a, b) != 0; }
};

// Edge present iff the segment between the nodes crosses no obstacle.
IrsGraph build_graph(std::vector<GraphNode> nodes, std::vector<Obstacle> obstacles);

struct HopBreakdown {
    std::size_t from = 0, to = 0;
    double distance_m = 0.0;
    double path_loss = 0.0;       // linear power gain of the hop
    std::size_t panel_elements = 0; // destination panel size (0 into the user)
    double amplitude = 1.0;       // destination panel amplification factor
};

struct ReflectionPath {
    std::vector<std::size_t> node_sequence; // BS, IRS..., user
    LinkReport report;
    std::vector<HopBreakdown> hops;

    std::size_t reflection_count() const {
        return node_sequence.size() >= 2 ? node_sequence.size() - 2 : 0;
    }
};

// Evaluates the explicit multi-hop cascade along `node_sequence`, co-phasing
// every panel for this route and drawing amplification factors from the
// power each active panel actually receives.
ReflectionPath path_snr(const Environment &env, const TransmitBudget &budget,
                        const IrsGraph &graph, const std::vector<std::size_t> &node_sequence);

struct BestPathResult {
    bool found = false; // false: BS and user are disconnected within max_hops
    ReflectionPath path;
    std::size_t paths_considered = 0;
};

// Exhaustive enumeration of simple BS->user paths with at most `max_hops`
// reflections; ties break toward fewer hops, then the lexicographically
// smaller node-id sequence.
BestPathResult best_path(const Environment &env, const TransmitBudget &budget,
                         const IrsGraph &graph, std::size_t max_hops);

// Log-domain dynamic program over visited-node masks; exact for passive-only
// graphs (throws if any panel amplifies).
BestPathResult best_path_fast(const Environment &env, const TransmitBudget &budget,
                              const IrsGraph &graph, std::size_t max_hops);

} // namespace irstk::routing
