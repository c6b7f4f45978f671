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

#include <functional>
#include <optional>
#include <tuple>

#include "irstk/link_eval.hpp"

namespace irstk::deploy {

using irs::IrsPanel;
using linkeval::AreaSpec;
using linkeval::Environment;
using linkeval::TransmitBudget;
using propagation::ArrayNode;

// Minimum standoff between an IRS and any transceiver; keeps candidates
// inside the path-loss model's validity range.
constexpr double kMinStandoff = 1.0;

// Candidate domain for placement searches. Each refinement level halves the
// step and re-searches a one-step window around the incumbent.
struct SearchGrid {
    enum class Domain { segment, rectangle };
    Domain domain = Domain::segment;
    Position seg_a, seg_b;                       // segment domain
    double rect_x0 = 0.0, rect_x1 = 0.0;         // rectangle domain
    double rect_y0 = 0.0, rect_y1 = 0.0;
    double rect_z = 0.0;
    double resolution = 1.0; // meters
    int refinement_levels = 0;
};

SearchGrid segment_grid(const Position &a, const Position &b, double resolution,
                        int refinement_levels = 0);

// Panel prototype: everything but the position.
struct PanelTemplate {
    propagation::ArrayGeometry geometry;
    irs::PanelKind kind = irs::PanelKind::passive;
    irs::ActiveConfig active;
    std::size_t n_active = 0; // hybrid split; ignored for passive/active
};

IrsPanel instantiate(const PanelTemplate &proto, const Position &pos);
PanelTemplate passive_template(const propagation::ArrayGeometry &geometry);
PanelTemplate active_template(const propagation::ArrayGeometry &geometry,
                              const irs::ActiveConfig &active);
PanelTemplate hybrid_template(const propagation::ArrayGeometry &geometry, std::size_t n_active,
                              const irs::ActiveConfig &active);

// Same layout, spacing and orientation with a different element count.
propagation::ArrayGeometry resize_geometry(const propagation::ArrayGeometry &geometry,
                                           std::size_t n);

struct DeploymentSolution {
    std::vector<Position> positions;
    std::vector<std::size_t> element_split;
    double objective = 0.0;
    std::vector<std::pair<Position, double>> trace; // every evaluated candidate
    double final_step = 0.0;                        // grid step after refinement
};

// Exhaustive grid search (plus refinement) for the SNR-maximizing panel
// position on a single-reflection link. Ties break toward smaller x, then y,
// then z. Candidates within kMinStandoff of either endpoint are excluded;
// on segments, the exact standoff boundaries are themselves candidates.
DeploymentSolution place_single_irs(const Environment &env, const TransmitBudget &budget,
                                    const ArrayNode &bs, const Position &user,
                                    const PanelTemplate &proto, const SearchGrid &grid);

struct HybridPlacement {
    std::vector<std::pair<std::size_t, DeploymentSolution>> per_split;
    bool positions_coincide = false; // all argmaxes within one final grid step
    double coincidence_tolerance = 0.0;
};

// place_single_irs per active/passive split of a hybrid panel.
HybridPlacement place_hybrid_irs(const Environment &env, const TransmitBudget &budget,
                                 const ArrayNode &bs, const Position &user,
                                 const PanelTemplate &proto,
                                 const std::vector<std::size_t> &n_active_values,
                                 const SearchGrid &grid);

struct ElementAllocation {
    std::size_t n1 = 0, n2 = 0;
    double objective = 0.0;
    std::vector<std::tuple<std::size_t, std::size_t, double>> trace;
};

// Brute force over every integer split (n1 >= 1, n2 >= 1, n1 + n2 = total);
// ties break toward larger n2.
ElementAllocation allocate_elements(std::size_t total_n,
                                    const std::function<double(std::size_t, std::size_t)> &snr_of);

struct ArchitectureRow {
    std::size_t n = 0;
    double centralized_sum_rate = 0.0;
    double distributed_sum_rate = 0.0;
};

struct ArchitectureComparison {
    std::vector<ArchitectureRow> rows;
    std::optional<std::size_t> crossover_n; // smallest N with distributed >= centralized
};

// Centralized (one panel of N elements near the BS, TDMA) versus distributed
// (one N/K panel per user, zero-forcing) sum-rates over an N sweep.
ArchitectureComparison compare_architectures(const Environment &env, const TransmitBudget &budget,
                                             const ArrayNode &bs,
                                             const std::vector<ArrayNode> &users,
                                             const Position &centralized_pos,
                                             const std::vector<Position> &distributed_pos,
                                             const propagation::ArrayGeometry &geometry_proto,
                                             const std::vector<std::size_t> &n_values);

struct DmimoResult {
    arma::umat assignment; // nx x ny BS index per grid point
    std::vector<Position> centroids;
    double min_power_w = 0.0;
    Position argmin;
};

// Area coverage with B cooperating BSs sharing one static-per-BS IRS: strips
// of the area are pre-assigned by angle, the panel is aimed at each strip's
// centroid for its BS, and points are re-assigned once to the BS serving
// them best.
DmimoResult dmimo_associate(const Environment &env, const TransmitBudget &budget,
                            const std::vector<ArrayNode> &bs_list, const IrsPanel &panel,
                            const AreaSpec &area);

struct HybridOrderRow {
    std::size_t n = 0;
    double bapu_rate = 0.0;
    double bpau_rate = 0.0;
};

struct HybridOrderResult {
    std::vector<HybridOrderRow> rows;
    std::optional<std::size_t> crossover_n; // smallest N with BPAU >= BAPU
};

// BAPU (BS -> active -> passive -> user) versus BPAU order for one active
// and one passive IRS: per N, jointly brute-forces the element split and
// both panel positions on coarse grids along the BS-user segment.
HybridOrderResult order_hybrid_double(const Environment &env, const TransmitBudget &budget,
                                      const ArrayNode &bs, const Position &user,
                                      const irs::ActiveConfig &active,
                                      const propagation::ArrayGeometry &geometry_proto,
                                      const std::vector<std::size_t> &n_values,
                                      std::size_t position_count = 5,
                                      std::size_t split_count = 7);

} // namespace irstk::deploy
