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

#include <string>
#include <vector>

#include "irstk/irs_panel.hpp"
#include "irstk/propagation.hpp"

namespace irstk::linkeval {

using irs::IrsPanel;
using propagation::ArrayNode;
using propagation::ChannelMatrix;
using propagation::PathLossModel;

// Per-link-class propagation parameters shared by every geometry-level
// evaluation. BS-IRS and inter-IRS links are deployment-engineered for LoS,
// so their exponents sit below the IRS-user and direct ones. A finite
// inter-IRS K-factor turns the inter-IRS hop of double cascades into a
// Rician draw (one fixed realization per environment seed).
struct Environment {
    double wavelength = propagation::kSpeedOfLight / 2.6e9;
    PathLossModel bs_irs{1e-3, 2.2};
    PathLossModel irs_user{1e-3, 2.8};
    PathLossModel inter_irs{1e-3, 2.2};
    PathLossModel direct{1e-3, 3.5};
    double inter_irs_k_factor = std::numeric_limits<double>::infinity();
    std::uint64_t fading_seed = 0;
};

struct TransmitBudget {
    double p_t = 0.1;            // watts
    double noise_power = 1e-12;  // receiver sigma^2, watts (-90 dBm)
};

struct NoiseTerm {
    std::string label;
    double power = 0.0; // watts at the receiver
};

// Evaluated single-stream link: snr = signal / sum(noise_terms),
// rate = log2(1 + snr).
struct LinkReport {
    double snr = 0.0;
    double rate = 0.0;
    double signal_power = 0.0;
    std::vector<NoiseTerm> noise_terms;

    double noise_total() const;
};

LinkReport make_link_report(double signal_power, std::vector<NoiseTerm> noise_terms);

// y = sum_n h2[n] a_n e^{j phi_n} (h1[n] s + v_n) + z, with v_n the
// amplification noise of active elements and z the receiver noise.
LinkReport siso_single_reflection(const TransmitBudget &budget, const arma::cx_vec &h1,
                                  const arma::cx_vec &h2, const IrsPanel &panel);

// Optional coherent single-reflection additions for the double-reflection
// evaluation: BS -> panel2 -> user and BS -> panel1 -> user side channels.
struct DoubleReflectionExtras {
    arma::cx_vec h_bs_to_panel2;  // length N2
    arma::cx_vec h_panel1_to_user; // length N1
};

// y = h2^T Phi2 (D Phi1 (h1 s + v1) + v2) + z. Amplification noise of panel 1
// propagates through the full inter-IRS matrix product. When `extras` is
// given, the two single-reflection links add coherently (signal and noise).
LinkReport double_reflection(const TransmitBudget &budget, const arma::cx_vec &h1,
                             const ChannelMatrix &d_inter, const arma::cx_vec &h2,
                             const IrsPanel &panel1, const IrsPanel &panel2,
                             const DoubleReflectionExtras *extras = nullptr);

// One stage of a multi-reflection cascade: the channel from the previous
// node into this panel (matrix for inter-IRS hops, column for the first).
struct CascadeStage {
    arma::cx_mat channel_in; // N_i x N_{i-1}; first stage N_1 x 1
    const IrsPanel *panel = nullptr;
};

// General H-hop cascade y = h_out^T Phi_H (D_{H-1} ... Phi_1 (h_in s + v_1) ...) + z.
LinkReport cascade_link(const TransmitBudget &budget, const std::vector<CascadeStage> &stages,
                        const arma::cx_rowvec &h_out);

// Water-filling over the channel's singular values.
struct WaterFilling {
    double rate = 0.0;             // bits/s/Hz
    arma::vec singular_values;     // descending
    arma::vec powers;              // per singular value, sums to p_t (or 0)
    double water_level = 0.0;
};

WaterFilling mimo_capacity(const TransmitBudget &budget, const ChannelMatrix &channel);

// Per-panel configuration maximizing the gain of a rank-1 cascade
// H2 * Phi * H1 (principal-factor phase alignment).
irs::ReflectionConfig rank1_cascade_config(const ChannelMatrix &h1, const ChannelMatrix &h2);

// H_eff = sum_k H2_k Phi_k H1_k over LoS links (direct link excluded unless
// requested). Panels carry their configurations.
ChannelMatrix assemble_multi_irs_channel(const Environment &env, const ArrayNode &bs,
                                         const ArrayNode &user,
                                         const std::vector<IrsPanel> &panels,
                                         bool include_direct = false);

struct MultiuserRates {
    arma::vec per_user; // bits/s/Hz
    double sum_rate = 0.0;
};

// TDMA over K users: the panel (full N, near the BS) is re-phased for the
// served user, the BS beamforms toward the panel, and each user gets a 1/K
// time share.
MultiuserRates multiuser_centralized_rate(const Environment &env, const TransmitBudget &budget,
                                          const ArrayNode &bs,
                                          const std::vector<ArrayNode> &users,
                                          const IrsPanel &panel);

// Optional zero-forcing internals for diagnostics and tests.
struct ZfDetails {
    arma::cx_mat effective_channel; // K x M rows, one per user
    arma::cx_mat precoder;          // M x K unit-norm columns
};

// One panel per user, each co-phased for its local user; the BS zero-forces
// across the effective channels with an equal p_t/K power split, serving all
// users simultaneously. Requires M >= K.
MultiuserRates multiuser_distributed_rate(const Environment &env, const TransmitBudget &budget,
                                          const ArrayNode &bs,
                                          const std::vector<ArrayNode> &users,
                                          const std::vector<IrsPanel> &panels,
                                          ZfDetails *details = nullptr);

// Axis-aligned rectangular evaluation area at height z, sampled on an
// nx x ny uniform grid (21 x 21 by default).
struct AreaSpec {
    double x0 = 0.0, x1 = 0.0;
    double y0 = 0.0, y1 = 0.0;
    double z = 1.5;
    std::size_t nx = 21, ny = 21;

    std::size_t point_count() const { return nx * ny; }
    Position grid_point(std::size_t ix, std::size_t iy) const;
    Position centroid() const;
};

struct AreaMinPower {
    double min_power_w = 0.0;
    Position argmin;
    arma::mat power_grid; // nx x ny received power, watts
};

// Received power at every grid point under the panel's static configuration;
// returns the minimum and where it occurs.
AreaMinPower area_min_power(const Environment &env, const TransmitBudget &budget,
                            const ArrayNode &bs, const IrsPanel &panel, const AreaSpec &area);

// Static wide-beam configuration for point-to-area coverage: contiguous
// sub-arrays are co-phased toward sample points spread across the area's
// angular span, with adjacent beams phase-aligned at their crossover so the
// pattern has no systematic cancellation dips.
irs::ReflectionConfig area_coverage_config(const Environment &env, const ArrayNode &bs,
                                           const IrsPanel &panel, const AreaSpec &area);

// Co-phased configuration for a single target point (BS -> panel -> point).
irs::ReflectionConfig point_config(const Environment &env, const ArrayNode &bs,
                                   const IrsPanel &panel, const Position &target);

// Received power at one point under the panel's current configuration, with
// the BS transmit-beamforming toward the panel.
double received_power_at(const Environment &env, const TransmitBudget &budget,
                         const ArrayNode &bs, const IrsPanel &panel, const Position &point);

// Effective incident vector on a panel when the BS transmit-beamforms toward
// it (matched filter on the rank-1 BS->panel LoS link).
arma::cx_vec incident_from_bs(const Environment &env, const ArrayNode &bs, const IrsPanel &panel);

// Forward coefficient vector from panel elements to a single-antenna point.
arma::cx_vec panel_to_point(const Environment &env, const IrsPanel &panel, const Position &point);

// BS -> panel -> user link built from geometry: co-phases the panel for the
// cascade, applies the amplification budget to its active elements, and
// evaluates the resulting link.
LinkReport single_reflection_auto(const Environment &env, const TransmitBudget &budget,
                                  const ArrayNode &bs, const Position &user, IrsPanel panel);

// Double cascade with both panels configured the same way: each panel
// co-phased for its hop pair, amplification factors taken from the power
// actually incident on each panel (upstream amplification noise included).
struct ConfiguredDoubleCascade {
    arma::cx_vec h1_eff;
    ChannelMatrix d_inter;
    arma::cx_vec h2;
    IrsPanel panel1;
    IrsPanel panel2;
};

ConfiguredDoubleCascade setup_double_cascade(const Environment &env, const TransmitBudget &budget,
                                             const ArrayNode &bs, const Position &user,
                                             IrsPanel panel1, IrsPanel panel2);

LinkReport double_reflection_auto(const Environment &env, const TransmitBudget &budget,
                                  const ArrayNode &bs, const Position &user, IrsPanel panel1,
                                  IrsPanel panel2);

} // namespace irstk::linkeval
