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
#include <utility>

#include "irstk/propagation.hpp"

namespace irstk::irs {

using propagation::ArrayGeometry;

enum class PanelKind { passive, active, hybrid };
enum class PowerConstraint { total, per_element };

// Amplification budget of an active surface (or of the active part of a
// hybrid one). `power_budget_w` is the total output power for the `total`
// constraint and the per-element output power for `per_element`.
// `noise_power_w` is the amplification noise injected at each active element.
struct ActiveConfig {
    double power_budget_w = 0.0;
    PowerConstraint constraint = PowerConstraint::total;
    double noise_power_w = 1e-10; // -70 dBm
};

// Phase/amplitude configuration, separable from the panel so optimizers can
// produce candidate configurations as values. Phases are kept in [0, 2*pi).
struct ReflectionConfig {
    arma::vec phases;
    arma::vec amplitudes;

    std::size_t size() const { return phases.n_elem; }
};

// One reconfigurable surface. Elements [0, n_active) of a hybrid panel are
// the amplifying ones; a passive panel has all amplitudes pinned to 1.
struct IrsPanel {
    Position position;
    ArrayGeometry geometry;
    PanelKind kind = PanelKind::passive;
    ActiveConfig active;      // meaningful for active/hybrid panels
    std::size_t n_active = 0; // active element count (N for active, subset for hybrid)
    arma::vec phases;
    arma::vec amplitudes;

    std::size_t element_count() const { return geometry.element_count; }
    bool element_is_active(std::size_t n) const { return n < n_active; }
};

IrsPanel make_passive_panel(const Position &pos, const ArrayGeometry &geometry);
IrsPanel make_active_panel(const Position &pos, const ArrayGeometry &geometry,
                           const ActiveConfig &active);
IrsPanel make_hybrid_panel(const Position &pos, const ArrayGeometry &geometry,
                           std::size_t n_active, const ActiveConfig &active);

// Returns a copy of the panel carrying the given configuration. Rejects
// length mismatches and amplitude changes on passive elements.
IrsPanel with_config(const IrsPanel &panel, const ReflectionConfig &config);

// Phase alignment phi_n = -arg(h_in[n] * h_out[n]): makes every term of
// sum_n h_out[n] e^{j phi_n} h_in[n] real positive, so the coherent magnitude
// attains the triangle-inequality bound sum_n |h_in[n]| |h_out[n]|.
// Amplitudes are set to 1.
ReflectionConfig co_phase_align(const arma::cx_vec &h_in, const arma::cx_vec &h_out);

struct AmplificationResult {
    double amplitude = 0.0;
    bool zero_budget = false; // budget was zero, amplitude forced to 0
};

// Shared amplification factor of the panel's active elements given the
// incident power per element. Output element power a^2 (p_in + sigma_v^2)
// meets the budget with equality.
AmplificationResult amplification_factor(const IrsPanel &panel, double incident_power_per_element);

struct PowerReport {
    double max_element_output_w = 0.0;
    double total_output_w = 0.0; // over amplifying elements
    double budget_w = 0.0;
    bool ok = true;
    double excess_factor = 1.0; // actual / budget when violated
};

// Checks the configured amplitudes against the panel's power budget at the
// given incident power (1e-9 relative slack). Passive panels are satisfied
// iff every amplitude is exactly 1.
PowerReport verify_power(const IrsPanel &panel, double incident_power_per_element);

// Snaps each phase to the nearest of the 2^bits uniform levels 2*pi*k/2^bits,
// ties toward the lower level. Amplitudes pass through untouched.
ReflectionConfig quantize_phases(const ReflectionConfig &config, int bits);

// Splits a panel into co-located active and passive sub-panels with element
// counts (n_active, N - n_active); the active one inherits the budget. An
// empty side comes back as nullopt. Sub-panels are bookkeeping views: they
// reuse the spacing/orientation but are laid out as linear arrays.
std::pair<std::optional<IrsPanel>, std::optional<IrsPanel>> split_hybrid(const IrsPanel &panel,
                                                                         std::size_t n_active);

} // namespace irstk::irs
