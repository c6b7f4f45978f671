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

#include "irstk/irs_panel.hpp"

#include <cmath>

namespace irstk::irs {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double wrap_phase(double phi) {
    double p = std::fmod(phi, kTwoPi);
    if (p < 0.0) {
        p += kTwoPi;
    }
    return p;
}

IrsPanel base_panel(const Position &pos, const ArrayGeometry &geometry) {
    geometry.validate("IrsPanel");
    check_position(pos, "IrsPanel");
    IrsPanel p;
    p.position = pos;
    p.geometry = geometry;
    p.phases = arma::zeros<arma::vec>(geometry.element_count);
    p.amplitudes = arma::ones<arma::vec>(geometry.element_count);
    return p;
}

} // namespace

IrsPanel make_passive_panel(const Position &pos, const ArrayGeometry &geometry) {
    IrsPanel p = base_panel(pos, geometry);
    p.kind = PanelKind::passive;
    p.n_active = 0;
    return p;
}

IrsPanel make_active_panel(const Position &pos, const ArrayGeometry &geometry,
                           const ActiveConfig &active) {
    if (active.power_budget_w < 0.0 || active.noise_power_w < 0.0) {
        throw std::invalid_argument("make_active_panel: negative power");
    }
    IrsPanel p = base_panel(pos, geometry);
    p.kind = PanelKind::active;
    p.active = active;
    p.n_active = geometry.element_count;
    return p;
}

IrsPanel make_hybrid_panel(const Position &pos, const ArrayGeometry &geometry,
                           std::size_t n_active, const ActiveConfig &active) {
    if (n_active > geometry.element_count) {
        throw std::invalid_argument("make_hybrid_panel: n_active exceeds element count");
    }
    IrsPanel p = base_panel(pos, geometry);
    p.kind = PanelKind::hybrid;
    p.active = active;
    p.n_active = n_active;
    return p;
}

IrsPanel with_config(const IrsPanel &panel, const ReflectionConfig &config) {
    const std::size_t n = panel.element_count();
    if (config.phases.n_elem != n || config.amplitudes.n_elem != n) {
        throw std::invalid_argument("with_config: configuration length mismatch");
    }
    IrsPanel out = panel;
    out.phases = config.phases;
    for (std::size_t i = 0; i < n; ++i) {
        out.phases(i) = wrap_phase(out.phases(i));
        // passive elements reflect with unit amplitude, always
        if (!panel.element_is_active(i) && config.amplitudes(i) != 1.0) {
            throw std::invalid_argument("with_config: passive element amplitude must be 1");
        }
        if (config.amplitudes(i) < 0.0) {
            throw std::invalid_argument("with_config: negative amplitude");
        }
    }
    out.amplitudes = config.amplitudes;
    return out;
}

ReflectionConfig co_phase_align(const arma::cx_vec &h_in, const arma::cx_vec &h_out) {
    if (h_in.n_elem != h_out.n_elem) {
        throw std::invalid_argument("co_phase_align: channel length mismatch");
    }
    if (h_in.n_elem == 0) {
        throw std::invalid_argument("co_phase_align: empty channels");
    }
    const std::size_t n = h_in.n_elem;
    ReflectionConfig cfg;
    cfg.phases.set_size(n);
    cfg.amplitudes = arma::ones<arma::vec>(n);
    for (std::size_t i = 0; i < n; ++i) {
        cfg.phases(i) = wrap_phase(-std::arg(h_in(i) * h_out(i)));
    }
    return cfg;
}

AmplificationResult amplification_factor(const IrsPanel &panel,
                                         double incident_power_per_element) {
    if (panel.kind == PanelKind::passive) {
        throw std::invalid_argument("amplification_factor: panel has no active elements");
    }
    if (incident_power_per_element < 0.0 || !std::isfinite(incident_power_per_element)) {
        throw std::invalid_argument("amplification_factor: incident power must be >= 0");
    }
    AmplificationResult res;
    if (panel.active.power_budget_w <= 0.0) {
        res.amplitude = 0.0;
        res.zero_budget = true;
        return res;
    }
    const double denom = incident_power_per_element + panel.active.noise_power_w;
    if (denom <= 0.0) {
        throw std::invalid_argument("amplification_factor: zero element input power");
    }
    if (panel.active.constraint == PowerConstraint::total) {
        const double n = static_cast<double>(panel.n_active);
        if (n == 0.0) {
            throw std::invalid_argument("amplification_factor: panel has no active elements");
        }
        res.amplitude = std::sqrt(panel.active.power_budget_w / (n * denom));
    } else {
        res.amplitude = std::sqrt(panel.active.power_budget_w / denom);
    }
    return res;
}

PowerReport verify_power(const IrsPanel &panel, double incident_power_per_element) {
    PowerReport rep;
    if (panel.kind == PanelKind::passive || panel.n_active == 0) {
        rep.budget_w = 0.0;
        for (std::size_t i = 0; i < panel.element_count(); ++i) {
            if (panel.amplitudes(i) != 1.0) {
                rep.ok = false;
            }
        }
        return rep;
    }
    const double per_input = incident_power_per_element + panel.active.noise_power_w;
    for (std::size_t i = 0; i < panel.n_active; ++i) {
        const double out = panel.amplitudes(i) * panel.amplitudes(i) * per_input;
        rep.total_output_w += out;
        rep.max_element_output_w = std::max(rep.max_element_output_w, out);
    }
    rep.budget_w = panel.active.power_budget_w;
    const double actual = panel.active.constraint == PowerConstraint::total
                              ? rep.total_output_w
                              : rep.max_element_output_w;
    rep.ok = actual <= rep.budget_w * (1.0 + 1e-9);
    if (!rep.ok && rep.budget_w > 0.0) {
        rep.excess_factor = actual / rep.budget_w;
    }
    // hybrid passive elements must stay at unit amplitude
    for (std::size_t i = panel.n_active; i < panel.element_count(); ++i) {
        if (panel.amplitudes(i) != 1.0) {
            rep.ok = false;
        }
    }
    return rep;
}

ReflectionConfig quantize_phases(const ReflectionConfig &config, int bits) {
    if (bits <= 0) {
        throw std::invalid_argument("quantize_phases: bits must be >= 1");
    }
    const double levels = std::pow(2.0, bits);
    const double step = kTwoPi / levels;
    ReflectionConfig out = config;
    for (std::size_t i = 0; i < config.phases.n_elem; ++i) {
        const double q = wrap_phase(config.phases(i)) / step;
        double k = std::floor(q + 0.5);
        if (q + 0.5 == k) {
            k -= 1.0; // exact tie: snap to the lower level
        }
        if (k >= levels) {
            k = 0.0; // wrap 2*pi back onto 0
        }
        out.phases(i) = k * step;
    }
    return out;
}

std::pair<std::optional<IrsPanel>, std::optional<IrsPanel>> split_hybrid(const IrsPanel &panel,
                                                                         std::size_t n_active) {
    const std::size_t n = panel.element_count();
    if (n_active > n) {
        throw std::invalid_argument("split_hybrid: n_active out of range");
    }
    std::optional<IrsPanel> active_part;
    std::optional<IrsPanel> passive_part;
    if (n_active > 0) {
        ArrayGeometry g = propagation::linear_array(
            n_active, panel.geometry.element_spacing > 0.0 ? panel.geometry.element_spacing : 1.0,
            panel.geometry.orientation);
        IrsPanel p = make_active_panel(panel.position, g, panel.active);
        p.phases = panel.phases.head(n_active);
        p.amplitudes = panel.amplitudes.head(n_active);
        active_part = std::move(p);
    }
    if (n_active < n) {
        ArrayGeometry g = propagation::linear_array(
            n - n_active,
            panel.geometry.element_spacing > 0.0 ? panel.geometry.element_spacing : 1.0,
            panel.geometry.orientation);
        IrsPanel p = make_passive_panel(panel.position, g);
        p.phases = panel.phases.tail(n - n_active);
        passive_part = std::move(p);
    }
    return {std::move(active_part), std::move(passive_part)};
}

} // namespace irstk::irs
