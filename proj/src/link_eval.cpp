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

#include "irstk/link_eval.hpp"

#include <cmath>

namespace irstk::linkeval {

namespace {

void check_budget(const TransmitBudget &budget) {
    if (!(budget.p_t > 0.0) || !(budget.noise_power > 0.0)) {
        throw std::invalid_argument("TransmitBudget: p_t and noise_power must be positive");
    }
}

// diag(a_n e^{j phi_n}) of the panel as a dense vector
arma::cx_vec reflection_coefficients(const IrsPanel &panel) {
    const std::size_t n = panel.element_count();
    arma::cx_vec c(n);
    for (std::size_t i = 0; i < n; ++i) {
        c(i) = std::polar(panel.amplitudes(i), panel.phases(i));
    }
    return c;
}

// sigma_v^2 * sum over active elements of |row[n]|^2, where `row` already
// includes the element's own reflection coefficient.
double amp_noise_power(const IrsPanel &panel, const arma::cx_rowvec &row_through_panel) {
    if (panel.n_active == 0 || panel.active.noise_power_w <= 0.0) {
        return 0.0;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < panel.n_active; ++i) {
        acc += std::norm(row_through_panel(i));
    }
    return acc * panel.active.noise_power_w;
}

} // namespace

double LinkReport::noise_total() const {
    double acc = 0.0;
    for (const auto &t : noise_terms) {
        acc += t.power;
    }
    return acc;
}

LinkReport make_link_report(double signal_power, std::vector<NoiseTerm> noise_terms) {
    LinkReport rep;
    rep.signal_power = signal_power;
    rep.noise_terms = std::move(noise_terms);
    const double noise = rep.noise_total();
    if (!(noise > 0.0)) {
        throw std::invalid_argument("LinkReport: total noise must be positive");
    }
    rep.snr = signal_power / noise;
    rep.rate = std::log2(1.0 + rep.snr);
    return rep;
}

LinkReport siso_single_reflection(const TransmitBudget &budget, const arma::cx_vec &h1,
                                  const arma::cx_vec &h2, const IrsPanel &panel) {
    check_budget(budget);
    const std::size_t n = panel.element_count();
    if (h1.n_elem != n || h2.n_elem != n) {
        throw std::invalid_argument("siso_single_reflection: channel/panel dimension mismatch");
    }
    const arma::cx_vec coeff = reflection_coefficients(panel);
    std::complex<double> c{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        c += h2(i) * coeff(i) * h1(i);
    }
    std::vector<NoiseTerm> noise{{"receiver_thermal", budget.noise_power}};
    const arma::cx_rowvec through = (h2 % coeff).st();
    const double amp = amp_noise_power(panel, through);
    if (amp > 0.0) {
        noise.push_back({"amp_noise_panel", amp});
    }
    return make_link_report(budget.p_t * std::norm(c), std::move(noise));
}

LinkReport double_reflection(const TransmitBudget &budget, const arma::cx_vec &h1,
                             const ChannelMatrix &d_inter, const arma::cx_vec &h2,
                             const IrsPanel &panel1, const IrsPanel &panel2,
                             const DoubleReflectionExtras *extras) {
    check_budget(budget);
    const std::size_t n1 = panel1.element_count();
    const std::size_t n2 = panel2.element_count();
    if (h1.n_elem != n1 || h2.n_elem != n2 || d_inter.entries.n_rows != n2 ||
        d_inter.entries.n_cols != n1) {
        throw std::invalid_argument("double_reflection: cascade dimension mismatch");
    }
    if (extras != nullptr &&
        (extras->h_bs_to_panel2.n_elem != n2 || extras->h_panel1_to_user.n_elem != n1)) {
        throw std::invalid_argument("double_reflection: extras dimension mismatch");
    }
    const arma::cx_vec coeff1 = reflection_coefficients(panel1);
    const arma::cx_vec coeff2 = reflection_coefficients(panel2);

    const arma::cx_rowvec through2 = (h2 % coeff2).st();        // v2 -> receiver
    const arma::cx_rowvec r = through2 * d_inter.entries;       // panel1 output -> receiver
    arma::cx_rowvec through1 = r % coeff1.st();                 // v1 -> receiver

    std::complex<double> c = arma::as_scalar(through1 * h1);
    if (extras != nullptr) {
        const arma::cx_rowvec single1 = (extras->h_panel1_to_user % coeff1).st();
        c += arma::as_scalar(single1 * h1);
        c += arma::as_scalar(through2 * extras->h_bs_to_panel2);
        through1 += single1; // v1 reaches the user over both routes, coherently
    }

    std::vector<NoiseTerm> noise{{"receiver_thermal", budget.noise_power}};
    const double amp1 = amp_noise_power(panel1, through1);
    if (amp1 > 0.0) {
        noise.push_back({"amp_noise_panel1", amp1});
    }
    const double amp2 = amp_noise_power(panel2, through2);
    if (amp2 > 0.0) {
        noise.push_back({"amp_noise_panel2", amp2});
    }
    return make_link_report(budget.p_t * std::norm(c), std::move(noise));
}

LinkReport cascade_link(const TransmitBudget &budget, const std::vector<CascadeStage> &stages,
                        const arma::cx_rowvec &h_out) {
    check_budget(budget);
    if (stages.empty()) {
        throw std::invalid_argument("cascade_link: at least one stage required");
    }
    for (std::size_t i = 0; i < stages.size(); ++i) {
        const auto &st = stages[i];
        if (st.panel == nullptr) {
            throw std::invalid_argument("cascade_link: missing panel");
        }
        if (st.channel_in.n_rows != st.panel->element_count()) {
            throw std::invalid_argument("cascade_link: stage channel/panel mismatch");
        }
        if (i > 0 && st.channel_in.n_cols != stages[i - 1].panel->element_count()) {
            throw std::invalid_argument("cascade_link: stage chain mismatch");
        }
    }
    if (stages.front().channel_in.n_cols != 1 || h_out.n_elem != stages.back().panel->element_count()) {
        throw std::invalid_argument("cascade_link: endpoint dimension mismatch");
    }

    std::vector<NoiseTerm> noise{{"receiver_thermal", budget.noise_power}};
    arma::cx_rowvec row = h_out; // maps current stage's output to the receiver
    for (std::size_t idx = stages.size(); idx-- > 0;) {
        const auto &st = stages[idx];
        const arma::cx_rowvec row_in = row % reflection_coefficients(*st.panel).st();
        const double amp = amp_noise_power(*st.panel, row_in);
        if (amp > 0.0) {
            noise.push_back({"amp_noise_hop" + std::to_string(idx + 1), amp});
        }
        row = row_in * st.channel_in;
    }
    const std::complex<double> c = row(0);
    return make_link_report(budget.p_t * std::norm(c), std::move(noise));
}

WaterFilling mimo_capacity(const TransmitBudget &budget, const ChannelMatrix &channel) {
    check_budget(budget);
    if (!channel.entries.is_finite()) {
        throw std::invalid_argument("mimo_capacity: channel must be finite");
    }
    WaterFilling wf;
    arma::vec s = arma::svd(channel.entries);
    wf.singular_values = s;
    wf.powers = arma::zeros<arma::vec>(s.n_elem);
    // usable eigenmodes
    std::size_t r = 0;
    while (r < s.n_elem && s(r) > 0.0) {
        ++r;
    }
    if (r == 0) {
        return wf; // zero channel carries no rate
    }
    arma::vec inv_gain(r);
    for (std::size_t i = 0; i < r; ++i) {
        inv_gain(i) = budget.noise_power / (s(i) * s(i));
    }
    // largest k for which the weakest active mode still gets nonnegative power
    double mu = 0.0;
    std::size_t active = 0;
    double prefix = 0.0;
    for (std::size_t k = 1; k <= r; ++k) {
        prefix += inv_gain(k - 1);
        const double candidate = (budget.p_t + prefix) / static_cast<double>(k);
        if (candidate >= inv_gain(k - 1)) {
            mu = candidate;
            active = k;
        }
    }
    wf.water_level = mu;
    for (std::size_t i = 0; i < active; ++i) {
        wf.powers(i) = mu - inv_gain(i);
        wf.rate += std::log2(mu / inv_gain(i));
    }
    return wf;
}

irs::ReflectionConfig rank1_cascade_config(const ChannelMatrix &h1, const ChannelMatrix &h2) {
    if (h1.entries.n_rows != h2.entries.n_cols) {
        throw std::invalid_argument("rank1_cascade_config: panel dimension mismatch");
    }
    arma::cx_mat u1, v1, u2, v2;
    arma::vec s1, s2;
    arma::svd(u1, s1, v1, h1.entries);
    arma::svd(u2, s2, v2, h2.entries);
    const arma::cx_vec into_panel = u1.col(0);        // incident principal factor
    const arma::cx_vec out_of_panel = arma::conj(v2.col(0)); // departing principal factor
    return irs::co_phase_align(into_panel, out_of_panel);
}

ChannelMatrix assemble_multi_irs_channel(const Environment &env, const ArrayNode &bs,
                                         const ArrayNode &user,
                                         const std::vector<IrsPanel> &panels,
                                         bool include_direct) {
    if (panels.empty()) {
        throw std::invalid_argument("assemble_multi_irs_channel: at least one panel required");
    }
    ChannelMatrix h_eff;
    h_eff.wavelength = env.wavelength;
    h_eff.entries =
        arma::zeros<arma::cx_mat>(user.geometry.element_count, bs.geometry.element_count);
    for (const auto &panel : panels) {
        const ArrayNode panel_node{panel.position, panel.geometry};
        const ChannelMatrix h1 = propagation::los_channel(bs, panel_node, env.bs_irs, env.wavelength);
        const ChannelMatrix h2 =
            propagation::los_channel(panel_node, user, env.irs_user, env.wavelength);
        arma::cx_vec coeff(panel.element_count());
        for (std::size_t i = 0; i < panel.element_count(); ++i) {
            coeff(i) = std::polar(panel.amplitudes(i), panel.phases(i));
        }
        h_eff.entries += h2.entries * arma::diagmat(coeff) * h1.entries;
    }
    if (include_direct) {
        h_eff.entries +=
            propagation::los_channel(bs, user, env.direct, env.wavelength).entries;
    }
    return h_eff;
}

namespace {

void check_single_antenna_users(const std::vector<ArrayNode> &users, const char *op) {
    if (users.empty()) {
        throw std::invalid_argument(std::string(op) + ": empty user list");
    }
    for (const auto &u : users) {
        if (u.geometry.element_count != 1) {
            throw std::invalid_argument(std::string(op) + ": users must be single-antenna");
        }
    }
}

} // namespace

arma::cx_vec incident_from_bs(const Environment &env, const ArrayNode &bs, const IrsPanel &panel) {
    const double d = distance(bs.position, panel.position);
    const double amp = std::sqrt(propagation::path_loss(d, env.bs_irs));
    const arma::cx_vec a_panel = propagation::steering_vector(
        panel.geometry, unit_direction(panel.position, bs.position), env.wavelength);
    const double m = static_cast<double>(bs.geometry.element_count);
    return amp * std::sqrt(m) * a_panel;
}

arma::cx_vec panel_to_point(const Environment &env, const IrsPanel &panel, const Position &point) {
    const double d = distance(panel.position, point);
    const double amp = std::sqrt(propagation::path_loss(d, env.irs_user));
    const arma::cx_vec a_out = propagation::steering_vector(
        panel.geometry, unit_direction(panel.position, point), env.wavelength);
    return amp * arma::conj(a_out);
}

MultiuserRates multiuser_centralized_rate(const Environment &env, const TransmitBudget &budget,
                                          const ArrayNode &bs,
                                          const std::vector<ArrayNode> &users,
                                          const IrsPanel &panel) {
    check_budget(budget);
    check_single_antenna_users(users, "multiuser_centralized_rate");
    const std::size_t k = users.size();
    const arma::cx_vec h1_eff = incident_from_bs(env, bs, panel);
    MultiuserRates out;
    out.per_user.set_size(k);
    for (std::size_t i = 0; i < k; ++i) {
        const arma::cx_vec h2 = panel_to_point(env, panel, users[i].position);
        const IrsPanel served = irs::with_config(panel, irs::co_phase_align(h1_eff, h2));
        const LinkReport rep = siso_single_reflection(budget, h1_eff, h2, served);
        out.per_user(i) = rep.rate / static_cast<double>(k); // 1/K time share
        out.sum_rate += out.per_user(i);
    }
    return out;
}

MultiuserRates multiuser_distributed_rate(const Environment &env, const TransmitBudget &budget,
                                          const ArrayNode &bs,
                                          const std::vector<ArrayNode> &users,
                                          const std::vector<IrsPanel> &panels,
                                          ZfDetails *details) {
    check_budget(budget);
    check_single_antenna_users(users, "multiuser_distributed_rate");
    const std::size_t k = users.size();
    const std::size_t m = bs.geometry.element_count;
    if (panels.size() != k) {
        throw std::invalid_argument("multiuser_distributed_rate: one panel per user required");
    }
    if (m < k) {
        throw std::invalid_argument(
            "multiuser_distributed_rate: zero-forcing needs at least as many BS antennas as users");
    }
    // co-phase every panel for its local user
    std::vector<IrsPanel> tuned;
    tuned.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
        const arma::cx_vec a_in = propagation::steering_vector(
            panels[j].geometry, unit_direction(panels[j].position, bs.position), env.wavelength);
        const arma::cx_vec h2 = panel_to_point(env, panels[j], users[j].position);
        tuned.push_back(irs::with_config(panels[j], irs::co_phase_align(a_in, h2)));
    }
    // effective downlink rows, all reflections included
    arma::cx_mat h_eff(k, m, arma::fill::zeros);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            const ArrayNode panel_node{tuned[j].position, tuned[j].geometry};
            const ChannelMatrix h1 =
                propagation::los_channel(bs, panel_node, env.bs_irs, env.wavelength);
            const arma::cx_vec h2 = panel_to_point(env, tuned[j], users[i].position);
            arma::cx_vec coeff(tuned[j].element_count());
            for (std::size_t n = 0; n < tuned[j].element_count(); ++n) {
                coeff(n) = std::polar(tuned[j].amplitudes(n), tuned[j].phases(n));
            }
            h_eff.row(i) += (h2 % coeff).st() * h1.entries;
        }
    }
    const arma::cx_mat w_raw = arma::pinv(h_eff); // m x k, h_eff * w_raw = I
    MultiuserRates out;
    out.per_user.set_size(k);
    arma::cx_mat precoder(m, k);
    const double p_user = budget.p_t / static_cast<double>(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double g = arma::norm(w_raw.col(i));
        if (!(g > 0.0)) {
            throw std::runtime_error("multiuser_distributed_rate: rank-deficient effective channel");
        }
        precoder.col(i) = w_raw.col(i) / g;
        const std::complex<double> direct = arma::as_scalar(h_eff.row(i) * precoder.col(i));
        const double snr = p_user * std::norm(direct) / budget.noise_power;
        out.per_user(i) = std::log2(1.0 + snr);
        out.sum_rate += out.per_user(i);
    }
    if (details != nullptr) {
        details->effective_channel = h_eff;
        details->precoder = precoder;
    }
    return out;
}

Position AreaSpec::grid_point(std::size_t ix, std::size_t iy) const {
    const double fx = nx > 1 ? static_cast<double>(ix) / static_cast<double>(nx - 1) : 0.5;
    const double fy = ny > 1 ? static_cast<double>(iy) / static_cast<double>(ny - 1) : 0.5;
    return {x0 + fx * (x1 - x0), y0 + fy * (y1 - y0), z};
}

Position AreaSpec::centroid() const {
    return {(x0 + x1) / 2.0, (y0 + y1) / 2.0, z};
}

double received_power_at(const Environment &env, const TransmitBudget &budget,
                         const ArrayNode &bs, const IrsPanel &panel, const Position &point) {
    const arma::cx_vec h1_eff = incident_from_bs(env, bs, panel);
    const arma::cx_vec h2 = panel_to_point(env, panel, point);
    std::complex<double> c{0.0, 0.0};
    for (std::size_t n = 0; n < panel.element_count(); ++n) {
        c += h2(n) * std::polar(panel.amplitudes(n), panel.phases(n)) * h1_eff(n);
    }
    return budget.p_t * std::norm(c);
}

AreaMinPower area_min_power(const Environment &env, const TransmitBudget &budget,
                            const ArrayNode &bs, const IrsPanel &panel, const AreaSpec &area) {
    check_budget(budget);
    if (area.nx == 0 || area.ny == 0) {
        throw std::invalid_argument("area_min_power: empty area grid");
    }
    AreaMinPower out;
    out.power_grid.set_size(area.nx, area.ny);
    bool first = true;
    for (std::size_t iy = 0; iy < area.ny; ++iy) {
        for (std::size_t ix = 0; ix < area.nx; ++ix) {
            const Position q = area.grid_point(ix, iy);
            const double p = received_power_at(env, budget, bs, panel, q);
            out.power_grid(ix, iy) = p;
            if (first || p < out.min_power_w) {
                first = false;
                out.min_power_w = p;
                out.argmin = q;
            }
        }
    }
    return out;
}

irs::ReflectionConfig point_config(const Environment &env, const ArrayNode &bs,
                                   const IrsPanel &panel, const Position &target) {
    const arma::cx_vec h1_eff = incident_from_bs(env, bs, panel);
    const arma::cx_vec h2 = panel_to_point(env, panel, target);
    return irs::co_phase_align(h1_eff, h2);
}

irs::ReflectionConfig area_coverage_config(const Environment &env, const ArrayNode &bs,
                                           const IrsPanel &panel, const AreaSpec &area) {
    const std::size_t n = panel.element_count();
    const Vec3 axis = panel.geometry.orientation * (1.0 / panel.geometry.orientation.norm());

    // angular span of the area along the panel axis, probed on a coarse 3x3 set
    double u_min = 0.0, u_max = 0.0;
    Position p_lo{}, p_hi{};
    bool first = true;
    for (int iy = 0; iy < 3; ++iy) {
        for (int ix = 0; ix < 3; ++ix) {
            const Position q{area.x0 + 0.5 * ix * (area.x1 - area.x0),
                             area.y0 + 0.5 * iy * (area.y1 - area.y0), area.z};
            const double u = dot(unit_direction(panel.position, q), axis);
            if (first || u < u_min) {
                u_min = u;
                p_lo = q;
            }
            if (first || u > u_max) {
                u_max = u;
                p_hi = q;
            }
            first = false;
        }
    }
    const double span = u_max - u_min;

    // sub-array count balancing per-beam width against the span to cover
    const double spacing = panel.geometry.element_spacing;
    std::size_t s = 1;
    if (span > 0.0 && spacing > 0.0) {
        const double ideal =
            std::sqrt(span * static_cast<double>(n) * spacing / (2.0 * env.wavelength));
        s = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(ideal)));
        s = std::min(s, n);
    }

    const arma::cx_vec h1_eff = incident_from_bs(env, bs, panel);
    auto response_at = [&](const Position &q, std::size_t lo, std::size_t hi,
                           const arma::vec &phases) {
        const arma::cx_vec h2 = panel_to_point(env, panel, q);
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t i = lo; i < hi; ++i) {
            acc += h2(i) * std::polar(1.0, phases(i)) * h1_eff(i);
        }
        return acc;
    };

    irs::ReflectionConfig cfg;
    cfg.phases.set_size(n);
    cfg.amplitudes = arma::ones<arma::vec>(n);

    std::vector<Position> aims(s);
    std::vector<std::size_t> bounds(s + 1);
    for (std::size_t i = 0; i < s; ++i) {
        const double f = (static_cast<double>(i) + 0.5) / static_cast<double>(s);
        aims[i] = p_lo + (p_hi - p_lo) * f;
        bounds[i] = i * n / s;
    }
    bounds[s] = n;

    for (std::size_t i = 0; i < s; ++i) {
        const arma::cx_vec h2 = panel_to_point(env, panel, aims[i]);
        for (std::size_t e = bounds[i]; e < bounds[i + 1]; ++e) {
            double phi = -std::arg(h1_eff(e) * h2(e));
            phi = std::fmod(phi, 2.0 * M_PI);
            if (phi < 0.0) {
                phi += 2.0 * M_PI;
            }
            cfg.phases(e) = phi;
        }
    }
    // align adjacent beams at their crossover so they add constructively there
    for (std::size_t i = 0; i + 1 < s; ++i) {
        const Position cross = (aims[i] + aims[i + 1]) * 0.5;
        const auto r_cur = response_at(cross, bounds[i], bounds[i + 1], cfg.phases);
        const auto r_next = response_at(cross, bounds[i + 1], bounds[i + 2], cfg.phases);
        if (std::abs(r_cur) == 0.0 || std::abs(r_next) == 0.0) {
            continue;
        }
        const double delta = std::arg(r_cur) - std::arg(r_next);
        for (std::size_t e = bounds[i + 1]; e < bounds[i + 2]; ++e) {
            double phi = std::fmod(cfg.phases(e) + delta, 2.0 * M_PI);
            if (phi < 0.0) {
                phi += 2.0 * M_PI;
            }
            cfg.phases(e) = phi;
        }
    }
    return cfg;
}

namespace {

// Applies the panel's amplification budget on top of a phase configuration,
// given the per-element incident power.
irs::IrsPanel tune_panel(const IrsPanel &panel, irs::ReflectionConfig cfg,
                         double incident_power_per_element) {
    if (panel.n_active > 0) {
        const auto amp = irs::amplification_factor(panel, incident_power_per_element);
        for (std::size_t i = 0; i < panel.n_active; ++i) {
            cfg.amplitudes(i) = amp.amplitude;
        }
    }
    return irs::with_config(panel, cfg);
}

} // namespace

LinkReport single_reflection_auto(const Environment &env, const TransmitBudget &budget,
                                  const ArrayNode &bs, const Position &user, IrsPanel panel) {
    check_budget(budget);
    const arma::cx_vec h1_eff = incident_from_bs(env, bs, panel);
    const arma::cx_vec h2 = panel_to_point(env, panel, user);
    const double p_in = budget.p_t * arma::mean(arma::square(arma::abs(h1_eff)));
    const IrsPanel tuned = tune_panel(panel, irs::co_phase_align(h1_eff, h2), p_in);
    return siso_single_reflection(budget, h1_eff, h2, tuned);
}

ConfiguredDoubleCascade setup_double_cascade(const Environment &env, const TransmitBudget &budget,
                                             const ArrayNode &bs, const Position &user,
                                             IrsPanel panel1, IrsPanel panel2) {
    check_budget(budget);
    ConfiguredDoubleCascade out;
    out.h1_eff = incident_from_bs(env, bs, panel1);

    const ArrayNode node1{panel1.position, panel1.geometry};
    const ArrayNode node2{panel2.position, panel2.geometry};
    out.d_inter = propagation::los_channel(node1, node2, env.inter_irs, env.wavelength);
    if (!std::isinf(env.inter_irs_k_factor)) {
        out.d_inter =
            propagation::rician_channel(out.d_inter, env.inter_irs_k_factor, env.fading_seed);
    }
    out.h2 = panel_to_point(env, panel2, user);

    // panel 1: align its in/out steering product; the rank-1 inter-IRS link
    // factors as sqrt(pl) a2_in a1_out^H, so conj(a1_out) is its out-factor
    const arma::cx_vec a1_out = propagation::steering_vector(
        panel1.geometry, unit_direction(panel1.position, panel2.position), env.wavelength);
    const double p_in1 = budget.p_t * arma::mean(arma::square(arma::abs(out.h1_eff)));
    out.panel1 = tune_panel(panel1, irs::co_phase_align(out.h1_eff, arma::conj(a1_out)), p_in1);

    // signal and upstream-noise power actually arriving at panel 2
    arma::cx_vec coeff1(out.panel1.element_count());
    for (std::size_t i = 0; i < out.panel1.element_count(); ++i) {
        coeff1(i) = std::polar(out.panel1.amplitudes(i), out.panel1.phases(i));
    }
    const arma::cx_vec x2 = out.d_inter.entries * (coeff1 % out.h1_eff);
    double p_in2 = budget.p_t * arma::mean(arma::square(arma::abs(x2)));
    if (out.panel1.n_active > 0 && out.panel1.active.noise_power_w > 0.0) {
        double upstream = 0.0;
        for (std::size_t m = 0; m < out.d_inter.entries.n_rows; ++m) {
            for (std::size_t n = 0; n < out.panel1.n_active; ++n) {
                upstream += std::norm(out.d_inter.entries(m, n) * coeff1(n));
            }
        }
        p_in2 += out.panel1.active.noise_power_w * upstream /
                 static_cast<double>(out.d_inter.entries.n_rows);
    }
    out.panel2 = tune_panel(panel2, irs::co_phase_align(x2, out.h2), p_in2);
    return out;
}

LinkReport double_reflection_auto(const Environment &env, const TransmitBudget &budget,
                                  const ArrayNode &bs, const Position &user, IrsPanel panel1,
                                  IrsPanel panel2) {
    const ConfiguredDoubleCascade c =
        setup_double_cascade(env, budget, bs, user, std::move(panel1), std::move(panel2));
    return double_reflection(budget, c.h1_eff, c.d_inter, c.h2, c.panel1, c.panel2);
}

} // namespace irstk::linkeval
