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

#include "irstk/propagation.hpp"

#include <cmath>
#include <limits>

#include "irstk/rng.hpp"

namespace irstk::propagation {

double path_loss(double d, const PathLossModel &model) {
    if (!std::isfinite(d)) {
        throw std::invalid_argument("path_loss: distance must be finite");
    }
    if (model.beta0 <= 0.0) {
        throw std::invalid_argument("path_loss: beta0 must be positive");
    }
    if (model.alpha < 2.0) {
        throw std::invalid_argument("path_loss: alpha must be >= 2");
    }
    const double dc = std::max(d, 1.0);
    return model.beta0 * std::pow(dc, -model.alpha);
}

void ArrayGeometry::validate(const std::string &what) const {
    if (element_count < 1) {
        throw std::invalid_argument(what + ": element_count must be >= 1");
    }
    if (element_count > 1 && element_spacing <= 0.0) {
        throw std::invalid_argument(what + ": element_spacing must be positive");
    }
    if (!orientation.finite() || orientation.norm() <= 0.0) {
        throw std::invalid_argument(what + ": orientation must be a nonzero finite vector");
    }
    if (layout == ArrayLayout::planar && rows * cols != element_count) {
        throw std::invalid_argument(what + ": planar layout requires rows*cols == element_count");
    }
}

namespace {

// Second in-plane axis for planar layouts: the most-vertical unit vector
// orthogonal to the orientation, so a horizontal orientation yields an
// upright panel. Falls back to x when the orientation itself is vertical.
Vec3 planar_row_axis(const Vec3 &orientation) {
    const Vec3 u = orientation * (1.0 / orientation.norm());
    const Vec3 zhat{0.0, 0.0, 1.0};
    Vec3 v = zhat - u * dot(zhat, u);
    const double n = v.norm();
    if (n < 1e-9) {
        return {1.0, 0.0, 0.0};
    }
    return v * (1.0 / n);
}

} // namespace

Vec3 ArrayGeometry::element_offset(std::size_t n) const {
    const double norm = orientation.norm();
    const Vec3 u = orientation * (1.0 / norm);
    if (layout == ArrayLayout::linear) {
        return u * (static_cast<double>(n) * element_spacing);
    }
    const Vec3 v = planar_row_axis(orientation);
    const std::size_t row = n / cols;
    const std::size_t col = n % cols;
    return u * (static_cast<double>(col) * element_spacing) +
           v * (static_cast<double>(row) * element_spacing);
}

ArrayGeometry linear_array(std::size_t n, double spacing, Vec3 orientation) {
    ArrayGeometry g;
    g.element_count = n;
    g.element_spacing = spacing;
    g.orientation = orientation;
    g.layout = ArrayLayout::linear;
    g.validate("linear_array");
    return g;
}

ArrayGeometry planar_array(std::size_t rows, std::size_t cols, double spacing, Vec3 orientation) {
    ArrayGeometry g;
    g.element_count = rows * cols;
    g.element_spacing = spacing;
    g.orientation = orientation;
    g.layout = ArrayLayout::planar;
    g.rows = rows;
    g.cols = cols;
    g.validate("planar_array");
    return g;
}

arma::cx_vec steering_vector(const ArrayGeometry &geometry, const Vec3 &direction,
                             double wavelength) {
    geometry.validate("steering_vector");
    if (wavelength <= 0.0) {
        throw std::invalid_argument("steering_vector: wavelength must be positive");
    }
    const double n = direction.norm();
    if (n <= 0.0) {
        throw std::invalid_argument("steering_vector: zero direction vector");
    }
    if (std::abs(n - 1.0) > 1e-9) {
        throw std::invalid_argument("steering_vector: direction must be a unit vector");
    }
    const double k = 2.0 * M_PI / wavelength;
    arma::cx_vec a(geometry.element_count);
    for (std::size_t i = 0; i < geometry.element_count; ++i) {
        const double phase = -k * dot(geometry.element_offset(i), direction);
        a(i) = std::polar(1.0, phase);
    }
    return a;
}

ChannelMatrix los_channel(const ArrayNode &tx, const ArrayNode &rx, const PathLossModel &model,
                          double wavelength) {
    const double d = distance(tx.position, rx.position);
    if (d <= 0.0) {
        throw std::invalid_argument("los_channel: coincident endpoints");
    }
    const Vec3 dir_tx = unit_direction(tx.position, rx.position);
    const Vec3 dir_rx = unit_direction(rx.position, tx.position);
    const arma::cx_vec a_tx = steering_vector(tx.geometry, dir_tx, wavelength);
    const arma::cx_vec a_rx = steering_vector(rx.geometry, dir_rx, wavelength);
    const double gain = std::sqrt(path_loss(d, model));
    ChannelMatrix h;
    h.wavelength = wavelength;
    h.entries = gain * (a_rx * a_tx.t()); // .t() is the conjugate transpose
    return h;
}

ChannelMatrix rician_channel(const ChannelMatrix &los, double k_factor, std::uint64_t seed) {
    if (k_factor < 0.0 || std::isnan(k_factor)) {
        throw std::invalid_argument("rician_channel: k_factor must be >= 0");
    }
    if (std::isinf(k_factor)) {
        return los;
    }
    const double los_energy = arma::accu(arma::square(arma::abs(los.entries)));
    const std::size_t rx = los.entries.n_rows;
    const std::size_t tx = los.entries.n_cols;
    const double entry_var = los_energy / static_cast<double>(rx * tx);

    Rng rng(seed);
    arma::cx_mat scatter(rx, tx);
    for (std::size_t c = 0; c < tx; ++c) {
        for (std::size_t r = 0; r < rx; ++r) {
            scatter(r, c) = rng.complex_gaussian(entry_var);
        }
    }
    const double w_los = std::sqrt(k_factor / (k_factor + 1.0));
    const double w_sc = std::sqrt(1.0 / (k_factor + 1.0));
    ChannelMatrix h;
    h.wavelength = los.wavelength;
    h.entries = w_los * los.entries + w_sc * scatter;
    return h;
}

} // namespace irstk::propagation
