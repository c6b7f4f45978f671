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

#include <armadillo>
#include <cstdint>

#include "irstk/geometry.hpp"

namespace irstk::propagation {

constexpr double kSpeedOfLight = 299792458.0; // m/s

// Distance-power law beta0 * d^(-alpha), beta0 referenced to 1 m.
struct PathLossModel {
    double beta0 = 1e-3; // linear power gain at 1 m (-30 dB)
    double alpha = 2.0;  // path-loss exponent
};

// Linear power gain at distance d. Distances below the 1 m reference are
// clamped to 1 m so the gain never exceeds beta0.
double path_loss(double d, const PathLossModel &model);

enum class ArrayLayout { linear, planar };

// Element n of a linear array sits at n * spacing along `orientation`.
// A planar array spans `orientation` (columns) and the most-vertical
// direction orthogonal to it (rows); element n = row * cols + col.
struct ArrayGeometry {
    std::size_t element_count = 1;
    double element_spacing = 0.0; // meters
    Vec3 orientation{1.0, 0.0, 0.0};
    ArrayLayout layout = ArrayLayout::linear;
    std::size_t rows = 0; // planar only; rows * cols == element_count
    std::size_t cols = 0;

    // Position offset of element n relative to the array reference point.
    Vec3 element_offset(std::size_t n) const;
    void validate(const std::string &what) const;
};

// Convenience constructors.
ArrayGeometry linear_array(std::size_t n, double spacing, Vec3 orientation = {1.0, 0.0, 0.0});
ArrayGeometry planar_array(std::size_t rows, std::size_t cols, double spacing,
                           Vec3 orientation = {1.0, 0.0, 0.0});

// An antenna array (or a single antenna) standing at a position.
struct ArrayNode {
    Position position;
    ArrayGeometry geometry;
};

inline ArrayNode point_node(const Position &p) {
    return ArrayNode{p, linear_array(1, 0.0)};
}

// Complex MIMO channel block, rx_dim x tx_dim.
struct ChannelMatrix {
    arma::cx_mat entries;
    double wavelength = 0.0;

    std::size_t rx_dim() const { return entries.n_rows; }
    std::size_t tx_dim() const { return entries.n_cols; }
};

// Far-field array response: entry n has phase -(2*pi/lambda) * <p_n, direction>,
// unit modulus. `direction` must be a unit vector (within 1e-9).
arma::cx_vec steering_vector(const ArrayGeometry &geometry, const Vec3 &direction,
                             double wavelength);

// Rank-1 line-of-sight channel: sqrt(path_loss(d)) * a_rx * a_tx^H with the
// steering vectors pointing at each other.
ChannelMatrix los_channel(const ArrayNode &tx, const ArrayNode &rx, const PathLossModel &model,
                          double wavelength);

// Rician mixture around `los`. The scattered part is i.i.d. circular complex
// Gaussian scaled so that E||H||_F^2 equals ||los||_F^2 for every K; K = inf
// returns `los` unchanged, K = 0 is pure Rayleigh. Deterministic given seed.
ChannelMatrix rician_channel(const ChannelMatrix &los, double k_factor, std::uint64_t seed);

} // namespace irstk::propagation
