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

#include <cmath>
#include <stdexcept>
#include <string>

namespace irstk {

// Right-handed coordinates, ground plane z = 0. Also used for direction
// vectors, where the z >= 0 convention does not apply.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

using Position = Vec3;

inline double dot(const Vec3 &a, const Vec3 &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3 &a, const Vec3 &b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double distance(const Position &a, const Position &b) { return (a - b).norm(); }

// Unit vector from `from` toward `to`. Coincident points are an error
// because every channel construction divides by this distance.
inline Vec3 unit_direction(const Position &from, const Position &to) {
    const Vec3 d = to - from;
    const double n = d.norm();
    if (n <= 0.0) {
        throw std::invalid_argument("unit_direction: coincident positions");
    }
    return d * (1.0 / n);
}

inline void check_position(const Position &p, const std::string &what) {
    if (!p.finite()) {
        throw std::invalid_argument(what + ": position must be finite");
    }
    if (p.z < 0.0) {
        throw std::invalid_argument(what + ": position must satisfy z >= 0");
    }
}

// Lexicographic (x, y, z) order used by deterministic tie-breaking.
inline bool lex_less(const Position &a, const Position &b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.z < b.z;
}

} // namespace irstk
