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

#include "irstk/deploy_opt.hpp"

#include <algorithm>
#include <cmath>

namespace irstk::deploy {

SearchGrid segment_grid(const Position &a, const Position &b, double resolution,
                        int refinement_levels) {
    SearchGrid g;
    g.domain = SearchGrid::Domain::segment;
    g.seg_a = a;
    g.seg_b = b;
    g.resolution = resolution;
    g.refinement_levels = refinement_levels;
    return g;
}

IrsPanel instantiate(const PanelTemplate &proto, const Position &pos) {
    switch (proto.kind) {
    case irs::PanelKind::passive:
        return irs::make_passive_panel(pos, proto.geometry);
    case irs::PanelKind::active:
        return irs::make_active_panel(pos, proto.geometry, proto.active);
    case irs::PanelKind::hybrid:
        return irs::make_hybrid_panel(pos, proto.geometry, proto.n_active, proto.active);
    }
    throw std::logic_error("instantiate: unknown panel kind");
}

PanelTemplate passive_template(const propagation::ArrayGeometry &geometry) {
    PanelTemplate t;
    t.geometry = geometry;
    t.kind = irs::PanelKind::passive;
    return t;
}

PanelTemplate active_template(const propagation::ArrayGeometry &geometry,
                              const irs::ActiveConfig &active) {
    PanelTemplate t;
    t.geometry = geometry;
    t.kind = irs::PanelKind::active;
    t.active = active;
    return t;
}

PanelTemplate hybrid_template(const propagation::ArrayGeometry &geometry, std::size_t n_active,
                              const irs::ActiveConfig &active) {
    PanelTemplate t;
    t.geometry = geometry;
    t.kind = irs::PanelKind::hybrid;
    t.active = active;
    t.n_active = n_active;
    return t;
}

propagation::ArrayGeometry resize_geometry(const propagation::ArrayGeometry &geometry,
                                           std::size_t n) {
    if (geometry.layout == propagation::ArrayLayout::linear) {
        return propagation::linear_array(n, geometry.element_spacing, geometry.orientation);
    }
    // nearest-to-square factorization
    std::size_t rows = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    while (rows > 1 && n % rows != 0) {
        --rows;
    }
    return propagation::planar_array(rows, n / rows, geometry.element_spacing,
                                     geometry.orientation);
}

namespace {

bool feasible_standoff(const Position &candidate, const Position &bs, const Position &user) {
    return distance(candidate, bs) >= kMinStandoff && distance(candidate, user) >= kMinStandoff;
}

// Feasibility transitions of t -> feasible(seg(t)) bisected to ~1e-9 m so the
// exact standoff boundary enters the candidate set.
std::vector<double> segment_candidates(const Position &a, const Position &b, const Position &bs,
                                       const Position &user, double t_lo, double t_hi,
                                       double step) {
    const double len = distance(a, b);
    const Vec3 dir = unit_direction(a, b);
    auto at = [&](double t) { return a + dir * t; };
    auto ok = [&](double t) { return feasible_standoff(at(t), bs, user); };
    t_lo = std::max(0.0, t_lo);
    t_hi = std::min(len, t_hi);
    if (t_hi < t_lo) {
        return {};
    }

    std::vector<double> ts;
    const double scan = std::min(step, std::max((t_hi - t_lo) / 64.0, 1e-6));
    double prev_t = t_lo;
    bool prev_ok = ok(prev_t);
    if (prev_ok) {
        ts.push_back(prev_t);
    }
    for (double t = t_lo + scan; t <= t_hi + 1e-12; t += scan) {
        const double tc = std::min(t, t_hi);
        const bool cur_ok = ok(tc);
        if (cur_ok != prev_ok) {
            double lo = prev_t, hi = tc;
            for (int i = 0; i < 60; ++i) {
                const double mid = 0.5 * (lo + hi);
                if (ok(mid) == prev_ok) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            ts.push_back(cur_ok ? hi : lo); // the feasible side of the boundary
        }
        prev_t = tc;
        prev_ok = cur_ok;
        if (tc >= t_hi) {
            break;
        }
    }
    if (prev_ok) {
        ts.push_back(t_hi);
    }
    // regular lattice at `step` inside the feasible region
    for (double t = std::ceil(t_lo / step) * step; t <= t_hi + 1e-12; t += step) {
        const double tc = std::min(t, t_hi);
        if (ok(tc)) {
            ts.push_back(tc);
        }
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end(),
                         [](double x, double y) { return std::abs(x - y) < 1e-12; }),
             ts.end());
    return ts;
}

struct Incumbent {
    bool valid = false;
    Position pos;
    double objective = 0.0;

    void offer(const Position &p, double obj) {
        if (!valid || obj > objective || (obj == objective && lex_less(p, pos))) {
            valid = true;
            pos = p;
            objective = obj;
        }
    }
};

} // namespace

DeploymentSolution place_single_irs(const Environment &env, const TransmitBudget &budget,
                                    const ArrayNode &bs, const Position &user,
                                    const PanelTemplate &proto, const SearchGrid &grid) {
    auto objective = [&](const Position &pos) {
        return linkeval::single_reflection_auto(env, budget, bs, user, instantiate(proto, pos))
            .snr;
    };

    DeploymentSolution sol;
    Incumbent best;
    double step = grid.resolution;
    if (!(step > 0.0)) {
        throw std::invalid_argument("place_single_irs: resolution must be positive");
    }

    if (grid.domain == SearchGrid::Domain::segment) {
        const double len = distance(grid.seg_a, grid.seg_b);
        const Vec3 dir = unit_direction(grid.seg_a, grid.seg_b);
        double t_lo = 0.0, t_hi = len;
        for (int level = 0;; ++level) {
            const auto ts =
                segment_candidates(grid.seg_a, grid.seg_b, bs.position, user, t_lo, t_hi, step);
            for (double t : ts) {
                const Position p = grid.seg_a + dir * t;
                const double obj = objective(p);
                sol.trace.emplace_back(p, obj);
                best.offer(p, obj);
            }
            if (level >= grid.refinement_levels) {
                break;
            }
            if (!best.valid) {
                break;
            }
            const double t_best = dot(best.pos - grid.seg_a, dir);
            t_lo = t_best - step;
            t_hi = t_best + step;
            step *= 0.5;
        }
    } else {
        double x0 = grid.rect_x0, x1 = grid.rect_x1, y0 = grid.rect_y0, y1 = grid.rect_y1;
        for (int level = 0;; ++level) {
            const auto axis_points = [&](double lo, double hi) {
                std::vector<double> v;
                for (double t = lo; t <= hi + 1e-12; t += step) {
                    v.push_back(std::min(t, hi));
                }
                if (v.empty() || v.back() < hi - 1e-12) {
                    v.push_back(hi);
                }
                return v;
            };
            for (double y : axis_points(y0, y1)) {
                for (double x : axis_points(x0, x1)) {
                    const Position p{x, y, grid.rect_z};
                    if (!feasible_standoff(p, bs.position, user)) {
                        continue;
                    }
                    const double obj = objective(p);
                    sol.trace.emplace_back(p, obj);
                    best.offer(p, obj);
                }
            }
            if (level >= grid.refinement_levels || !best.valid) {
                break;
            }
            x0 = std::max(grid.rect_x0, best.pos.x - step);
            x1 = std::min(grid.rect_x1, best.pos.x + step);
            y0 = std::max(grid.rect_y0, best.pos.y - step);
            y1 = std::min(grid.rect_y1, best.pos.y + step);
            step *= 0.5;
        }
    }
    if (!best.valid) {
        throw std::invalid_argument("place_single_irs: empty candidate set");
    }
    sol.positions = {best.pos};
    sol.element_split = {proto.geometry.element_count};
    sol.objective = best.objective;
    sol.final_step = step;
    return sol;
}

HybridPlacement place_hybrid_irs(const Environment &env, const TransmitBudget &budget,
                                 const ArrayNode &bs, const Position &user,
                                 const PanelTemplate &proto,
                                 const std::vector<std::size_t> &n_active_values,
                                 const SearchGrid &grid) {
    HybridPlacement out;
    for (std::size_t n_active : n_active_values) {
        if (n_active > proto.geometry.element_count) {
            throw std::invalid_argument("place_hybrid_irs: split exceeds element count");
        }
        PanelTemplate t = proto;
        if (n_active == 0) {
            t.kind = irs::PanelKind::passive;
            t.n_active = 0;
        } else if (n_active == proto.geometry.element_count) {
            t.kind = irs::PanelKind::active;
        } else {
            t.kind = irs::PanelKind::hybrid;
            t.n_active = n_active;
        }
        out.per_split.emplace_back(n_active, place_single_irs(env, budget, bs, user, t, grid));
    }
    double tol = grid.resolution;
    for (int i = 0; i < grid.refinement_levels; ++i) {
        tol *= 0.5;
    }
    out.coincidence_tolerance = tol;
    out.positions_coincide = true;
    for (std::size_t i = 1; i < out.per_split.size(); ++i) {
        const double d = distance(out.per_split[i].second.positions[0],
                                  out.per_split[0].second.positions[0]);
        if (d > tol * (1.0 + 1e-9)) {
            out.positions_coincide = false;
        }
    }
    return out;
}

ElementAllocation allocate_elements(std::size_t total_n,
                                    const std::function<double(std::size_t, std::size_t)> &snr_of) {
    if (total_n < 2) {
        throw std::invalid_argument("allocate_elements: need at least 2 elements");
    }
    ElementAllocation out;
    bool first = true;
    for (std::size_t n1 = 1; n1 + 1 <= total_n; ++n1) {
        const std::size_t n2 = total_n - n1;
        const double obj = snr_of(n1, n2);
        out.trace.emplace_back(n1, n2, obj);
        // scanning n1 ascending means n2 descending, so strict > keeps the
        // largest-n2 optimum on exact ties
        if (first || obj > out.objective) {
            first = false;
            out.n1 = n1;
            out.n2 = n2;
            out.objective = obj;
        }
    }
    return out;
}

ArchitectureComparison compare_architectures(const Environment &env, const TransmitBudget &budget,
                                             const ArrayNode &bs,
                                             const std::vector<ArrayNode> &users,
                                             const Position &centralized_pos,
                                             const std::vector<Position> &distributed_pos,
                                             const propagation::ArrayGeometry &geometry_proto,
                                             const std::vector<std::size_t> &n_values) {
    const std::size_t k = users.size();
    if (k == 0 || distributed_pos.size() != k) {
        throw std::invalid_argument("compare_architectures: need one distributed position per user");
    }
    ArchitectureComparison out;
    for (std::size_t n : n_values) {
        if (n % k != 0) {
            throw std::invalid_argument("compare_architectures: N must be divisible by K");
        }
        const IrsPanel central =
            irs::make_passive_panel(centralized_pos, resize_geometry(geometry_proto, n));
        const auto cent = linkeval::multiuser_centralized_rate(env, budget, bs, users, central);

        std::vector<IrsPanel> dist_panels;
        dist_panels.reserve(k);
        for (std::size_t j = 0; j < k; ++j) {
            dist_panels.push_back(
                irs::make_passive_panel(distributed_pos[j], resize_geometry(geometry_proto, n / k)));
        }
        const auto dist = linkeval::multiuser_distributed_rate(env, budget, bs, users, dist_panels);

        out.rows.push_back({n, cent.sum_rate, dist.sum_rate});
        if (!out.crossover_n && dist.sum_rate >= cent.sum_rate) {
            out.crossover_n = n;
        }
    }
    return out;
}

DmimoResult dmimo_associate(const Environment &env, const TransmitBudget &budget,
                            const std::vector<ArrayNode> &bs_list, const IrsPanel &panel,
                            const AreaSpec &area) {
    const std::size_t b = bs_list.size();
    if (b == 0) {
        throw std::invalid_argument("dmimo_associate: empty BS list");
    }
    if (area.nx == 0 || area.ny == 0) {
        throw std::invalid_argument("dmimo_associate: empty area grid");
    }
    const Vec3 axis = panel.geometry.orientation * (1.0 / panel.geometry.orientation.norm());
    auto u_of = [&](const Position &p) { return dot(unit_direction(panel.position, p), axis); };

    // BSs ordered by their angle as seen from the panel
    std::vector<std::size_t> bs_order(b);
    for (std::size_t i = 0; i < b; ++i) {
        bs_order[i] = i;
    }
    std::sort(bs_order.begin(), bs_order.end(), [&](std::size_t i, std::size_t j) {
        const double ui = u_of(bs_list[i].position);
        const double uj = u_of(bs_list[j].position);
        return ui != uj ? ui < uj : i < j;
    });

    // pass 1: contiguous angular strips of the area, one per BS
    double u_min = 0.0, u_max = 0.0;
    bool first = true;
    arma::mat u_grid(area.nx, area.ny);
    for (std::size_t iy = 0; iy < area.ny; ++iy) {
        for (std::size_t ix = 0; ix < area.nx; ++ix) {
            const double u = u_of(area.grid_point(ix, iy));
            u_grid(ix, iy) = u;
            if (first || u < u_min) {
                u_min = u;
            }
            if (first || u > u_max) {
                u_max = u;
            }
            first = false;
        }
    }
    const double width = (u_max - u_min) / static_cast<double>(b);
    arma::umat strip(area.nx, area.ny);
    for (std::size_t iy = 0; iy < area.ny; ++iy) {
        for (std::size_t ix = 0; ix < area.nx; ++ix) {
            std::size_t s = 0;
            if (width > 0.0) {
                s = std::min<std::size_t>(
                    b - 1, static_cast<std::size_t>((u_grid(ix, iy) - u_min) / width));
            }
            strip(ix, iy) = s;
        }
    }

    // strip centroids, re-aim the panel per BS
    DmimoResult out;
    out.centroids.assign(b, area.centroid());
    std::vector<double> cx(b, 0.0), cy(b, 0.0);
    std::vector<std::size_t> count(b, 0);
    for (std::size_t iy = 0; iy < area.ny; ++iy) {
        for (std::size_t ix = 0; ix < area.nx; ++ix) {
            const Position q = area.grid_point(ix, iy);
            cx[strip(ix, iy)] += q.x;
            cy[strip(ix, iy)] += q.y;
            ++count[strip(ix, iy)];
        }
    }
    std::vector<IrsPanel> aimed;
    aimed.reserve(b);
    for (std::size_t s = 0; s < b; ++s) {
        if (count[s] > 0) {
            out.centroids[s] = {cx[s] / static_cast<double>(count[s]),
                                cy[s] / static_cast<double>(count[s]), area.z};
        }
        const ArrayNode &owner = bs_list[bs_order[s]];
        aimed.push_back(
            irs::with_config(panel, linkeval::point_config(env, owner, panel, out.centroids[s])));
    }

    // pass 2: re-assign each point to the BS/config pair serving it best
    out.assignment.set_size(area.nx, area.ny);
    bool first_pt = true;
    for (std::size_t iy = 0; iy < area.ny; ++iy) {
        for (std::size_t ix = 0; ix < area.nx; ++ix) {
            const Position q = area.grid_point(ix, iy);
            double best_p = -1.0;
            std::size_t best_s = 0;
            for (std::size_t s = 0; s < b; ++s) {
                const double p =
                    linkeval::received_power_at(env, budget, bs_list[bs_order[s]], aimed[s], q);
                if (p > best_p) {
                    best_p = p;
                    best_s = s;
                }
            }
            out.assignment(ix, iy) = bs_order[best_s];
            if (first_pt || best_p < out.min_power_w) {
                first_pt = false;
                out.min_power_w = best_p;
                out.argmin = q;
            }
        }
    }
    return out;
}

HybridOrderResult order_hybrid_double(const Environment &env, const TransmitBudget &budget,
                                      const ArrayNode &bs, const Position &user,
                                      const irs::ActiveConfig &active,
                                      const propagation::ArrayGeometry &geometry_proto,
                                      const std::vector<std::size_t> &n_values,
                                      std::size_t position_count, std::size_t split_count) {
    if (position_count < 2 || split_count < 1) {
        throw std::invalid_argument("order_hybrid_double: degenerate search grids");
    }
    const double len = distance(bs.position, user);
    const Vec3 dir = unit_direction(bs.position, user);
    std::vector<Position> slots;
    slots.reserve(position_count);
    const double t0 = kMinStandoff;
    const double t1 = len - kMinStandoff;
    for (std::size_t i = 0; i < position_count; ++i) {
        const double t =
            t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(position_count - 1);
        slots.push_back(bs.position + dir * t);
    }

    HybridOrderResult out;
    for (std::size_t n : n_values) {
        std::vector<std::size_t> splits;
        for (std::size_t i = 1; i <= split_count; ++i) {
            const std::size_t n1 =
                std::max<std::size_t>(1, i * n / (split_count + 1));
            if (n1 < n && (splits.empty() || splits.back() != n1)) {
                splits.push_back(n1);
            }
        }
        auto best_rate = [&](bool active_first) {
            double best = 0.0;
            for (std::size_t n1 : splits) {
                const std::size_t n2 = n - n1;
                for (std::size_t i = 0; i < slots.size(); ++i) {
                    for (std::size_t j = i + 1; j < slots.size(); ++j) {
                        IrsPanel p1 =
                            active_first
                                ? irs::make_active_panel(slots[i], resize_geometry(geometry_proto, n1),
                                                         active)
                                : irs::make_passive_panel(slots[i],
                                                          resize_geometry(geometry_proto, n1));
                        IrsPanel p2 =
                            active_first
                                ? irs::make_passive_panel(slots[j],
                                                          resize_geometry(geometry_proto, n2))
                                : irs::make_active_panel(slots[j], resize_geometry(geometry_proto, n2),
                                                         active);
                        const double rate =
                            linkeval::double_reflection_auto(env, budget, bs, user, p1, p2).rate;
                        best = std::max(best, rate);
                    }
                }
            }
            return best;
        };
        HybridOrderRow row;
        row.n = n;
        row.bapu_rate = best_rate(true);
        row.bpau_rate = best_rate(false);
        out.rows.push_back(row);
        if (!out.crossover_n && row.bpau_rate >= row.bapu_rate) {
            out.crossover_n = n;
        }
    }
    return out;
}

} // namespace irstk::deploy
