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

#include <catch2/catch_amalgamated.hpp>

#include "irstk/irs_panel.hpp"
#include "irstk/rng.hpp"

using namespace irstk;
using namespace irstk::irs;

namespace {

arma::cx_vec random_channel(Rng &rng, std::size_t n) {
    arma::cx_vec h(n);
    for (std::size_t i = 0; i < n; ++i) {
        h(i) = rng.complex_gaussian(1.0);
    }
    return h;
}

std::complex<double> coherent_sum(const arma::cx_vec &h_in, const arma::cx_vec &h_out,
                                  const arma::vec &phases) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < h_in.n_elem; ++i) {
        acc += h_out(i) * std::polar(1.0, phases(i)) * h_in(i);
    }
    return acc;
}

} // namespace

TEST_CASE("co_phase_align basics") {
    SECTION("unit channels need no phase") {
        const auto cfg = co_phase_align(arma::cx_vec{{1.0, 0.0}}, arma::cx_vec{{1.0, 0.0}});
        CHECK(cfg.phases(0) == Catch::Approx(0.0).margin(1e-15));
        CHECK(std::abs(coherent_sum({{1.0, 0.0}}, {{1.0, 0.0}}, cfg.phases)) ==
              Catch::Approx(1.0));
    }
    SECTION("[1, j] vs [1, 1]") {
        const arma::cx_vec h_in{{1.0, 0.0}, {0.0, 1.0}};
        const arma::cx_vec h_out{{1.0, 0.0}, {1.0, 0.0}};
        const auto cfg = co_phase_align(h_in, h_out);
        CHECK(cfg.phases(0) == Catch::Approx(0.0).margin(1e-15));
        CHECK(cfg.phases(1) == Catch::Approx(3.0 * M_PI / 2.0)); // -pi/2 mod 2*pi
        CHECK(std::abs(coherent_sum(h_in, h_out, cfg.phases)) == Catch::Approx(2.0));
    }
    SECTION("length mismatch rejected") {
        CHECK_THROWS_AS(co_phase_align(arma::cx_vec(3), arma::cx_vec(4)), std::invalid_argument);
        CHECK_THROWS_AS(co_phase_align(arma::cx_vec(), arma::cx_vec()), std::invalid_argument);
    }
    SECTION("amplitudes untouched (all ones)") {
        Rng rng(5);
        const auto cfg = co_phase_align(random_channel(rng, 16), random_channel(rng, 16));
        CHECK(arma::all(cfg.amplitudes == 1.0));
    }
}

TEST_CASE("co_phase_align attains the triangle-inequality bound") {
    Rng rng(17);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t n = 6;
        const auto h_in = random_channel(rng, n);
        const auto h_out = random_channel(rng, n);
        const auto cfg = co_phase_align(h_in, h_out);
        double bound = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            bound += std::abs(h_in(i)) * std::abs(h_out(i));
        }
        CHECK(std::abs(coherent_sum(h_in, h_out, cfg.phases)) ==
              Catch::Approx(bound).epsilon(1e-9));
    }
}

TEST_CASE("co_phase_align optimality against a phase grid") {
    // 2 elements: sweep one relative phase over a 4096-step grid
    Rng rng(23);
    const auto h_in = random_channel(rng, 2);
    const auto h_out = random_channel(rng, 2);
    const auto cfg = co_phase_align(h_in, h_out);
    const double closed = std::abs(coherent_sum(h_in, h_out, cfg.phases));
    for (int k = 0; k < 4096; ++k) {
        arma::vec phases{0.0, 2.0 * M_PI * k / 4096.0};
        CHECK(std::abs(coherent_sum(h_in, h_out, phases)) <= closed * (1.0 + 1e-12));
    }
}

TEST_CASE("co_phase_align optimality against random configurations") {
    Rng rng(29);
    for (std::size_t n : {3ul, 8ul}) {
        const auto h_in = random_channel(rng, n);
        const auto h_out = random_channel(rng, n);
        const double closed =
            std::abs(coherent_sum(h_in, h_out, co_phase_align(h_in, h_out).phases));
        bool beaten = false;
        for (int rep = 0; rep < 100000 && !beaten; ++rep) {
            arma::vec phases(n);
            for (std::size_t i = 0; i < n; ++i) {
                phases(i) = 2.0 * M_PI * rng.uniform();
            }
            beaten = std::abs(coherent_sum(h_in, h_out, phases)) > closed * (1.0 + 1e-12);
        }
        CHECK_FALSE(beaten);
    }
}

TEST_CASE("amplification factor formulas") {
    const auto geometry = propagation::linear_array(1, 0.0);
    SECTION("unit ratio") {
        const auto p = make_active_panel({0, 0, 1}, geometry, {1.0, PowerConstraint::total, 0.5});
        CHECK(amplification_factor(p, 0.5).amplitude == Catch::Approx(1.0));
    }
    SECTION("factor two") {
        const auto p = make_active_panel({0, 0, 1}, geometry, {4.0, PowerConstraint::total, 0.5});
        CHECK(amplification_factor(p, 0.5).amplitude == Catch::Approx(2.0));
    }
    SECTION("total constraint, N=16") {
        const auto p = make_active_panel({0, 0, 1}, propagation::linear_array(16, 0.05),
                                         {1e-3, PowerConstraint::total, 1e-10});
        // direct evaluation of sqrt(P / (N (p_in + sigma_v^2)))
        const double expected = std::sqrt(1e-3 / (16.0 * (1e-6 + 1e-10)));
        CHECK(amplification_factor(p, 1e-6).amplitude == Catch::Approx(expected).epsilon(1e-12));
        CHECK(expected == Catch::Approx(7.906).epsilon(1e-3));
    }
    SECTION("per-element constraint") {
        const auto p = make_active_panel({0, 0, 1}, propagation::linear_array(16, 0.05),
                                         {1e-3, PowerConstraint::per_element, 1e-10});
        CHECK(amplification_factor(p, 1e-6).amplitude ==
              Catch::Approx(std::sqrt(1e-3 / (1e-6 + 1e-10))).epsilon(1e-12));
    }
    SECTION("zero budget flags and zeroes") {
        const auto p = make_active_panel({0, 0, 1}, geometry, {0.0, PowerConstraint::total, 0.5});
        const auto r = amplification_factor(p, 1.0);
        CHECK(r.amplitude == 0.0);
        CHECK(r.zero_budget);
    }
    SECTION("passive panel rejected") {
        const auto p = make_passive_panel({0, 0, 1}, geometry);
        CHECK_THROWS_AS(amplification_factor(p, 1.0), std::invalid_argument);
    }
}

TEST_CASE("verify_power") {
    const auto geometry = propagation::linear_array(8, 0.05);
    const ActiveConfig budget{1e-3, PowerConstraint::total, 1e-10};
    auto panel = make_active_panel({0, 0, 1}, geometry, budget);

    SECTION("passive panel always satisfied") {
        const auto p = make_passive_panel({0, 0, 1}, geometry);
        CHECK(verify_power(p, 123.0).ok);
    }
    SECTION("amplification_factor yields equality within 1e-9") {
        const double p_in = 3e-7;
        const double a = amplification_factor(panel, p_in).amplitude;
        ReflectionConfig cfg;
        cfg.phases = arma::zeros<arma::vec>(8);
        cfg.amplitudes = arma::vec(8, arma::fill::value(a));
        const auto tuned = with_config(panel, cfg);
        const auto rep = verify_power(tuned, p_in);
        CHECK(rep.ok);
        CHECK(rep.total_output_w == Catch::Approx(budget.power_budget_w).epsilon(1e-9));
    }
    SECTION("doubling amplitudes reports a factor-4 excess") {
        const double p_in = 3e-7;
        const double a = amplification_factor(panel, p_in).amplitude;
        ReflectionConfig cfg;
        cfg.phases = arma::zeros<arma::vec>(8);
        cfg.amplitudes = arma::vec(8, arma::fill::value(2.0 * a));
        const auto rep = verify_power(with_config(panel, cfg), p_in);
        CHECK_FALSE(rep.ok);
        CHECK(rep.excess_factor == Catch::Approx(4.0).epsilon(1e-9));
    }
}

TEST_CASE("amplification always meets the budget with equality") {
    Rng rng(43);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 63);
        const auto constraint =
            rep % 2 == 0 ? PowerConstraint::total : PowerConstraint::per_element;
        const ActiveConfig budget{std::pow(10.0, -6.0 + 5.0 * rng.uniform()), constraint,
                                  std::pow(10.0, -12.0 + 4.0 * rng.uniform())};
        const auto panel = make_active_panel({0, 0, 1}, propagation::linear_array(n, 0.05),
                                             budget);
        const double p_in = std::pow(10.0, -10.0 + 6.0 * rng.uniform());
        const double a = amplification_factor(panel, p_in).amplitude;
        ReflectionConfig cfg;
        cfg.phases = arma::zeros<arma::vec>(n);
        cfg.amplitudes = arma::vec(n, arma::fill::value(a));
        const auto rep_power = verify_power(with_config(panel, cfg), p_in);
        CHECK(rep_power.ok);
        const double actual = constraint == PowerConstraint::total
                                  ? rep_power.total_output_w
                                  : rep_power.max_element_output_w;
        CHECK(actual == Catch::Approx(budget.power_budget_w).epsilon(1e-9));
    }
}

TEST_CASE("quantize_phases") {
    SECTION("already on the 1-bit grid") {
        ReflectionConfig cfg;
        cfg.phases = {0.0, M_PI};
        cfg.amplitudes = {1.0, 1.0};
        const auto q = quantize_phases(cfg, 1);
        CHECK(q.phases(0) == 0.0);
        CHECK(q.phases(1) == Catch::Approx(M_PI));
    }
    SECTION("pi/3 at 2 bits snaps to pi/2") {
        ReflectionConfig cfg;
        cfg.phases = {M_PI / 3.0};
        cfg.amplitudes = {1.0};
        CHECK(quantize_phases(cfg, 2).phases(0) == Catch::Approx(M_PI / 2.0));
    }
    SECTION("exact ties go to the lower level") {
        ReflectionConfig cfg;
        cfg.phases = {M_PI / 2.0}; // halfway between 0 and pi at 1 bit
        cfg.amplitudes = {1.0};
        CHECK(quantize_phases(cfg, 1).phases(0) == 0.0);
    }
    SECTION("20-bit grid moves phases at most pi/2^20") {
        Rng rng(31);
        ReflectionConfig cfg;
        cfg.phases.set_size(64);
        cfg.amplitudes = arma::ones<arma::vec>(64);
        for (std::size_t i = 0; i < 64; ++i) {
            cfg.phases(i) = 2.0 * M_PI * rng.uniform();
        }
        const auto q = quantize_phases(cfg, 20);
        for (std::size_t i = 0; i < 64; ++i) {
            double delta = std::abs(q.phases(i) - cfg.phases(i));
            delta = std::min(delta, 2.0 * M_PI - delta);
            CHECK(delta <= M_PI / std::pow(2.0, 20) * (1.0 + 1e-9));
        }
        CHECK(arma::all(q.amplitudes == cfg.amplitudes));
    }
    SECTION("bits must be positive") {
        ReflectionConfig cfg;
        cfg.phases = {0.1};
        cfg.amplitudes = {1.0};
        CHECK_THROWS_AS(quantize_phases(cfg, 0), std::invalid_argument);
        CHECK_THROWS_AS(quantize_phases(cfg, -3), std::invalid_argument);
    }
}

TEST_CASE("quantized co-phasing keeps cos^2(pi/2^b) of the power") {
    Rng rng(37);
    for (int b = 1; b <= 4; ++b) {
        for (int rep = 0; rep < 25; ++rep) {
            const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 63);
            const auto h_in = random_channel(rng, n);
            const auto h_out = random_channel(rng, n);
            const auto cfg = co_phase_align(h_in, h_out);
            const auto q = quantize_phases(cfg, b);
            const double full = std::norm(coherent_sum(h_in, h_out, cfg.phases));
            const double quantized = std::norm(coherent_sum(h_in, h_out, q.phases));
            const double floor = std::cos(M_PI / std::pow(2.0, b));
            CHECK(quantized >= full * floor * floor * (1.0 - 1e-12));
        }
    }
}

TEST_CASE("split_hybrid bookkeeping") {
    const auto geometry = propagation::linear_array(10, 0.05);
    const ActiveConfig budget{2e-3, PowerConstraint::total, 1e-10};
    const auto panel = make_hybrid_panel({1, 2, 3}, geometry, 4, budget);

    SECTION("all-passive split") {
        const auto [active, passive] = split_hybrid(panel, 0);
        CHECK_FALSE(active.has_value());
        REQUIRE(passive.has_value());
        CHECK(passive->element_count() == 10);
        CHECK(passive->kind == PanelKind::passive);
    }
    SECTION("all-active split") {
        const auto [active, passive] = split_hybrid(panel, 10);
        REQUIRE(active.has_value());
        CHECK_FALSE(passive.has_value());
        CHECK(active->element_count() == 10);
        CHECK(active->active.power_budget_w == budget.power_budget_w);
    }
    SECTION("mixed split is co-located and budget-inheriting") {
        const auto [active, passive] = split_hybrid(panel, 4);
        REQUIRE(active.has_value());
        REQUIRE(passive.has_value());
        CHECK(active->element_count() == 4);
        CHECK(passive->element_count() == 6);
        CHECK(distance(active->position, panel.position) == 0.0);
        CHECK(distance(passive->position, panel.position) == 0.0);
        CHECK(active->active.power_budget_w == budget.power_budget_w);
    }
    SECTION("out-of-range split rejected") {
        CHECK_THROWS_AS(split_hybrid(panel, 11), std::invalid_argument);
    }
}

TEST_CASE("with_config guards the passive amplitude invariant") {
    const auto geometry = propagation::linear_array(4, 0.05);
    const auto passive = make_passive_panel({0, 0, 1}, geometry);
    ReflectionConfig cfg;
    cfg.phases = arma::zeros<arma::vec>(4);
    cfg.amplitudes = {1.0, 1.0, 2.0, 1.0};
    CHECK_THROWS_AS(with_config(passive, cfg), std::invalid_argument);

    const auto hybrid =
        make_hybrid_panel({0, 0, 1}, geometry, 2, {1e-3, PowerConstraint::total, 0.0});
    ReflectionConfig cfg2;
    cfg2.phases = arma::zeros<arma::vec>(4);
    cfg2.amplitudes = {3.0, 3.0, 1.0, 1.0}; // amplifying elements first
    CHECK_NOTHROW(with_config(hybrid, cfg2));
    cfg2.amplitudes = {3.0, 3.0, 1.0, 1.5};
    CHECK_THROWS_AS(with_config(hybrid, cfg2), std::invalid_argument);
}
