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

#include "irstk/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "irstk/result_table.hpp"

namespace irstk::cli {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string &path, const std::string &msg) {
    throw std::invalid_argument("scenario: " + path + ": " + msg);
}

// Object wrapper tracking which keys were consumed so leftovers can be
// rejected by name.
class ObjReader {
  public:
    ObjReader(const json &j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            fail(path_, "expected an object");
        }
    }

    const std::string &path() const { return path_; }

    bool has(const char *key) {
        seen_.insert(key);
        return j_.contains(key);
    }

    const json *child(const char *key) {
        seen_.insert(key);
        if (!j_.contains(key)) {
            return nullptr;
        }
        return &j_.at(key);
    }

    double number(const char *key, double dflt) {
        const json *c = child(key);
        if (c == nullptr || c->is_null()) {
            return dflt;
        }
        if (!c->is_number()) {
            fail(path_ + "." + key, "expected a number");
        }
        return c->get<double>();
    }

    std::uint64_t uinteger(const char *key, std::uint64_t dflt) {
        const json *c = child(key);
        if (c == nullptr || c->is_null()) {
            return dflt;
        }
        if (!c->is_number_unsigned() && !(c->is_number_integer() && c->get<std::int64_t>() >= 0)) {
            fail(path_ + "." + key, "expected a nonnegative integer");
        }
        return c->get<std::uint64_t>();
    }

    std::string str(const char *key, const std::string &dflt) {
        const json *c = child(key);
        if (c == nullptr || c->is_null()) {
            return dflt;
        }
        if (!c->is_string()) {
            fail(path_ + "." + key, "expected a string");
        }
        return c->get<std::string>();
    }

    Vec3 vec3(const char *key, const Vec3 &dflt) {
        const json *c = child(key);
        if (c == nullptr || c->is_null()) {
            return dflt;
        }
        if (!c->is_array() || c->size() != 3 || !(*c)[0].is_number() || !(*c)[1].is_number() ||
            !(*c)[2].is_number()) {
            fail(path_ + "." + key, "expected [x, y, z]");
        }
        return {(*c)[0].get<double>(), (*c)[1].get<double>(), (*c)[2].get<double>()};
    }

    std::vector<double> num_list(const char *key, const std::vector<double> &dflt) {
        const json *c = child(key);
        if (c == nullptr || c->is_null()) {
            return dflt;
        }
        if (!c->is_array()) {
            fail(path_ + "." + key, "expected an array of numbers");
        }
        std::vector<double> out;
        for (const auto &e : *c) {
            if (!e.is_number()) {
                fail(path_ + "." + key, "expected an array of numbers");
            }
            out.push_back(e.get<double>());
        }
        return out;
    }

    std::vector<std::size_t> uint_list(const char *key, const std::vector<std::size_t> &dflt) {
        const json *c = child(key);
        if (c == nullptr || c->is_null()) {
            return dflt;
        }
        if (!c->is_array()) {
            fail(path_ + "." + key, "expected an array of integers");
        }
        std::vector<std::size_t> out;
        for (const auto &e : *c) {
            if (!e.is_number_integer() || e.get<std::int64_t>() < 0) {
                fail(path_ + "." + key, "expected an array of nonnegative integers");
            }
            out.push_back(e.get<std::size_t>());
        }
        return out;
    }

    std::vector<Position> pos_list(const char *key, const std::vector<Position> &dflt) {
        const json *c = child(key);
        if (c == nullptr || c->is_null()) {
            return dflt;
        }
        if (!c->is_array()) {
            fail(path_ + "." + key, "expected an array of [x, y, z]");
        }
        std::vector<Position> out;
        std::size_t i = 0;
        for (const auto &e : *c) {
            if (!e.is_array() || e.size() != 3) {
                fail(path_ + "." + key + "[" + std::to_string(i) + "]", "expected [x, y, z]");
            }
            out.push_back({e[0].get<double>(), e[1].get<double>(), e[2].get<double>()});
            ++i;
        }
        return out;
    }

    // call last: any key not consumed is unknown
    void done() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (seen_.find(it.key()) == seen_.end()) {
                fail(path_, "unknown key '" + it.key() + "'");
            }
        }
    }

  private:
    const json &j_;
    std::string path_;
    std::set<std::string> seen_;
};

json vec3_json(const Vec3 &v) { return json::array({v.x, v.y, v.z}); }

json pos_list_json(const std::vector<Position> &ps) {
    json a = json::array();
    for (const auto &p : ps) {
        a.push_back(vec3_json(p));
    }
    return a;
}

std::vector<double> default_pt_sweep() {
    std::vector<double> v;
    for (double p = -20.0; p <= 45.0 + 1e-9; p += 5.0) {
        v.push_back(p);
    }
    return v;
}

irs::PanelKind parse_kind(const std::string &s, const std::string &path) {
    if (s == "passive") return irs::PanelKind::passive;
    if (s == "active") return irs::PanelKind::active;
    if (s == "hybrid") return irs::PanelKind::hybrid;
    fail(path, "kind must be passive, active or hybrid");
}

std::string kind_name(irs::PanelKind k) {
    switch (k) {
    case irs::PanelKind::passive: return "passive";
    case irs::PanelKind::active: return "active";
    case irs::PanelKind::hybrid: return "hybrid";
    }
    return "passive";
}

} // namespace

linkeval::Environment Scenario::environment() const {
    linkeval::Environment env;
    env.wavelength = wavelength();
    const double beta0 = db_to_linear(beta0_db);
    env.bs_irs = {beta0, alpha_bs_irs};
    env.irs_user = {beta0, alpha_irs_user};
    env.inter_irs = {beta0, alpha_inter_irs};
    env.direct = {beta0, alpha_direct};
    if (k_factor_db) {
        env.inter_irs_k_factor = db_to_linear(*k_factor_db);
        env.fading_seed = seed;
    }
    return env;
}

linkeval::TransmitBudget Scenario::budget() const {
    return {dbm_to_watts(transmit_power_dbm), dbm_to_watts(noise_power_dbm)};
}

Scenario default_scenario(std::uint64_t seed) {
    Scenario s;
    s.seed = seed;
    s.fig2.pt_dbm = default_pt_sweep();
    s.bs.push_back(BsSpec{});
    s.users.push_back(UserSpec{});
    // generic panel (placement prototype) plus a small reflection network
    // around the default obstacle: two clear corridors at y = +-25, with the
    // southern panel amplifying
    IrsSpec generic;
    s.irs_panels.push_back(generic);
    IrsSpec north1;
    north1.id = "irs_n1";
    north1.position = {30.0, 25.0, 10.0};
    s.irs_panels.push_back(north1);
    IrsSpec north2;
    north2.id = "irs_n2";
    north2.position = {55.0, 25.0, 10.0};
    s.irs_panels.push_back(north2);
    IrsSpec south_active;
    south_active.id = "irs_s1";
    south_active.position = {30.0, -25.0, 10.0};
    south_active.kind = irs::PanelKind::active;
    south_active.amp_power_dbm = 20.0;
    s.irs_panels.push_back(south_active);
    return s;
}

namespace {

BsSpec parse_bs(const json &j, const std::string &path, std::size_t i) {
    ObjReader r(j, path);
    BsSpec dflt;
    BsSpec out;
    out.id = r.str("id", "bs" + std::to_string(i));
    out.position = r.vec3("position", dflt.position);
    out.antennas = static_cast<std::size_t>(r.uinteger("antennas", dflt.antennas));
    out.orientation = r.vec3("orientation", dflt.orientation);
    r.done();
    if (out.antennas < 1) {
        fail(path, "antennas must be >= 1");
    }
    check_position(out.position, path);
    return out;
}

UserSpec parse_user(const json &j, const std::string &path, std::size_t i) {
    ObjReader r(j, path);
    UserSpec dflt;
    UserSpec out;
    out.id = r.str("id", "ue" + std::to_string(i));
    out.position = r.vec3("position", dflt.position);
    out.antennas = static_cast<std::size_t>(r.uinteger("antennas", dflt.antennas));
    out.orientation = r.vec3("orientation", dflt.orientation);
    r.done();
    if (out.antennas < 1) {
        fail(path, "antennas must be >= 1");
    }
    check_position(out.position, path);
    return out;
}

IrsSpec parse_irs(const json &j, const std::string &path, std::size_t i) {
    ObjReader r(j, path);
    IrsSpec dflt;
    IrsSpec out;
    out.id = r.str("id", "irs" + std::to_string(i));
    out.position = r.vec3("position", dflt.position);
    out.elements = static_cast<std::size_t>(r.uinteger("elements", dflt.elements));
    out.spacing_wavelengths = r.number("spacing_wavelengths", dflt.spacing_wavelengths);
    out.orientation = r.vec3("orientation", dflt.orientation);
    if (const json *layout = r.child("layout")) {
        if (layout->is_string()) {
            if (layout->get<std::string>() != "linear") {
                fail(path + ".layout", "expected \"linear\" or {rows, cols}");
            }
        } else {
            ObjReader lr(*layout, path + ".layout");
            out.planar = true;
            out.rows = static_cast<std::size_t>(lr.uinteger("rows", 0));
            out.cols = static_cast<std::size_t>(lr.uinteger("cols", 0));
            lr.done();
            if (out.rows * out.cols != out.elements) {
                fail(path + ".layout", "rows*cols must equal elements");
            }
        }
    }
    out.kind = parse_kind(r.str("kind", kind_name(dflt.kind)), path + ".kind");
    out.amp_power_dbm = r.number("amp_power_dbm", dflt.amp_power_dbm);
    const std::string constraint = r.str("amp_constraint", "total");
    if (constraint == "total") {
        out.amp_constraint = irs::PowerConstraint::total;
    } else if (constraint == "per_element") {
        out.amp_constraint = irs::PowerConstraint::per_element;
    } else {
        fail(path + ".amp_constraint", "expected total or per_element");
    }
    out.amp_noise_dbm = r.number("amp_noise_dbm", dflt.amp_noise_dbm);
    out.n_active = static_cast<std::size_t>(r.uinteger("n_active", dflt.n_active));
    r.done();
    if (out.elements < 1) {
        fail(path, "elements must be >= 1");
    }
    if (!(out.spacing_wavelengths > 0.0)) {
        fail(path, "spacing_wavelengths must be positive");
    }
    if (out.kind == irs::PanelKind::hybrid && out.n_active > out.elements) {
        fail(path, "n_active exceeds elements");
    }
    check_position(out.position, path);
    return out;
}

AreaKnob parse_area(const json &j, const std::string &path) {
    ObjReader r(j, path);
    AreaKnob dflt;
    AreaKnob out;
    out.x0 = r.number("x0", dflt.x0);
    out.x1 = r.number("x1", dflt.x1);
    out.y0 = r.number("y0", dflt.y0);
    out.y1 = r.number("y1", dflt.y1);
    out.z = r.number("z", dflt.z);
    out.nx = static_cast<std::size_t>(r.uinteger("nx", dflt.nx));
    out.ny = static_cast<std::size_t>(r.uinteger("ny", dflt.ny));
    r.done();
    if (out.nx == 0 || out.ny == 0) {
        fail(path, "nx and ny must be >= 1");
    }
    return out;
}

} // namespace

Scenario parse_scenario_text(const std::string &text, const std::string &context) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw std::invalid_argument("scenario: " + context + ": " + e.what());
    }
    ObjReader r(j, context);
    if (!r.has("seed")) {
        fail(context, "missing mandatory key 'seed'");
    }

    Scenario dflt = default_scenario(0);
    Scenario s;
    s.seed = r.uinteger("seed", 0);
    s.carrier_ghz = r.number("carrier_ghz", dflt.carrier_ghz);
    s.transmit_power_dbm = r.number("transmit_power_dbm", dflt.transmit_power_dbm);
    s.noise_power_dbm = r.number("noise_power_dbm", dflt.noise_power_dbm);
    if (!(s.carrier_ghz > 0.0)) {
        fail(context + ".carrier_ghz", "must be positive");
    }

    if (const json *pl = r.child("path_loss")) {
        ObjReader pr(*pl, context + ".path_loss");
        s.beta0_db = pr.number("beta0_db", dflt.beta0_db);
        s.alpha_bs_irs = pr.number("alpha_bs_irs", dflt.alpha_bs_irs);
        s.alpha_irs_user = pr.number("alpha_irs_user", dflt.alpha_irs_user);
        s.alpha_inter_irs = pr.number("alpha_inter_irs", dflt.alpha_inter_irs);
        s.alpha_direct = pr.number("alpha_direct", dflt.alpha_direct);
        pr.done();
        for (double a : {s.alpha_bs_irs, s.alpha_irs_user, s.alpha_inter_irs, s.alpha_direct}) {
            if (a < 2.0) {
                fail(context + ".path_loss", "exponents must be >= 2");
            }
        }
    }

    if (const json *fading = r.child("fading")) {
        ObjReader fr(*fading, context + ".fading");
        if (const json *k = fr.child("k_factor_db")) {
            if (!k->is_null()) {
                if (!k->is_number()) {
                    fail(context + ".fading.k_factor_db", "expected a number or null");
                }
                s.k_factor_db = k->get<double>();
            }
        }
        fr.done();
    }

    if (const json *nodes = r.child("nodes")) {
        ObjReader nr(*nodes, context + ".nodes");
        if (const json *bs = nr.child("bs")) {
            if (!bs->is_array() || bs->empty()) {
                fail(context + ".nodes.bs", "expected a nonempty array");
            }
            for (std::size_t i = 0; i < bs->size(); ++i) {
                s.bs.push_back(
                    parse_bs((*bs)[i], context + ".nodes.bs[" + std::to_string(i) + "]", i));
            }
        }
        if (const json *users = nr.child("users")) {
            if (!users->is_array() || users->empty()) {
                fail(context + ".nodes.users", "expected a nonempty array");
            }
            for (std::size_t i = 0; i < users->size(); ++i) {
                s.users.push_back(
                    parse_user((*users)[i], context + ".nodes.users[" + std::to_string(i) + "]", i));
            }
        }
        if (const json *irs_arr = nr.child("irs")) {
            if (!irs_arr->is_array()) {
                fail(context + ".nodes.irs", "expected an array");
            }
            for (std::size_t i = 0; i < irs_arr->size(); ++i) {
                s.irs_panels.push_back(
                    parse_irs((*irs_arr)[i], context + ".nodes.irs[" + std::to_string(i) + "]", i));
            }
        }
        nr.done();
    }
    if (s.bs.empty()) {
        s.bs = dflt.bs;
    }
    if (s.users.empty()) {
        s.users = dflt.users;
    }
    if (s.irs_panels.empty()) {
        s.irs_panels = dflt.irs_panels;
    }
    {
        std::set<std::string> ids;
        for (const auto &b : s.bs) ids.insert(b.id);
        for (const auto &u : s.users) ids.insert(u.id);
        for (const auto &p : s.irs_panels) ids.insert(p.id);
        if (ids.size() != s.bs.size() + s.users.size() + s.irs_panels.size()) {
            fail(context + ".nodes", "node ids must be unique");
        }
    }

    if (const json *exp = r.child("experiment")) {
        ObjReader er(*exp, context + ".experiment");
        if (const json *f2 = er.child("fig2")) {
            ObjReader fr(*f2, context + ".experiment.fig2");
            s.fig2.n_total = static_cast<std::size_t>(fr.uinteger("n_total", dflt.fig2.n_total));
            s.fig2.mimo_antennas =
                static_cast<std::size_t>(fr.uinteger("mimo_antennas", dflt.fig2.mimo_antennas));
            s.fig2.k_list = fr.uint_list("k_list", dflt.fig2.k_list);
            s.fig2.pt_dbm = fr.num_list("pt_dbm", dflt.fig2.pt_dbm);
            s.fig2.irs_positions = fr.pos_list("irs_positions", dflt.fig2.irs_positions);
            fr.done();
            if (s.fig2.mimo_antennas < 1) {
                fail(context + ".experiment.fig2.mimo_antennas", "must be >= 1");
            }
            for (std::size_t k : s.fig2.k_list) {
                if (k == 0 || k > s.fig2.irs_positions.size()) {
                    fail(context + ".experiment.fig2.k_list",
                         "each K needs an IRS position (1 <= K <= positions)");
                }
                if (s.fig2.n_total % k != 0) {
                    fail(context + ".experiment.fig2.k_list", "n_total must be divisible by K");
                }
            }
        }
        if (const json *f3 = er.child("fig3")) {
            ObjReader fr(*f3, context + ".experiment.fig3");
            s.fig3.n_values = fr.uint_list("n_values", dflt.fig3.n_values);
            s.fig3.user_positions = fr.pos_list("user_positions", dflt.fig3.user_positions);
            s.fig3.centralized_position =
                fr.vec3("centralized_position", dflt.fig3.centralized_position);
            s.fig3.distributed_standoff =
                fr.number("distributed_standoff", dflt.fig3.distributed_standoff);
            s.fig3.panel_z = fr.number("panel_z", dflt.fig3.panel_z);
            fr.done();
            if (s.fig3.user_positions.empty()) {
                fail(context + ".experiment.fig3.user_positions", "must be nonempty");
            }
            for (std::size_t n : s.fig3.n_values) {
                if (n % s.fig3.user_positions.size() != 0) {
                    fail(context + ".experiment.fig3.n_values",
                         "every N must be divisible by the user count");
                }
            }
        }
        if (const json *f4 = er.child("fig4")) {
            ObjReader fr(*f4, context + ".experiment.fig4");
            s.fig4.n_values = fr.uint_list("n_values", dflt.fig4.n_values);
            s.fig4.position_count =
                static_cast<std::size_t>(fr.uinteger("position_count", dflt.fig4.position_count));
            s.fig4.split_count =
                static_cast<std::size_t>(fr.uinteger("split_count", dflt.fig4.split_count));
            s.fig4.pt_dbm = fr.number("pt_dbm", dflt.fig4.pt_dbm);
            s.fig4.amp_power_dbm = fr.number("amp_power_dbm", dflt.fig4.amp_power_dbm);
            s.fig4.amp_noise_dbm = fr.number("amp_noise_dbm", dflt.fig4.amp_noise_dbm);
            fr.done();
        }
        if (const json *pk = er.child("placement")) {
            ObjReader fr(*pk, context + ".experiment.placement");
            s.placement.kind = fr.str("kind", dflt.placement.kind);
            s.placement.resolution = fr.number("resolution", dflt.placement.resolution);
            s.placement.refinement_levels = static_cast<int>(
                fr.uinteger("refinement_levels",
                            static_cast<std::uint64_t>(dflt.placement.refinement_levels)));
            fr.done();
            parse_kind(s.placement.kind, context + ".experiment.placement.kind");
            if (!(s.placement.resolution > 0.0)) {
                fail(context + ".experiment.placement.resolution", "must be positive");
            }
        }
        if (const json *ck = er.child("coverage")) {
            ObjReader fr(*ck, context + ".experiment.coverage");
            s.coverage.n_values = fr.uint_list("n_values", dflt.coverage.n_values);
            s.coverage.b_values = fr.uint_list("b_values", dflt.coverage.b_values);
            s.coverage.fixed_n =
                static_cast<std::size_t>(fr.uinteger("fixed_n", dflt.coverage.fixed_n));
            if (const json *area = fr.child("area")) {
                s.coverage.area = parse_area(*area, context + ".experiment.coverage.area");
            }
            s.coverage.bs_side_position =
                fr.vec3("bs_side_position", dflt.coverage.bs_side_position);
            s.coverage.user_side_position =
                fr.vec3("user_side_position", dflt.coverage.user_side_position);
            s.coverage.dmimo_bs_positions =
                fr.pos_list("dmimo_bs_positions", dflt.coverage.dmimo_bs_positions);
            fr.done();
            for (std::size_t b : s.coverage.b_values) {
                if (b == 0 || b > s.coverage.dmimo_bs_positions.size()) {
                    fail(context + ".experiment.coverage.b_values",
                         "each B needs a BS position (1 <= B <= positions)");
                }
            }
        }
        if (const json *rk = er.child("routing")) {
            ObjReader fr(*rk, context + ".experiment.routing");
            s.routing.max_hops =
                static_cast<std::size_t>(fr.uinteger("max_hops", dflt.routing.max_hops));
            if (const json *obs = fr.child("obstacles")) {
                if (!obs->is_array()) {
                    fail(context + ".experiment.routing.obstacles", "expected an array");
                }
                s.routing.obstacles.clear();
                for (std::size_t i = 0; i < obs->size(); ++i) {
                    const std::string opath =
                        context + ".experiment.routing.obstacles[" + std::to_string(i) + "]";
                    ObjReader orr((*obs)[i], opath);
                    ObstacleKnob o;
                    o.type = orr.str("type", "box");
                    o.x1 = orr.number("x1", 0.0);
                    o.y1 = orr.number("y1", 0.0);
                    o.x2 = orr.number("x2", 0.0);
                    o.y2 = orr.number("y2", 0.0);
                    orr.done();
                    if (o.type != "box" && o.type != "segment") {
                        fail(opath + ".type", "expected box or segment");
                    }
                    s.routing.obstacles.push_back(o);
                }
            }
            fr.done();
            if (s.routing.max_hops < 1) {
                fail(context + ".experiment.routing.max_hops", "must be >= 1");
            }
        }
        if (const json *fk = er.child("fieldtrial")) {
            ObjReader fr(*fk, context + ".experiment.fieldtrial");
            s.fieldtrial.log_file = fr.str("log_file", dflt.fieldtrial.log_file);
            fr.done();
        }
        er.done();
    }
    r.done();

    if (s.fig2.pt_dbm.empty()) {
        s.fig2.pt_dbm = default_pt_sweep();
    }
    return s;
}

Scenario parse_scenario(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("scenario: cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str(), path);
}

std::string normalized_dump(const Scenario &s) {
    json j;
    j["seed"] = s.seed;
    j["carrier_ghz"] = s.carrier_ghz;
    j["transmit_power_dbm"] = s.transmit_power_dbm;
    j["noise_power_dbm"] = s.noise_power_dbm;
    j["path_loss"] = {{"beta0_db", s.beta0_db},
                      {"alpha_bs_irs", s.alpha_bs_irs},
                      {"alpha_irs_user", s.alpha_irs_user},
                      {"alpha_inter_irs", s.alpha_inter_irs},
                      {"alpha_direct", s.alpha_direct}};
    j["fading"] =
        s.k_factor_db ? json{{"k_factor_db", *s.k_factor_db}} : json{{"k_factor_db", nullptr}};

    json bs = json::array();
    for (const auto &b : s.bs) {
        bs.push_back({{"id", b.id},
                      {"position", vec3_json(b.position)},
                      {"antennas", b.antennas},
                      {"orientation", vec3_json(b.orientation)}});
    }
    json users = json::array();
    for (const auto &u : s.users) {
        users.push_back({{"id", u.id},
                         {"position", vec3_json(u.position)},
                         {"antennas", u.antennas},
                         {"orientation", vec3_json(u.orientation)}});
    }
    json irs_arr = json::array();
    for (const auto &p : s.irs_panels) {
        json e = {{"id", p.id},
                  {"position", vec3_json(p.position)},
                  {"elements", p.elements},
                  {"spacing_wavelengths", p.spacing_wavelengths},
                  {"orientation", vec3_json(p.orientation)}};
        if (p.planar) {
            e["layout"] = {{"rows", p.rows}, {"cols", p.cols}};
        } else {
            e["layout"] = "linear";
        }
        e["kind"] = kind_name(p.kind);
        e["amp_power_dbm"] = p.amp_power_dbm;
        e["amp_constraint"] =
            p.amp_constraint == irs::PowerConstraint::total ? "total" : "per_element";
        e["amp_noise_dbm"] = p.amp_noise_dbm;
        e["n_active"] = p.n_active;
        irs_arr.push_back(e);
    }
    j["nodes"] = {{"bs", bs}, {"users", users}, {"irs", irs_arr}};

    json exp;
    exp["fig2"] = {{"n_total", s.fig2.n_total},
                   {"mimo_antennas", s.fig2.mimo_antennas},
                   {"k_list", s.fig2.k_list},
                   {"pt_dbm", s.fig2.pt_dbm},
                   {"irs_positions", pos_list_json(s.fig2.irs_positions)}};
    exp["fig3"] = {{"n_values", s.fig3.n_values},
                   {"user_positions", pos_list_json(s.fig3.user_positions)},
                   {"centralized_position", vec3_json(s.fig3.centralized_position)},
                   {"distributed_standoff", s.fig3.distributed_standoff},
                   {"panel_z", s.fig3.panel_z}};
    exp["fig4"] = {{"n_values", s.fig4.n_values},
                   {"position_count", s.fig4.position_count},
                   {"split_count", s.fig4.split_count},
                   {"pt_dbm", s.fig4.pt_dbm},
                   {"amp_power_dbm", s.fig4.amp_power_dbm},
                   {"amp_noise_dbm", s.fig4.amp_noise_dbm}};
    exp["placement"] = {{"kind", s.placement.kind},
                        {"resolution", s.placement.resolution},
                        {"refinement_levels", s.placement.refinement_levels}};
    exp["coverage"] = {{"n_values", s.coverage.n_values},
                       {"b_values", s.coverage.b_values},
                       {"fixed_n", s.coverage.fixed_n},
                       {"area",
                        {{"x0", s.coverage.area.x0},
                         {"x1", s.coverage.area.x1},
                         {"y0", s.coverage.area.y0},
                         {"y1", s.coverage.area.y1},
                         {"z", s.coverage.area.z},
                         {"nx", s.coverage.area.nx},
                         {"ny", s.coverage.area.ny}}},
                       {"bs_side_position", vec3_json(s.coverage.bs_side_position)},
                       {"user_side_position", vec3_json(s.coverage.user_side_position)},
                       {"dmimo_bs_positions", pos_list_json(s.coverage.dmimo_bs_positions)}};
    json obstacles = json::array();
    for (const auto &o : s.routing.obstacles) {
        obstacles.push_back(
            {{"type", o.type}, {"x1", o.x1}, {"y1", o.y1}, {"x2", o.x2}, {"y2", o.y2}});
    }
    exp["routing"] = {{"max_hops", s.routing.max_hops}, {"obstacles", obstacles}};
    exp["fieldtrial"] = {{"log_file", s.fieldtrial.log_file}};
    j["experiment"] = exp;

    return j.dump(2) + "\n";
}

std::string scenario_hash(const Scenario &scenario) {
    return fnv1a_hex(normalized_dump(scenario));
}

propagation::ArrayNode bs_node(const BsSpec &spec, double wavelength) {
    return {spec.position,
            propagation::linear_array(spec.antennas, spec.antennas > 1 ? wavelength / 2.0 : 0.0,
                                      spec.orientation)};
}

propagation::ArrayNode user_node(const UserSpec &spec, double wavelength) {
    return {spec.position,
            propagation::linear_array(spec.antennas, spec.antennas > 1 ? wavelength / 2.0 : 0.0,
                                      spec.orientation)};
}

propagation::ArrayGeometry irs_geometry(const IrsSpec &spec, double wavelength) {
    const double spacing = spec.spacing_wavelengths * wavelength;
    if (spec.planar) {
        return propagation::planar_array(spec.rows, spec.cols, spacing, spec.orientation);
    }
    return propagation::linear_array(spec.elements, spacing, spec.orientation);
}

namespace {

irs::ActiveConfig active_config_from_spec(const IrsSpec &spec) {
    irs::ActiveConfig a;
    a.power_budget_w = dbm_to_watts(spec.amp_power_dbm);
    a.constraint = spec.amp_constraint;
    a.noise_power_w = dbm_to_watts(spec.amp_noise_dbm);
    return a;
}

} // namespace

irs::IrsPanel irs_panel_from_spec(const IrsSpec &spec, double wavelength) {
    const auto geometry = irs_geometry(spec, wavelength);
    switch (spec.kind) {
    case irs::PanelKind::passive:
        return irs::make_passive_panel(spec.position, geometry);
    case irs::PanelKind::active:
        return irs::make_active_panel(spec.position, geometry, active_config_from_spec(spec));
    case irs::PanelKind::hybrid:
        return irs::make_hybrid_panel(spec.position, geometry, spec.n_active,
                                      active_config_from_spec(spec));
    }
    throw std::logic_error("irs_panel_from_spec: unknown kind");
}

deploy::PanelTemplate irs_template_from_spec(const IrsSpec &spec, double wavelength) {
    deploy::PanelTemplate t;
    t.geometry = irs_geometry(spec, wavelength);
    t.kind = spec.kind;
    t.active = active_config_from_spec(spec);
    t.n_active = spec.kind == irs::PanelKind::active ? spec.elements : spec.n_active;
    return t;
}

} // namespace irstk::cli
