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

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "irstk/experiments.hpp"

namespace {

struct CommonOptions {
    std::string scenario_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_given = false;
    unsigned jobs = 1;
    bool report = false;
    bool dump_scenario = false;
};

int run(const std::string &experiment, const CommonOptions &opt) {
    irstk::cli::Scenario scenario;
    if (!opt.scenario_path.empty()) {
        scenario = irstk::cli::parse_scenario(opt.scenario_path);
    } else {
        if (!opt.seed_given) {
            std::cerr << "error: no --scenario given, so --seed is required\n";
            return 2;
        }
        scenario = irstk::cli::default_scenario(opt.seed);
    }
    if (opt.seed_given) {
        scenario.seed = opt.seed;
    }

    std::filesystem::create_directories(opt.out_dir);
    if (opt.dump_scenario) {
        const auto path = std::filesystem::path(opt.out_dir) / (experiment + "_scenario.json");
        std::ofstream out(path);
        out << irstk::cli::normalized_dump(scenario);
        std::cout << "wrote " << path.string() << "\n";
    }

    const auto tables = irstk::cli::run_experiment(experiment, scenario, opt.jobs);
    for (const auto &table : tables) {
        const auto path = std::filesystem::path(opt.out_dir) / (table.name + ".csv");
        irstk::cli::emit_delimited_file(table, path.string());
        std::cout << "wrote " << path.string() << "\n";
    }
    if (opt.report) {
        irstk::cli::emit_report(tables, std::cout);
    }
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"irs-toolkit: IRS-aided link simulation and deployment optimization"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::string experiment;
    for (const auto &name : irstk::cli::experiment_names()) {
        auto *sub = app.add_subcommand(name, "run the '" + name + "' experiment");
        sub->add_option("--scenario", opt.scenario_path, "scenario file (JSON)")
            ->check(CLI::ExistingFile);
        sub->add_option("--out", opt.out_dir, "output directory (default: .)");
        auto *seed_opt = sub->add_option("--seed", opt.seed, "seed override");
        sub->add_option("--jobs", opt.jobs, "worker threads for sweeps");
        sub->add_flag("--report", opt.report, "print a human-readable summary");
        sub->add_flag("--dump-scenario", opt.dump_scenario,
                      "write the normalized scenario next to the results");
        sub->callback([&, name, seed_opt] {
            experiment = name;
            opt.seed_given = seed_opt->count() > 0;
        });
    }

    CLI11_PARSE(app, argc, argv);
    try {
        return run(experiment, opt);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
