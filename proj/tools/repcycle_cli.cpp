// Copyright 2026 The repcycle Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "repcycle/experiments.hpp"

namespace {

using json = nlohmann::json;

struct Options {
    std::string config;
    std::string seed_list;
    std::string orders;
    std::string output;
    long long shots = 0;
};

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw repcycle::ConfigError("cannot open config file " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw repcycle::ConfigError("config " + path + ": " + e.what());
    }
}

int run(repcycle::Command cmd, const Options& opt) {
    json user = load_config(opt.config);
    if (!user.is_object()) throw repcycle::ConfigError("config: top level must be an object");
    if (!opt.seed_list.empty()) user["seeds"] = repcycle::parse_seed_list(opt.seed_list);
    if (opt.shots > 0) user["shots"] = opt.shots;
    if (!opt.orders.empty()) user["orders"] = repcycle::parse_int_list(opt.orders);
    if (!opt.output.empty()) user["output"] = opt.output;

    const json resolved = repcycle::resolve_config(cmd, user);
    const repcycle::RunOutput out = repcycle::run_command(cmd, resolved);
    const std::string csv = out.table.to_csv();

    if (resolved["output"].is_null()) {
        std::cout << csv;
    } else {
        const auto path = resolved["output"].get<std::string>();
        std::ofstream f(path, std::ios::binary);
        if (!f) throw repcycle::ConfigError("cannot write " + path);
        f << csv;
        std::ofstream s(path + ".json", std::ios::binary);
        s << repcycle::sidecar(cmd, resolved, out).dump(2) << '\n';
        std::cerr << "wrote " << out.table.size() << " rows to " << path << " (+ .json)\n";
    }
    if (!out.passed) {
        std::cerr << command_name(cmd) << ": FAILED\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Repeated-cycle diagnostics for open quantum circuits"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(repcycle::kVersion));

    Options opt;
    const struct {
        repcycle::Command cmd;
        const char* help;
    } commands[] = {
        {repcycle::Command::purity, "one-cycle purity change: exact vs -2S2 and -2S2+2S2^2"},
        {repcycle::Command::entanglement, "Renyi-2 entropy growth under the reset protocol"},
        {repcycle::Command::hotspot, "per-qubit dissipative change of sigma_x"},
        {repcycle::Command::inverse, "purity change of the forward+inverse circuit"},
        {repcycle::Command::verify, "identity and invariant checks; nonzero exit on failure"},
        {repcycle::Command::sweep_gamma, "purity loss vs drive weakening factor gamma"},
    };
    std::vector<std::pair<CLI::App*, repcycle::Command>> subs;
    for (const auto& c : commands) {
        auto* sub = app.add_subcommand(std::string(repcycle::command_name(c.cmd)), c.help);
        sub->add_option("--config", opt.config, "JSON config file")->check(CLI::ExistingFile);
        sub->add_option("--seed-list", opt.seed_list, "seeds, e.g. 0-39 or 1,5,9");
        sub->add_option("--shots", opt.shots, "shots per expectation value")->check(CLI::PositiveNumber);
        sub->add_option("--orders", opt.orders, "estimator orders, e.g. 2,3,4");
        sub->add_option("--output", opt.output, "CSV path; a .json sidecar is written next to it");
        subs.emplace_back(sub, c.cmd);
    }

    CLI11_PARSE(app, argc, argv);
    try {
        for (const auto& [sub, cmd] : subs)
            if (sub->parsed()) return run(cmd, opt);
    } catch (const repcycle::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
