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


#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "repcycle/channels.hpp"
#include "repcycle/experiments.hpp"

namespace repcycle {

namespace {

using json = nlohmann::json;

json seed_range(std::uint64_t count) {
    json a = json::array();
    for (std::uint64_t s = 0; s < count; ++s) a.push_back(s);
    return a;
}

json channel(std::string kind, double rate, std::size_t target) {
    return json{{"kind", std::move(kind)}, {"rate", rate}, {"target", target}};
}

// Keys whose default is null, with the JSON type a non-null value must have.
enum class Want { integer, number, string, array, boolean };

const std::map<std::string, Want>& nullable_keys() {
    static const std::map<std::string, Want> keys{
        {"norm_cap", Want::number}, {"shots", Want::integer}, {"channels", Want::array}, {"output", Want::string}};
    return keys;
}

bool matches(const json& v, Want w) {
    switch (w) {
        case Want::integer:
            return v.is_number_integer();
        case Want::number:
            return v.is_number();
        case Want::string:
            return v.is_string();
        case Want::array:
            return v.is_array();
        case Want::boolean:
            return v.is_boolean();
    }
    return false;
}

Want want_of(const json& def) {
    if (def.is_boolean()) return Want::boolean;
    if (def.is_number_integer()) return Want::integer;
    if (def.is_number()) return Want::number;
    if (def.is_string()) return Want::string;
    return Want::array;
}

bool is_index(const json& v) { return v.is_number_integer() && v.get<std::int64_t>() >= 0; }

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("config: " + msg); }

std::size_t qubit_count(const json& cfg) {
    const auto n = cfg.at("qubits").get<std::int64_t>();
    if (n < 1 || n > 8) fail("qubits must be in [1, 8]");
    return static_cast<std::size_t>(n);
}

void check_channels(const json& list, std::size_t qubits) {
    static const std::set<std::string> allowed{"kind", "rate", "target", "beta_omega"};
    for (const auto& c : list) {
        if (!c.is_object()) fail("channels entries must be objects");
        for (const auto& [k, v] : c.items()) {
            if (!allowed.contains(k)) fail("unknown channel key '" + k + "'");
        }
        if (!c.contains("kind") || !c["kind"].is_string()) fail("channel needs a string 'kind'");
        parse_channel_kind(c["kind"].get<std::string>());
        if (!c.contains("rate") || !c["rate"].is_number() || c["rate"].get<double>() < 0.0) {
            fail("channel needs a nonnegative 'rate'");
        }
        if (!c.contains("target") || !is_index(c["target"]) || c["target"].get<std::size_t>() >= qubits) {
            fail("channel 'target' must be a qubit index below qubits");
        }
        if (c.contains("beta_omega") && !c["beta_omega"].is_number()) fail("'beta_omega' must be a number");
    }
}

void check_orders(const json& cfg, int lo, int hi) {
    const bool order5 = cfg.value("enable_order5", false);
    if (cfg.at("orders").empty()) fail("orders must not be empty");
    for (const auto& o : cfg.at("orders")) {
        if (!o.is_number_integer()) fail("orders must be integers");
        const int n = o.get<int>();
        if (n == 5 && hi == 5 && !order5) fail("order 5 requires enable_order5");
        if (n < lo || n > hi) fail("order " + std::to_string(n) + " not supported here");
    }
}

void validate(Command c, const json& cfg) {
    std::size_t qubits = 0;
    if (cfg.contains("qubits")) qubits = qubit_count(cfg);
    if (cfg.contains("seeds")) {
        if (cfg["seeds"].empty()) fail("seeds must not be empty");
        for (const auto& s : cfg["seeds"])
            if (!is_index(s)) fail("seeds must be nonnegative integers");
    }
    if (cfg.contains("element_scale") && !(cfg["element_scale"].get<double>() >= 0.0)) fail("element_scale < 0");
    if (cfg.contains("norm_cap") && !cfg["norm_cap"].is_null() && !(cfg["norm_cap"].get<double>() > 0.0)) {
        fail("norm_cap must be positive");
    }
    if (cfg.contains("gamma")) {
        const double g = cfg["gamma"].get<double>();
        if (!(g > 0.0 && g <= 1.0)) fail("gamma must be in (0, 1]");
    }
    if (cfg.contains("shots") && !cfg["shots"].is_null() && cfg["shots"].get<std::int64_t>() < 1) {
        fail("shots must be >= 1");
    }
    if (cfg.contains("rate_max") && !(cfg["rate_max"].get<double>() >= 0.0)) fail("rate_max < 0");
    if (cfg.contains("channel")) parse_channel_kind(cfg["channel"].get<std::string>());
    if (cfg.contains("channels") && !cfg["channels"].is_null()) check_channels(cfg["channels"], qubits);

    switch (c) {
        case Command::purity:
        case Command::entanglement:
            check_orders(cfg, 2, 5);
            break;
        case Command::hotspot:
            check_orders(cfg, 2, 4);
            break;
        case Command::sweep_gamma:
            if (cfg["gammas"].empty()) fail("gammas must not be empty");
            for (const auto& g : cfg["gammas"]) {
                if (!g.is_number() || !(g.get<double>() > 0.0 && g.get<double>() <= 1.0)) {
                    fail("gammas entries must be in (0, 1]");
                }
            }
            break;
        case Command::inverse:
            if (cfg["xi"].empty()) fail("xi must not be empty");
            for (const auto& x : cfg["xi"])
                if (!x.is_number() || x.get<double>() < 0.0) fail("xi entries must be >= 0");
            if (!(cfg["dh_norm"].get<double>() >= 0.0)) fail("dh_norm < 0");
            break;
        case Command::verify:
            if (cfg["draws"].get<std::int64_t>() < 1) fail("draws must be >= 1");
            break;
    }
    if (c == Command::entanglement) {
        std::set<std::size_t> seen;
        for (const auto& q : cfg["a_qubits"]) {
            if (!is_index(q) || q.get<std::size_t>() >= qubits) fail("a_qubits entries out of range");
            if (!seen.insert(q.get<std::size_t>()).second) fail("a_qubits has duplicates");
        }
        if (seen.empty()) fail("a_qubits must not be empty");
    }
}

}  // namespace

std::string_view command_name(Command c) {
    switch (c) {
        case Command::purity:
            return "purity";
        case Command::entanglement:
            return "entanglement";
        case Command::hotspot:
            return "hotspot";
        case Command::inverse:
            return "inverse";
        case Command::verify:
            return "verify";
        case Command::sweep_gamma:
            return "sweep-gamma";
    }
    return "unknown";
}

Command parse_command(std::string_view name) {
    for (auto c : {Command::purity, Command::entanglement, Command::hotspot, Command::inverse, Command::verify,
                   Command::sweep_gamma}) {
        if (command_name(c) == name) return c;
    }
    throw ConfigError("unknown command: " + std::string(name));
}

json default_config(Command c) {
    switch (c) {
        case Command::purity:
            return json{{"qubits", 4},
                        {"element_scale", 0.01},
                        {"norm_cap", nullptr},
                        {"gamma", 1.0},
                        {"channel", "decoherence"},
                        {"rate_max", 2e-3},
                        {"channels", nullptr},
                        {"seeds", seed_range(40)},
                        {"shots", nullptr},
                        {"orders", json::array({2})},
                        {"enable_order5", false},
                        {"output", nullptr}};
        case Command::entanglement:
            return json{{"qubits", 6},
                        {"a_qubits", json::array({0, 1, 2})},
                        {"element_scale", 0.04},
                        {"norm_cap", 0.8},
                        {"gamma", 1.0},
                        {"channels", json::array()},
                        {"seeds", seed_range(30)},
                        {"shots", nullptr},
                        {"orders", json::array({2})},
                        {"enable_order5", false},
                        {"output", nullptr}};
        case Command::hotspot:
            return json{{"qubits", 4},
                        {"element_scale", 0.1},
                        {"norm_cap", nullptr},
                        {"gamma", 1.0},
                        {"channels", json::array({channel("decoherence", 1e-3, 1), channel("decoherence", 7e-4, 3)})},
                        {"seeds", seed_range(40)},
                        {"shots", nullptr},
                        {"orders", json::array({2, 3, 4})},
                        {"paired_minus_h", false},
                        {"output", nullptr}};
        case Command::inverse:
            return json{{"qubits", 2},
                        {"element_scale", 0.3},
                        {"norm_cap", nullptr},
                        {"channel", "decoherence"},
                        {"xi", json::array({1e-4, 1e-3, 1e-2})},
                        {"dh_norm", 0.0},
                        {"seeds", json::array({0})},
                        {"output", nullptr}};
        case Command::sweep_gamma:
            return json{{"qubits", 4},
                        {"element_scale", 0.1},
                        {"norm_cap", nullptr},
                        {"gammas", json::array({1.0, 0.5, 0.25, 0.125})},
                        {"channel", "decoherence"},
                        {"rate_max", 2e-3},
                        {"channels", nullptr},
                        {"seeds", seed_range(10)},
                        {"output", nullptr}};
        case Command::verify:
            return json{{"draws", 200}, {"seeds", json::array({0})}, {"output", nullptr}};
    }
    throw ConfigError("unknown command");
}

json resolve_config(Command c, const json& user) {
    json cfg = default_config(c);
    if (user.is_null()) {
        validate(c, cfg);
        return cfg;
    }
    if (!user.is_object()) fail("top level must be an object");
    for (const auto& [key, value] : user.items()) {
        if (!cfg.contains(key)) fail("unknown key '" + key + "' for command " + std::string(command_name(c)));
        const json& def = cfg[key];
        if (def.is_null()) {
            if (!value.is_null() && !matches(value, nullable_keys().at(key))) fail("wrong type for '" + key + "'");
        } else if (!matches(value, want_of(def))) {
            fail("wrong type for '" + key + "'");
        }
        cfg[key] = value;
    }
    validate(c, cfg);
    return cfg;
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
    std::vector<std::uint64_t> out;
    auto parse_u64 = [](std::string_view s) {
        std::uint64_t v = 0;
        const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) {
            throw ConfigError("bad seed list entry '" + std::string(s) + "'");
        }
        return v;
    };
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string_view item = text.substr(pos, comma - pos);
        const std::size_t dash = item.find('-');
        if (dash == std::string_view::npos) {
            out.push_back(parse_u64(item));
        } else {
            const auto lo = parse_u64(item.substr(0, dash));
            const auto hi = parse_u64(item.substr(dash + 1));
            if (hi < lo) throw ConfigError("bad seed range '" + std::string(item) + "'");
            for (auto s = lo; s <= hi; ++s) out.push_back(s);
        }
        pos = comma + 1;
    }
    return out;
}

std::vector<int> parse_int_list(std::string_view text) {
    std::vector<int> out;
    for (auto s : parse_seed_list(text)) out.push_back(static_cast<int>(s));
    return out;
}

}  // namespace repcycle
