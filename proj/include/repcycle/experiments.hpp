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


#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "repcycle/errors.hpp"
#include "repcycle/estimators.hpp"
#include "repcycle/liouville.hpp"

namespace repcycle {

inline constexpr std::string_view kVersion = "0.1.0";

enum class Command { purity, entanglement, hotspot, inverse, verify, sweep_gamma };

std::string_view command_name(Command c);
Command parse_command(std::string_view name);

// Empty cell = null (written as an empty CSV field).
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

class ResultTable {
  public:
    explicit ResultTable(std::vector<std::string> columns = {});

    const std::vector<std::string>& columns() const { return columns_; }
    std::size_t size() const { return rows_.size(); }
    void add_row(std::vector<Cell> row);
    const Cell& at(std::size_t row, std::string_view column) const;
    // Numeric cell as double; NaN for null.
    double number(std::size_t row, std::string_view column) const;
    std::size_t column_index(std::string_view column) const;

    // Doubles use 17 significant digits; strings containing ',' or '"' are quoted.
    std::string to_csv() const;

  private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

std::string format_double(double v);

// Defaults for a command. Every key a config may set appears here.
nlohmann::json default_config(Command c);

// Merges `user` over the defaults. Rejects unknown keys, wrong JSON types,
// and invalid values (ConfigError).
nlohmann::json resolve_config(Command c, const nlohmann::json& user);

struct ConfigError : ValidationError {
    using ValidationError::ValidationError;
};

struct RunOutput {
    ResultTable table;
    nlohmann::json extra = nlohmann::json::object();
    bool passed = true;
};

// Mutation points for the verification suite.
struct VerifyHooks {
    std::function<WeightSet(int)> weights = [](int n) { return repcycle::weights(n); };
    std::function<LiouvilleVector(const CMatrix&)> vectorizer = [](const CMatrix& m) { return vectorize(m); };
};

RunOutput cmd_purity(const nlohmann::json& cfg);
RunOutput cmd_entanglement(const nlohmann::json& cfg);
RunOutput cmd_hotspot(const nlohmann::json& cfg);
RunOutput cmd_inverse(const nlohmann::json& cfg);
RunOutput cmd_sweep_gamma(const nlohmann::json& cfg);
RunOutput cmd_verify(const nlohmann::json& cfg, const VerifyHooks& hooks = {});

RunOutput run_command(Command c, const nlohmann::json& resolved);

// JSON sidecar: resolved config, toolkit version, column list and extras.
nlohmann::json sidecar(Command c, const nlohmann::json& resolved, const RunOutput& out);

// Least-squares slope of log|y| against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// "0-39", "1,4,7" or "0-3,10".
std::vector<std::uint64_t> parse_seed_list(std::string_view text);
std::vector<int> parse_int_list(std::string_view text);

}  // namespace repcycle
