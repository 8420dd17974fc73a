#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace symfp::cli {

using Json = nlohmann::ordered_json;

/// One table cell; monostate is an absent value (empty in CSV, null in JSON).
using Cell = std::variant<std::monostate, bool, std::int64_t, std::uint64_t, double, std::string>;

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct Report {
    std::string command;
    Json meta = Json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    Json summary = Json::object();
    std::vector<Check> checks;

    void add_row(std::vector<Cell> row) { rows.push_back(std::move(row)); }
    [[nodiscard]] bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

}  // namespace symfp::cli
