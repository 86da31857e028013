#pragma once

#include <json.hpp>

#include <string>
#include <variant>
#include <vector>

namespace spinring {

using Cell = std::variant<long long, double, std::string, bool>;

/// Flat experiment output: one header, rows of cells, and the configuration
/// that produced them.
struct ResultTable {
    std::string experiment;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    nlohmann::json provenance = nlohmann::json::object();
};

/// Doubles use 12 significant digits; booleans print as 0/1.
std::string format_cell(const Cell& cell);

std::string to_csv(const ResultTable& table);

/// {"experiment", "columns", "rows": [{column: value, ..., "config": {...}}]}
nlohmann::json to_json(const ResultTable& table);

}  // namespace spinring
