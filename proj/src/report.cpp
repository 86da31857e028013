#include "spinring/report.hpp"

#include "spinring/errors.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace spinring {

std::string format_cell(const Cell& cell) {
    if (const auto* d = std::get_if<double>(&cell)) {
        if (std::isnan(*d)) return "nan";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", *d);
        return buf;
    }
    if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
    if (const auto* b = std::get_if<bool>(&cell)) return *b ? "1" : "0";
    return std::get<std::string>(cell);
}

std::string to_csv(const ResultTable& table) {
    std::ostringstream out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c ? "," : "") << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw InvalidArgument("result row width does not match the header");
        }
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_cell(row[c]);
        out << '\n';
    }
    return out.str();
}

nlohmann::json to_json(const ResultTable& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t c = 0; c < row.size() && c < table.columns.size(); ++c) {
            std::visit([&](const auto& v) { obj[table.columns[c]] = v; }, row[c]);
        }
        obj["config"] = table.provenance;
        rows.push_back(std::move(obj));
    }
    return {{"experiment", table.experiment}, {"columns", table.columns}, {"rows", std::move(rows)}};
}

}  // namespace spinring
