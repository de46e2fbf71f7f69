// output.hpp: CSV and JSON tables with a reproducibility header

#pragma once

#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>  // nlohmann::json, vendored

namespace pbgqsl {

inline constexpr const char* kVersion = "1.0.0";

/// A cell is a number, an integer, a label or empty.
using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Table {
    /// Ordered key/value pairs echoed in the metadata line.
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// 17 significant digits, enough to round-trip any double.
inline std::string format_double(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", v);
    return buffer;
}

inline std::string format_cell(const Cell& cell) {
    struct Visitor {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(const std::string& v) const { return v; }
    };
    return std::visit(Visitor{}, cell);
}

inline void write_csv(std::ostream& out, const Table& table) {
    out << "# pbgqsl " << kVersion;
    for (const auto& [key, value] : table.meta)
        out << ' ' << key << '=' << value;
    out << '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out << (c ? "," : "") << format_cell(row[c]);
        out << '\n';
    }
}

inline nlohmann::ordered_json table_to_json(const Table& table) {
    nlohmann::ordered_json doc;
    doc["version"] = kVersion;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.meta)
        meta[key] = value;
    doc["meta"] = meta;
    doc["columns"] = table.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json record = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size() && c < table.columns.size(); ++c) {
            const Cell& cell = row[c];
            if (const auto* d = std::get_if<double>(&cell))
                record[table.columns[c]] = *d;
            else if (const auto* i = std::get_if<long long>(&cell))
                record[table.columns[c]] = *i;
            else if (const auto* s = std::get_if<std::string>(&cell))
                record[table.columns[c]] = *s;
            else
                record[table.columns[c]] = nullptr;
        }
        rows.push_back(std::move(record));
    }
    doc["rows"] = std::move(rows);
    return doc;
}

inline void write_json(std::ostream& out, const Table& table) {
    out << table_to_json(table).dump(2) << '\n';
}

} // namespace pbgqsl
