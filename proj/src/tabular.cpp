#include "spinsense/tabular.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace spinsense {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.8e", v);
    return buf;
}

namespace {

std::string cell_string(const Cell& c) {
    if (std::holds_alternative<double>(c.value)) return format_number(std::get<double>(c.value));
    return std::get<std::string>(c.value);
}

}  // namespace

std::string render_csv(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out += ',';
        out += table.header[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) {
            throw std::logic_error("render_csv: row width does not match header");
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += cell_string(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string render_json(const Table& table) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) {
            throw std::logic_error("render_json: row width does not match header");
        }
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (std::holds_alternative<double>(row[i].value)) {
                const double v = std::get<double>(row[i].value);
                if (std::isfinite(v)) {
                    obj[table.header[i]] = v;
                } else {
                    obj[table.header[i]] = format_number(v);
                }
            } else {
                obj[table.header[i]] = std::get<std::string>(row[i].value);
            }
        }
        rows.push_back(std::move(obj));
    }
    return rows.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output path: " + path);
    out << content;
    if (!out) throw std::runtime_error("failed writing output path: " + path);
}

}  // namespace spinsense
