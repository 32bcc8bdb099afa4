// tabular.hpp — Deterministic CSV/JSON emission. Numbers are rendered in
// scientific notation with 9 significant digits; unbounded results serialize
// as the literal "inf" and diverged-rate sensitivities as the literal "0".

#pragma once

#include <string>
#include <variant>
#include <vector>

namespace spinsense {

struct Cell {
    std::variant<double, std::string> value;

    static Cell number(double v) { return {v}; }
    static Cell text(std::string s) { return {std::move(s)}; }
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

std::string format_number(double v);  // "%.8e"; inf/nan map to literals

std::string render_csv(const Table& table);
std::string render_json(const Table& table);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace spinsense
