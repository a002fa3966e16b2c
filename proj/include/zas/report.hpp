#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace zas::report {

// One table cell.  Non-finite doubles serialize as "-inf"/"inf" in CSV and
// as tagged strings in JSON so every consumer sees the same spelling.
using Value = std::variant<double, bool, std::string>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Value>> rows;
};

// Deterministic renderings: identical inputs give identical bytes.
std::string to_csv(const Table& t);
std::string to_json(const Table& t);

// Parses a to_json rendering back into a table; used by round-trip checks.
Table from_json(const std::string& text);

struct LinePlot {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    std::vector<double> x;
    std::vector<std::pair<std::string, std::vector<double>>> series;
};

// Fixed-size SVG line chart with labeled axes; no external assets.
std::string to_svg(const LinePlot& plot);

void write_file(const std::string& path, const std::string& content);

}  // namespace zas::report
