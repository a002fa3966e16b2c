#include "zas/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "zas/errors.hpp"

namespace zas::report {

namespace {

using json = nlohmann::json;

std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_cell(const Value& v) {
    if (const double* d = std::get_if<double>(&v)) return fmt_double(*d);
    if (const bool* b = std::get_if<bool>(&v)) return *b ? "yes" : "no";
    return csv_escape(std::get<std::string>(v));
}

json json_cell(const Value& v) {
    if (const double* d = std::get_if<double>(&v)) {
        if (std::isnan(*d)) return "nan";
        if (std::isinf(*d)) return *d < 0 ? "-inf" : "inf";
        return *d;
    }
    if (const bool* b = std::get_if<bool>(&v)) return *b;
    return std::get<std::string>(v);
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(t.columns[i]);
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += csv_cell(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& t) {
    json j;
    j["name"] = t.name;
    j["columns"] = t.columns;
    json rows = json::array();
    for (const auto& row : t.rows) {
        json r = json::array();
        for (const auto& cell : row) r.push_back(json_cell(cell));
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

Table from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("malformed report JSON: ") + e.what());
    }
    Table t;
    try {
        t.name = j.at("name").get<std::string>();
        t.columns = j.at("columns").get<std::vector<std::string>>();
        for (const json& row : j.at("rows")) {
            std::vector<Value> cells;
            for (const json& cell : row) {
                if (cell.is_number())
                    cells.push_back(cell.get<double>());
                else if (cell.is_boolean())
                    cells.push_back(cell.get<bool>());
                else if (cell.is_string())
                    cells.push_back(cell.get<std::string>());
                else
                    throw Error(ErrorCode::ParseError, "unsupported report cell type");
            }
            t.rows.push_back(std::move(cells));
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("report JSON shape: ") + e.what());
    }
    return t;
}

std::string to_svg(const LinePlot& plot) {
    constexpr double kL = 75, kR = 780, kT = 45, kB = 445;
    const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (double v : plot.x) {
        if (!std::isfinite(v)) continue;
        xmin = std::min(xmin, v);
        xmax = std::max(xmax, v);
    }
    for (const auto& [label, ys] : plot.series)
        for (double v : ys) {
            if (!std::isfinite(v)) continue;
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    if (!(xmin < xmax)) {
        xmin -= 1.0;
        xmax += 1.0;
    }
    if (!(ymin < ymax)) {
        ymin -= 1.0;
        ymax += 1.0;
    }
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto sx = [&](double v) { return kL + (v - xmin) / (xmax - xmin) * (kR - kL); };
    auto sy = [&](double v) { return kB - (v - ymin) / (ymax - ymin) * (kB - kT); };
    auto f2 = [](double v) {
        char b[32];
        std::snprintf(b, sizeof b, "%.2f", v);
        return std::string(b);
    };
    auto f3g = [](double v) {
        char b[32];
        std::snprintf(b, sizeof b, "%.4g", v);
        return std::string(b);
    };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
         "viewBox=\"0 0 800 500\">\n";
    s += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
    s += "<text x=\"400\" y=\"25\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" +
         xml_escape(plot.title) + "</text>\n";

    for (int i = 0; i <= 5; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 5.0;
        const double yv = ymin + (ymax - ymin) * i / 5.0;
        const std::string gx = f2(sx(xv)), gy = f2(sy(yv));
        s += "<line x1=\"" + gx + "\" y1=\"" + f2(kT) + "\" x2=\"" + gx + "\" y2=\"" + f2(kB) +
             "\" stroke=\"#dddddd\"/>\n";
        s += "<line x1=\"" + f2(kL) + "\" y1=\"" + gy + "\" x2=\"" + f2(kR) + "\" y2=\"" + gy +
             "\" stroke=\"#dddddd\"/>\n";
        s += "<text x=\"" + gx + "\" y=\"" + f2(kB + 18) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + f3g(xv) +
             "</text>\n";
        s += "<text x=\"" + f2(kL - 8) + "\" y=\"" + f2(sy(yv) + 4) +
             "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + f3g(yv) +
             "</text>\n";
    }
    s += "<line x1=\"" + f2(kL) + "\" y1=\"" + f2(kB) + "\" x2=\"" + f2(kR) + "\" y2=\"" +
         f2(kB) + "\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + f2(kL) + "\" y1=\"" + f2(kT) + "\" x2=\"" + f2(kL) + "\" y2=\"" +
         f2(kB) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + f2((kL + kR) / 2) + "\" y=\"485\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"13\">" +
         xml_escape(plot.xlabel) + "</text>\n";
    s += "<text x=\"18\" y=\"" + f2((kT + kB) / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 18 " +
         f2((kT + kB) / 2) + ")\">" + xml_escape(plot.ylabel) + "</text>\n";

    for (std::size_t k = 0; k < plot.series.size(); ++k) {
        const auto& [label, ys] = plot.series[k];
        const char* color = kColors[k % 5];
        std::string pts;
        const std::size_t n = std::min(plot.x.size(), ys.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(plot.x[i]) || !std::isfinite(ys[i])) continue;
            pts += f2(sx(plot.x[i])) + "," + f2(sy(ys[i])) + " ";
        }
        s += "<polyline fill=\"none\" stroke=\"";
        s += color;
        s += "\" stroke-width=\"2\" points=\"" + pts + "\"/>\n";
        const double ly = kT + 18.0 * (double)k + 12.0;
        s += "<line x1=\"" + f2(kR - 150) + "\" y1=\"" + f2(ly - 4) + "\" x2=\"" +
             f2(kR - 125) + "\" y2=\"" + f2(ly - 4) + "\" stroke=\"";
        s += color;
        s += "\" stroke-width=\"2\"/>\n";
        s += "<text x=\"" + f2(kR - 118) + "\" y=\"" + f2(ly) +
             "\" font-family=\"sans-serif\" font-size=\"12\">" + xml_escape(label) +
             "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::ValidationError, "cannot write file: " + path);
    out << content;
    if (!out) throw Error(ErrorCode::ValidationError, "failed writing file: " + path);
}

}  // namespace zas::report
