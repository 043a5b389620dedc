#include "qcp/io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "qcp/version.hpp"

namespace qcp {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& out, const CsvTable& table) {
    for (const auto& c : table.comments) out << "# " << c << "\n";
    for (std::size_t j = 0; j < table.columns.size(); ++j)
        out << (j ? "," : "") << table.columns[j];
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j)
            out << (j ? "," : "") << format_g17(row[j]);
        out << "\n";
    }
}

void write_csv_file(const std::string& path, const CsvTable& table) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    write_csv(out, table);
    if (!out.good()) throw std::runtime_error("write failed: " + path);
}

void write_manifest(const std::string& out_path, const std::string& command,
                    const std::vector<std::pair<std::string, std::string>>& params,
                    std::uint64_t seed) {
    nlohmann::json j;
    j["command"] = command;
    nlohmann::json p = nlohmann::json::object();
    for (const auto& [k, v] : params) p[k] = v;
    j["params"] = p;
    j["seed"] = seed;
    j["tool_version"] = version;
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::tm tm_utc{};
    gmtime_r(&tt, &tm_utc);
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    j["started_at"] = stamp;
    const std::string path = out_path + ".manifest.json";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open manifest file: " + path);
    out << j.dump(2) << "\n";
}

void write_svg(const std::string& path, const CsvTable& table, const std::string& title) {
    if (table.columns.size() < 2 || table.rows.empty())
        throw std::runtime_error("write_svg: need at least two columns and one row");
    const int width = 820, height = 520;
    const int ml = 70, mr = 20, mt = 40, mb = 50;  // margins
    const std::size_t ncol = table.columns.size();
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& row : table.rows) {
        if (!std::isfinite(row[0])) continue;
        xmin = std::min(xmin, row[0]);
        xmax = std::max(xmax, row[0]);
        for (std::size_t j = 1; j < ncol; ++j) {
            if (!std::isfinite(row[j])) continue;
            ymin = std::min(ymin, row[j]);
            ymax = std::max(ymax, row[j]);
        }
    }
    if (xmax <= xmin) xmax = xmin + 1.0;
    if (ymax <= ymin) ymax = ymin + 1.0;
    const auto sx = [&](double x) {
        return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr);
    };
    const auto sy = [&](double y) {
        return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb);
    };
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open svg file: " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
    // axes with min/max tick labels
    out << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
        << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << height - mb << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << ml << "\" y=\"" << height - mb + 20
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << format_g17(xmin) << "</text>\n";
    out << "<text x=\"" << width - mr << "\" y=\"" << height - mb + 20
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
        << format_g17(xmax) << "</text>\n";
    out << "<text x=\"" << ml - 6 << "\" y=\"" << height - mb
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
        << format_g17(ymin) << "</text>\n";
    out << "<text x=\"" << ml - 6 << "\" y=\"" << mt + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
        << format_g17(ymax) << "</text>\n";
    for (std::size_t j = 1; j < ncol; ++j) {
        const char* color = palette[(j - 1) % 8];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& row : table.rows) {
            if (!std::isfinite(row[0]) || !std::isfinite(row[j])) continue;
            out << sx(row[0]) << "," << sy(row[j]) << " ";
        }
        out << "\"/>\n";
        out << "<text x=\"" << width - mr - 8 << "\" y=\"" << mt + 16 * j
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
            << color << "\">" << table.columns[j] << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace qcp
