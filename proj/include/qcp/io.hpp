// CSV/manifest/SVG emission. CSV: '#'-prefixed comment lines, one column-name
// row, then numeric rows at 17 significant digits. Every output file gets a
// sibling <path>.manifest.json recording command, params, seed, version and
// start time; timestamps never enter the CSV itself so reruns are
// byte-comparable.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace qcp {

struct CsvTable {
    std::vector<std::string> comments;  // emitted as "# <comment>"
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// shortest round-trip style "%.17g" formatting, C locale digits
std::string format_g17(double v);

void write_csv(std::ostream& out, const CsvTable& table);
void write_csv_file(const std::string& path, const CsvTable& table);

void write_manifest(const std::string& out_path, const std::string& command,
                    const std::vector<std::pair<std::string, std::string>>& params,
                    std::uint64_t seed);

// line plot of a CSV table: first column is x, every other column one series
void write_svg(const std::string& path, const CsvTable& table, const std::string& title);

}  // namespace qcp
