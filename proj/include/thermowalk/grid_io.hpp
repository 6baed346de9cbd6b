#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thermowalk/grid.hpp"

namespace thermowalk {

/// Grid file: '#'-prefixed key=value header lines, then one comma-separated
/// line per grid row (x varies along a line, y down the file). dim, cells and
/// extent always come first; other metadata follows in insertion order.
struct GridFile {
    FieldGrid grid;
    std::vector<std::pair<std::string, std::string>> metadata;

    void set(const std::string& key, const std::string& value);
    std::optional<std::string> get(const std::string& key) const;
};

/// Decimal with 17 significant digits, enough to round-trip any double.
std::string format_value(double v);

void write_grid(std::ostream& out, const GridFile& file);
void write_grid(const std::filesystem::path& path, const GridFile& file);

/// Throws IoError on malformed input or a body that disagrees with the header.
GridFile read_grid(std::istream& in);
GridFile read_grid(const std::filesystem::path& path);

/// Long-format "x,y,value" table with one row per cell, for plotting tools.
void write_plot_table(std::ostream& out, const FieldGrid& grid);

}  // namespace thermowalk
