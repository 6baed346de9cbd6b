#include "thermowalk/grid_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "thermowalk/error.hpp"

namespace thermowalk {

namespace {

constexpr const char* kReserved[] = {"dim", "cells", "extent"};

bool is_reserved(const std::string& key) {
    for (const char* r : kReserved)
        if (key == r) return true;
    return false;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view text, const char* what) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw IoError(std::string("cannot parse ") + what + " '" + t + "'");
    if (!std::isfinite(v)) throw IoError(std::string(what) + " is not finite");
    return v;
}

int parse_int(std::string_view text, const char* what) {
    const std::string t = trim(text);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw IoError(std::string("cannot parse ") + what + " '" + t + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace

void GridFile::set(const std::string& key, const std::string& value) {
    if (is_reserved(key)) throw ConfigError("'" + key + "' is derived from the grid and cannot be set");
    if (key.empty() || key.find_first_of("=\n#") != std::string::npos || value.find('\n') != std::string::npos)
        throw ConfigError("invalid metadata key or value");
    for (auto& [k, v] : metadata)
        if (k == key) {
            v = value;
            return;
        }
    metadata.emplace_back(key, value);
}

std::optional<std::string> GridFile::get(const std::string& key) const {
    for (const auto& [k, v] : metadata)
        if (k == key) return v;
    return std::nullopt;
}

std::string format_value(double v) {
    char buf[40];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    if (ec != std::errc()) throw IoError("cannot format value");
    return std::string(buf, ptr);
}

void write_grid(std::ostream& out, const GridFile& file) {
    const FieldGrid& g = file.grid;
    const DomainSpec& d = g.domain();
    g.require_finite("grid");
    out << "# dim=" << d.dim << '\n';
    if (d.dim == 2) {
        out << "# cells=" << d.cells[0] << ',' << d.cells[1] << '\n';
        out << "# extent=" << format_value(d.extent[0]) << ',' << format_value(d.extent[1]) << '\n';
    } else {
        out << "# cells=" << d.cells[0] << '\n';
        out << "# extent=" << format_value(d.extent[0]) << '\n';
    }
    for (const auto& [k, v] : file.metadata) out << "# " << k << '=' << v << '\n';
    const int rows = d.dim == 2 ? d.cells[1] : 1;
    std::string line;
    for (int j = 0; j < rows; ++j) {
        line.clear();
        for (int i = 0; i < d.cells[0]; ++i) {
            if (i) line += ',';
            line += format_value(g.at(i, j));
        }
        line += '\n';
        out << line;
    }
    if (!out) throw IoError("failed to write grid");
}

void write_grid(const std::filesystem::path& path, const GridFile& file) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    write_grid(out, file);
}

GridFile read_grid(std::istream& in) {
    std::string line;
    std::vector<std::pair<std::string, std::string>> header;
    std::vector<std::string> body;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        if (line[0] == '#') {
            if (!body.empty()) throw IoError("header line after grid values");
            const std::string kv = trim(std::string_view(line).substr(1));
            const auto eq = kv.find('=');
            if (eq == std::string::npos) continue;  // free-form comment
            header.emplace_back(trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
        } else {
            body.push_back(line);
        }
    }

    DomainSpec d;
    d.dim = 0;
    bool have_cells = false, have_extent = false;
    GridFile file;
    std::string cells_text, extent_text;
    for (const auto& [k, v] : header) {
        if (k == "dim") {
            d.dim = parse_int(v, "dim");
        } else if (k == "cells") {
            cells_text = v;
            have_cells = true;
        } else if (k == "extent") {
            extent_text = v;
            have_extent = true;
        } else {
            file.metadata.emplace_back(k, v);
        }
    }
    if (d.dim != 1 && d.dim != 2) throw IoError("grid header needs dim=1 or dim=2");
    if (!have_cells) throw IoError("grid header needs cells");
    const auto cells = split(cells_text, ',');
    if (static_cast<int>(cells.size()) != d.dim) throw IoError("cells must list one count per axis");
    d.cells = {parse_int(cells[0], "cells"), d.dim == 2 ? parse_int(cells[1], "cells") : 1};
    if (d.cells[0] < 1 || d.cells[1] < 1) throw IoError("cell counts must be positive");
    d.extent = {1.0, 1.0};
    if (have_extent) {
        const auto ext = split(extent_text, ',');
        if (static_cast<int>(ext.size()) != d.dim) throw IoError("extent must list one length per axis");
        d.extent[0] = parse_double(ext[0], "extent");
        if (d.dim == 2) d.extent[1] = parse_double(ext[1], "extent");
        if (!(d.extent[0] > 0.0) || !(d.extent[1] > 0.0)) throw IoError("extent must be positive");
    }

    const int rows = d.dim == 2 ? d.cells[1] : 1;
    if (static_cast<int>(body.size()) != rows)
        throw IoError("expected " + std::to_string(rows) + " rows of values, found " + std::to_string(body.size()));
    std::vector<double> values;
    values.reserve(d.cell_count());
    for (const auto& row : body) {
        const auto fields = split(row, ',');
        if (static_cast<int>(fields.size()) != d.cells[0])
            throw IoError("expected " + std::to_string(d.cells[0]) + " values per row, found " +
                          std::to_string(fields.size()));
        for (auto f : fields) values.push_back(parse_double(f, "grid value"));
    }
    file.grid = FieldGrid(d, std::move(values));
    return file;
}

GridFile read_grid(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    return read_grid(in);
}

void write_plot_table(std::ostream& out, const FieldGrid& grid) {
    const DomainSpec& d = grid.domain();
    out << "x,y,value\n";
    for (int j = 0; j < d.cells[1]; ++j)
        for (int i = 0; i < d.cells[0]; ++i) {
            const Point c = d.cell_center(i, j);
            out << format_value(c[0]) << ',' << format_value(d.dim == 2 ? c[1] : 0.0) << ','
                << format_value(grid.at(i, j)) << '\n';
        }
    if (!out) throw IoError("failed to write plot table");
}

}  // namespace thermowalk
