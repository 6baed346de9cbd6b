#include "thermowalk/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "thermowalk/error.hpp"

namespace thermowalk {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Config: return "config";
        case ErrorKind::Numerical: return "numerical";
        case ErrorKind::Domain: return "domain";
        case ErrorKind::Io: return "io";
        case ErrorKind::Unsupported: return "unsupported";
    }
    return "unknown";
}

DomainSpec DomainSpec::line(int cells, double extent) { return DomainSpec{1, {cells, 1}, {extent, 1.0}}; }

DomainSpec DomainSpec::square(int cells, double extent) { return DomainSpec{2, {cells, cells}, {extent, extent}}; }

DomainSpec DomainSpec::box(int cells_x, int cells_y, double extent_x, double extent_y) {
    return DomainSpec{2, {cells_x, cells_y}, {extent_x, extent_y}};
}

void DomainSpec::validate() const {
    if (dim != 1 && dim != 2) throw ConfigError("domain dimension must be 1 or 2, got " + std::to_string(dim));
    for (int a = 0; a < dim; ++a) {
        if (cells[a] < 4) throw ConfigError("domain needs at least 4 cells per axis");
        if (!(extent[a] > 0.0) || !std::isfinite(extent[a])) throw ConfigError("domain extent must be positive");
    }
    if (dim == 1 && cells[1] != 1) throw ConfigError("1D domain must have cells[1] == 1");
}

std::size_t DomainSpec::cell_count() const {
    return static_cast<std::size_t>(cells[0]) * static_cast<std::size_t>(dim == 2 ? cells[1] : 1);
}

double DomainSpec::cell_volume() const { return dim == 2 ? cell_width(0) * cell_width(1) : cell_width(0); }

double DomainSpec::measure() const { return dim == 2 ? extent[0] * extent[1] : extent[0]; }

Point DomainSpec::cell_center(int i, int j) const {
    return {(i + 0.5) * cell_width(0), dim == 2 ? (j + 0.5) * cell_width(1) : 0.0};
}

namespace {
// One conditional shift covers every jump shorter than the domain; the floor
// fallback handles arbitrary inputs.
double wrap_axis(double v, double length) {
    if (v < 0.0)
        v += length;
    else if (v >= length)
        v -= length;
    if (v >= 0.0 && v < length) return v;
    v -= std::floor(v / length) * length;
    if (v < 0.0) v += length;
    return v >= length ? 0.0 : v;
}
}  // namespace

Point DomainSpec::wrap(Point p) const {
    Point out{wrap_axis(p[0], extent[0]), 0.0};
    if (dim == 2) out[1] = wrap_axis(p[1], extent[1]);
    return out;
}

FieldGrid::FieldGrid(const DomainSpec& domain, double fill) : domain_(domain), values_(domain.cell_count(), fill) {}

FieldGrid::FieldGrid(const DomainSpec& domain, std::vector<double> values)
    : domain_(domain), values_(std::move(values)) {
    if (values_.size() != domain_.cell_count())
        throw ConfigError("grid has " + std::to_string(values_.size()) + " values but the domain has " +
                          std::to_string(domain_.cell_count()) + " cells");
}

double FieldGrid::mean() const {
    if (values_.empty()) return 0.0;
    return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

double FieldGrid::min() const { return *std::min_element(values_.begin(), values_.end()); }

double FieldGrid::max() const { return *std::max_element(values_.begin(), values_.end()); }

double FieldGrid::interpolate(Point p) const {
    const int nx = domain_.cells[0];
    const double hx = domain_.cell_width(0);
    const double fx = wrap_axis(p[0], domain_.extent[0]) / hx - 0.5;
    const double flx = std::floor(fx);
    const double tx = fx - flx;
    const int i0 = (static_cast<int>(flx) + nx) % nx;
    const int i1 = (i0 + 1) % nx;
    if (domain_.dim == 1) return (1.0 - tx) * at(i0) + tx * at(i1);

    const int ny = domain_.cells[1];
    const double hy = domain_.cell_width(1);
    const double fy = wrap_axis(p[1], domain_.extent[1]) / hy - 0.5;
    const double fly = std::floor(fy);
    const double ty = fy - fly;
    const int j0 = (static_cast<int>(fly) + ny) % ny;
    const int j1 = (j0 + 1) % ny;
    return (1.0 - ty) * ((1.0 - tx) * at(i0, j0) + tx * at(i1, j0)) + ty * ((1.0 - tx) * at(i0, j1) + tx * at(i1, j1));
}

void FieldGrid::require_finite(const char* what) const {
    for (double v : values_)
        if (!std::isfinite(v)) throw NumericalError(std::string(what) + " contains a non-finite value");
}

FieldGrid normalize_mean(FieldGrid grid) {
    const double m = grid.mean();
    if (!(m > 0.0) || !std::isfinite(m)) throw DomainError("cannot normalise a grid whose mean is not positive");
    for (double& v : grid.values()) v /= m;
    return grid;
}

}  // namespace thermowalk
