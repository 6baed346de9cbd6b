#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace thermowalk {

using Point = std::array<double, 2>;

/// Uniform periodic box in one or two dimensions. Axis 0 is x, axis 1 is y;
/// in 1D the second axis is unused (cells[1] == 1, extent[1] == 1).
struct DomainSpec {
    int dim = 2;
    std::array<int, 2> cells{50, 50};
    std::array<double, 2> extent{1.0, 1.0};

    static DomainSpec line(int cells, double extent = 1.0);
    static DomainSpec square(int cells, double extent = 1.0);
    static DomainSpec box(int cells_x, int cells_y, double extent_x = 1.0, double extent_y = 1.0);

    /// Throws ConfigError unless dim is 1 or 2, cells >= 4 and extent > 0 on every used axis.
    void validate() const;

    std::size_t cell_count() const;
    double cell_width(int axis) const { return extent[axis] / cells[axis]; }
    double cell_volume() const;
    double measure() const;
    Point cell_center(int i, int j = 0) const;

    /// Maps a coordinate back into [0, extent) along every used axis.
    Point wrap(Point p) const;

    friend bool operator==(const DomainSpec&, const DomainSpec&) = default;
};

/// Cell-centred scalar field, row-major with x varying fastest:
/// value(i, j) lives at values[j * cells[0] + i].
class FieldGrid {
public:
    FieldGrid() = default;
    explicit FieldGrid(const DomainSpec& domain, double fill = 0.0);
    FieldGrid(const DomainSpec& domain, std::vector<double> values);

    template <class F>
    static FieldGrid sample(const DomainSpec& domain, F&& f) {
        FieldGrid g(domain);
        for (int j = 0; j < domain.cells[1]; ++j)
            for (int i = 0; i < domain.cells[0]; ++i)
                g.at(i, j) = f(domain.cell_center(i, j));
        return g;
    }

    const DomainSpec& domain() const { return domain_; }
    std::size_t size() const { return values_.size(); }
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    double& at(int i, int j = 0) { return values_[index(i, j)]; }
    double at(int i, int j = 0) const { return values_[index(i, j)]; }
    double operator[](std::size_t k) const { return values_[k]; }
    double& operator[](std::size_t k) { return values_[k]; }

    std::size_t index(int i, int j = 0) const {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(domain_.cells[0]) +
               static_cast<std::size_t>(i);
    }

    double mean() const;
    double min() const;
    double max() const;

    /// Periodic bilinear interpolation between cell centres.
    double interpolate(Point p) const;

    /// Throws NumericalError on any non-finite value.
    void require_finite(const char* what) const;

    friend bool operator==(const FieldGrid&, const FieldGrid&) = default;

private:
    DomainSpec domain_{};
    std::vector<double> values_;
};

/// Rescales so that the average cell value is 1. Throws DomainError when the
/// mean is not strictly positive.
FieldGrid normalize_mean(FieldGrid grid);

}  // namespace thermowalk
