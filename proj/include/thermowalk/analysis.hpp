#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "thermowalk/grid.hpp"

namespace thermowalk {

/// Norms of a - b after both grids are normalised to mean 1.
/// l1 and l2 are the continuous norms over the domain (cell volume weights),
/// rms is the per-cell root mean square, and relative_l2 = |a - b|_2 / |b|_2
/// treats b as the reference (the only asymmetric entry).
struct ComparisonReport {
    double l1 = 0.0;
    double l2 = 0.0;
    double linf = 0.0;
    double rms = 0.0;
    double bias = 0.0;
    double relative_l2 = 0.0;
};

/// Throws ConfigError when the two grids differ in shape or extent.
ComparisonReport compare_grids(const FieldGrid& a, const FieldGrid& b);

/// normalize_mean(a) - normalize_mean(b).
FieldGrid difference_grid(const FieldGrid& a, const FieldGrid& b);

struct UniformityReport {
    std::array<double, 4> region_rms{};
    double ratio = 1.0;  // max / min region RMS; 1 when all are zero
};

/// RMS of the mean-removed residual in each quadrant (2D) or quarter (1D).
/// Throws ConfigError with fewer than 2x2 (or 4) cells.
UniformityReport noise_uniformity(const FieldGrid& diff);

struct SoretFit {
    std::vector<double> x;       // positions of the interior points used
    std::vector<double> local;   // -(d ln u/dx) / (dT/dx) at those points
    double exponent = 0.0;       // least-squares slope of ln u against ln T
};

/// Works on 1D profiles without wrapping across the periodic seam. Points with
/// a zero temperature difference are skipped. Throws DomainError for u <= 0 or
/// T <= 0 and NumericalError when no point carries a temperature gradient.
SoretFit fit_soret(const FieldGrid& u, const FieldGrid& T);

/// Least-squares slope of log(error) against log(h).
/// Throws ConfigError with fewer than two samples or a non-positive entry.
double convergence_rate(std::span<const std::pair<double, double>> samples);

}  // namespace thermowalk
