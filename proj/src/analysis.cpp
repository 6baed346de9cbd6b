#include "thermowalk/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "thermowalk/error.hpp"

namespace thermowalk {

namespace {

void require_same_shape(const FieldGrid& a, const FieldGrid& b) {
    if (!(a.domain() == b.domain()))
        throw ConfigError("grids differ in shape: " + std::to_string(a.domain().cells[0]) + "x" +
                          std::to_string(a.domain().cells[1]) + " vs " + std::to_string(b.domain().cells[0]) + "x" +
                          std::to_string(b.domain().cells[1]));
}

// Slope of the least-squares line through (x, y).
double ls_slope(std::span<const double> x, std::span<const double> y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        mx += x[k];
        my += y[k];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxx += (x[k] - mx) * (x[k] - mx);
        sxy += (x[k] - mx) * (y[k] - my);
    }
    if (!(sxx > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return sxy / sxx;
}

}  // namespace

FieldGrid difference_grid(const FieldGrid& a, const FieldGrid& b) {
    require_same_shape(a, b);
    FieldGrid d = normalize_mean(a);
    const FieldGrid nb = normalize_mean(b);
    for (std::size_t k = 0; k < d.size(); ++k) d[k] -= nb[k];
    return d;
}

ComparisonReport compare_grids(const FieldGrid& a, const FieldGrid& b) {
    require_same_shape(a, b);
    const FieldGrid na = normalize_mean(a), nb = normalize_mean(b);
    const double vol = a.domain().cell_volume();
    double s1 = 0.0, s2 = 0.0, linf = 0.0, sum = 0.0, ref2 = 0.0;
    for (std::size_t k = 0; k < na.size(); ++k) {
        const double d = na[k] - nb[k];
        s1 += std::abs(d);
        s2 += d * d;
        sum += d;
        linf = std::max(linf, std::abs(d));
        ref2 += nb[k] * nb[k];
    }
    const double n = static_cast<double>(na.size());
    ComparisonReport r;
    r.l1 = s1 * vol;
    r.l2 = std::sqrt(s2 * vol);
    r.linf = linf;
    r.rms = std::sqrt(s2 / n);
    r.bias = sum / n;
    r.relative_l2 = std::sqrt(s2 / ref2);
    return r;
}

UniformityReport noise_uniformity(const FieldGrid& diff) {
    const DomainSpec& d = diff.domain();
    const int nx = d.cells[0], ny = d.dim == 2 ? d.cells[1] : 1;
    if (d.dim == 2 ? (nx < 2 || ny < 2) : nx < 4)
        throw ConfigError("noise uniformity needs at least 2x2 cells (4 in 1D)");
    const double m = diff.mean();
    std::array<double, 4> sum{};
    std::array<std::size_t, 4> count{};
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const int region = d.dim == 2 ? (i * 2 / nx) + 2 * (j * 2 / ny) : i * 4 / nx;
            const double v = diff.at(i, j) - m;
            sum[region] += v * v;
            ++count[region];
        }
    UniformityReport r;
    for (int q = 0; q < 4; ++q) r.region_rms[q] = std::sqrt(sum[q] / static_cast<double>(count[q]));
    const auto [lo, hi] = std::minmax_element(r.region_rms.begin(), r.region_rms.end());
    if (*hi == 0.0)
        r.ratio = 1.0;
    else
        r.ratio = *lo == 0.0 ? std::numeric_limits<double>::infinity() : *hi / *lo;
    return r;
}

SoretFit fit_soret(const FieldGrid& u, const FieldGrid& T) {
    require_same_shape(u, T);
    if (u.domain().dim != 1) throw ConfigError("Soret fit works on 1D profiles");
    const int n = u.domain().cells[0];
    if (n < 3) throw ConfigError("Soret fit needs at least 3 cells");
    if (!(u.min() > 0.0)) throw DomainError("density must be positive for a Soret fit");
    if (!(T.min() > 0.0)) throw DomainError("temperature must be positive for a Soret fit");

    SoretFit fit;
    std::vector<double> ln_u(n), ln_t(n);
    for (int i = 0; i < n; ++i) {
        ln_u[i] = std::log(u[i]);
        ln_t[i] = std::log(T[i]);
    }
    for (int i = 1; i + 1 < n; ++i) {
        const double dT = T[i + 1] - T[i - 1];
        if (dT == 0.0) continue;
        fit.x.push_back(u.domain().cell_center(i)[0]);
        fit.local.push_back(-(ln_u[i + 1] - ln_u[i - 1]) / dT);
    }
    if (fit.local.empty()) throw NumericalError("temperature has no gradient; Soret coefficient is undefined");
    fit.exponent = ls_slope(ln_t, ln_u);
    if (!std::isfinite(fit.exponent)) throw NumericalError("Soret exponent fit is degenerate");
    return fit;
}

double convergence_rate(std::span<const std::pair<double, double>> samples) {
    if (samples.size() < 2) throw ConfigError("convergence rate needs at least two resolutions");
    std::vector<double> lh, le;
    for (const auto& [h, e] : samples) {
        if (!(h > 0.0) || !(e > 0.0)) throw ConfigError("grid spacings and errors must be positive");
        lh.push_back(std::log(h));
        le.push_back(std::log(e));
    }
    const double p = ls_slope(lh, le);
    if (!std::isfinite(p)) throw ConfigError("convergence rate needs distinct grid spacings");
    return p;
}

}  // namespace thermowalk
