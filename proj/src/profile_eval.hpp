#pragma once

// Profile formulas shared by the scalar API and the vectorised particle
// kernel. V is double or a GCC vector of doubles.

#include <cmath>

#include "thermowalk/profile.hpp"
#include "simd.hpp"

namespace thermowalk::detail {

template <class V>
struct ScalesOf {
    V length;
    V time;
};

/// r = 0.2 + |x - c|^2; length = 0.02 r; time = 0.02 r^2.
template <class V>
inline ScalesOf<V> paper_fig2(V offset_x, V offset_y) {
    const V r = simd::fmadd(offset_y, offset_y, simd::fmadd(offset_x, offset_x, V{} + 0.2));
    return {0.02 * r, 0.02 * (r * r)};
}

template <class V>
inline ScalesOf<V> paper_fig2(V offset_x) {
    const V r = simd::fmadd(offset_x, offset_x, V{} + 0.2);
    return {0.02 * r, 0.02 * (r * r)};
}

inline StepScales scales(const PaperFig2Profile&, const DomainSpec& domain, Point p) {
    const double ox = p[0] - 0.5 * domain.extent[0];
    if (domain.dim == 1) {
        const auto s = paper_fig2(ox);
        return {s.length, s.time};
    }
    const auto s = paper_fig2(ox, p[1] - 0.5 * domain.extent[1]);
    return {s.length, s.time};
}

inline StepScales scales(const ConstantProfile& c, const DomainSpec&, Point) { return {c.step_length, c.step_time}; }

inline StepScales scales(const SqrtTemperatureProfile& s, const DomainSpec&, Point p) {
    const double speed = std::sqrt(s.temperature(p));
    const double length = 2.0 * s.dim * s.diffusivity / speed;
    return {length, length / speed};
}

inline StepScales scales(const SampledProfile& s, const DomainSpec&, Point p) {
    return {s.step_length.interpolate(p), s.step_time.interpolate(p)};
}

}  // namespace thermowalk::detail
