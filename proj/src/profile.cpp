#include "thermowalk/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "thermowalk/error.hpp"
#include "profile_eval.hpp"

namespace thermowalk {

double ScalarField::operator()(Point p) const {
    if (const auto* a = std::get_if<Affine>(&repr_)) return a->offset + a->slope * p[0];
    return std::get<FieldGrid>(repr_).interpolate(p);
}

double ScalarField::lower_bound(const DomainSpec& domain) const {
    if (const auto* a = std::get_if<Affine>(&repr_))
        return a->slope >= 0.0 ? a->offset : a->offset + a->slope * domain.extent[0];
    return std::get<FieldGrid>(repr_).min();
}

std::string profile_name(const WalkProfile& profile) {
    struct Visitor {
        std::string operator()(const PaperFig2Profile&) const { return "paper-fig2"; }
        std::string operator()(const ConstantProfile&) const { return "constant"; }
        std::string operator()(const SqrtTemperatureProfile&) const { return "sqrt-temperature"; }
        std::string operator()(const SampledProfile&) const { return "sampled"; }
    };
    return std::visit(Visitor{}, profile);
}

StepScales eval_profile(const WalkProfile& profile, const DomainSpec& domain, Point x) {
    const Point p = domain.wrap(x);
    const StepScales s = std::visit([&](const auto& prof) { return detail::scales(prof, domain, p); }, profile);
    if (!std::isfinite(s.length) || !std::isfinite(s.time))
        throw NumericalError("walk profile '" + profile_name(profile) + "' is not finite at (" +
                             std::to_string(p[0]) + ", " + std::to_string(p[1]) + ")");
    return s;
}

double diffusivity(StepScales s, int n) {
    if (s.time == 0.0) throw NumericalError("zero step time in diffusivity");
    return s.length * s.length / (2.0 * n * s.time);
}

double walk_speed(StepScales s) {
    if (s.time == 0.0) throw NumericalError("zero step time in walk speed");
    return s.length / s.time;
}

double diffusivity(const WalkProfile& profile, const DomainSpec& domain, Point x, int n) {
    if (n != 1 && n != 2) throw ConfigError("dimension must be 1 or 2");
    return diffusivity(eval_profile(profile, domain, x), n);
}

double walk_speed(const WalkProfile& profile, const DomainSpec& domain, Point x) {
    return walk_speed(eval_profile(profile, domain, x));
}

namespace {

template <class F>
void for_each_probe(const DomainSpec& domain, F&& f) {
    constexpr int refine = 4;
    const int nx = domain.cells[0] * refine;
    const int ny = domain.dim == 2 ? domain.cells[1] * refine : 1;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const Point p{(i + 0.5) * domain.extent[0] / nx, domain.dim == 2 ? (j + 0.5) * domain.extent[1] / ny : 0.0};
            f(p);
        }
}

}  // namespace

void validate_profile(const WalkProfile& profile, const DomainSpec& domain) {
    domain.validate();
    if (const auto* c = std::get_if<ConstantProfile>(&profile)) {
        if (!(c->step_length > 0.0) || !(c->step_time > 0.0))
            throw ConfigError("constant profile needs positive step length and step time");
    }
    if (const auto* s = std::get_if<SqrtTemperatureProfile>(&profile)) {
        if (s->dim != domain.dim) throw ConfigError("sqrt-temperature profile dimension differs from the domain");
        if (!(s->diffusivity > 0.0)) throw ConfigError("sqrt-temperature profile needs a positive diffusivity");
        if (!(s->temperature.lower_bound(domain) > 0.0)) throw DomainError("temperature must be positive everywhere");
    }
    if (const auto* s = std::get_if<SampledProfile>(&profile)) {
        if (!(s->step_length.domain() == domain) || !(s->step_time.domain() == domain))
            throw ConfigError("sampled profile grids must match the simulation domain");
        if (!(s->step_length.min() > 0.0) || !(s->step_time.min() > 0.0))
            throw ConfigError("sampled profile needs positive step length and step time everywhere");
    }
    double half = domain.extent[0] / 2.0;
    if (domain.dim == 2) half = std::min(half, domain.extent[1] / 2.0);
    for_each_probe(domain, [&](Point p) {
        const StepScales s = eval_profile(profile, domain, p);
        if (!(s.length > 0.0) || !(s.time > 0.0)) throw ConfigError("walk profile must be positive everywhere");
        if (!(s.length < half)) throw ConfigError("walk step length must stay below half the domain extent");
    });
}

double min_step_time(const WalkProfile& profile, const DomainSpec& domain) {
    double lo = std::numeric_limits<double>::infinity();
    for_each_probe(domain, [&](Point p) { lo = std::min(lo, eval_profile(profile, domain, p).time); });
    return lo;
}

FieldGrid sample_diffusivity(const WalkProfile& profile, const DomainSpec& domain) {
    return FieldGrid::sample(domain, [&](Point p) { return diffusivity(profile, domain, p, domain.dim); });
}

FieldGrid sample_walk_speed(const WalkProfile& profile, const DomainSpec& domain) {
    return FieldGrid::sample(domain, [&](Point p) { return walk_speed(profile, domain, p); });
}

}  // namespace thermowalk
