#pragma once

#include <string>
#include <variant>

#include "thermowalk/grid.hpp"

namespace thermowalk {

/// A scalar coefficient given either in closed form (affine in x) or as a
/// sampled grid read with periodic bilinear interpolation.
class ScalarField {
public:
    struct Affine {
        double offset = 1.0;
        double slope = 0.0;  // along axis 0
    };

    ScalarField() = default;
    static ScalarField constant(double value) { return ScalarField(Affine{value, 0.0}); }
    static ScalarField affine(double offset, double slope) { return ScalarField(Affine{offset, slope}); }
    static ScalarField sampled(FieldGrid grid) { return ScalarField(std::move(grid)); }

    double operator()(Point p) const;
    bool is_sampled() const { return std::holds_alternative<FieldGrid>(repr_); }

    /// Smallest value over the domain (exact for the affine form, over samples otherwise).
    double lower_bound(const DomainSpec& domain) const;

private:
    explicit ScalarField(Affine a) : repr_(a) {}
    explicit ScalarField(FieldGrid g) : repr_(std::move(g)) {}

    std::variant<Affine, FieldGrid> repr_{Affine{}};
};

/// Built-in heterogeneous profile: with r = 0.2 + |x - 0.5|^2 (distance to
/// the centre of the unit box), step length 0.02 r and step time 0.02 r^2.
/// D = 0.005 everywhere in 2D while S = 1/r varies.
struct PaperFig2Profile {};

struct ConstantProfile {
    double step_length = 0.01;
    double step_time = 0.01;
};

/// Walk with a prescribed diffusivity and speed S = sqrt(T):
/// step_time = step_length / S, step_length = 2 n D / S.
struct SqrtTemperatureProfile {
    int dim = 1;
    double diffusivity = 0.005;
    ScalarField temperature = ScalarField::affine(1.0, 1.0);
};

/// Step length and step time given as sampled grids.
struct SampledProfile {
    FieldGrid step_length;
    FieldGrid step_time;
};

using WalkProfile = std::variant<PaperFig2Profile, ConstantProfile, SqrtTemperatureProfile, SampledProfile>;

struct StepScales {
    double length;
    double time;
};

std::string profile_name(const WalkProfile& profile);

/// Step length and step time at x (wrapped into the domain first).
/// Throws NumericalError on a non-finite value.
StepScales eval_profile(const WalkProfile& profile, const DomainSpec& domain, Point x);

/// D = dx^2 / (2 n dt).
double diffusivity(const WalkProfile& profile, const DomainSpec& domain, Point x, int n);
/// S = dx / dt.
double walk_speed(const WalkProfile& profile, const DomainSpec& domain, Point x);

double diffusivity(StepScales s, int n);
double walk_speed(StepScales s);

/// Checks positivity, boundedness and dx < extent/2 by sampling the profile on
/// a grid four times finer than the domain's cells. Throws ConfigError.
void validate_profile(const WalkProfile& profile, const DomainSpec& domain);

/// Lower bound on the step time (sampled), used to project step counts.
double min_step_time(const WalkProfile& profile, const DomainSpec& domain);

FieldGrid sample_diffusivity(const WalkProfile& profile, const DomainSpec& domain);
FieldGrid sample_walk_speed(const WalkProfile& profile, const DomainSpec& domain);

}  // namespace thermowalk
