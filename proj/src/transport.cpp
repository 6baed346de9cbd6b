#include "thermowalk/transport.hpp"

#include <cmath>
#include <string>

#include "thermowalk/error.hpp"

namespace thermowalk {

double PhysicalParams::speed_scale() const { return std::sqrt(k_boltzmann / mass); }

void PhysicalParams::validate() const {
    if (!(k_boltzmann > 0.0) || !(mass > 0.0)) throw DomainError("k_B and particle mass must be positive");
    if (!(radius > 0.0)) throw DomainError("particle radius must be positive");
    if (constant_viscosity) {
        if (!(*constant_viscosity > 0.0)) throw DomainError("viscosity must be positive");
        return;
    }
    if (!(eta0 > 0.0) || !(T0 > 0.0)) throw DomainError("eta0 and T0 must be positive");
    if (!(viscosity_exponent > 0.5 && viscosity_exponent < 1.0))
        throw DomainError("viscosity exponent must lie in (1/2, 1)");
}

double PhysicalParams::viscosity(double T) const {
    if (constant_viscosity) return *constant_viscosity;
    return eta0 * std::pow(T / T0, viscosity_exponent);
}

SpeedModel SpeedModel::sqrt_temperature(double scale) {
    if (!(scale > 0.0)) throw DomainError("speed scale must be positive");
    return SpeedModel({}, scale);
}

SpeedModel SpeedModel::custom(std::function<double(double)> shape, double scale) {
    if (!shape) throw ConfigError("custom speed model needs a shape function");
    if (!(scale > 0.0)) throw DomainError("speed scale must be positive");
    return SpeedModel(std::move(shape), scale);
}

SpeedModel SpeedModel::scaled(double factor) const {
    if (!(factor > 0.0)) throw DomainError("speed scale must be positive");
    SpeedModel out = *this;
    out.scale_ *= factor;
    return out;
}

namespace {

void require_positive_temperature(double T) {
    if (!(T > 0.0)) throw DomainError("temperature must be positive, got " + std::to_string(T));
}

// Central difference with relative step 1e-6 on the shape only.
double shape_slope(const std::function<double(double)>& shape, double T) {
    const double h = 1e-6 * T;
    return (shape(T + h) - shape(T - h)) / (2.0 * h);
}

}  // namespace

double SpeedModel::speed(double T) const {
    require_positive_temperature(T);
    return scale_ * (shape_ ? shape_(T) : std::sqrt(T));
}

double SpeedModel::derivative(double T) const {
    require_positive_temperature(T);
    const double d = shape_ ? scale_ * shape_slope(shape_, T) : scale_ * 0.5 / std::sqrt(T);
    if (!std::isfinite(d)) throw NumericalError("speed model derivative is not finite");
    return d;
}

double SpeedModel::log_derivative(double T) const {
    require_positive_temperature(T);
    double v;
    if (!shape_) {
        v = 0.5 / T;
    } else {
        const double s = shape_(T);
        if (!(s > 0.0)) throw DomainError("speed must be positive");
        v = shape_slope(shape_, T) / s;
    }
    if (!std::isfinite(v)) throw NumericalError("speed model log-derivative is not finite");
    return v;
}

FieldGrid speed_from_temperature(const FieldGrid& T, const PhysicalParams& params, bool nondimensional) {
    const double c = nondimensional ? 1.0 : params.speed_scale();
    FieldGrid S(T.domain());
    for (std::size_t k = 0; k < T.size(); ++k) {
        require_positive_temperature(T[k]);
        S[k] = c * std::sqrt(T[k]);
    }
    return S;
}

double einstein_diffusivity(double T, const PhysicalParams& params) {
    require_positive_temperature(T);
    params.validate();
    const double eta = params.viscosity(T);
    return params.k_boltzmann * T / (6.0 * kPi * eta * params.radius);
}

double soret_coefficient(const SpeedModel& model, double T) { return model.log_derivative(T); }

double thermal_diffusivity(double D, const SpeedModel& model, double T) {
    if (D == 0.0) return 0.0;
    return D * model.log_derivative(T);
}

CoefficientSet coefficients(const WalkProfile& profile, const DomainSpec& domain, const FieldGrid& temperature,
                            const SpeedModel& model) {
    if (!(temperature.domain() == domain)) throw ConfigError("temperature grid does not match the domain");
    CoefficientSet out{sample_diffusivity(profile, domain), sample_walk_speed(profile, domain), FieldGrid(domain),
                       FieldGrid(domain)};
    for (std::size_t k = 0; k < temperature.size(); ++k) {
        out.soret[k] = soret_coefficient(model, temperature[k]);
        out.thermal_diffusivity[k] = out.diffusivity[k] * out.soret[k];
    }
    return out;
}

FieldGrid theoretical_steady_state(const FieldGrid& speed) {
    FieldGrid inv(speed.domain());
    for (std::size_t k = 0; k < speed.size(); ++k) {
        if (!(speed[k] > 0.0)) throw DomainError("walk speed must be positive everywhere");
        inv[k] = 1.0 / speed[k];
    }
    return normalize_mean(std::move(inv));
}

FieldGrid theoretical_steady_state(const WalkProfile& profile, const DomainSpec& domain) {
    return theoretical_steady_state(sample_walk_speed(profile, domain));
}

}  // namespace thermowalk
