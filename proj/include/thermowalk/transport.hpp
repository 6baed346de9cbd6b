#pragma once

#include <functional>
#include <optional>

#include "thermowalk/grid.hpp"
#include "thermowalk/profile.hpp"

namespace thermowalk {

inline constexpr double kBoltzmann = 1.380649e-23;  // J/K, exact SI value
inline constexpr double kPi = 3.14159265358979323846;

/// Particle and solvent properties for the thermodynamic relations.
/// Viscosity follows eta(T) = eta0 (T / T0)^s unless constant_viscosity is set.
struct PhysicalParams {
    double k_boltzmann = kBoltzmann;
    double mass = 1.0e-15;         // kg
    double radius = 1.0e-6;        // m
    double eta0 = 8.9e-4;          // Pa s
    double T0 = 298.0;             // K
    double viscosity_exponent = 0.75;
    std::optional<double> constant_viscosity;

    /// sqrt(k_B / M).
    double speed_scale() const;
    double viscosity(double T) const;
    void validate() const;
};

/// Walk speed as a function of temperature, S(T) = scale * shape(T).
/// The Soret coefficient only sees the shape, so rescaling is exact.
class SpeedModel {
public:
    static SpeedModel sqrt_temperature(double scale = 1.0);
    /// Arbitrary shape; derivatives use a central difference with relative step 1e-6.
    static SpeedModel custom(std::function<double(double)> shape, double scale = 1.0);

    double speed(double T) const;
    /// dS/dT
    double derivative(double T) const;
    /// d ln S / dT, independent of the scale.
    double log_derivative(double T) const;

    double scale() const { return scale_; }
    SpeedModel scaled(double factor) const;
    bool analytic() const { return !shape_; }

private:
    SpeedModel(std::function<double(double)> shape, double scale) : shape_(std::move(shape)), scale_(scale) {}

    std::function<double(double)> shape_;  // empty: sqrt
    double scale_ = 1.0;
};

/// Per-cell S = c sqrt(T); c = sqrt(k_B/M) in physical mode and 1 otherwise.
FieldGrid speed_from_temperature(const FieldGrid& T, const PhysicalParams& params, bool nondimensional = true);

/// Stokes-Einstein kappa = k_B T / (6 pi eta(T) R).
double einstein_diffusivity(double T, const PhysicalParams& params);

/// Soret coefficient S_T = d ln S / dT.
double soret_coefficient(const SpeedModel& model, double T);

/// Thermal diffusivity D_T = (D/S) dS/dT, evaluated as D * S_T.
double thermal_diffusivity(double D, const SpeedModel& model, double T);

struct CoefficientSet {
    FieldGrid diffusivity;
    FieldGrid speed;
    FieldGrid thermal_diffusivity;
    FieldGrid soret;
};

/// D and S from the profile at cell centres; D_T and S_T from the temperature
/// field through the speed model.
CoefficientSet coefficients(const WalkProfile& profile, const DomainSpec& domain, const FieldGrid& temperature,
                            const SpeedModel& model);

/// Mean-1 normalised 1/S at cell centres.
FieldGrid theoretical_steady_state(const FieldGrid& speed);
FieldGrid theoretical_steady_state(const WalkProfile& profile, const DomainSpec& domain);

}  // namespace thermowalk
