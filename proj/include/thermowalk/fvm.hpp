#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "thermowalk/grid.hpp"
#include "thermowalk/profile.hpp"

namespace thermowalk::fvm {

// Flux laws. Every coefficient is sampled on the solver grid.

/// F = -kappa grad u
struct Fick {
    FieldGrid kappa;
};

/// F = -grad(kappa u)
struct Chapman {
    FieldGrid kappa;
};

/// F = -(D/T) grad(T u)
struct VanKampen {
    FieldGrid diffusivity;
    FieldGrid temperature;
};

/// F = -(D/S) grad(S u)
struct RandomWalk {
    FieldGrid diffusivity;
    FieldGrid speed;
};

/// F = -D grad u - u D_T grad T
struct Thermophoretic {
    FieldGrid diffusivity;
    FieldGrid thermal_diffusivity;
    FieldGrid temperature;
};

using FluxLaw = std::variant<Fick, Chapman, VanKampen, RandomWalk, Thermophoretic>;

enum class LawKind { Fick, Chapman, VanKampen, RandomWalk, Thermophoretic };

std::string law_name(const FluxLaw& law);
LawKind law_kind(const FluxLaw& law);
/// Accepts fick, chapman, vankampen, randomwalk, thermophoretic.
LawKind parse_law_kind(const std::string& name);

/// Samples the coefficients of a law from a walk profile at cell centres,
/// with S = sqrt(T). The temperature is the profile's own field for
/// sqrt-temperature and S^2 otherwise; kappa is the walk diffusivity and
/// D_T = D S_T.
FluxLaw law_from_profile(LawKind kind, const WalkProfile& profile, const DomainSpec& domain);
const DomainSpec& law_domain(const FluxLaw& law);

/// Throws ConfigError for mismatched grids and DomainError for non-positive
/// coefficients (D_T may take any sign).
void validate(const FluxLaw& law);

/// The face between `cell` and its periodic neighbour in +axis.
struct Face {
    int axis = 0;
    int i = 0;
    int j = 0;
};

/// Discrete flux through a face. Face coefficients are arithmetic means of the
/// two cell values; products (S u, kappa u, T u) are formed at cell centres
/// and then differenced.
double face_flux(const FluxLaw& law, const FieldGrid& u, Face face);

struct SolverState {
    FieldGrid u;
    FluxLaw law;
    double time = 0.0;
    double dt = 0.0;
    std::uint64_t steps = 0;
};

inline constexpr double kCflSafety = 0.5;

/// dt = sigma h^2 / (2 n D_max), with D_max the largest effective diffusion
/// coefficient of the law on the grid.
double stable_time_step(const FluxLaw& law, double sigma = kCflSafety);

/// Validates the law and the initial density (finite, non-negative) and picks dt.
SolverState make_state(FluxLaw law, FieldGrid initial, double sigma = kCflSafety);

/// Discrete divergence of the flux, i.e. the semi-discrete du/dt.
FieldGrid rate(const FluxLaw& law, const FieldGrid& u);

/// One forward-Euler step. Throws NumericalError on NaN or negative density.
SolverState step_explicit(const SolverState& state);

/// Steps until the time reaches t_final; the last step is shortened to land on it.
void advance_to(SolverState& state, double t_final);

struct SteadyOptions {
    double tol = 1e-10;
    std::uint64_t max_steps = 100'000'000;
};

struct SteadyResult {
    SolverState state;
    FieldGrid normalized;  // mean-1 copy of state.u
    double residual = 0.0; // max |u^{n+1} - u^n| / dt at the last step
};

/// Iterates until max_i |u^{n+1}_i - u^n_i| / dt < tol. A state that is
/// already steady returns after the single probing step.
/// Throws NumericalError when max_steps is exceeded.
SteadyResult run_to_steady(SolverState state, const SteadyOptions& options = {});

/// Zero-flux solution of the continuous law, mean-1 normalised.
/// Thermophoretic is supported only when S_T = D_T / D is uniform.
FieldGrid analytic_steady(const FluxLaw& law);

/// Sum of u times the cell volume.
double total_mass(const FieldGrid& u);

}  // namespace thermowalk::fvm
