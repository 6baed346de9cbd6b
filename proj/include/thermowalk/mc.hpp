#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "thermowalk/grid.hpp"
#include "thermowalk/profile.hpp"

namespace thermowalk {

/// Where the step length of a gridless jump is evaluated. The waiting time is
/// always taken at the departure point.
enum class StepRule {
    /// Length at the jump midpoint x + (dx(x)/2) e. This is the continuum
    /// version of the lattice in which the walk length between two sites is
    /// the site spacing; its stationary density is proportional to 1/S.
    Midpoint,
    /// Length at the departure point. Stationary density is proportional to 1/D.
    Departure,
};

const char* to_string(StepRule rule);
StepRule parse_step_rule(const std::string& name);

struct ParticleEnsemble {
    DomainSpec domain;
    std::uint64_t seed = 42;
    std::vector<double> x;
    std::vector<double> y;  // empty in 1D
    std::vector<double> clock;
    std::vector<double> clock_carry;   // compensated-summation remainder of clock
    std::vector<std::uint64_t> steps;  // per-particle step counter, also the RNG counter
    std::vector<double> disp_x;        // unwrapped displacement, only when tracked
    std::vector<double> disp_y;

    std::size_t size() const { return x.size(); }
    int dim() const { return domain.dim; }
    Point position(std::size_t i) const { return {x[i], domain.dim == 2 ? y[i] : 0.0}; }
    bool tracks_displacement() const { return !disp_x.empty(); }
};

/// Positions i.i.d. uniform over the domain, drawn from per-particle streams
/// keyed by (seed, index); clocks zero. Throws ConfigError for count == 0.
ParticleEnsemble init_ensemble(const DomainSpec& domain, std::size_t count, std::uint64_t seed,
                               bool track_displacement = false);

struct StepResult {
    Point position;
    double time;
};

/// One gridless jump from x in the given unit direction.
StepResult step_particle(const WalkProfile& profile, const DomainSpec& domain, Point x, Point direction,
                         StepRule rule = StepRule::Midpoint);

struct SimulateOptions {
    StepRule rule = StepRule::Midpoint;
    unsigned workers = 1;
    std::uint64_t step_cap = 1'000'000'000;
};

struct SimulateStats {
    std::uint64_t total_steps = 0;
    std::uint64_t max_steps = 0;  // largest per-particle step count during this call
};

/// Steps every particle while its clock is below t_final; the step that
/// crosses t_final is completed. Bit-identical for any worker count.
/// Throws ConfigError for t_final <= 0 and NumericalError when the projected
/// per-particle step count exceeds the cap.
SimulateStats simulate(ParticleEnsemble& ensemble, const WalkProfile& profile, double t_final,
                       const SimulateOptions& options = {});

/// Counts per bin converted to a mean-1 density. In 1D bins[1] is ignored.
FieldGrid histogram(const ParticleEnsemble& ensemble, std::array<int, 2> bins, unsigned workers = 1);

struct VarianceEstimate {
    double diffusivity = 0.0;      // <|x(t) - x(0)|^2> / (2 n t)
    double standard_error = 0.0;
};

/// Empirical diffusivity from unwrapped displacements accumulated between
/// `before` and `after` (same ensemble, displacement tracking on).
VarianceEstimate variance(const ParticleEnsemble& before, const ParticleEnsemble& after, double t);

// ---------------------------------------------------------------------------
// 1D lattice walk: particles sit on sites x^i and jump to a neighbouring site
// after waiting the departure site's traveling time.

struct LatticeState {
    std::vector<double> sites;             // strictly increasing, inside [0, extent)
    std::vector<double> site_dt;           // traveling time at each site
    std::vector<std::uint64_t> occupancy;  // particle count per site
    double extent = 1.0;

    std::size_t site_count() const { return sites.size(); }
    std::uint64_t total() const;
    void validate() const;
};

/// Uniform lattice with `count` sites at cell centres of [0, extent).
LatticeState make_uniform_lattice(int count, double extent, std::span<const double> site_dt);

/// Every particle jumps once. Particles are visited site by site in order and
/// consume one draw each: 0 moves left, anything else moves right (periodic).
LatticeState lattice_step(const LatticeState& state, std::span<const std::uint8_t> draws);

struct LatticeWalkers {
    std::vector<std::uint32_t> site;
    std::vector<double> clock;  // time of arrival at the current site
    std::vector<std::uint64_t> jumps;
    std::uint64_t seed = 42;

    std::size_t size() const { return site.size(); }
};

/// Places `count` particles uniformly over the sites.
LatticeWalkers init_lattice_walkers(const LatticeState& lattice, std::size_t count, std::uint64_t seed);

/// Event-driven walk: each particle jumps while its next departure time
/// (arrival + site_dt) is at or before t. Afterwards every particle occupies
/// the site it holds at time t.
void lattice_advance(const LatticeState& lattice, LatticeWalkers& walkers, double t, unsigned workers = 1);

/// Occupancy of the walkers mapped onto the lattice.
LatticeState lattice_occupancy(const LatticeState& lattice, const LatticeWalkers& walkers);

/// Occupancy per unit length (U / cell width), mean-1 normalised.
FieldGrid lattice_density(const LatticeState& state);

}  // namespace thermowalk
