#include "thermowalk/fvm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "thermowalk/error.hpp"
#include "thermowalk/transport.hpp"

namespace thermowalk::fvm {

std::string law_name(const FluxLaw& law) {
    struct Visitor {
        std::string operator()(const Fick&) const { return "fick"; }
        std::string operator()(const Chapman&) const { return "chapman"; }
        std::string operator()(const VanKampen&) const { return "vankampen"; }
        std::string operator()(const RandomWalk&) const { return "randomwalk"; }
        std::string operator()(const Thermophoretic&) const { return "thermophoretic"; }
    };
    return std::visit(Visitor{}, law);
}

LawKind law_kind(const FluxLaw& law) { return static_cast<LawKind>(law.index()); }

LawKind parse_law_kind(const std::string& name) {
    if (name == "fick") return LawKind::Fick;
    if (name == "chapman") return LawKind::Chapman;
    if (name == "vankampen") return LawKind::VanKampen;
    if (name == "randomwalk") return LawKind::RandomWalk;
    if (name == "thermophoretic") return LawKind::Thermophoretic;
    throw ConfigError("unknown flux law '" + name + "'");
}

FluxLaw law_from_profile(LawKind kind, const WalkProfile& profile, const DomainSpec& domain) {
    validate_profile(profile, domain);
    FieldGrid D = sample_diffusivity(profile, domain);
    FieldGrid S = sample_walk_speed(profile, domain);
    FieldGrid T(domain);
    if (const auto* p = std::get_if<SqrtTemperatureProfile>(&profile))
        T = FieldGrid::sample(domain, [&](Point x) { return p->temperature(x); });
    else
        for (std::size_t k = 0; k < S.size(); ++k) T[k] = S[k] * S[k];
    switch (kind) {
        case LawKind::Fick: return Fick{std::move(D)};
        case LawKind::Chapman: return Chapman{std::move(D)};
        case LawKind::VanKampen: return VanKampen{std::move(D), std::move(T)};
        case LawKind::RandomWalk: return RandomWalk{std::move(D), std::move(S)};
        case LawKind::Thermophoretic: {
            const SpeedModel model = SpeedModel::sqrt_temperature();
            FieldGrid DT(domain);
            for (std::size_t k = 0; k < DT.size(); ++k) DT[k] = thermal_diffusivity(D[k], model, T[k]);
            return Thermophoretic{std::move(D), std::move(DT), std::move(T)};
        }
    }
    throw ConfigError("unknown flux law");
}

const DomainSpec& law_domain(const FluxLaw& law) {
    struct Visitor {
        const DomainSpec& operator()(const Fick& l) const { return l.kappa.domain(); }
        const DomainSpec& operator()(const Chapman& l) const { return l.kappa.domain(); }
        const DomainSpec& operator()(const VanKampen& l) const { return l.diffusivity.domain(); }
        const DomainSpec& operator()(const RandomWalk& l) const { return l.diffusivity.domain(); }
        const DomainSpec& operator()(const Thermophoretic& l) const { return l.diffusivity.domain(); }
    };
    return std::visit(Visitor{}, law);
}

namespace {

void require_positive(const FieldGrid& g, const char* what) {
    g.require_finite(what);
    if (!(g.min() > 0.0)) throw DomainError(std::string(what) + " must be strictly positive");
}

void require_same(const FieldGrid& a, const FieldGrid& b) {
    if (!(a.domain() == b.domain())) throw ConfigError("coefficient fields of a flux law must share one grid");
}

// The face flux of every law has the form
//   F = -[alpha (w+ u+ - w u) + gamma (u + u+) / 2] / h
// with alpha a face coefficient, w a cell weight and gamma a drift term.
struct FaceCoeffs {
    double alpha;
    double w_lo;
    double w_hi;
    double gamma;
};

double mean2(const FieldGrid& g, std::size_t a, std::size_t b) { return 0.5 * (g[a] + g[b]); }

FaceCoeffs face_coeffs(const FluxLaw& law, std::size_t lo, std::size_t hi) {
    struct Visitor {
        std::size_t lo, hi;
        FaceCoeffs operator()(const Fick& l) const { return {mean2(l.kappa, lo, hi), 1.0, 1.0, 0.0}; }
        FaceCoeffs operator()(const Chapman& l) const { return {1.0, l.kappa[lo], l.kappa[hi], 0.0}; }
        FaceCoeffs operator()(const VanKampen& l) const {
            return {mean2(l.diffusivity, lo, hi) / mean2(l.temperature, lo, hi), l.temperature[lo],
                    l.temperature[hi], 0.0};
        }
        FaceCoeffs operator()(const RandomWalk& l) const {
            return {mean2(l.diffusivity, lo, hi) / mean2(l.speed, lo, hi), l.speed[lo], l.speed[hi], 0.0};
        }
        FaceCoeffs operator()(const Thermophoretic& l) const {
            return {mean2(l.diffusivity, lo, hi), 1.0, 1.0,
                    mean2(l.thermal_diffusivity, lo, hi) * (l.temperature[hi] - l.temperature[lo])};
        }
    };
    return std::visit(Visitor{lo, hi}, law);
}

inline double flux_of(const FaceCoeffs& c, double u_lo, double u_hi, double h) {
    return -(c.alpha * (c.w_hi * u_hi - c.w_lo * u_lo) + c.gamma * 0.5 * (u_lo + u_hi)) / h;
}

std::size_t neighbour(const DomainSpec& d, std::size_t k, int axis) {
    const std::size_t nx = d.cells[0];
    const std::size_t i = k % nx, j = k / nx;
    if (axis == 0) return j * nx + (i + 1 == nx ? 0 : i + 1);
    const std::size_t ny = d.cells[1];
    return (j + 1 == ny ? 0 : j + 1) * nx + i;
}

// Face coefficients of a law, computed once per run.
class Stencil {
public:
    explicit Stencil(const FluxLaw& law) : domain_(law_domain(law)) {
        const std::size_t n = domain_.cell_count();
        for (int a = 0; a < domain_.dim; ++a) {
            faces_[a].resize(n);
            hi_[a].resize(n);
            for (std::size_t k = 0; k < n; ++k) {
                hi_[a][k] = neighbour(domain_, k, a);
                faces_[a][k] = face_coeffs(law, k, hi_[a][k]);
            }
        }
        flux_.resize(n);
    }

    double max_effective_diffusivity() const {
        double d = 0.0;
        for (int a = 0; a < domain_.dim; ++a)
            for (const auto& c : faces_[a])
                d = std::max(d, c.alpha * std::max(c.w_lo, c.w_hi) + 0.5 * std::abs(c.gamma));
        return d;
    }

    /// out = du/dt
    void rate(std::span<const double> u, std::span<double> out) {
        std::fill(out.begin(), out.end(), 0.0);
        const std::size_t n = u.size();
        for (int a = 0; a < domain_.dim; ++a) {
            const double h = domain_.cell_width(a);
            for (std::size_t k = 0; k < n; ++k) {
                const std::size_t hi = hi_[a][k];
                flux_[k] = flux_of(faces_[a][k], u[k], u[hi], h);
            }
            for (std::size_t k = 0; k < n; ++k) {
                out[k] -= flux_[k] / h;
                out[hi_[a][k]] += flux_[k] / h;
            }
        }
    }

private:
    DomainSpec domain_;
    std::array<std::vector<FaceCoeffs>, 2> faces_;
    std::array<std::vector<std::size_t>, 2> hi_;
    std::vector<double> flux_;
};

// u += dt * r; returns max |dt * r| and checks the result.
double apply(std::span<double> u, std::span<const double> r, double dt) {
    double change = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double du = dt * r[k];
        u[k] += du;
        change = std::max(change, std::abs(du));
        if (!(u[k] >= 0.0))
            throw NumericalError(std::isfinite(u[k]) ? "density became negative" : "density became non-finite");
    }
    return change;
}

}  // namespace

void validate(const FluxLaw& law) {
    law_domain(law).validate();
    struct Visitor {
        void operator()(const Fick& l) const { require_positive(l.kappa, "kappa"); }
        void operator()(const Chapman& l) const { require_positive(l.kappa, "kappa"); }
        void operator()(const VanKampen& l) const {
            require_same(l.diffusivity, l.temperature);
            require_positive(l.diffusivity, "diffusivity");
            require_positive(l.temperature, "temperature");
        }
        void operator()(const RandomWalk& l) const {
            require_same(l.diffusivity, l.speed);
            require_positive(l.diffusivity, "diffusivity");
            require_positive(l.speed, "walk speed");
        }
        void operator()(const Thermophoretic& l) const {
            require_same(l.diffusivity, l.thermal_diffusivity);
            require_same(l.diffusivity, l.temperature);
            require_positive(l.diffusivity, "diffusivity");
            require_positive(l.temperature, "temperature");
            l.thermal_diffusivity.require_finite("thermal diffusivity");
        }
    };
    std::visit(Visitor{}, law);
}

double face_flux(const FluxLaw& law, const FieldGrid& u, Face face) {
    const DomainSpec& d = law_domain(law);
    if (!(u.domain() == d)) throw ConfigError("density grid does not match the flux law grid");
    if (face.axis < 0 || face.axis >= d.dim) throw ConfigError("face axis out of range");
    if (face.i < 0 || face.i >= d.cells[0] || face.j < 0 || face.j >= d.cells[1])
        throw ConfigError("face index out of range");
    const std::size_t lo = u.index(face.i, face.j);
    const std::size_t hi = neighbour(d, lo, face.axis);
    return flux_of(face_coeffs(law, lo, hi), u[lo], u[hi], d.cell_width(face.axis));
}

double stable_time_step(const FluxLaw& law, double sigma) {
    validate(law);
    if (!(sigma > 0.0)) throw ConfigError("CFL safety factor must be positive");
    const DomainSpec& d = law_domain(law);
    double h = d.cell_width(0);
    if (d.dim == 2) h = std::min(h, d.cell_width(1));
    const double dmax = Stencil(law).max_effective_diffusivity();
    if (!(dmax > 0.0)) throw DomainError("flux law has no diffusion");
    return sigma * h * h / (2.0 * d.dim * dmax);
}

SolverState make_state(FluxLaw law, FieldGrid initial, double sigma) {
    const double dt = stable_time_step(law, sigma);
    if (!(initial.domain() == law_domain(law))) throw ConfigError("initial density does not match the flux law grid");
    initial.require_finite("initial density");
    if (initial.min() < 0.0) throw DomainError("initial density must be non-negative");
    return SolverState{std::move(initial), std::move(law), 0.0, dt, 0};
}

FieldGrid rate(const FluxLaw& law, const FieldGrid& u) {
    validate(law);
    if (!(u.domain() == law_domain(law))) throw ConfigError("density grid does not match the flux law grid");
    FieldGrid out(u.domain());
    Stencil(law).rate(u.values(), out.values());
    return out;
}

SolverState step_explicit(const SolverState& state) {
    SolverState next = state;
    const FieldGrid r = rate(state.law, state.u);
    apply(next.u.values(), r.values(), state.dt);
    next.time += state.dt;
    ++next.steps;
    return next;
}

void advance_to(SolverState& state, double t_final) {
    if (!std::isfinite(t_final)) throw ConfigError("t_final must be finite");
    validate(state.law);
    Stencil stencil(state.law);
    std::vector<double> r(state.u.size());
    while (state.time < t_final) {
        const double remaining = t_final - state.time;
        const double dt = std::min(state.dt, remaining);
        stencil.rate(state.u.values(), r);
        apply(state.u.values(), r, dt);
        state.time = dt == remaining ? t_final : state.time + dt;
        ++state.steps;
    }
}

SteadyResult run_to_steady(SolverState state, const SteadyOptions& options) {
    if (!(options.tol > 0.0)) throw ConfigError("steady-state tolerance must be positive");
    validate(state.law);
    if (!(state.dt > 0.0)) throw ConfigError("solver state has no time step");
    Stencil stencil(state.law);
    std::vector<double> r(state.u.size());
    double residual = 0.0;
    for (std::uint64_t n = 0;; ++n) {
        if (n >= options.max_steps)
            throw NumericalError("no steady state after " + std::to_string(options.max_steps) +
                                 " steps (residual " + std::to_string(residual) + ")");
        stencil.rate(state.u.values(), r);
        residual = apply(state.u.values(), r, state.dt) / state.dt;
        state.time += state.dt;
        ++state.steps;
        if (residual < options.tol) break;
    }
    FieldGrid normalized = normalize_mean(state.u);
    return SteadyResult{std::move(state), std::move(normalized), residual};
}

FieldGrid analytic_steady(const FluxLaw& law) {
    validate(law);
    auto reciprocal = [](const FieldGrid& g) {
        FieldGrid out(g.domain());
        for (std::size_t k = 0; k < g.size(); ++k) out[k] = 1.0 / g[k];
        return normalize_mean(std::move(out));
    };
    struct Visitor {
        decltype(reciprocal)& inv;
        FieldGrid operator()(const Fick& l) const { return FieldGrid(l.kappa.domain(), 1.0); }
        FieldGrid operator()(const Chapman& l) const { return inv(l.kappa); }
        FieldGrid operator()(const VanKampen& l) const { return inv(l.temperature); }
        FieldGrid operator()(const RandomWalk& l) const { return inv(l.speed); }
        FieldGrid operator()(const Thermophoretic& l) const {
            // grad ln u = -S_T grad T integrates in closed form only for uniform S_T.
            const double st = l.thermal_diffusivity[0] / l.diffusivity[0];
            for (std::size_t k = 0; k < l.diffusivity.size(); ++k) {
                const double s = l.thermal_diffusivity[k] / l.diffusivity[k];
                if (std::abs(s - st) > 1e-12 * std::max(1.0, std::abs(st)))
                    throw UnsupportedError("analytic thermophoretic steady state needs a uniform Soret coefficient");
            }
            const double t_mid = 0.5 * (l.temperature.min() + l.temperature.max());
            FieldGrid out(l.temperature.domain());
            for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::exp(-st * (l.temperature[k] - t_mid));
            return normalize_mean(std::move(out));
        }
    };
    return std::visit(Visitor{reciprocal}, law);
}

double total_mass(const FieldGrid& u) {
    double sum = 0.0;
    for (double v : u.values()) sum += v;
    return sum * u.domain().cell_volume();
}

}  // namespace thermowalk::fvm
