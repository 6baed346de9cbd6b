#include "thermowalk/thermowalk.h"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "thermowalk/analysis.hpp"
#include "thermowalk/error.hpp"
#include "thermowalk/fvm.hpp"
#include "thermowalk/grid_io.hpp"
#include "thermowalk/mc.hpp"
#include "thermowalk/transport.hpp"

namespace tw = thermowalk;

struct tw_grid {
    tw::GridFile file;
};

struct tw_profile {
    tw::WalkProfile profile;
    std::string name;
};

struct tw_ensemble {
    tw::ParticleEnsemble ensemble;
};

struct tw_law {
    tw::fvm::FluxLaw law;
    std::string name;
};

struct tw_solver {
    tw::fvm::SolverState state;
};

namespace {

thread_local std::string g_last_error;

tw_status status_of(tw::ErrorKind kind) {
    switch (kind) {
        case tw::ErrorKind::Config: return TW_ERR_CONFIG;
        case tw::ErrorKind::Numerical: return TW_ERR_NUMERICAL;
        case tw::ErrorKind::Domain: return TW_ERR_DOMAIN;
        case tw::ErrorKind::Io: return TW_ERR_IO;
        case tw::ErrorKind::Unsupported: return TW_ERR_UNSUPPORTED;
    }
    return TW_ERR_INTERNAL;
}

template <class F>
tw_status guarded(F&& f) noexcept {
    try {
        f();
        g_last_error.clear();
        return TW_OK;
    } catch (const tw::Error& e) {
        g_last_error = e.what();
        return status_of(e.kind());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return TW_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return TW_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return TW_ERR_INTERNAL;
    }
}

template <class T>
const T& need(const T* p, const char* what) {
    if (!p) throw tw::ConfigError(std::string(what) + " must not be NULL");
    return *p;
}

template <class T>
T& need(T* p, const char* what) {
    if (!p) throw tw::ConfigError(std::string(what) + " must not be NULL");
    return *p;
}

const char* str(const char* p, const char* what) {
    if (!p) throw tw::ConfigError(std::string(what) + " must not be NULL");
    return p;
}

tw::DomainSpec to_domain(const tw_domain* d) {
    const tw_domain& in = need(d, "domain");
    tw::DomainSpec out{in.dim, {in.cells[0], in.cells[1]}, {in.extent[0], in.extent[1]}};
    if (out.dim == 1) {
        out.cells[1] = 1;
        out.extent[1] = 1.0;
    }
    out.validate();
    return out;
}

tw_domain from_domain(const tw::DomainSpec& d) {
    return tw_domain{d.dim, {d.cells[0], d.cells[1]}, {d.extent[0], d.extent[1]}};
}

tw_grid* new_grid(tw::FieldGrid g) { return new tw_grid{tw::GridFile{std::move(g), {}}}; }

tw::PhysicalParams to_params(const tw_physical_params* p) {
    const tw_physical_params& in = need(p, "params");
    tw::PhysicalParams out;
    out.k_boltzmann = in.k_boltzmann;
    out.mass = in.mass;
    out.radius = in.radius;
    out.eta0 = in.eta0;
    out.T0 = in.T0;
    out.viscosity_exponent = in.viscosity_exponent;
    if (in.constant_viscosity > 0.0) out.constant_viscosity = in.constant_viscosity;
    return out;
}

tw_profile* new_profile(tw::WalkProfile p) {
    auto* out = new tw_profile{std::move(p), {}};
    out->name = tw::profile_name(out->profile);
    return out;
}

tw_law* new_law(tw::fvm::FluxLaw law) {
    tw::fvm::validate(law);
    auto* out = new tw_law{std::move(law), {}};
    out->name = tw::fvm::law_name(out->law);
    return out;
}

}  // namespace

extern "C" {

const char* tw_version(void) { return "0.1.0"; }

const char* tw_last_error(void) { return g_last_error.c_str(); }

const char* tw_status_name(tw_status status) {
    switch (status) {
        case TW_OK: return "ok";
        case TW_ERR_CONFIG: return "config";
        case TW_ERR_NUMERICAL: return "numerical";
        case TW_ERR_DOMAIN: return "domain";
        case TW_ERR_IO: return "io";
        case TW_ERR_UNSUPPORTED: return "unsupported";
        case TW_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

// ---- grids -----------------------------------------------------------------

tw_status tw_grid_create(const tw_domain* domain, double fill, tw_grid** out) {
    return guarded([&] { need(out, "out") = new_grid(tw::FieldGrid(to_domain(domain), fill)); });
}

tw_status tw_grid_from_values(const tw_domain* domain, const double* values, size_t count, tw_grid** out) {
    return guarded([&] {
        need(out, "out");
        const tw::DomainSpec d = to_domain(domain);
        if (!values) throw tw::ConfigError("values must not be NULL");
        tw::FieldGrid g(d, std::vector<double>(values, values + count));
        g.require_finite("grid");
        *out = new_grid(std::move(g));
    });
}

tw_status tw_grid_copy(const tw_grid* grid, tw_grid** out) {
    return guarded([&] { need(out, "out") = new tw_grid(need(grid, "grid")); });
}

void tw_grid_free(tw_grid* grid) { delete grid; }

tw_status tw_grid_domain(const tw_grid* grid, tw_domain* out) {
    return guarded([&] { need(out, "out") = from_domain(need(grid, "grid").file.grid.domain()); });
}

size_t tw_grid_size(const tw_grid* grid) { return grid ? grid->file.grid.size() : 0; }

const double* tw_grid_values(const tw_grid* grid) { return grid ? grid->file.grid.values().data() : nullptr; }

tw_status tw_grid_set_values(tw_grid* grid, const double* values, size_t count) {
    return guarded([&] {
        auto& g = need(grid, "grid").file.grid;
        if (!values || count != g.size()) throw tw::ConfigError("value count does not match the grid");
        std::memcpy(g.values().data(), values, count * sizeof(double));
    });
}

tw_status tw_grid_normalize(tw_grid* grid) {
    return guarded([&] {
        auto& g = need(grid, "grid").file.grid;
        g = tw::normalize_mean(std::move(g));
    });
}

tw_status tw_grid_set_meta(tw_grid* grid, const char* key, const char* value) {
    return guarded([&] { need(grid, "grid").file.set(str(key, "key"), str(value, "value")); });
}

const char* tw_grid_get_meta(const tw_grid* grid, const char* key) {
    if (!grid || !key) return nullptr;
    for (const auto& [k, v] : grid->file.metadata)
        if (k == key) return v.c_str();
    return nullptr;
}

tw_status tw_grid_read(const char* path, tw_grid** out) {
    return guarded([&] {
        need(out, "out");
        *out = new tw_grid{tw::read_grid(std::filesystem::path(str(path, "path")))};
    });
}

tw_status tw_grid_write(const tw_grid* grid, const char* path) {
    return guarded([&] { tw::write_grid(std::filesystem::path(str(path, "path")), need(grid, "grid").file); });
}

tw_status tw_grid_write_plot_table(const tw_grid* grid, const char* path) {
    return guarded([&] {
        const auto& g = need(grid, "grid").file.grid;
        std::ofstream out(std::filesystem::path(str(path, "path")), std::ios::binary);
        if (!out) throw tw::IoError(std::string("cannot open '") + path + "' for writing");
        tw::write_plot_table(out, g);
    });
}

// ---- profiles ----------------------------------------------------------------

tw_status tw_profile_paper_fig2(tw_profile** out) {
    return guarded([&] { need(out, "out") = new_profile(tw::PaperFig2Profile{}); });
}

tw_status tw_profile_constant(double step_length, double step_time, tw_profile** out) {
    return guarded([&] {
        need(out, "out");
        if (!(step_length > 0.0) || !(step_time > 0.0))
            throw tw::ConfigError("constant profile needs positive step length and step time");
        *out = new_profile(tw::ConstantProfile{step_length, step_time});
    });
}

tw_status tw_profile_sqrt_temperature(int dim, double diffusivity, double t_offset, double t_slope,
                                      tw_profile** out) {
    return guarded([&] {
        need(out, "out");
        if (dim != 1 && dim != 2) throw tw::ConfigError("dimension must be 1 or 2");
        if (!(diffusivity > 0.0)) throw tw::ConfigError("diffusivity must be positive");
        *out = new_profile(tw::SqrtTemperatureProfile{dim, diffusivity, tw::ScalarField::affine(t_offset, t_slope)});
    });
}

tw_status tw_profile_sqrt_temperature_grid(double diffusivity, const tw_grid* temperature, tw_profile** out) {
    return guarded([&] {
        need(out, "out");
        const auto& T = need(temperature, "temperature").file.grid;
        if (!(diffusivity > 0.0)) throw tw::ConfigError("diffusivity must be positive");
        if (!(T.min() > 0.0)) throw tw::DomainError("temperature must be positive everywhere");
        *out = new_profile(tw::SqrtTemperatureProfile{T.domain().dim, diffusivity, tw::ScalarField::sampled(T)});
    });
}

tw_status tw_profile_sampled(const tw_grid* step_length, const tw_grid* step_time, tw_profile** out) {
    return guarded([&] {
        need(out, "out");
        const auto& L = need(step_length, "step_length").file.grid;
        const auto& T = need(step_time, "step_time").file.grid;
        if (!(L.domain() == T.domain())) throw tw::ConfigError("step length and step time grids differ in shape");
        *out = new_profile(tw::SampledProfile{L, T});
    });
}

void tw_profile_free(tw_profile* profile) { delete profile; }

const char* tw_profile_name(const tw_profile* profile) { return profile ? profile->name.c_str() : ""; }

tw_status tw_profile_eval(const tw_profile* profile, const tw_domain* domain, double x, double y,
                          double* step_length, double* step_time) {
    return guarded([&] {
        const auto s = tw::eval_profile(need(profile, "profile").profile, to_domain(domain), {x, y});
        need(step_length, "step_length") = s.length;
        need(step_time, "step_time") = s.time;
    });
}

tw_status tw_profile_validate(const tw_profile* profile, const tw_domain* domain) {
    return guarded([&] { tw::validate_profile(need(profile, "profile").profile, to_domain(domain)); });
}

tw_status tw_sample_diffusivity(const tw_profile* profile, const tw_domain* domain, tw_grid** out) {
    return guarded([&] {
        need(out, "out");
        *out = new_grid(tw::sample_diffusivity(need(profile, "profile").profile, to_domain(domain)));
    });
}

tw_status tw_sample_walk_speed(const tw_profile* profile, const tw_domain* domain, tw_grid** out) {
    return guarded([&] {
        need(out, "out");
        *out = new_grid(tw::sample_walk_speed(need(profile, "profile").profile, to_domain(domain)));
    });
}

tw_status tw_theoretical_steady_state(const tw_grid* speed, tw_grid** out) {
    return guarded([&] {
        need(out, "out");
        *out = new_grid(tw::theoretical_steady_state(need(speed, "speed").file.grid));
    });
}

void tw_physical_params_default(tw_physical_params* params) {
    if (!params) return;
    const tw::PhysicalParams d;
    *params = tw_physical_params{d.k_boltzmann, d.mass, d.radius, d.eta0, d.T0, d.viscosity_exponent, 0.0};
}

tw_status tw_speed_from_temperature(const tw_grid* temperature, const tw_physical_params* params,
                                    int nondimensional, tw_grid** out) {
    return guarded([&] {
        need(out, "out");
        const tw::PhysicalParams p = to_params(params);
        if (!nondimensional && (!(p.k_boltzmann > 0.0) || !(p.mass > 0.0)))
            throw tw::DomainError("k_B and particle mass must be positive");
        *out = new_grid(tw::speed_from_temperature(need(temperature, "temperature").file.grid, p, nondimensional != 0));
    });
}

tw_status tw_einstein_diffusivity(double T, const tw_physical_params* params, double* out) {
    return guarded([&] { need(out, "out") = tw::einstein_diffusivity(T, to_params(params)); });
}

tw_status tw_soret_coefficient_sqrt(double T, double* out) {
    return guarded([&] { need(out, "out") = tw::soret_coefficient(tw::SpeedModel::sqrt_temperature(), T); });
}

tw_status tw_thermal_diffusivity_sqrt(double D, double T, double* out) {
    return guarded([&] { need(out, "out") = tw::thermal_diffusivity(D, tw::SpeedModel::sqrt_temperature(), T); });
}

// ---- particles ---------------------------------------------------------------

tw_status tw_ensemble_create(const tw_domain* domain, size_t count, uint64_t seed, int track_displacement,
                             tw_ensemble** out) {
    return guarded([&] {
        need(out, "out");
        *out = new tw_ensemble{tw::init_ensemble(to_domain(domain), count, seed, track_displacement != 0)};
    });
}

tw_status tw_ensemble_copy(const tw_ensemble* ensemble, tw_ensemble** out) {
    return guarded([&] { need(out, "out") = new tw_ensemble(need(ensemble, "ensemble")); });
}

void tw_ensemble_free(tw_ensemble* ensemble) { delete ensemble; }

size_t tw_ensemble_size(const tw_ensemble* ensemble) { return ensemble ? ensemble->ensemble.size() : 0; }

tw_status tw_ensemble_positions(const tw_ensemble* ensemble, double* x, double* y) {
    return guarded([&] {
        const auto& e = need(ensemble, "ensemble").ensemble;
        std::memcpy(&need(x, "x"), e.x.data(), e.size() * sizeof(double));
        if (e.dim() == 2 && y) std::memcpy(y, e.y.data(), e.size() * sizeof(double));
    });
}

tw_status tw_simulate(tw_ensemble* ensemble, const tw_profile* profile, double t_final, tw_step_rule rule,
                      unsigned workers, uint64_t step_cap, tw_sim_stats* stats) {
    return guarded([&] {
        if (rule != TW_RULE_MIDPOINT && rule != TW_RULE_DEPARTURE) throw tw::ConfigError("unknown step rule");
        tw::SimulateOptions o;
        o.rule = rule == TW_RULE_MIDPOINT ? tw::StepRule::Midpoint : tw::StepRule::Departure;
        o.workers = workers;
        if (step_cap) o.step_cap = step_cap;
        const auto s = tw::simulate(need(ensemble, "ensemble").ensemble, need(profile, "profile").profile, t_final, o);
        if (stats) *stats = tw_sim_stats{s.total_steps, s.max_steps};
    });
}

tw_status tw_histogram(const tw_ensemble* ensemble, int bins_x, int bins_y, unsigned workers, tw_grid** out) {
    return guarded([&] {
        need(out, "out");
        *out = new_grid(tw::histogram(need(ensemble, "ensemble").ensemble, {bins_x, bins_y}, workers));
    });
}

tw_status tw_variance(const tw_ensemble* before, const tw_ensemble* after, double t, double* diffusivity,
                      double* standard_error) {
    return guarded([&] {
        const auto v = tw::variance(need(before, "before").ensemble, need(after, "after").ensemble, t);
        need(diffusivity, "diffusivity") = v.diffusivity;
        if (standard_error) *standard_error = v.standard_error;
    });
}

tw_status tw_lattice_run(const double* site_dt, int sites, double extent, size_t walkers, uint64_t seed, double t,
                         unsigned workers, tw_grid** out) {
    return guarded([&] {
        need(out, "out");
        if (!site_dt || sites < 2) throw tw::ConfigError("lattice needs at least 2 sites");
        const auto lattice = tw::make_uniform_lattice(sites, extent, {site_dt, static_cast<size_t>(sites)});
        auto w = tw::init_lattice_walkers(lattice, walkers, seed);
        tw::lattice_advance(lattice, w, t, workers);
        *out = new_grid(tw::lattice_density(tw::lattice_occupancy(lattice, w)));
    });
}

// ---- finite volumes ---------------------------------------------------------

tw_status tw_law_create(tw_law_kind kind, const tw_grid* a, const tw_grid* b, const tw_grid* c, tw_law** out) {
    return guarded([&] {
        need(out, "out");
        auto g = [](const tw_grid* p) { return need(p, "coefficient grid").file.grid; };
        auto unused = [](const tw_grid* p) {
            if (p) throw tw::ConfigError("unexpected coefficient grid for this law");
        };
        switch (kind) {
            case TW_LAW_FICK: unused(b), unused(c); *out = new_law(tw::fvm::Fick{g(a)}); return;
            case TW_LAW_CHAPMAN: unused(b), unused(c); *out = new_law(tw::fvm::Chapman{g(a)}); return;
            case TW_LAW_VANKAMPEN: unused(c); *out = new_law(tw::fvm::VanKampen{g(a), g(b)}); return;
            case TW_LAW_RANDOMWALK: unused(c); *out = new_law(tw::fvm::RandomWalk{g(a), g(b)}); return;
            case TW_LAW_THERMOPHORETIC: *out = new_law(tw::fvm::Thermophoretic{g(a), g(b), g(c)}); return;
        }
        throw tw::ConfigError("unknown flux law");
    });
}

tw_status tw_law_from_profile(tw_law_kind kind, const tw_profile* profile, const tw_domain* domain, tw_law** out) {
    return guarded([&] {
        need(out, "out");
        if (kind < TW_LAW_FICK || kind > TW_LAW_THERMOPHORETIC) throw tw::ConfigError("unknown flux law");
        *out = new_law(tw::fvm::law_from_profile(static_cast<tw::fvm::LawKind>(kind),
                                                 need(profile, "profile").profile, to_domain(domain)));
    });
}

void tw_law_free(tw_law* law) { delete law; }

const char* tw_law_name(const tw_law* law) { return law ? law->name.c_str() : ""; }

tw_status tw_law_parse(const char* name, tw_law_kind* out) {
    return guarded([&] { need(out, "out") = static_cast<tw_law_kind>(tw::fvm::parse_law_kind(str(name, "name"))); });
}

tw_status tw_law_face_flux(const tw_law* law, const tw_grid* u, int axis, int i, int j, double* out) {
    return guarded([&] {
        need(out, "out") = tw::fvm::face_flux(need(law, "law").law, need(u, "u").file.grid, {axis, i, j});
    });
}

tw_status tw_law_analytic_steady(const tw_law* law, tw_grid** out) {
    return guarded([&] {
        need(out, "out");
        *out = new_grid(tw::fvm::analytic_steady(need(law, "law").law));
    });
}

tw_status tw_solver_create(const tw_law* law, const tw_grid* initial, double sigma, tw_solver** out) {
    return guarded([&] {
        need(out, "out");
        const double s = sigma > 0.0 ? sigma : tw::fvm::kCflSafety;
        *out = new tw_solver{tw::fvm::make_state(need(law, "law").law, need(initial, "initial").file.grid, s)};
    });
}

void tw_solver_free(tw_solver* solver) { delete solver; }

tw_status tw_solver_step(tw_solver* solver) {
    return guarded([&] {
        auto& s = need(solver, "solver").state;
        s = tw::fvm::step_explicit(s);
    });
}

tw_status tw_solver_advance(tw_solver* solver, double t_final) {
    return guarded([&] { tw::fvm::advance_to(need(solver, "solver").state, t_final); });
}

tw_status tw_solver_run_to_steady(tw_solver* solver, double tol, uint64_t max_steps, double* residual) {
    return guarded([&] {
        auto& s = need(solver, "solver").state;
        tw::fvm::SteadyOptions o;
        if (tol > 0.0) o.tol = tol;
        if (max_steps) o.max_steps = max_steps;
        auto r = tw::fvm::run_to_steady(s, o);
        s = std::move(r.state);
        if (residual) *residual = r.residual;
    });
}

tw_status tw_solver_density(const tw_solver* solver, tw_grid** out) {
    return guarded([&] { need(out, "out") = new_grid(need(solver, "solver").state.u); });
}

tw_status tw_solver_info(const tw_solver* solver, double* time, double* dt, uint64_t* steps) {
    return guarded([&] {
        const auto& s = need(solver, "solver").state;
        if (time) *time = s.time;
        if (dt) *dt = s.dt;
        if (steps) *steps = s.steps;
    });
}

// ---- analysis ------------------------------------------------------------------

tw_status tw_compare(const tw_grid* a, const tw_grid* b, tw_comparison* out) {
    return guarded([&] {
        const auto r = tw::compare_grids(need(a, "a").file.grid, need(b, "b").file.grid);
        need(out, "out") = tw_comparison{r.l1, r.l2, r.linf, r.rms, r.bias, r.relative_l2};
    });
}

tw_status tw_difference(const tw_grid* a, const tw_grid* b, tw_grid** out) {
    return guarded([&] {
        need(out, "out");
        *out = new_grid(tw::difference_grid(need(a, "a").file.grid, need(b, "b").file.grid));
    });
}

tw_status tw_noise_uniformity(const tw_grid* diff, tw_uniformity* out) {
    return guarded([&] {
        const auto r = tw::noise_uniformity(need(diff, "diff").file.grid);
        tw_uniformity u{};
        for (int q = 0; q < 4; ++q) u.region_rms[q] = r.region_rms[q];
        u.ratio = r.ratio;
        need(out, "out") = u;
    });
}

tw_status tw_fit_soret(const tw_grid* u, const tw_grid* T, double* exponent, double* x, double* local,
                       size_t capacity, size_t* count) {
    return guarded([&] {
        const auto fit = tw::fit_soret(need(u, "u").file.grid, need(T, "T").file.grid);
        need(exponent, "exponent") = fit.exponent;
        const size_t n = std::min(capacity, fit.local.size());
        for (size_t k = 0; k < n; ++k) {
            if (x) x[k] = fit.x[k];
            if (local) local[k] = fit.local[k];
        }
        if (count) *count = fit.local.size();
    });
}

tw_status tw_convergence_rate(const double* h, const double* error, size_t n, double* out) {
    return guarded([&] {
        if (!h || !error) throw tw::ConfigError("inputs must not be NULL");
        std::vector<std::pair<double, double>> s(n);
        for (size_t k = 0; k < n; ++k) s[k] = {h[k], error[k]};
        need(out, "out") = tw::convergence_rate(s);
    });
}

}  // extern "C"
