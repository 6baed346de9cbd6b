// thermowalk command-line driver. Talks to the library only through the C API.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "thermowalk/thermowalk.h"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Failure {
    int exit_code;
    std::string kind;
    std::string message;
};

int exit_code_for(tw_status s) { return s == TW_ERR_NUMERICAL || s == TW_ERR_INTERNAL ? kExitNumerical : kExitConfig; }

void check(tw_status s) {
    if (s != TW_OK) throw Failure{exit_code_for(s), tw_status_name(s), tw_last_error()};
}

[[noreturn]] void config_error(const std::string& message) { throw Failure{kExitConfig, "config", message}; }

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
using Grid = std::unique_ptr<tw_grid, Deleter<tw_grid, tw_grid_free>>;
using Profile = std::unique_ptr<tw_profile, Deleter<tw_profile, tw_profile_free>>;
using Ensemble = std::unique_ptr<tw_ensemble, Deleter<tw_ensemble, tw_ensemble_free>>;
using Law = std::unique_ptr<tw_law, Deleter<tw_law, tw_law_free>>;
using Solver = std::unique_ptr<tw_solver, Deleter<tw_solver, tw_solver_free>>;

template <class Handle, class F>
Handle make(F&& f) {
    typename Handle::pointer raw = nullptr;
    check(f(&raw));
    return Handle(raw);
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

struct Options {
    std::string profile = "paper-fig2";
    std::string law = "randomwalk";
    std::string rule = "midpoint";
    std::size_t particles = 100000;
    double t_final = 1000.0;
    bool t_final_set = false;
    int bins = 50;
    int cells = 50;
    int dim = 2;
    std::uint64_t seed = 42;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    double tol = 1e-10;
    std::uint64_t max_steps = 0;
    std::uint64_t step_cap = 0;
    std::string out;
    bool steady = false;
    bool plot = false;
    double step_length = 0.01;
    double step_time = 0.01;
    double diffusivity = 0.005;
    std::vector<double> temperature{1.0, 1.0};
    std::string step_length_file, step_time_file, initial_file;
    std::vector<std::string> inputs;
};

tw_domain domain_of(const Options& o, int cells) {
    if (o.dim == 1) return tw_domain{1, {cells, 1}, {1.0, 1.0}};
    if (o.dim == 2) return tw_domain{2, {cells, cells}, {1.0, 1.0}};
    config_error("--dim must be 1 or 2");
}

Profile make_profile(const Options& o) {
    if (o.profile == "paper-fig2") return make<Profile>([](tw_profile** p) { return tw_profile_paper_fig2(p); });
    if (o.profile == "constant")
        return make<Profile>([&](tw_profile** p) { return tw_profile_constant(o.step_length, o.step_time, p); });
    if (o.profile == "sqrt-temperature") {
        if (o.temperature.size() != 2) config_error("--temperature takes a,b for T = a + b x");
        return make<Profile>([&](tw_profile** p) {
            return tw_profile_sqrt_temperature(o.dim, o.diffusivity, o.temperature[0], o.temperature[1], p);
        });
    }
    if (o.profile == "sampled") {
        if (o.step_length_file.empty() || o.step_time_file.empty())
            config_error("the sampled profile needs --step-length-file and --step-time-file");
        Grid len = make<Grid>([&](tw_grid** g) { return tw_grid_read(o.step_length_file.c_str(), g); });
        Grid time = make<Grid>([&](tw_grid** g) { return tw_grid_read(o.step_time_file.c_str(), g); });
        return make<Profile>([&](tw_profile** p) { return tw_profile_sampled(len.get(), time.get(), p); });
    }
    config_error("unknown profile '" + o.profile + "' (expected paper-fig2, constant, sqrt-temperature or sampled)");
}

// The sampled profile carries its own grid; other profiles use the requested size.
tw_domain profile_domain(const Options& o, int cells) {
    if (o.profile != "sampled") return domain_of(o, cells);
    Grid len = make<Grid>([&](tw_grid** g) { return tw_grid_read(o.step_length_file.c_str(), g); });
    tw_domain d;
    check(tw_grid_domain(len.get(), &d));
    return d;
}

tw_law_kind law_kind(const std::string& name) {
    tw_law_kind k;
    check(tw_law_parse(name.c_str(), &k));
    return k;
}

void set_meta(tw_grid* g, const std::string& key, const std::string& value) {
    check(tw_grid_set_meta(g, key.c_str(), value.c_str()));
}

std::string output_path(const Options& o, const std::string& command) {
    return o.out.empty() ? command + ".csv" : o.out;
}

void write_outputs(const Options& o, tw_grid* g, const std::string& path, json& summary) {
    check(tw_grid_write(g, path.c_str()));
    summary["output"] = path;
    if (o.plot) {
        const std::string plot = path + ".plot.csv";
        check(tw_grid_write_plot_table(g, plot.c_str()));
        summary["plot_data"] = plot;
    }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json cmd_mc(const Options& o) {
    if (o.particles == 0) config_error("--particles must be at least 1");
    if (o.bins < 1) config_error("--bins must be at least 1");
    tw_step_rule rule = TW_RULE_MIDPOINT;
    if (o.rule == "departure")
        rule = TW_RULE_DEPARTURE;
    else if (o.rule != "midpoint")
        config_error("--rule must be midpoint or departure");
    const auto t0 = std::chrono::steady_clock::now();
    Profile profile = make_profile(o);
    const tw_domain domain = profile_domain(o, std::max(o.bins, 4));
    Ensemble e = make<Ensemble>([&](tw_ensemble** p) { return tw_ensemble_create(&domain, o.particles, o.seed, 0, p); });
    tw_sim_stats stats{};
    check(tw_simulate(e.get(), profile.get(), o.t_final, rule, o.workers, o.step_cap, &stats));
    Grid h = make<Grid>([&](tw_grid** g) { return tw_histogram(e.get(), o.bins, o.bins, o.workers, g); });
    set_meta(h.get(), "command", "mc");
    set_meta(h.get(), "profile", tw_profile_name(profile.get()));
    set_meta(h.get(), "rule", o.rule);
    set_meta(h.get(), "particles", std::to_string(o.particles));
    set_meta(h.get(), "seed", std::to_string(o.seed));
    set_meta(h.get(), "t_final", fmt(o.t_final));
    set_meta(h.get(), "total_steps", std::to_string(stats.total_steps));

    json s;
    s["command"] = "mc";
    s["profile"] = tw_profile_name(profile.get());
    s["rule"] = o.rule;
    s["particles"] = o.particles;
    s["t_final"] = o.t_final;
    s["bins"] = o.bins;
    s["seed"] = o.seed;
    s["workers"] = o.workers;
    s["total_steps"] = stats.total_steps;
    s["max_steps"] = stats.max_steps;
    write_outputs(o, h.get(), output_path(o, "mc"), s);
    s["wall_time_s"] = seconds_since(t0);
    return s;
}

Grid initial_density(const Options& o, const tw_domain& domain) {
    if (o.initial_file.empty()) return make<Grid>([&](tw_grid** g) { return tw_grid_create(&domain, 1.0, g); });
    Grid g = make<Grid>([&](tw_grid** p) { return tw_grid_read(o.initial_file.c_str(), p); });
    tw_domain d;
    check(tw_grid_domain(g.get(), &d));
    if (d.dim != domain.dim || d.cells[0] != domain.cells[0] || d.cells[1] != domain.cells[1])
        config_error("initial density grid does not match the solver grid");
    return g;
}

json cmd_pde(const Options& o) {
    if (!o.steady && !o.t_final_set) config_error("pde needs --steady or --t-final");
    const auto t0 = std::chrono::steady_clock::now();
    Profile profile = make_profile(o);
    const tw_domain domain = profile_domain(o, o.cells);
    Law law = make<Law>([&](tw_law** p) { return tw_law_from_profile(law_kind(o.law), profile.get(), &domain, p); });
    Grid u0 = initial_density(o, domain);
    Solver solver = make<Solver>([&](tw_solver** p) { return tw_solver_create(law.get(), u0.get(), 0.0, p); });
    double residual = 0.0;
    if (o.steady)
        check(tw_solver_run_to_steady(solver.get(), o.tol, o.max_steps, &residual));
    else
        check(tw_solver_advance(solver.get(), o.t_final));
    double time = 0.0, dt = 0.0;
    std::uint64_t steps = 0;
    check(tw_solver_info(solver.get(), &time, &dt, &steps));
    Grid u = make<Grid>([&](tw_grid** g) { return tw_solver_density(solver.get(), g); });
    if (o.steady) check(tw_grid_normalize(u.get()));
    set_meta(u.get(), "command", "pde");
    set_meta(u.get(), "law", tw_law_name(law.get()));
    set_meta(u.get(), "profile", tw_profile_name(profile.get()));
    set_meta(u.get(), "time", fmt(time));
    set_meta(u.get(), "dt", fmt(dt));
    set_meta(u.get(), "steps", std::to_string(steps));
    if (o.steady) {
        set_meta(u.get(), "residual", fmt(residual));
        set_meta(u.get(), "normalization", "mean-1");
    }

    json s;
    s["command"] = "pde";
    s["law"] = tw_law_name(law.get());
    s["profile"] = tw_profile_name(profile.get());
    s["cells"] = domain.cells[0];
    s["mode"] = o.steady ? "steady" : "horizon";
    s["time"] = time;
    s["dt"] = dt;
    s["steps"] = steps;
    if (o.steady) s["residual"] = residual;
    write_outputs(o, u.get(), output_path(o, "pde"), s);
    s["wall_time_s"] = seconds_since(t0);
    return s;
}

json cmd_steady(const Options& o) {
    Profile profile = make_profile(o);
    const tw_domain domain = profile_domain(o, o.cells);
    Law law = make<Law>([&](tw_law** p) { return tw_law_from_profile(law_kind(o.law), profile.get(), &domain, p); });
    Grid u = make<Grid>([&](tw_grid** g) { return tw_law_analytic_steady(law.get(), g); });
    set_meta(u.get(), "command", "steady");
    set_meta(u.get(), "law", tw_law_name(law.get()));
    set_meta(u.get(), "profile", tw_profile_name(profile.get()));
    set_meta(u.get(), "normalization", "mean-1");
    json s;
    s["command"] = "steady";
    s["law"] = tw_law_name(law.get());
    s["profile"] = tw_profile_name(profile.get());
    s["cells"] = domain.cells[0];
    write_outputs(o, u.get(), output_path(o, "steady"), s);
    return s;
}

json cmd_compare(const Options& o) {
    if (o.inputs.size() != 2) config_error("compare needs exactly two grid files");
    Grid a = make<Grid>([&](tw_grid** g) { return tw_grid_read(o.inputs[0].c_str(), g); });
    Grid b = make<Grid>([&](tw_grid** g) { return tw_grid_read(o.inputs[1].c_str(), g); });
    tw_comparison r{};
    check(tw_compare(a.get(), b.get(), &r));
    Grid diff = make<Grid>([&](tw_grid** g) { return tw_difference(a.get(), b.get(), g); });
    json s;
    s["l1"] = r.l1;
    s["l2"] = r.l2;
    s["linf"] = r.linf;
    s["rms"] = r.rms;
    s["bias"] = r.bias;
    s["relative_l2"] = r.relative_l2;
    tw_uniformity u{};
    if (tw_noise_uniformity(diff.get(), &u) == TW_OK) {
        s["uniformity_ratio"] = std::isfinite(u.ratio) ? json(u.ratio) : json(nullptr);
        s["region_rms"] = {u.region_rms[0], u.region_rms[1], u.region_rms[2], u.region_rms[3]};
    }
    if (!o.out.empty()) {
        set_meta(diff.get(), "command", "compare");
        check(tw_grid_write(diff.get(), o.out.c_str()));
        s["output"] = o.out;
    }
    return s;
}

json cmd_soret(const Options& o) {
    if (o.temperature.size() != 2) config_error("--temperature takes a,b for T = a + b x");
    const double a = o.temperature[0], b = o.temperature[1];
    const tw_domain domain{1, {o.cells, 1}, {1.0, 1.0}};
    Profile profile = make<Profile>([&](tw_profile** p) {
        return tw_profile_sqrt_temperature(1, o.diffusivity, a, b, p);
    });
    Law law = make<Law>([&](tw_law** p) { return tw_law_from_profile(law_kind(o.law), profile.get(), &domain, p); });
    Grid u0 = make<Grid>([&](tw_grid** g) { return tw_grid_create(&domain, 1.0, g); });
    Solver solver = make<Solver>([&](tw_solver** p) { return tw_solver_create(law.get(), u0.get(), 0.0, p); });
    double residual = 0.0;
    check(tw_solver_run_to_steady(solver.get(), o.tol, o.max_steps, &residual));
    Grid u = make<Grid>([&](tw_grid** g) { return tw_solver_density(solver.get(), g); });
    check(tw_grid_normalize(u.get()));

    std::vector<double> tv(o.cells);
    for (int i = 0; i < o.cells; ++i) tv[i] = a + b * (i + 0.5) / o.cells;
    Grid T = make<Grid>([&](tw_grid** g) { return tw_grid_from_values(&domain, tv.data(), tv.size(), g); });

    json s;
    s["command"] = "soret";
    s["law"] = tw_law_name(law.get());
    s["temperature"] = {{"offset", a}, {"slope", b}};
    s["cells"] = o.cells;
    s["residual"] = residual;
    json table = json::array();
    if (b == 0.0) {
        // Uniform temperature: no gradient to respond to.
        s["exponent"] = 0.0;
        for (int i = 1; i + 1 < o.cells; ++i)
            table.push_back({{"x", (i + 0.5) / o.cells}, {"T", tv[i]}, {"soret", 0.0}, {"expected", 0.0}});
    } else {
        std::vector<double> xs(o.cells), local(o.cells);
        std::size_t count = 0;
        double exponent = 0.0;
        check(tw_fit_soret(u.get(), T.get(), &exponent, xs.data(), local.data(), xs.size(), &count));
        s["exponent"] = exponent;
        double worst = 0.0;
        for (std::size_t k = 0; k < count; ++k) {
            const double Tk = a + b * xs[k];
            const double expected = 0.5 / Tk;
            worst = std::max(worst, std::abs(local[k] - expected) / expected);
            table.push_back({{"x", xs[k]}, {"T", Tk}, {"soret", local[k]}, {"expected", expected}});
        }
        s["max_relative_deviation"] = worst;
    }
    s["local"] = table;
    if (!o.out.empty()) {
        set_meta(u.get(), "command", "soret");
        set_meta(u.get(), "law", tw_law_name(law.get()));
        write_outputs(o, u.get(), o.out, s);
    }
    return s;
}

json cmd_variance(const Options& o) {
    if (o.particles == 0) config_error("--particles must be at least 1");
    const auto t0 = std::chrono::steady_clock::now();
    const tw_domain domain = domain_of(o, 50);
    Profile profile = make<Profile>([&](tw_profile** p) { return tw_profile_constant(o.step_length, o.step_time, p); });
    Ensemble start =
        make<Ensemble>([&](tw_ensemble** p) { return tw_ensemble_create(&domain, o.particles, o.seed, 1, p); });
    Ensemble e = make<Ensemble>([&](tw_ensemble** p) { return tw_ensemble_copy(start.get(), p); });
    tw_sim_stats stats{};
    check(tw_simulate(e.get(), profile.get(), o.t_final, TW_RULE_MIDPOINT, o.workers, o.step_cap, &stats));
    double d = 0.0, se = 0.0;
    check(tw_variance(start.get(), e.get(), o.t_final, &d, &se));
    const double expected = o.step_length * o.step_length / (2.0 * o.dim * o.step_time);
    json s;
    s["command"] = "variance";
    s["dim"] = o.dim;
    s["particles"] = o.particles;
    s["t_final"] = o.t_final;
    s["seed"] = o.seed;
    s["diffusivity"] = d;
    s["standard_error"] = se;
    s["expected"] = expected;
    s["relative_error"] = (d - expected) / expected;
    s["total_steps"] = stats.total_steps;
    s["wall_time_s"] = seconds_since(t0);
    return s;
}

// Flat key=value config: entries become --key value unless the flag was
// given on the command line.
std::vector<std::string> merge_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t k = 0; k < args.size(); ++k) {
        if (args[k] == "--config" && k + 1 < args.size()) path = args[k + 1];
        if (args[k].rfind("--config=", 0) == 0) path = args[k].substr(9);
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) config_error("cannot read config file '" + path + "'");
    std::set<std::string> given;
    for (const auto& a : args)
        if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2));
    static const std::set<std::string> flags{"steady", "emit-plot-data"};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) config_error(path + ":" + std::to_string(lineno) + ": expected key=value");
        auto strip = [](std::string s) {
            const auto lo = s.find_first_not_of(" \t\r");
            const auto hi = s.find_last_not_of(" \t\r");
            return lo == std::string::npos ? std::string() : s.substr(lo, hi - lo + 1);
        };
        std::string key = strip(line.substr(0, eq)), value = strip(line.substr(eq + 1));
        for (char& c : key)
            if (c == '_') c = '-';
        if (key == "config" || key == "command") continue;
        if (given.count(key)) continue;
        if (flags.count(key)) {
            if (value == "true" || value == "1" || value == "yes") args.push_back("--" + key);
            continue;
        }
        args.push_back("--" + key);
        args.push_back(value);
    }
    return args;
}

void add_common(CLI::App* c, Options& o) {
    c->add_option("--config", "Flat key=value file; command-line flags take precedence");
    c->add_option("--seed", o.seed, "Master seed (default: $THERMOWALK_SEED, else 42)");
    c->add_option("--workers", o.workers, "Worker threads; results do not depend on this")->check(CLI::PositiveNumber);
    c->add_option("--out", o.out, "Output grid file");
    c->add_flag("--emit-plot-data", o.plot, "Also write <out>.plot.csv with x,y,value rows");
}

void add_profile(CLI::App* c, Options& o) {
    c->add_option("--profile", o.profile, "paper-fig2, constant, sqrt-temperature or sampled");
    c->add_option("--dim", o.dim, "Space dimension (1 or 2)");
    c->add_option("--step-length", o.step_length, "Step length of the constant profile");
    c->add_option("--step-time", o.step_time, "Step time of the constant profile");
    c->add_option("--diffusivity", o.diffusivity, "Diffusivity of the sqrt-temperature profile");
    c->add_option("--temperature", o.temperature, "T = a + b x as a,b")->delimiter(',')->expected(2);
    c->add_option("--step-length-file", o.step_length_file, "Grid file with step lengths (sampled profile)");
    c->add_option("--step-time-file", o.step_time_file, "Grid file with step times (sampled profile)");
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    if (const char* env = std::getenv("THERMOWALK_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0') {
            std::cerr << json{{"error", "config"}, {"message", "THERMOWALK_SEED is not an unsigned integer"}}.dump()
                      << '\n';
            return kExitConfig;
        }
        o.seed = v;
    }

    CLI::App app{"thermowalk: heterogeneous random walks, finite volumes and transport coefficients"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tw_version());

    auto* mc = app.add_subcommand("mc", "Gridless random walk; writes the mean-1 histogram");
    add_common(mc, o);
    add_profile(mc, o);
    mc->add_option("--particles", o.particles, "Number of particles");
    mc->add_option("--t-final", o.t_final, "Simulated time");
    mc->add_option("--bins", o.bins, "Histogram bins per axis");
    mc->add_option("--rule", o.rule, "Where the step length is evaluated: midpoint or departure");
    mc->add_option("--step-cap", o.step_cap, "Maximum projected steps per particle");

    auto* pde = app.add_subcommand("pde", "Finite-volume solve to steady state or to a fixed time");
    add_common(pde, o);
    add_profile(pde, o);
    pde->add_option("--law", o.law, "fick, chapman, vankampen, randomwalk or thermophoretic");
    pde->add_option("--cells", o.cells, "Cells per axis");
    pde->add_flag("--steady", o.steady, "Run until the rate drops below --tol");
    pde->add_option("--t-final", o.t_final, "Fixed horizon")->each([&](const std::string&) { o.t_final_set = true; });
    pde->add_option("--tol", o.tol, "Steady-state threshold on max |du/dt|");
    pde->add_option("--max-steps", o.max_steps, "Iteration cap for --steady");
    pde->add_option("--initial", o.initial_file, "Initial density grid (default uniform)");

    auto* steady = app.add_subcommand("steady", "Closed-form steady state of a flux law");
    add_common(steady, o);
    add_profile(steady, o);
    steady->add_option("--law", o.law, "fick, chapman, vankampen, randomwalk or thermophoretic");
    steady->add_option("--cells", o.cells, "Cells per axis");

    auto* compare = app.add_subcommand("compare", "Norms of the difference of two grids");
    compare->add_option("grids", o.inputs, "Two grid files")->expected(2)->required();
    compare->add_option("--config", "Flat key=value file");
    compare->add_option("--out", o.out, "Write the normalised difference grid here");

    auto* soret = app.add_subcommand("soret", "Steady 1D profile under T = a + b x and fitted Soret coefficient");
    add_common(soret, o);
    soret->add_option("--temperature", o.temperature, "T = a + b x as a,b")->delimiter(',')->expected(2);
    soret->add_option("--diffusivity", o.diffusivity, "Walk diffusivity");
    soret->add_option("--law", o.law, "Flux law (randomwalk or vankampen for comparison)");
    soret->add_option("--cells", o.cells, "Cells");
    soret->add_option("--tol", o.tol, "Steady-state threshold");
    soret->add_option("--max-steps", o.max_steps, "Iteration cap");

    auto* variance = app.add_subcommand("variance", "Mean squared displacement of a homogeneous walk");
    add_common(variance, o);
    variance->add_option("--particles", o.particles, "Number of particles");
    variance->add_option("--t-final", o.t_final, "Elapsed time");
    variance->add_option("--dim", o.dim, "Space dimension (1 or 2)");
    variance->add_option("--step-length", o.step_length, "Step length");
    variance->add_option("--step-time", o.step_time, "Step time");
    variance->add_option("--step-cap", o.step_cap, "Maximum projected steps per particle");

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        if (!args.empty()) {
            // Defaults that differ by command.
            if (args[0] == "soret") o.cells = 100;
            if (args[0] == "variance") o.t_final = 10.0;
        }
        args = merge_config(std::move(args));
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        try {
            app.parse(std::move(reversed));
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e);
        } catch (const CLI::CallForVersion& e) {
            return app.exit(e);
        } catch (const CLI::ParseError& e) {
            config_error(e.what());
        }

        json summary;
        if (*mc) summary = cmd_mc(o);
        else if (*pde) summary = cmd_pde(o);
        else if (*steady) summary = cmd_steady(o);
        else if (*compare) summary = cmd_compare(o);
        else if (*soret) summary = cmd_soret(o);
        else if (*variance) summary = cmd_variance(o);
        std::cout << summary.dump(2) << '\n';
        return 0;
    } catch (const Failure& f) {
        std::cerr << json{{"error", f.kind}, {"message", f.message}}.dump() << '\n';
        return f.exit_code;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << '\n';
        return kExitNumerical;
    }
}
