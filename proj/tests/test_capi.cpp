#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "thermowalk/thermowalk.h"

namespace {

tw_domain square(int n) { return tw_domain{2, {n, n}, {1.0, 1.0}}; }
tw_domain line(int n) { return tw_domain{1, {n, 1}, {1.0, 1.0}}; }

}  // namespace

TEST_CASE("status names and version") {
    CHECK(std::string(tw_status_name(TW_OK)) == "ok");
    CHECK(std::string(tw_status_name(TW_ERR_CONFIG)) == "config");
    CHECK(std::string(tw_status_name(TW_ERR_NUMERICAL)) == "numerical");
    CHECK(std::strlen(tw_version()) > 0);
}

TEST_CASE("errors set the last error message and leave outputs alone") {
    tw_grid* g = nullptr;
    const tw_domain bad = square(2);
    CHECK(tw_grid_create(&bad, 1.0, &g) == TW_ERR_CONFIG);
    CHECK(g == nullptr);
    CHECK(std::string(tw_last_error()).find("4 cells") != std::string::npos);
    CHECK(tw_grid_create(nullptr, 1.0, &g) == TW_ERR_CONFIG);
    CHECK(tw_grid_read("/nonexistent/file.csv", &g) == TW_ERR_IO);
    tw_grid_free(nullptr);
    tw_profile_free(nullptr);
}

TEST_CASE("grids") {
    const tw_domain d = line(4);
    const double v[] = {1.0, 2.0, 3.0, 2.0};
    tw_grid* g = nullptr;
    REQUIRE(tw_grid_from_values(&d, v, 4, &g) == TW_OK);
    CHECK(tw_grid_size(g) == 4);
    CHECK(tw_grid_normalize(g) == TW_OK);
    CHECK(tw_grid_values(g)[2] == doctest::Approx(1.5));
    CHECK(tw_grid_set_meta(g, "law", "fick") == TW_OK);
    CHECK(std::string(tw_grid_get_meta(g, "law")) == "fick");
    CHECK(tw_grid_get_meta(g, "nope") == nullptr);
    CHECK(tw_grid_set_meta(g, "cells", "3") == TW_ERR_CONFIG);
    CHECK(tw_grid_from_values(&d, v, 3, &g) == TW_ERR_CONFIG);

    const auto path = std::filesystem::temp_directory_path() / "thermowalk_capi_grid.csv";
    CHECK(tw_grid_write(g, path.c_str()) == TW_OK);
    tw_grid* back = nullptr;
    REQUIRE(tw_grid_read(path.c_str(), &back) == TW_OK);
    for (int k = 0; k < 4; ++k) CHECK(tw_grid_values(back)[k] == tw_grid_values(g)[k]);
    CHECK(std::string(tw_grid_get_meta(back, "law")) == "fick");
    tw_domain bd;
    CHECK(tw_grid_domain(back, &bd) == TW_OK);
    CHECK(bd.dim == 1);
    CHECK(bd.cells[0] == 4);
    tw_grid_free(back);
    tw_grid_free(g);
    std::filesystem::remove(path);
}

TEST_CASE("profiles and derived fields") {
    tw_profile* p = nullptr;
    REQUIRE(tw_profile_paper_fig2(&p) == TW_OK);
    CHECK(std::string(tw_profile_name(p)) == "paper-fig2");
    const tw_domain d = square(50);
    double len = 0, time = 0;
    CHECK(tw_profile_eval(p, &d, 0.0, 0.0, &len, &time) == TW_OK);
    CHECK(len == doctest::Approx(0.014));
    CHECK(time == doctest::Approx(0.0098));
    tw_grid* D = nullptr;
    REQUIRE(tw_sample_diffusivity(p, &d, &D) == TW_OK);
    for (std::size_t k = 0; k < tw_grid_size(D); ++k) CHECK(tw_grid_values(D)[k] == doctest::Approx(0.005));
    tw_grid* S = nullptr;
    REQUIRE(tw_sample_walk_speed(p, &d, &S) == TW_OK);
    tw_grid* steady = nullptr;
    REQUIRE(tw_theoretical_steady_state(S, &steady) == TW_OK);
    const double* u = tw_grid_values(steady);
    double mean = 0;
    for (std::size_t k = 0; k < 2500; ++k) mean += u[k] / 2500;
    CHECK(mean == doctest::Approx(1.0));
    tw_grid_free(steady);
    tw_grid_free(S);
    tw_grid_free(D);
    tw_profile_free(p);

    tw_profile* bad = nullptr;
    CHECK(tw_profile_constant(0.1, -1.0, &bad) == TW_ERR_CONFIG);
    CHECK(bad == nullptr);
}

TEST_CASE("thermodynamic helpers") {
    tw_physical_params params;
    tw_physical_params_default(&params);
    CHECK(params.viscosity_exponent == 0.75);
    params.constant_viscosity = 8.9e-4;
    double kappa = 0;
    CHECK(tw_einstein_diffusivity(298.0, &params, &kappa) == TW_OK);
    CHECK(kappa == doctest::Approx(2.4525e-13).epsilon(1e-4));
    double st = 0, dt = 0;
    CHECK(tw_soret_coefficient_sqrt(300.0, &st) == TW_OK);
    CHECK(st == doctest::Approx(1.0 / 600.0));
    CHECK(tw_thermal_diffusivity_sqrt(0.005, 1.0, &dt) == TW_OK);
    CHECK(dt == doctest::Approx(0.0025));
    CHECK(tw_soret_coefficient_sqrt(0.0, &st) == TW_ERR_DOMAIN);

    const tw_domain d = line(8);
    tw_grid* T = nullptr;
    REQUIRE(tw_grid_create(&d, 4.0, &T) == TW_OK);
    tw_grid* S = nullptr;
    REQUIRE(tw_speed_from_temperature(T, &params, 1, &S) == TW_OK);
    CHECK(tw_grid_values(S)[0] == doctest::Approx(2.0));
    tw_grid_free(S);
    tw_grid_free(T);
}

TEST_CASE("particles through the C interface") {
    const tw_domain d = square(50);
    tw_ensemble* a = nullptr;
    REQUIRE(tw_ensemble_create(&d, 2000, 42, 0, &a) == TW_OK);
    tw_ensemble* b = nullptr;
    REQUIRE(tw_ensemble_copy(a, &b) == TW_OK);
    tw_profile* p = nullptr;
    REQUIRE(tw_profile_paper_fig2(&p) == TW_OK);
    tw_sim_stats sa{}, sb{};
    CHECK(tw_simulate(a, p, 1.0, TW_RULE_MIDPOINT, 1, 0, &sa) == TW_OK);
    CHECK(tw_simulate(b, p, 1.0, TW_RULE_MIDPOINT, 4, 0, &sb) == TW_OK);
    CHECK(sa.total_steps == sb.total_steps);
    CHECK(sa.total_steps > 2000);
    std::vector<double> xa(2000), ya(2000), xb(2000), yb(2000);
    CHECK(tw_ensemble_positions(a, xa.data(), ya.data()) == TW_OK);
    CHECK(tw_ensemble_positions(b, xb.data(), yb.data()) == TW_OK);
    CHECK(xa == xb);
    CHECK(ya == yb);
    tw_grid* h = nullptr;
    REQUIRE(tw_histogram(a, 10, 10, 1, &h) == TW_OK);
    CHECK(tw_grid_size(h) == 100);
    tw_grid_free(h);

    CHECK(tw_simulate(a, p, 1000.0, TW_RULE_MIDPOINT, 1, 10, &sa) == TW_ERR_NUMERICAL);
    CHECK(tw_simulate(a, p, 1.0, TW_RULE_MIDPOINT, 0, 0, &sa) == TW_ERR_CONFIG);
    tw_ensemble* none = nullptr;
    CHECK(tw_ensemble_create(&d, 0, 42, 0, &none) == TW_ERR_CONFIG);
    tw_profile_free(p);
    tw_ensemble_free(a);
    tw_ensemble_free(b);
}

TEST_CASE("variance through the C interface") {
    const tw_domain d = square(10);
    tw_ensemble* start = nullptr;
    REQUIRE(tw_ensemble_create(&d, 20000, 1, 1, &start) == TW_OK);
    tw_ensemble* end = nullptr;
    REQUIRE(tw_ensemble_copy(start, &end) == TW_OK);
    tw_profile* p = nullptr;
    REQUIRE(tw_profile_constant(0.01, 0.01, &p) == TW_OK);
    tw_sim_stats s{};
    REQUIRE(tw_simulate(end, p, 1.0, TW_RULE_MIDPOINT, 1, 0, &s) == TW_OK);
    CHECK(s.total_steps == 20000 * 100);
    double D = 0, se = 0;
    CHECK(tw_variance(start, end, 1.0, &D, &se) == TW_OK);
    CHECK(std::abs(D - 0.0025) < 4 * se);
    tw_profile_free(p);
    tw_ensemble_free(start);
    tw_ensemble_free(end);
}

TEST_CASE("lattice run") {
    std::vector<double> dt(10, 0.01);
    tw_grid* g = nullptr;
    REQUIRE(tw_lattice_run(dt.data(), 10, 1.0, 20000, 3, 2.0, 2, &g) == TW_OK);
    for (std::size_t k = 0; k < 10; ++k) CHECK(tw_grid_values(g)[k] == doctest::Approx(1.0).epsilon(0.1));
    tw_grid_free(g);
    CHECK(tw_lattice_run(dt.data(), 1, 1.0, 20000, 3, 2.0, 2, &g) == TW_ERR_CONFIG);
}

TEST_CASE("solver through the C interface") {
    tw_profile* p = nullptr;
    REQUIRE(tw_profile_paper_fig2(&p) == TW_OK);
    const tw_domain d = square(20);
    tw_law_kind kind;
    REQUIRE(tw_law_parse("randomwalk", &kind) == TW_OK);
    CHECK(tw_law_parse("bogus", &kind) == TW_ERR_CONFIG);
    tw_law* law = nullptr;
    REQUIRE(tw_law_from_profile(kind, p, &d, &law) == TW_OK);
    CHECK(std::string(tw_law_name(law)) == "randomwalk");
    tw_grid* u0 = nullptr;
    REQUIRE(tw_grid_create(&d, 1.0, &u0) == TW_OK);
    tw_solver* s = nullptr;
    REQUIRE(tw_solver_create(law, u0, 0.0, &s) == TW_OK);
    double residual = 0;
    CHECK(tw_solver_run_to_steady(s, 1e-10, 0, &residual) == TW_OK);
    CHECK(residual < 1e-10);
    tw_grid* u = nullptr;
    REQUIRE(tw_solver_density(s, &u) == TW_OK);
    tw_grid* exact = nullptr;
    REQUIRE(tw_law_analytic_steady(law, &exact) == TW_OK);
    tw_comparison c{};
    CHECK(tw_compare(u, exact, &c) == TW_OK);
    CHECK(c.linf < 1e-6);
    double time = 0, dt = 0;
    std::uint64_t steps = 0;
    CHECK(tw_solver_info(s, &time, &dt, &steps) == TW_OK);
    CHECK(steps > 10);
    CHECK(time == doctest::Approx(steps * dt));

    double flux = 0;
    CHECK(tw_law_face_flux(law, u, 0, 3, 4, &flux) == TW_OK);
    CHECK(std::abs(flux) < 1e-9);
    CHECK(tw_law_face_flux(law, u, 2, 3, 4, &flux) == TW_ERR_CONFIG);

    tw_grid_free(exact);
    tw_grid_free(u);
    tw_solver_free(s);
    tw_grid_free(u0);
    tw_law_free(law);
    tw_profile_free(p);
}

TEST_CASE("explicit law coefficients") {
    const tw_domain d = line(10);
    tw_grid* k = nullptr;
    REQUIRE(tw_grid_create(&d, 0.01, &k) == TW_OK);
    tw_law* law = nullptr;
    CHECK(tw_law_create(TW_LAW_FICK, k, k, nullptr, &law) == TW_ERR_CONFIG);
    REQUIRE(tw_law_create(TW_LAW_FICK, k, nullptr, nullptr, &law) == TW_OK);
    tw_law* th = nullptr;
    CHECK(tw_law_create(TW_LAW_THERMOPHORETIC, k, k, nullptr, &th) == TW_ERR_CONFIG);
    tw_grid* zero = nullptr;
    REQUIRE(tw_grid_create(&d, 0.0, &zero) == TW_OK);
    tw_law* badlaw = nullptr;
    CHECK(tw_law_create(TW_LAW_CHAPMAN, zero, nullptr, nullptr, &badlaw) == TW_ERR_DOMAIN);
    tw_grid_free(zero);
    tw_law_free(law);
    tw_grid_free(k);
}

TEST_CASE("analysis through the C interface") {
    const tw_domain d = line(2 * 2 * 2);
    std::vector<double> av(8, 1.0), bv(8, 1.0);
    bv[0] = 0.5;
    bv[1] = 1.5;
    tw_grid *a = nullptr, *b = nullptr;
    REQUIRE(tw_grid_from_values(&d, av.data(), 8, &a) == TW_OK);
    REQUIRE(tw_grid_from_values(&d, bv.data(), 8, &b) == TW_OK);
    tw_comparison c{};
    CHECK(tw_compare(a, b, &c) == TW_OK);
    CHECK(c.linf == doctest::Approx(0.5));
    tw_grid* diff = nullptr;
    REQUIRE(tw_difference(a, b, &diff) == TW_OK);
    tw_uniformity un{};
    CHECK(tw_noise_uniformity(diff, &un) == TW_OK);
    CHECK(std::isinf(un.ratio));

    const tw_domain sq = square(4);
    tw_grid* other = nullptr;
    REQUIRE(tw_grid_create(&sq, 1.0, &other) == TW_OK);
    CHECK(tw_compare(a, other, &c) == TW_ERR_CONFIG);

    const tw_domain l100 = line(100);
    std::vector<double> u(100), T(100);
    for (int i = 0; i < 100; ++i) {
        T[i] = 1.0 + (i + 0.5) / 100;
        u[i] = 1.0 / T[i];
    }
    tw_grid *gu = nullptr, *gT = nullptr;
    REQUIRE(tw_grid_from_values(&l100, u.data(), 100, &gu) == TW_OK);
    REQUIRE(tw_grid_from_values(&l100, T.data(), 100, &gT) == TW_OK);
    double exponent = 0;
    std::vector<double> xs(10), local(10);
    std::size_t count = 0;
    CHECK(tw_fit_soret(gu, gT, &exponent, xs.data(), local.data(), xs.size(), &count) == TW_OK);
    CHECK(exponent == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(count == 98);
    CHECK(local[0] == doctest::Approx(1.0 / T[1]).epsilon(1e-3));

    const double h[] = {0.1, 0.05}, e[] = {1e-2, 2.5e-3};
    double order = 0;
    CHECK(tw_convergence_rate(h, e, 2, &order) == TW_OK);
    CHECK(order == doctest::Approx(2.0));

    tw_grid_free(gu);
    tw_grid_free(gT);
    tw_grid_free(other);
    tw_grid_free(diff);
    tw_grid_free(a);
    tw_grid_free(b);
}
