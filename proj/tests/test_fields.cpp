#include <cmath>
#include <random>

#include "doctest.h"
#include "thermowalk/error.hpp"
#include "thermowalk/profile.hpp"
#include "thermowalk/transport.hpp"

using namespace thermowalk;

namespace {

const DomainSpec kSquare = DomainSpec::square(50);

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("fields") {

TEST_CASE("domain validation") {
    CHECK_NOTHROW(DomainSpec::square(4).validate());
    CHECK_THROWS_AS(DomainSpec::square(3).validate(), ConfigError);
    CHECK_THROWS_AS(DomainSpec::line(10, 0.0).validate(), ConfigError);
    CHECK_THROWS_AS((DomainSpec{3, {10, 10}, {1, 1}}.validate()), ConfigError);
}

TEST_CASE("wrap stays inside the box") {
    const DomainSpec d = DomainSpec::square(10);
    for (double v : {-1e-18, -0.3, 0.0, 0.999999, 1.0, 1.7, -5.2, 3.0}) {
        const Point p = d.wrap({v, v});
        CHECK(p[0] >= 0.0);
        CHECK(p[0] < 1.0);
    }
    CHECK(d.wrap({1.25, -0.25})[0] == doctest::Approx(0.25));
    CHECK(d.wrap({1.25, -0.25})[1] == doctest::Approx(0.75));
}

TEST_CASE("built-in heterogeneous profile at the centre and the corner") {
    const auto c = eval_profile(PaperFig2Profile{}, kSquare, {0.5, 0.5});
    CHECK(c.length == doctest::Approx(0.004).epsilon(1e-14));
    CHECK(c.time == doctest::Approx(0.0008).epsilon(1e-14));
    const auto o = eval_profile(PaperFig2Profile{}, kSquare, {0.0, 0.0});
    CHECK(o.length == doctest::Approx(0.014).epsilon(1e-14));
    CHECK(o.time == doctest::Approx(0.0098).epsilon(1e-14));
}

TEST_CASE("constant profile") {
    const auto s = eval_profile(ConstantProfile{1.0, 1.0}, kSquare, {0.3, 0.9});
    CHECK(s.length == 1.0);
    CHECK(s.time == 1.0);
    CHECK(diffusivity(ConstantProfile{1.0, 1.0}, DomainSpec::line(10), {0.2, 0.0}, 1) == 0.5);
    CHECK(walk_speed(ConstantProfile{0.3, 0.3}, kSquare, {0.1, 0.1}) == 1.0);
}

TEST_CASE("built-in heterogeneous profile: diffusivity and speed") {
    CHECK(diffusivity(PaperFig2Profile{}, kSquare, {0.5, 0.5}, 2) == doctest::Approx(0.005).epsilon(1e-14));
    CHECK(diffusivity(PaperFig2Profile{}, kSquare, {0.0, 0.0}, 2) ==
          doctest::Approx(0.014 * 0.014 / (4 * 0.0098)).epsilon(1e-14));
    CHECK(walk_speed(PaperFig2Profile{}, kSquare, {0.5, 0.5}) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(walk_speed(PaperFig2Profile{}, kSquare, {0.0, 0.0}) == doctest::Approx(1.0 / 0.7).epsilon(1e-14));
}

TEST_CASE("property: D and S reproduce the step scales exactly") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const WalkProfile profiles[] = {PaperFig2Profile{}, ConstantProfile{0.01, 0.02},
                                    SqrtTemperatureProfile{2, 0.005, ScalarField::affine(1.0, 1.0)}};
    for (const auto& p : profiles)
        for (int k = 0; k < 200; ++k) {
            const Point x{u(gen), u(gen)};
            const StepScales s = eval_profile(p, kSquare, x);
            const double D = diffusivity(s, 2);
            const double S = walk_speed(s);
            CHECK(rel(D * 2 * 2 * s.time, s.length * s.length) <= 1e-15);
            CHECK(rel(S * s.time, s.length) <= 1e-15);
        }
}

TEST_CASE("property: built-in heterogeneous profile has constant D and S = 1/r") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        const Point x{u(gen), u(gen)};
        const double r = 0.2 + (x[0] - 0.5) * (x[0] - 0.5) + (x[1] - 0.5) * (x[1] - 0.5);
        CHECK(rel(diffusivity(PaperFig2Profile{}, kSquare, x, 2), 0.005) <= 1e-15);
        CHECK(std::abs(walk_speed(PaperFig2Profile{}, kSquare, x) * r - 1.0) <= 1e-12);
    }
}

TEST_CASE("sqrt-temperature profile carries D and S = sqrt(T)") {
    const SqrtTemperatureProfile p{1, 0.005, ScalarField::affine(1.0, 1.0)};
    const DomainSpec line = DomainSpec::line(64);
    for (double x : {0.0, 0.25, 0.5, 0.9}) {
        CHECK(diffusivity(p, line, {x, 0.0}, 1) == doctest::Approx(0.005).epsilon(1e-13));
        CHECK(walk_speed(p, line, {x, 0.0}) == doctest::Approx(std::sqrt(1.0 + x)).epsilon(1e-13));
    }
}

TEST_CASE("profile validation") {
    CHECK_NOTHROW(validate_profile(PaperFig2Profile{}, kSquare));
    CHECK_THROWS_AS(validate_profile(ConstantProfile{0.6, 1.0}, kSquare), ConfigError);
    CHECK_THROWS_AS(validate_profile(ConstantProfile{0.1, 0.0}, kSquare), ConfigError);
    CHECK_THROWS_AS(validate_profile(ConstantProfile{0.1, -1.0}, kSquare), ConfigError);
}

TEST_CASE("sampled profile interpolates bilinearly") {
    const DomainSpec d = DomainSpec::square(8);
    const FieldGrid len = FieldGrid::sample(d, [](Point p) { return 0.01 + 0.001 * p[0]; });
    const FieldGrid time = FieldGrid::sample(d, [](Point) { return 0.02; });
    const SampledProfile prof{len, time};
    // Linear data is reproduced exactly away from the periodic seam.
    CHECK(eval_profile(prof, d, {0.4, 0.3}).length == doctest::Approx(0.01 + 0.0004).epsilon(1e-13));
    CHECK(eval_profile(prof, d, {0.4, 0.3}).time == doctest::Approx(0.02));
    CHECK(profile_name(prof) == "sampled");
}

TEST_CASE("speed from temperature") {
    const DomainSpec line = DomainSpec::line(10);
    PhysicalParams params;
    CHECK(speed_from_temperature(FieldGrid(line, 4.0), params)[3] == doctest::Approx(2.0));
    const FieldGrid T = FieldGrid::sample(line, [](Point p) { return 1.0 + p[0]; });
    const FieldGrid S = speed_from_temperature(T, params);
    CHECK(S.at(4) == doctest::Approx(std::sqrt(1.45)));
    CHECK(S.at(5) == doctest::Approx(std::sqrt(1.55)));
    // Cell 4 and 5 straddle x = 0.5; their average sits within O(h^2) of sqrt(1.5).
    CHECK(0.5 * (S.at(4) + S.at(5)) == doctest::Approx(1.224745).epsilon(1e-3));

    params.k_boltzmann = 9.0;
    params.mass = 1.0;
    CHECK(speed_from_temperature(FieldGrid(line, 1.0), params, false)[0] == doctest::Approx(3.0));
    CHECK_THROWS_AS(speed_from_temperature(FieldGrid(line, 0.0), params), DomainError);
}

TEST_CASE("Einstein diffusivity") {
    PhysicalParams p;
    p.constant_viscosity = 8.9e-4;
    p.radius = 1e-6;
    const double expected = 1.380649e-23 * 298.0 / (6.0 * 3.141592653589793 * 8.9e-4 * 1e-6);
    CHECK(einstein_diffusivity(298.0, p) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(einstein_diffusivity(298.0, p) == doctest::Approx(2.4525e-13).epsilon(1e-4));

    PhysicalParams twice = p;
    twice.radius = 2e-6;
    CHECK(einstein_diffusivity(298.0, twice) == doctest::Approx(0.5 * einstein_diffusivity(298.0, p)));

    PhysicalParams power;
    power.eta0 = 8.9e-4;
    power.T0 = 298.0;
    CHECK(einstein_diffusivity(298.0, power) == doctest::Approx(einstein_diffusivity(298.0, p)).epsilon(1e-15));

    PhysicalParams bad = p;
    bad.radius = 0.0;
    CHECK_THROWS_AS(einstein_diffusivity(298.0, bad), DomainError);
    bad = p;
    bad.constant_viscosity = -1.0;
    CHECK_THROWS_AS(einstein_diffusivity(298.0, bad), DomainError);
}

TEST_CASE("Einstein diffusivity with power-law viscosity gives D_T proportional to 1/eta") {
    // D_T = D / (2T) = k_B / (12 pi R eta)
    PhysicalParams p;
    for (double T : {280.0, 300.0, 340.0}) {
        const double D = einstein_diffusivity(T, p);
        const double DT = thermal_diffusivity(D, SpeedModel::sqrt_temperature(), T);
        CHECK(DT == doctest::Approx(p.k_boltzmann / (12.0 * 3.141592653589793 * p.radius * p.viscosity(T))));
    }
}

TEST_CASE("thermal diffusivity and Soret coefficient") {
    const SpeedModel s = SpeedModel::sqrt_temperature();
    CHECK(thermal_diffusivity(0.005, s, 1.0) == doctest::Approx(0.0025).epsilon(1e-15));
    CHECK(thermal_diffusivity(0.005, s.scaled(7.0), 1.0) == doctest::Approx(0.0025).epsilon(1e-15));
    CHECK(thermal_diffusivity(0.0, s, 3.0) == 0.0);
    CHECK(soret_coefficient(s, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(soret_coefficient(s, 300.0) == doctest::Approx(1.0 / 600.0).epsilon(1e-15));
    CHECK(soret_coefficient(SpeedModel::custom([](double) { return 3.0; }), 2.0) == 0.0);
    CHECK_THROWS_AS(soret_coefficient(s, -1.0), DomainError);
}

TEST_CASE("property: finite-difference derivative of sqrt matches the analytic one") {
    const SpeedModel numeric = SpeedModel::custom([](double T) { return std::sqrt(T); });
    const SpeedModel exact = SpeedModel::sqrt_temperature();
    CHECK_FALSE(numeric.analytic());
    for (double T = 0.1; T <= 1000.0; T *= 1.37) {
        CHECK(rel(numeric.derivative(T), 0.5 / std::sqrt(T)) <= 1e-6);
        CHECK(rel(exact.derivative(T), 0.5 / std::sqrt(T)) <= 1e-15);
    }
}

TEST_CASE("property: rescaling S leaves S_T, D_T and the steady state unchanged") {
    const DomainSpec d = DomainSpec::line(40);
    const FieldGrid T = FieldGrid::sample(d, [](Point p) { return 1.0 + p[0]; });
    const FieldGrid S = speed_from_temperature(T, PhysicalParams{});
    FieldGrid S2 = S;
    for (double& v : S2.values()) v *= 2.7;
    const FieldGrid a = theoretical_steady_state(S), b = theoretical_steady_state(S2);
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(rel(b[k], a[k]) <= 1e-12);

    const SpeedModel m = SpeedModel::sqrt_temperature();
    const SpeedModel c = SpeedModel::custom([](double t) { return std::sqrt(t); });
    for (double t : {0.5, 1.0, 2.0, 300.0}) {
        CHECK(rel(soret_coefficient(m.scaled(2.7), t), soret_coefficient(m, t)) <= 1e-12);
        CHECK(rel(thermal_diffusivity(0.005, m.scaled(2.7), t), thermal_diffusivity(0.005, m, t)) <= 1e-12);
        CHECK(rel(soret_coefficient(c.scaled(2.7), t), soret_coefficient(c, t)) <= 1e-12);
    }
}

TEST_CASE("property: S_T times D equals D_T") {
    const DomainSpec d = DomainSpec::line(32);
    const FieldGrid T = FieldGrid::sample(d, [](Point p) { return 1.0 + 2.0 * p[0]; });
    const SqrtTemperatureProfile prof{1, 0.005, ScalarField::affine(1.0, 2.0)};
    const CoefficientSet c = coefficients(prof, d, T, SpeedModel::sqrt_temperature());
    for (std::size_t k = 0; k < c.soret.size(); ++k)
        CHECK(rel(c.soret[k] * c.diffusivity[k], c.thermal_diffusivity[k]) <= 1e-12);
}

TEST_CASE("theoretical steady state") {
    const FieldGrid flat = theoretical_steady_state(ConstantProfile{0.01, 0.01}, kSquare);
    for (double v : flat.values()) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));

    // Odd cell count so that a cell sits exactly at the centre.
    const DomainSpec odd = DomainSpec::square(51);
    const FieldGrid g = theoretical_steady_state(PaperFig2Profile{}, odd);
    const double h = 1.0 / 51;
    const double discrete_mean = 0.2 + 2.0 * (1.0 / 12.0 - h * h / 12.0);
    CHECK(g.at(25, 25) == doctest::Approx(0.2 / discrete_mean).epsilon(1e-12));
    CHECK(g.at(25, 25) == doctest::Approx(0.2 / (0.2 + 1.0 / 6.0)).epsilon(1e-3));
    CHECK(g.mean() == doctest::Approx(1.0).epsilon(1e-14));

    const DomainSpec line = DomainSpec::line(20);
    const FieldGrid T = FieldGrid::sample(line, [](Point p) { return 1.0 + p[0]; });
    const FieldGrid u = theoretical_steady_state(speed_from_temperature(T, PhysicalParams{}));
    for (int i = 1; i < 20; ++i) {
        const double xa = (i + 0.5) / 20, xb = 0.5 / 20;
        CHECK(u.at(i) / u.at(0) == doctest::Approx(std::sqrt((1.0 + xb) / (1.0 + xa))).epsilon(1e-13));
    }
    CHECK_THROWS_AS(theoretical_steady_state(FieldGrid(line, 0.0)), DomainError);
}

}  // TEST_SUITE
