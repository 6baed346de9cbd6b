#include <cmath>
#include <numbers>

#include "doctest.h"
#include "thermowalk/error.hpp"
#include "thermowalk/mc.hpp"
#include "thermowalk/philox.hpp"

using namespace thermowalk;

namespace {

// Plain one-particle-at-a-time walk used as the reference for the vector kernel.
void reference_walk(ParticleEnsemble& e, const WalkProfile& profile, double t_final, StepRule rule) {
    for (std::size_t i = 0; i < e.size(); ++i) {
        Point p = e.position(i);
        double clock = e.clock[i], carry = e.clock_carry[i];
        std::uint64_t steps = e.steps[i];
        while (clock + carry < t_final) {
            const Point dir = rng::direction_from_bits(rng::step_bits(e.seed, i, steps), e.dim());
            const StepResult r = step_particle(profile, e.domain, p, dir, rule);
            p = r.position;
            const double t = clock + r.time;
            carry += clock >= r.time ? (clock - t) + r.time : (r.time - t) + clock;
            clock = t;
            ++steps;
        }
        e.x[i] = p[0];
        if (e.dim() == 2) e.y[i] = p[1];
        e.clock[i] = clock;
        e.clock_carry[i] = carry;
        e.steps[i] = steps;
    }
}

void check_identical(const ParticleEnsemble& a, const ParticleEnsemble& b) {
    REQUIRE(a.size() == b.size());
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const bool same = a.x[i] == b.x[i] && (a.dim() == 1 || a.y[i] == b.y[i]) && a.clock[i] == b.clock[i] &&
                          a.clock_carry[i] == b.clock_carry[i] && a.steps[i] == b.steps[i];
        if (!same) ++mismatches;
    }
    CHECK(mismatches == 0);
}

Philox4x32::Counter philox(Philox4x32::Counter c, Philox4x32::Key k) { return Philox4x32::generate(c, k); }

}  // namespace

TEST_SUITE("mc") {

TEST_CASE("Philox4x32-10 known-answer vectors") {
    CHECK(philox({0, 0, 0, 0}, {0, 0}) == Philox4x32::Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          Philox4x32::Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          Philox4x32::Counter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("step bits pair the two halves of one block") {
    const auto block = philox(rng::counter_of(3, 17), rng::key_of(99));
    CHECK(rng::step_bits(99, 17, 6) == ((std::uint64_t{block[0]} << 32) | block[1]));
    CHECK(rng::step_bits(99, 17, 7) == ((std::uint64_t{block[2]} << 32) | block[3]));
    CHECK(rng::bits64(99, 17, 3) == rng::step_bits(99, 17, 6));
}

TEST_CASE("2D directions are unit vectors at angle (q + t) pi / 2") {
    for (std::uint64_t k = 0; k < 20000; ++k) {
        const std::uint64_t bits = rng::step_bits(5, k, 0);
        const Point e = rng::direction_from_bits(bits, 2);
        const double t = static_cast<double>((bits << 2) >> 11) * 0x1p-53;
        const double angle = (static_cast<double>(bits >> 62) + t) * std::numbers::pi / 2;
        CHECK(std::abs(e[0] - std::cos(angle)) < 2e-15);
        CHECK(std::abs(e[1] - std::sin(angle)) < 2e-15);
    }
}

TEST_CASE("direction angles are uniform") {
    constexpr int kSectors = 16, kDraws = 320000;
    std::vector<int> counts(kSectors, 0);
    for (int k = 0; k < kDraws; ++k) {
        const Point e = rng::direction_from_bits(rng::step_bits(1, k, 3), 2);
        double a = std::atan2(e[1], e[0]);
        if (a < 0) a += 2 * std::numbers::pi;
        ++counts[std::min(kSectors - 1, static_cast<int>(a / (2 * std::numbers::pi) * kSectors))];
    }
    double chi2 = 0.0;
    const double expected = static_cast<double>(kDraws) / kSectors;
    for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
    CHECK(chi2 < 40.0);  // 15 degrees of freedom, p ~ 5e-4

    int right = 0;
    for (int k = 0; k < 100000; ++k) right += rng::direction_from_bits(rng::step_bits(2, k, 0), 1)[0] > 0;
    CHECK(std::abs(right - 50000) < 5 * 158);
}

TEST_CASE("init_ensemble") {
    const DomainSpec d = DomainSpec::square(10);
    const auto e = init_ensemble(d, 4, 42);
    CHECK(e.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(e.x[i] >= 0.0);
        CHECK(e.x[i] < 1.0);
        CHECK(e.y[i] >= 0.0);
        CHECK(e.y[i] < 1.0);
        CHECK(e.clock[i] == 0.0);
    }
    const auto again = init_ensemble(d, 4, 42);
    CHECK(again.x == e.x);
    CHECK(again.y == e.y);
    const auto other = init_ensemble(d, 4, 43);
    CHECK(other.x != e.x);
    CHECK_THROWS_AS(init_ensemble(d, 0, 42), ConfigError);

    // Particle i does not depend on how many particles there are.
    const auto big = init_ensemble(d, 1000, 42);
    for (std::size_t i = 0; i < 4; ++i) CHECK(big.x[i] == e.x[i]);
}

TEST_CASE("step_particle with the departure rule") {
    const DomainSpec d = DomainSpec::square(50);
    const Point east = rng::direction_from_angle(0.0);
    const auto a = step_particle(PaperFig2Profile{}, d, {0.5, 0.5}, east, StepRule::Departure);
    CHECK(a.position[0] == doctest::Approx(0.504).epsilon(1e-14));
    CHECK(a.position[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(a.time == doctest::Approx(0.0008).epsilon(1e-14));

    const auto b = step_particle(PaperFig2Profile{}, d, {0.999, 0.5}, east, StepRule::Departure);
    CHECK(b.position[0] == doctest::Approx(0.00798002).epsilon(1e-12));
    CHECK(b.position[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(b.time == doctest::Approx(0.02 * 0.449001 * 0.449001).epsilon(1e-12));

    const auto c = step_particle(ConstantProfile{0.0, 1.0}, d, {0.3, 0.7}, east, StepRule::Departure);
    CHECK(c.position == Point{0.3, 0.7});
}

TEST_CASE("step_particle with the midpoint rule takes the length half a step ahead") {
    const DomainSpec d = DomainSpec::square(50);
    const Point east = rng::direction_from_angle(0.0);
    const auto a = step_particle(PaperFig2Profile{}, d, {0.5, 0.5}, east, StepRule::Midpoint);
    const double mid = 0.5 + 0.002;
    const double length = 0.02 * (0.2 + (mid - 0.5) * (mid - 0.5));
    CHECK(a.position[0] == doctest::Approx(0.5 + length).epsilon(1e-14));
    CHECK(a.time == doctest::Approx(0.0008).epsilon(1e-14));

    // Across the seam the midpoint is wrapped before the profile is read.
    const auto b = step_particle(PaperFig2Profile{}, d, {0.999, 0.5}, east, StepRule::Midpoint);
    const double half = 0.5 * 0.02 * 0.449001 + 0.999;
    const double m = half - 1.0 < 0 ? half : half - 1.0;
    const double len_b = 0.02 * (0.2 + (m - 0.5) * (m - 0.5));
    CHECK(b.position[0] == doctest::Approx(0.999 + len_b - 1.0).epsilon(1e-10));
}

TEST_CASE("simulate: crossing-step rule") {
    const DomainSpec d = DomainSpec::square(10);
    auto e = init_ensemble(d, 1000, 3);
    const auto stats = simulate(e, ConstantProfile{0.01, 0.01}, 0.005);
    CHECK(stats.total_steps == 1000);
    for (auto s : e.steps) CHECK(s == 1);
    for (double c : e.clock) CHECK(c >= 0.005);

    auto f = init_ensemble(d, 1000, 3);
    simulate(f, ConstantProfile{0.01, 0.01}, 1.0);
    for (auto s : f.steps) CHECK(s == 100);

    auto g = init_ensemble(d, 1000, 3);
    simulate(g, PaperFig2Profile{}, 0.0001);
    for (auto s : g.steps) CHECK(s == 1);
}

TEST_CASE("simulate: errors") {
    const DomainSpec d = DomainSpec::square(10);
    auto e = init_ensemble(d, 10, 3);
    CHECK_THROWS_AS(simulate(e, PaperFig2Profile{}, 0.0), ConfigError);
    CHECK_THROWS_AS(simulate(e, PaperFig2Profile{}, -1.0), ConfigError);
    SimulateOptions capped;
    capped.step_cap = 1000;
    CHECK_THROWS_AS(simulate(e, PaperFig2Profile{}, 1000.0, capped), NumericalError);
    SimulateOptions none;
    none.workers = 0;
    CHECK_THROWS_AS(simulate(e, PaperFig2Profile{}, 1.0, none), ConfigError);
    CHECK_THROWS_AS(simulate(e, ConstantProfile{0.7, 1.0}, 1.0), ConfigError);
}

TEST_CASE("simulate matches the one-particle reference bit for bit") {
    const FieldGrid len = FieldGrid::sample(DomainSpec::square(16), [](Point p) {
        return 0.004 + 0.002 * std::sin(6.283185307179586 * p[0]) * std::cos(6.283185307179586 * p[1]) + 0.003;
    });
    const FieldGrid time = FieldGrid::sample(DomainSpec::square(16), [](Point p) { return 0.001 * (1.0 + p[0]); });
    struct Case {
        const char* name;
        WalkProfile profile;
        int dim;
    };
    const Case cases[] = {
        {"paper 2D", PaperFig2Profile{}, 2},
        {"paper 1D", PaperFig2Profile{}, 1},
        {"constant 2D", ConstantProfile{0.01, 0.003}, 2},
        {"sqrt-temperature 1D", SqrtTemperatureProfile{1, 0.005, ScalarField::affine(1.0, 1.0)}, 1},
        {"sampled 2D", SampledProfile{len, time}, 2},
    };
    for (const auto& c : cases)
        for (StepRule rule : {StepRule::Midpoint, StepRule::Departure}) {
            CAPTURE(c.name);
            CAPTURE(to_string(rule));
            const DomainSpec d = c.dim == 2 ? DomainSpec::square(16) : DomainSpec::line(16);
            auto fast = init_ensemble(d, 777, 2024);
            auto slow = fast;
            SimulateOptions opts;
            opts.rule = rule;
            opts.workers = 2;
            const auto stats = simulate(fast, c.profile, 0.3, opts);
            reference_walk(slow, c.profile, 0.3, rule);
            check_identical(fast, slow);
            std::uint64_t total = 0;
            for (auto s : slow.steps) total += s;
            CHECK(stats.total_steps == total);
        }
}

TEST_CASE("property: results do not depend on the worker count") {
    const DomainSpec d = DomainSpec::square(50);
    const auto start = init_ensemble(d, 5000, 42, true);
    auto one = start;
    simulate(one, PaperFig2Profile{}, 2.0, {StepRule::Midpoint, 1});
    for (unsigned w : {2u, 3u, 8u}) {
        auto many = start;
        simulate(many, PaperFig2Profile{}, 2.0, {StepRule::Midpoint, w});
        check_identical(one, many);
        CHECK(many.disp_x == one.disp_x);
        CHECK(many.disp_y == one.disp_y);
    }
}

TEST_CASE("property: continuing a run equals running straight through") {
    const DomainSpec d = DomainSpec::square(50);
    auto a = init_ensemble(d, 3000, 8);
    auto b = a;
    simulate(a, PaperFig2Profile{}, 0.7);
    simulate(a, PaperFig2Profile{}, 1.9);
    simulate(b, PaperFig2Profile{}, 1.9);
    check_identical(a, b);
}

TEST_CASE("property: particles stay in the domain and are conserved") {
    for (int dim : {1, 2}) {
        const DomainSpec d = dim == 2 ? DomainSpec::box(10, 20, 2.0, 0.5) : DomainSpec::line(10, 3.0);
        auto e = init_ensemble(d, 4000, 1);
        simulate(e, ConstantProfile{0.2, 0.01}, 1.0);
        CHECK(e.size() == 4000);
        CHECK(e.clock.size() == 4000);
        for (std::size_t i = 0; i < e.size(); ++i) {
            CHECK(e.x[i] >= 0.0);
            CHECK(e.x[i] < d.extent[0]);
            if (dim == 2) {
                CHECK(e.y[i] >= 0.0);
                CHECK(e.y[i] < d.extent[1]);
            }
        }
    }
}

TEST_CASE("histogram") {
    ParticleEnsemble e = init_ensemble(DomainSpec::square(4), 4, 0);
    e.x = {0.25, 0.75, 0.25, 0.75};
    e.y = {0.25, 0.25, 0.75, 0.75};
    const FieldGrid h = histogram(e, {2, 2});
    for (double v : h.values()) CHECK(v == 1.0);

    ParticleEnsemble line = init_ensemble(DomainSpec::line(4), 5, 0);
    line.x = {0.1, 0.2, 0.3, 0.4, 0.45};
    const FieldGrid g = histogram(line, {2, 1});
    CHECK(g.size() == 2);
    CHECK(g[0] == 2.0);
    CHECK(g[1] == 0.0);

    CHECK_THROWS_AS(histogram(e, {0, 2}), ConfigError);
}

TEST_CASE("histogram of uniform particles shows only binomial noise") {
    const auto e = init_ensemble(DomainSpec::square(50), 1'000'000, 42);
    const FieldGrid h = histogram(e, {50, 50}, 4);
    CHECK(h.mean() == doctest::Approx(1.0).epsilon(1e-12));
    double worst = 0.0;
    for (double v : h.values()) worst = std::max(worst, std::abs(v - 1.0));
    // sd per bin = sqrt(400)/400 = 0.05; 2500 bins stay within about 4 sd.
    CHECK(worst < 0.2);
    CHECK(histogram(e, {50, 50}, 1) == h);
}

TEST_CASE("variance of a homogeneous walk") {
    const DomainSpec d = DomainSpec::square(10);
    const auto start = init_ensemble(d, 100000, 42, true);
    CHECK(variance(start, start, 1.0).diffusivity == 0.0);
    CHECK_THROWS_AS(variance(start, start, 0.0), ConfigError);
    CHECK_THROWS_AS(variance(init_ensemble(d, 10, 1), init_ensemble(d, 10, 1), 1.0), ConfigError);

    auto end = start;
    simulate(end, ConstantProfile{0.01, 0.01}, 10.0, {StepRule::Midpoint, 2});
    const auto v = variance(start, end, 10.0);
    CHECK(std::abs(v.diffusivity - 0.0025) < 3.0 * v.standard_error);
    CHECK(v.standard_error < 0.0025 * 0.01);

    const DomainSpec line = DomainSpec::line(10, 10.0);
    const auto s1 = init_ensemble(line, 100000, 9, true);
    auto e1 = s1;
    simulate(e1, ConstantProfile{1.0, 1.0}, 100.0);
    const auto v1 = variance(s1, e1, 100.0);
    CHECK(std::abs(v1.diffusivity - 0.5) < 3.0 * v1.standard_error);
}

}  // TEST_SUITE
