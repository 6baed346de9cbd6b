#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "thermowalk/error.hpp"
#include "thermowalk/mc.hpp"
#include "thermowalk/philox.hpp"

namespace thermowalk {

std::uint64_t LatticeState::total() const { return std::accumulate(occupancy.begin(), occupancy.end(), std::uint64_t{0}); }

void LatticeState::validate() const {
    const std::size_t n = sites.size();
    if (n < 2) throw ConfigError("lattice needs at least 2 sites");
    if (site_dt.size() != n || occupancy.size() != n) throw ConfigError("lattice arrays have inconsistent lengths");
    if (!(extent > 0.0)) throw ConfigError("lattice extent must be positive");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(sites[i] >= 0.0 && sites[i] < extent)) throw ConfigError("lattice sites must lie in [0, extent)");
        if (i > 0 && !(sites[i] > sites[i - 1])) throw ConfigError("lattice sites must be strictly increasing");
        if (!(site_dt[i] > 0.0) || !std::isfinite(site_dt[i])) throw ConfigError("site times must be positive");
    }
}

LatticeState make_uniform_lattice(int count, double extent, std::span<const double> site_dt) {
    if (count < 2) throw ConfigError("lattice needs at least 2 sites");
    if (site_dt.size() != static_cast<std::size_t>(count)) throw ConfigError("one traveling time per site is required");
    LatticeState s;
    s.extent = extent;
    s.sites.resize(count);
    for (int i = 0; i < count; ++i) s.sites[i] = (i + 0.5) * extent / count;
    s.site_dt.assign(site_dt.begin(), site_dt.end());
    s.occupancy.assign(count, 0);
    s.validate();
    return s;
}

LatticeState lattice_step(const LatticeState& state, std::span<const std::uint8_t> draws) {
    state.validate();
    if (draws.size() != state.total()) throw ConfigError("lattice_step needs one draw per particle");
    const std::size_t n = state.site_count();
    LatticeState next = state;
    std::fill(next.occupancy.begin(), next.occupancy.end(), 0);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t left = (i + n - 1) % n, right = (i + 1) % n;
        for (std::uint64_t p = 0; p < state.occupancy[i]; ++p) ++next.occupancy[draws[k++] == 0 ? left : right];
    }
    return next;
}

LatticeWalkers init_lattice_walkers(const LatticeState& lattice, std::size_t count, std::uint64_t seed) {
    lattice.validate();
    if (count == 0) throw ConfigError("walker count must be at least 1");
    LatticeWalkers w;
    w.seed = seed;
    w.site.resize(count);
    w.clock.assign(count, 0.0);
    w.jumps.assign(count, 0);
    const std::uint64_t n = lattice.site_count();
    for (std::size_t i = 0; i < count; ++i) {
        const double u = rng::unit_interval(rng::bits64(seed, i, rng::kInitStep));
        w.site[i] = static_cast<std::uint32_t>(std::min<std::uint64_t>(static_cast<std::uint64_t>(u * n), n - 1));
    }
    return w;
}

void lattice_advance(const LatticeState& lattice, LatticeWalkers& walkers, double t, unsigned workers) {
    lattice.validate();
    if (!std::isfinite(t)) throw ConfigError("lattice horizon must be finite");
    if (workers == 0) throw ConfigError("worker count must be at least 1");
    const std::size_t count = walkers.size();
    if (walkers.clock.size() != count || walkers.jumps.size() != count)
        throw ConfigError("walker arrays have inconsistent lengths");
    const std::uint32_t n = static_cast<std::uint32_t>(lattice.site_count());
    for (std::uint32_t s : walkers.site)
        if (s >= n) throw ConfigError("walker sits outside the lattice");

    auto run = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            std::uint32_t site = walkers.site[i];
            double clock = walkers.clock[i];
            std::uint64_t jumps = walkers.jumps[i];
            while (clock + lattice.site_dt[site] <= t) {
                clock += lattice.site_dt[site];
                const bool right = (rng::step_bits(walkers.seed, i, jumps) >> 63) != 0;
                site = right ? (site + 1 == n ? 0 : site + 1) : (site == 0 ? n - 1 : site - 1);
                ++jumps;
            }
            walkers.site[i] = site;
            walkers.clock[i] = clock;
            walkers.jumps[i] = jumps;
        }
    };
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(1, count / 1024)));
    if (workers == 1) {
        run(0, count);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, count * w / workers, count * (w + 1) / workers);
    for (auto& th : pool) th.join();
}

LatticeState lattice_occupancy(const LatticeState& lattice, const LatticeWalkers& walkers) {
    LatticeState out = lattice;
    std::fill(out.occupancy.begin(), out.occupancy.end(), 0);
    for (std::uint32_t s : walkers.site) {
        if (s >= out.occupancy.size()) throw ConfigError("walker sits outside the lattice");
        ++out.occupancy[s];
    }
    return out;
}

FieldGrid lattice_density(const LatticeState& state) {
    state.validate();
    const std::size_t n = state.site_count();
    if (state.total() == 0) throw ConfigError("lattice is empty");
    std::vector<double> density(n);
    for (std::size_t i = 0; i < n; ++i) {
        // Each site owns the half-way points to its periodic neighbours.
        const double prev = i == 0 ? state.sites[n - 1] - state.extent : state.sites[i - 1];
        const double next = i + 1 == n ? state.sites[0] + state.extent : state.sites[i + 1];
        density[i] = static_cast<double>(state.occupancy[i]) / (0.5 * (next - prev));
    }
    return normalize_mean(FieldGrid(DomainSpec::line(static_cast<int>(n), state.extent), std::move(density)));
}

}  // namespace thermowalk
