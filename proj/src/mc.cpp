#include "thermowalk/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "thermowalk/error.hpp"
#include "thermowalk/philox.hpp"
#include "profile_eval.hpp"
#include "simd.hpp"

namespace thermowalk {

const char* to_string(StepRule rule) { return rule == StepRule::Midpoint ? "midpoint" : "departure"; }

StepRule parse_step_rule(const std::string& name) {
    if (name == "midpoint") return StepRule::Midpoint;
    if (name == "departure") return StepRule::Departure;
    throw ConfigError("unknown step rule '" + name + "' (expected midpoint or departure)");
}

namespace rng {

Point direction_from_bits(std::uint64_t bits, int dim) {
    if (dim == 1) return {(bits >> 63) ? 1.0 : -1.0, 0.0};
    Point e;
    simd::direction(bits, e[0], e[1]);
    return e;
}

Point direction_from_angle(double angle) { return {std::cos(angle), std::sin(angle)}; }

}  // namespace rng

ParticleEnsemble init_ensemble(const DomainSpec& domain, std::size_t count, std::uint64_t seed,
                               bool track_displacement) {
    domain.validate();
    if (count == 0) throw ConfigError("particle count must be at least 1");
    ParticleEnsemble e;
    e.domain = domain;
    e.seed = seed;
    e.x.resize(count);
    if (domain.dim == 2) e.y.resize(count);
    e.clock.assign(count, 0.0);
    e.clock_carry.assign(count, 0.0);
    e.steps.assign(count, 0);
    if (track_displacement) {
        e.disp_x.assign(count, 0.0);
        if (domain.dim == 2) e.disp_y.assign(count, 0.0);
    }
    const auto key = rng::key_of(seed);
    for (std::size_t i = 0; i < count; ++i) {
        const auto out = Philox4x32::generate(rng::counter_of(rng::kInitStep, i), key);
        const double ux = rng::unit_interval((std::uint64_t{out[0]} << 32) | out[1]);
        const double uy = rng::unit_interval((std::uint64_t{out[2]} << 32) | out[3]);
        const Point p = domain.wrap({ux * domain.extent[0], uy * domain.extent[1]});
        e.x[i] = p[0];
        if (domain.dim == 2) e.y[i] = p[1];
    }
    return e;
}

StepResult step_particle(const WalkProfile& profile, const DomainSpec& domain, Point x, Point direction,
                         StepRule rule) {
    const Point p = domain.wrap(x);
    const StepScales s0 = eval_profile(profile, domain, p);
    double length = s0.length;
    if (rule == StepRule::Midpoint) {
        const double half = 0.5 * s0.length;
        const Point mid{simd::fmadd(half, direction[0], p[0]), simd::fmadd(half, direction[1], p[1])};
        length = eval_profile(profile, domain, mid).length;
    }
    Point out{simd::fmadd(length, direction[0], p[0]),
              domain.dim == 2 ? simd::fmadd(length, direction[1], p[1]) : 0.0};
    return {domain.wrap(out), s0.time};
}

namespace {

using simd::vd;
using simd::vi;
using simd::vu;

constexpr int kGroups = 4;
constexpr int kLanes = kGroups * simd::kWidth;
constexpr std::uint64_t kNoParticle = ~std::uint64_t{0};
constexpr std::size_t kChunk = 512;

inline vd wrap(vd v, double length) {
    v = v < 0.0 ? v + length : v;
    return v >= length ? v - length : v;
}

// Vector profile evaluators. Each returns the step scales at already wrapped
// positions using exactly the arithmetic of detail::scales.
struct PaperFig2Eval {
    double cx, cy;
    template <int Dim>
    detail::ScalesOf<vd> eval(vd x, vd y) const {
        if constexpr (Dim == 1)
            return detail::paper_fig2(x - cx);
        else
            return detail::paper_fig2(x - cx, y - cy);
    }
};

struct ConstantEval {
    double length, time;
    template <int Dim>
    detail::ScalesOf<vd> eval(vd, vd) const {
        return {simd::splat(length), simd::splat(time)};
    }
};

template <class Profile>
struct LaneEval {
    const Profile& profile;
    const DomainSpec& domain;
    template <int Dim>
    detail::ScalesOf<vd> eval(vd x, vd y) const {
        detail::ScalesOf<vd> out;
        for (int l = 0; l < simd::kWidth; ++l) {
            const StepScales s = detail::scales(profile, domain, {x[l], Dim == 2 ? y[l] : 0.0});
            out.length[l] = s.length;
            out.time[l] = s.time;
        }
        return out;
    }
};

class Queue {
public:
    Queue(std::atomic<std::size_t>& next, std::size_t count) : next_(next), count_(count) {}

    bool pop(std::size_t& index) {
        if (cur_ == end_) {
            if (done_) return false;
            cur_ = next_.fetch_add(kChunk, std::memory_order_relaxed);
            if (cur_ >= count_) {
                done_ = true;
                cur_ = end_;
                return false;
            }
            end_ = std::min(cur_ + kChunk, count_);
        }
        index = cur_++;
        return true;
    }

private:
    std::atomic<std::size_t>& next_;
    std::size_t count_;
    std::size_t cur_ = 0, end_ = 0;
    bool done_ = false;
};

struct Tally {
    std::uint64_t total = 0;
    std::uint64_t max = 0;
};

template <int Dim, StepRule Rule, bool Track, class Eval>
class LaneKernel {
public:
    LaneKernel(ParticleEnsemble& e, const Eval& eval, double t_final)
        : e_(e), eval_(eval), t_final_(t_final), lx_(e.domain.extent[0]), ly_(e.domain.extent[1]) {}

    Tally run(Queue& queue) {
        for (int l = 0; l < kLanes; ++l) {
            std::size_t i;
            if (queue.pop(i))
                load(l, i);
            else
                kill(l);
        }
        bool draining = false;
        vi act[kGroups];
        phase_ = 0;
        for (;;) {
            bool all_active = true, any_active = false;
            for (int g = 0; g < kGroups; ++g) {
                act[g] = (clock_[g] + carry_[g]) < t_final_;
                all_active = all_active && simd::all(act[g]);
                any_active = any_active || simd::any(act[g]);
            }
            if (!all_active && !draining) {
                draining = !refill(queue);
                any_active = false;
                for (int g = 0; g < kGroups; ++g) {
                    act[g] = (clock_[g] + carry_[g]) < t_final_;
                    any_active = any_active || simd::any(act[g]);
                }
            }
            if (!any_active) break;
            for (int g = 0; g < kGroups; ++g) step(g, act[g]);
            phase_ ^= 1;
        }
        for (int l = 0; l < kLanes; ++l) store(l);
        return tally_;
    }

private:
    static int group(int l) { return l / simd::kWidth; }
    static int slot(int l) { return l % simd::kWidth; }

    bool lane_active(int l) const {
        return clock_[group(l)][slot(l)] + carry_[group(l)][slot(l)] < t_final_;
    }

    // Swaps finished particles for queued ones. Returns false once the queue is empty.
    bool refill(Queue& queue) {
        bool more = true;
        for (int l = 0; l < kLanes; ++l) {
            if (lane_active(l) || id_[group(l)][slot(l)] == kNoParticle) continue;
            store(l);
            for (;;) {
                std::size_t i;
                if (!queue.pop(i)) {
                    kill(l);
                    more = false;
                    break;
                }
                load(l, i);
                if (lane_active(l)) break;
                store(l);
            }
        }
        return more;
    }

    void load(int l, std::size_t i) {
        const int g = group(l), s = slot(l);
        x_[g][s] = e_.x[i];
        y_[g][s] = Dim == 2 ? e_.y[i] : 0.0;
        clock_[g][s] = e_.clock[i];
        carry_[g][s] = e_.clock_carry[i];
        steps_[g][s] = e_.steps[i];
        id_[g][s] = i;
        start_[l] = e_.steps[i];
        if (e_.steps[i] & 1) odd_bits_[g][s] = rng::step_bits(e_.seed, i, e_.steps[i]);
        if constexpr (Track) {
            dx_[g][s] = e_.disp_x[i];
            dy_[g][s] = Dim == 2 ? e_.disp_y[i] : 0.0;
        }
    }

    void store(int l) {
        const int g = group(l), s = slot(l);
        const std::uint64_t i = id_[g][s];
        if (i == kNoParticle) return;
        e_.x[i] = x_[g][s];
        if constexpr (Dim == 2) e_.y[i] = y_[g][s];
        e_.clock[i] = clock_[g][s];
        e_.clock_carry[i] = carry_[g][s];
        e_.steps[i] = steps_[g][s];
        if constexpr (Track) {
            e_.disp_x[i] = dx_[g][s];
            if constexpr (Dim == 2) e_.disp_y[i] = dy_[g][s];
        }
        const std::uint64_t taken = steps_[g][s] - start_[l];
        tally_.total += taken;
        tally_.max = std::max(tally_.max, taken);
        id_[g][s] = kNoParticle;
    }

    void kill(int l) {
        const int g = group(l), s = slot(l);
        x_[g][s] = y_[g][s] = 0.0;
        clock_[g][s] = std::numeric_limits<double>::infinity();
        carry_[g][s] = 0.0;
        steps_[g][s] = 0;
        id_[g][s] = kNoParticle;
        if constexpr (Track) dx_[g][s] = dy_[g][s] = 0.0;
    }

    // Blocks are drawn on even phases; a lane whose step parity differs from
    // the phase sits out one iteration.
    void step(int g, vi act) {
        act &= reinterpret_cast<vi>(((steps_[g] ^ phase_) & 1) == 0);
        vu w;
        if (phase_ == 0)
            simd::philox_pair(steps_[g] >> 1, id_[g], e_.seed, w, odd_bits_[g]);
        else
            w = odd_bits_[g];
        vd ex, ey{};
        if constexpr (Dim == 2)
            simd::direction(w, ex, ey);
        else
            ex = simd::sign_from_bits(w);

        const vd x = x_[g], y = y_[g];
        const auto s0 = eval_.template eval<Dim>(x, y);
        vd length = s0.length;
        if constexpr (Rule == StepRule::Midpoint) {
            const vd half = 0.5 * s0.length;
            const vd mx = wrap(simd::fmadd(half, ex, x), lx_);
            const vd my = Dim == 2 ? wrap(simd::fmadd(half, ey, y), ly_) : y;
            length = eval_.template eval<Dim>(mx, my).length;
        }
        const vd nx = wrap(simd::fmadd(length, ex, x), lx_);
        x_[g] = act ? nx : x;
        if constexpr (Dim == 2) {
            const vd ny = wrap(simd::fmadd(length, ey, y), ly_);
            y_[g] = act ? ny : y;
        }
        if constexpr (Track) {
            dx_[g] = act ? simd::fmadd(length, ex, dx_[g]) : dx_[g];
            if constexpr (Dim == 2) dy_[g] = act ? simd::fmadd(length, ey, dy_[g]) : dy_[g];
        }

        // Neumaier summation keeps long clocks exact to a few ulps.
        const vd c = clock_[g], dt = s0.time;
        const vd t = c + dt;
        const vd comp = c >= dt ? (c - t) + dt : (dt - t) + c;
        carry_[g] = act ? carry_[g] + comp : carry_[g];
        clock_[g] = act ? t : c;
        steps_[g] -= reinterpret_cast<vu>(act);
    }

    ParticleEnsemble& e_;
    const Eval& eval_;
    double t_final_, lx_, ly_;
    vd x_[kGroups], y_[kGroups], clock_[kGroups], carry_[kGroups], dx_[kGroups], dy_[kGroups];
    vu steps_[kGroups], id_[kGroups], odd_bits_[kGroups];
    std::uint64_t phase_ = 0;
    std::uint64_t start_[kLanes];
    Tally tally_;
};

template <class F>
void parallel_for_workers(unsigned workers, F&& body) {
    if (workers <= 1) {
        body(0u);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex guard;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                body(w);
            } catch (...) {
                std::lock_guard lock(guard);
                if (!failure) failure = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

template <int Dim, StepRule Rule, bool Track, class Eval>
SimulateStats run_parallel(ParticleEnsemble& e, const Eval& eval, double t_final, unsigned workers) {
    std::atomic<std::size_t> next{0};
    std::vector<Tally> tallies(workers);
    parallel_for_workers(workers, [&](unsigned w) {
        auto kernel = std::make_unique<LaneKernel<Dim, Rule, Track, Eval>>(e, eval, t_final);
        Queue queue(next, e.size());
        tallies[w] = kernel->run(queue);
    });
    SimulateStats stats;
    for (const auto& t : tallies) {
        stats.total_steps += t.total;
        stats.max_steps = std::max(stats.max_steps, t.max);
    }
    return stats;
}

template <int Dim, StepRule Rule, class Eval>
SimulateStats dispatch_track(ParticleEnsemble& e, const Eval& eval, double t_final, unsigned workers) {
    if (e.tracks_displacement()) return run_parallel<Dim, Rule, true>(e, eval, t_final, workers);
    return run_parallel<Dim, Rule, false>(e, eval, t_final, workers);
}

template <int Dim, class Eval>
SimulateStats dispatch_rule(ParticleEnsemble& e, const Eval& eval, double t_final, const SimulateOptions& o) {
    if (o.rule == StepRule::Midpoint) return dispatch_track<Dim, StepRule::Midpoint>(e, eval, t_final, o.workers);
    return dispatch_track<Dim, StepRule::Departure>(e, eval, t_final, o.workers);
}

template <class Eval>
SimulateStats dispatch_dim(ParticleEnsemble& e, const Eval& eval, double t_final, const SimulateOptions& o) {
    if (e.dim() == 1) return dispatch_rule<1>(e, eval, t_final, o);
    return dispatch_rule<2>(e, eval, t_final, o);
}

void check_ensemble(const ParticleEnsemble& e) {
    e.domain.validate();
    const std::size_t n = e.size();
    if (n == 0) throw ConfigError("ensemble is empty");
    const bool ok = e.clock.size() == n && e.clock_carry.size() == n && e.steps.size() == n &&
                    (e.dim() == 2 ? e.y.size() == n : e.y.empty()) &&
                    (e.disp_x.empty() || (e.disp_x.size() == n && (e.dim() == 2 ? e.disp_y.size() == n : true)));
    if (!ok) throw ConfigError("ensemble arrays have inconsistent lengths");
}

}  // namespace

SimulateStats simulate(ParticleEnsemble& ensemble, const WalkProfile& profile, double t_final,
                       const SimulateOptions& options) {
    if (!(t_final > 0.0) || !std::isfinite(t_final)) throw ConfigError("t_final must be positive and finite");
    if (options.workers == 0) throw ConfigError("worker count must be at least 1");
    check_ensemble(ensemble);
    const DomainSpec& domain = ensemble.domain;
    validate_profile(profile, domain);

    const double min_clock = *std::min_element(ensemble.clock.begin(), ensemble.clock.end());
    const double projected = std::ceil((t_final - min_clock) / min_step_time(profile, domain)) + 1.0;
    if (projected > static_cast<double>(options.step_cap))
        throw NumericalError("walk profile would need about " + std::to_string(projected) +
                             " steps per particle, above the cap of " + std::to_string(options.step_cap));

    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(options.workers, (ensemble.size() + kChunk - 1) / kChunk));
    SimulateOptions opts = options;
    opts.workers = std::max(1u, workers);

    if (std::holds_alternative<PaperFig2Profile>(profile))
        return dispatch_dim(ensemble, PaperFig2Eval{0.5 * domain.extent[0], 0.5 * domain.extent[1]}, t_final, opts);
    if (const auto* c = std::get_if<ConstantProfile>(&profile))
        return dispatch_dim(ensemble, ConstantEval{c->step_length, c->step_time}, t_final, opts);
    if (const auto* s = std::get_if<SqrtTemperatureProfile>(&profile))
        return dispatch_dim(ensemble, LaneEval<SqrtTemperatureProfile>{*s, domain}, t_final, opts);
    return dispatch_dim(ensemble, LaneEval<SampledProfile>{std::get<SampledProfile>(profile), domain}, t_final, opts);
}

FieldGrid histogram(const ParticleEnsemble& ensemble, std::array<int, 2> bins, unsigned workers) {
    const int dim = ensemble.dim();
    const std::size_t n = ensemble.size();
    if (n == 0) throw ConfigError("cannot histogram an empty ensemble");
    if (bins[0] < 1 || (dim == 2 && bins[1] < 1)) throw ConfigError("histogram needs at least one bin per axis");
    if (workers == 0) throw ConfigError("worker count must be at least 1");
    const DomainSpec& d = ensemble.domain;
    const DomainSpec out_domain = dim == 2 ? DomainSpec::box(bins[0], bins[1], d.extent[0], d.extent[1])
                                           : DomainSpec::line(bins[0], d.extent[0]);
    const std::size_t cells = out_domain.cell_count();
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(1, n / 65536)));

    auto bin_of = [](double v, double extent, int count) {
        const int b = static_cast<int>(v / extent * count);
        return std::clamp(b, 0, count - 1);
    };
    std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(cells, 0));
    parallel_for_workers(workers, [&](unsigned w) {
        const std::size_t lo = n * w / workers, hi = n * (w + 1) / workers;
        auto& counts = partial[w];
        for (std::size_t i = lo; i < hi; ++i) {
            const int bx = bin_of(ensemble.x[i], d.extent[0], bins[0]);
            const int by = dim == 2 ? bin_of(ensemble.y[i], d.extent[1], bins[1]) : 0;
            ++counts[static_cast<std::size_t>(by) * bins[0] + bx];
        }
    });
    FieldGrid grid(out_domain);
    const double per_bin = static_cast<double>(n) / static_cast<double>(cells);
    for (std::size_t k = 0; k < cells; ++k) {
        std::uint64_t c = 0;
        for (const auto& p : partial) c += p[k];
        grid[k] = static_cast<double>(c) / per_bin;
    }
    return grid;
}

VarianceEstimate variance(const ParticleEnsemble& before, const ParticleEnsemble& after, double t) {
    if (!(t > 0.0)) throw ConfigError("variance needs a positive elapsed time");
    if (!before.tracks_displacement() || !after.tracks_displacement())
        throw ConfigError("variance needs ensembles with displacement tracking");
    const std::size_t n = after.size();
    if (n == 0 || before.size() != n || before.dim() != after.dim())
        throw ConfigError("variance needs two snapshots of the same ensemble");
    const int dim = after.dim();
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = after.disp_x[i] - before.disp_x[i];
        const double dy = dim == 2 ? after.disp_y[i] - before.disp_y[i] : 0.0;
        const double r2 = dx * dx + dy * dy;
        sum += r2;
        sum_sq += r2 * r2;
    }
    const double mean = sum / static_cast<double>(n);
    const double var = n > 1 ? std::max(0.0, (sum_sq - sum * mean) / static_cast<double>(n - 1)) : 0.0;
    const double scale = 2.0 * dim * t;
    return {mean / scale, std::sqrt(var / static_cast<double>(n)) / scale};
}

}  // namespace thermowalk
