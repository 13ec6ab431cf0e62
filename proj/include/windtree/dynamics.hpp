#pragma once

#include "windtree/surface.hpp"
#include "windtree/table.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace windtree {

struct SingularHit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// 'V' = reflection on a vertical wall, 'H' = on a horizontal wall.
using EventSeq = std::string;

/// Exact billiard state; positions in cell units, dir an integer vector whose signs are the flags.
struct BilliardState {
    std::array<std::int64_t, 2> cell{0, 0};
    BigRat x, y;  // in [0,1]
    long dx = 1, dy = 0;

    friend bool operator==(const BilliardState& a, const BilliardState& b) {
        return a.cell == b.cell && a.x == b.x && a.y == b.y && a.dx == b.dx && a.dy == b.dy;
    }
};

struct ExactTrace {
    EventSeq events;
    BilliardState final_state;
    BigRat elapsed;  // time; arc length = elapsed * |dir|
};

/// Exact trace for `time` (arc length time*|dir|) or until `max_events` wall hits.
ExactTrace trace_exact(const WindTreeTable& table, const BilliardState& start, std::optional<BigRat> time,
                       std::size_t max_events = SIZE_MAX);

/// True iff the state returns to itself after exactly `time`.
bool closure_check(const WindTreeTable& table, const BilliardState& start, const BigRat& time);

/// Straight line on the origami from (square, x, y) with drawn direction (dx, dy).
struct OrigamiTrace {
    EventSeq events;
    Cochain crossings{};  // signed boundary crossings
    int final_square = 0;
    BigRat x, y;
};
OrigamiTrace trace_origami(const Surface& surface, const SurfacePoint& start, long dx, long dy, std::size_t max_events);

/// Billiard state of a point on the origami moving in drawn direction (dx, dy).
BilliardState billiard_state_of(const Surface& surface, const SurfacePoint& p, long dx, long dy);

struct FloatState {
    std::int64_t cx = 0, cy = 0;
    double x = 0, y = 0;    // in [0,1]
    double dx = 1, dy = 0;  // unit vector
};

/// Float trace: returns wall events; stops after `length` of arc or `max_events` wall hits.
EventSeq trace_float(const WindTreeTable& table, FloatState& state, double length, std::size_t max_events = SIZE_MAX);

struct DiffusionReport {
    long m = 0;
    long n_directions = 0;
    double t_max = 0;
    double t_min = 0;
    std::vector<double> slopes;
    std::vector<double> angles;
    double mean_slope = 0;
    double stderr_slope = 0;
    std::uint64_t seed = 0;
    long resampled = 0;
};

/// Default lower end of the regression window as a fraction of t_max.
inline constexpr double kDiffusionWindow = 1e-3;
inline constexpr int kDiffusionSamples = 30;

DiffusionReport diffusion_exponent(const WindTreeTable& table, long n_directions, double t_max, std::uint64_t seed,
                                   unsigned threads = 1);

struct RecurrenceReport {
    long n_orbits = 0;
    double t_max = 0;
    double eps = 0;
    std::uint64_t seed = 0;
    std::vector<double> return_times;  // +inf when no return before t_max
    double fraction = 0;
};

RecurrenceReport recurrence(const WindTreeTable& table, long n_orbits, double t_max, double eps, std::uint64_t seed,
                            unsigned threads = 1);
double recurrence_fraction(const WindTreeTable& table, long n_orbits, double t_max, double eps, std::uint64_t seed);

/// Per-orbit seed, independent of scheduling.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);
/// Uniform point of the free region and uniform direction.
FloatState random_float_state(const WindTreeTable& table, std::uint64_t orbit_seed);

/// Runs f(i) for i in [0, count) on up to `threads` workers.
template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& f);

}  // namespace windtree

#include <thread>

namespace windtree {

template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& f) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    unsigned nt = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    for (unsigned w = 0; w < nt; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += nt) f(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace windtree
