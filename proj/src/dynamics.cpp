#include "windtree/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace windtree {

namespace {

using i128 = __int128;

BigInt to_big(i128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    BigInt hi = static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64));
    BigInt lo = static_cast<unsigned long>(static_cast<std::uint64_t>(u));
    BigInt r = hi * pow_int(2, 64) + lo;
    return neg ? BigInt(-r) : r;
}

i128 to_i128(const BigInt& v) {
    if (mpz_sizeinbase(v.get_mpz_t(), 2) > 120) throw std::overflow_error("exact trace: coordinate too large");
    BigInt a = abs(v);
    BigInt two64 = pow_int(2, 64);
    BigInt hi = a / two64, lo = a % two64;
    i128 r = (static_cast<i128>(mpz_get_ui(hi.get_mpz_t())) << 64) | static_cast<i128>(mpz_get_ui(lo.get_mpz_t()));
    return v < 0 ? -r : r;
}

i128 floor_div(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

BigInt lcm3(const BigInt& a, const BigInt& b, const BigInt& c) {
    BigInt r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_lcm(r.get_mpz_t(), r.get_mpz_t(), c.get_mpz_t());
    return r;
}

i128 exact_div(i128 a, i128 b) {
    if (a % b != 0) throw std::logic_error("exact trace: non-integral step");
    return a / b;
}

constexpr i128 kInf = std::numeric_limits<i128>::max();

/// Integer DDA on a grid of unit cells where a point moves with velocity v.
/// Positions are scaled by S = N*Mv and time by S*Mv, so every event lands on integers.
struct Scaled {
    i128 S = 1, Mv = 1;
    long vx = 0, vy = 0;

    Scaled(const BigInt& N, long vx_, long vy_) : vx(vx_), vy(vy_) {
        Mv = static_cast<i128>(std::max(1L, std::labs(vx))) * std::max(1L, std::labs(vy));
        S = to_i128(N) * Mv;
    }
    /// Ticks until coordinate p (scaled) reaches the line k (unscaled) at speed v; kInf if v = 0.
    i128 ticks_to(i128 p, i128 k, long v) const {
        if (v == 0) return kInf;
        return exact_div((k * S - p) * Mv, v);
    }
    i128 advance(i128 p, long v, i128 ticks) const { return p + exact_div(static_cast<i128>(v) * ticks, Mv); }
};

}  // namespace

ExactTrace trace_exact(const WindTreeTable& table, const BilliardState& start, std::optional<BigRat> time, std::size_t max_events) {
    const long D = table.D;
    if (start.dx == 0 && start.dy == 0) throw std::invalid_argument("direction must be nonzero");
    BigRat X = (BigRat(start.cell[0]) + start.x) * D, Y = (BigRat(start.cell[1]) + start.y) * D;
    BigRat tD = time ? BigRat(*time * D) : BigRat(0);
    BigInt N = lcm3(X.get_den(), Y.get_den(), tD.get_den());
    Scaled sc(N, start.dx, start.dy);
    long vx = start.dx, vy = start.dy;
    i128 PX = to_i128(BigInt(X * BigRat(to_big(sc.S)))), PY = to_i128(BigInt(Y * BigRat(to_big(sc.S))));
    i128 budget = time ? to_i128(BigInt(tD * BigRat(to_big(sc.S * sc.Mv)))) : kInf;
    if (time && *time < 0) throw std::invalid_argument("negative time budget");

    auto cell_of = [&](i128 p, long v) -> i128 {
        i128 f = floor_div(p, sc.S);
        if (v < 0 && f * sc.S == p) return f - 1;
        return f;
    };
    i128 cx = cell_of(PX, vx), cy = cell_of(PY, vy);
    if ((vx == 0 && PX % sc.S == 0) || (vy == 0 && PY % sc.S == 0))
        throw std::invalid_argument("trajectory runs along a grid line");
    auto blocked = [&](i128 a, i128 b) { return table.is_blocked(static_cast<long>(a % D), static_cast<long>(b % D)); };
    if (blocked(cx, cy)) throw std::invalid_argument("start is not in the free region");

    ExactTrace out;
    i128 ticks = 0;
    while (out.events.size() < max_events) {
        i128 tx = sc.ticks_to(PX, vx > 0 ? cx + 1 : cx, vx);
        i128 ty = sc.ticks_to(PY, vy > 0 ? cy + 1 : cy, vy);
        i128 dt = std::min(tx, ty);
        if (dt == kInf) throw std::logic_error("no event ahead");
        if (budget != kInf && ticks + dt >= budget) {
            i128 rest = budget - ticks;
            // The end point may have denominator Mv in scaled units.
            BigRat fx = BigRat(to_big(PX * sc.Mv + static_cast<i128>(vx) * rest), to_big(sc.S * sc.Mv));
            BigRat fy = BigRat(to_big(PY * sc.Mv + static_cast<i128>(vy) * rest), to_big(sc.S * sc.Mv));
            fx.canonicalize();
            fy.canonicalize();
            PX = PY = 0;
            ticks = budget;
            BigRat gx = fx / D, gy = fy / D;
            BigInt fcx, fcy;
            mpz_fdiv_q(fcx.get_mpz_t(), gx.get_num().get_mpz_t(), gx.get_den().get_mpz_t());
            mpz_fdiv_q(fcy.get_mpz_t(), gy.get_num().get_mpz_t(), gy.get_den().get_mpz_t());
            out.final_state.cell = {fcx.get_si(), fcy.get_si()};
            out.final_state.x = gx - BigRat(fcx);
            out.final_state.y = gy - BigRat(fcy);
            out.final_state.dx = vx;
            out.final_state.dy = vy;
            out.elapsed = *time;
            return out;
        }
        PX = sc.advance(PX, vx, dt);
        PY = sc.advance(PY, vy, dt);
        ticks += dt;
        long sx = vx > 0 ? 1 : -1, sy = vy > 0 ? 1 : -1;
        if (tx < ty) {
            if (blocked(cx + sx, cy)) {
                vx = -vx;
                out.events.push_back('V');
            } else {
                cx += sx;
            }
        } else if (ty < tx) {
            if (blocked(cx, cy + sy)) {
                vy = -vy;
                out.events.push_back('H');
            } else {
                cy += sy;
            }
        } else {
            bool bx = blocked(cx + sx, cy), by = blocked(cx, cy + sy), bd = blocked(cx + sx, cy + sy);
            if (!bx && !by && !bd) {
                cx += sx;
                cy += sy;
            } else if (bx && bd && !by) {
                vx = -vx;
                cy += sy;
                out.events.push_back('V');
            } else if (by && bd && !bx) {
                vy = -vy;
                cx += sx;
                out.events.push_back('H');
            } else {
                throw SingularHit("billiard trajectory hits an obstacle corner");
            }
        }
    }
    // Stopped on the event budget: report the state right after the last event.
    BigRat gx = BigRat(to_big(PX), to_big(sc.S * D)), gy = BigRat(to_big(PY), to_big(sc.S * D));
    gx.canonicalize();
    gy.canonicalize();
    BigInt fcx, fcy;
    mpz_fdiv_q(fcx.get_mpz_t(), gx.get_num().get_mpz_t(), gx.get_den().get_mpz_t());
    mpz_fdiv_q(fcy.get_mpz_t(), gy.get_num().get_mpz_t(), gy.get_den().get_mpz_t());
    out.final_state.cell = {fcx.get_si(), fcy.get_si()};
    out.final_state.x = gx - BigRat(fcx);
    out.final_state.y = gy - BigRat(fcy);
    out.final_state.dx = vx;
    out.final_state.dy = vy;
    out.elapsed = BigRat(to_big(ticks), to_big(sc.S * sc.Mv * D));
    out.elapsed.canonicalize();
    return out;
}

namespace {

BilliardState normalised(const BilliardState& s) {
    BilliardState r = s;
    BigInt fx, fy;
    mpz_fdiv_q(fx.get_mpz_t(), s.x.get_num().get_mpz_t(), s.x.get_den().get_mpz_t());
    mpz_fdiv_q(fy.get_mpz_t(), s.y.get_num().get_mpz_t(), s.y.get_den().get_mpz_t());
    r.cell[0] += fx.get_si();
    r.cell[1] += fy.get_si();
    r.x = s.x - BigRat(fx);
    r.y = s.y - BigRat(fy);
    return r;
}

}  // namespace

bool closure_check(const WindTreeTable& table, const BilliardState& start, const BigRat& time) {
    auto tr = trace_exact(table, start, time);
    return normalised(tr.final_state) == normalised(start);
}

BilliardState billiard_state_of(const Surface& surface, const SurfacePoint& p, long dx, long dy) {
    const long D = surface.table.D;
    auto [a, b] = surface.origami.cell_pos[static_cast<size_t>(p.square)];
    auto [i, j] = surface.origami.copy_of[static_cast<size_t>(p.square)];
    BigRat X = BigRat(a) + (i ? BigRat(1 - p.x) : p.x);
    BigRat Y = BigRat(b) + (j ? BigRat(1 - p.y) : p.y);
    BilliardState s;
    s.x = X / D;
    s.y = Y / D;
    s.dx = i ? -dx : dx;
    s.dy = j ? -dy : dy;
    return normalised(s);
}

OrigamiTrace trace_origami(const Surface& surface, const SurfacePoint& start, long dx, long dy, std::size_t max_events) {
    if (dx == 0 && dy == 0) throw std::invalid_argument("direction must be nonzero");
    const auto& o = surface.origami;
    BigInt N;
    mpz_lcm(N.get_mpz_t(), start.x.get_den().get_mpz_t(), start.y.get_den().get_mpz_t());
    Scaled sc(N, dx, dy);
    i128 PX = to_i128(BigInt(start.x * BigRat(to_big(sc.S)))), PY = to_i128(BigInt(start.y * BigRat(to_big(sc.S))));
    if (PX < 0 || PX >= sc.S || PY < 0 || PY >= sc.S) throw std::invalid_argument("point outside its square");
    if ((dx < 0 && PX == 0) || (dy < 0 && PY == 0) || (dx == 0 && PX == 0) || (dy == 0 && PY == 0))
        throw std::invalid_argument("start on a square edge against the direction");
    Perm rinv = perm_inverse(o.right), uinv = perm_inverse(o.up);

    OrigamiTrace out;
    int s = start.square;
    auto add = [&](const Cochain& c, int sign) {
        for (size_t e = 0; e < 8; ++e) out.crossings[e] += sign * c[e];
    };
    // One horizontal step: returns the new square and whether a wall was crossed.
    auto step_x = [&](int sq, int sgn) {
        if (sgn > 0) {
            add(surface.c_right[static_cast<size_t>(sq)], 1);
            return std::pair{o.right[static_cast<size_t>(sq)], surface.right_is_wall(sq)};
        }
        int t = rinv[static_cast<size_t>(sq)];
        add(surface.c_right[static_cast<size_t>(t)], -1);
        return std::pair{t, surface.right_is_wall(t)};
    };
    auto step_y = [&](int sq, int sgn) {
        if (sgn > 0) {
            add(surface.c_up[static_cast<size_t>(sq)], 1);
            return std::pair{o.up[static_cast<size_t>(sq)], surface.up_is_wall(sq)};
        }
        int t = uinv[static_cast<size_t>(sq)];
        add(surface.c_up[static_cast<size_t>(t)], -1);
        return std::pair{t, surface.up_is_wall(t)};
    };

    while (out.events.size() < max_events) {
        i128 tx = sc.ticks_to(PX, dx > 0 ? 1 : 0, dx);
        i128 ty = sc.ticks_to(PY, dy > 0 ? 1 : 0, dy);
        i128 dt = std::min(tx, ty);
        PX = sc.advance(PX, dx, dt);
        PY = sc.advance(PY, dy, dt);
        int sx = dx > 0 ? 1 : -1, sy = dy > 0 ? 1 : -1;
        if (tx < ty) {
            auto [t, wall] = step_x(s, sx);
            s = t;
            if (wall) out.events.push_back('V');
            PX = sx > 0 ? 0 : sc.S;
        } else if (ty < tx) {
            auto [t, wall] = step_y(s, sy);
            s = t;
            if (wall) out.events.push_back('H');
            PY = sy > 0 ? 0 : sc.S;
        } else {
            Cochain saved = out.crossings;
            auto [t1, w1] = step_x(s, sx);
            auto [t2, w2] = step_y(t1, sy);
            Cochain via_x = out.crossings;
            out.crossings = saved;
            auto [u1, w3] = step_y(s, sy);
            auto [u2, w4] = step_x(u1, sx);
            (void)w3;
            (void)w4;
            if (u2 != t2) throw SingularHit("straight line hits a cone point");
            out.crossings = via_x;
            int walls = int(w1) + int(w2);
            if (walls == 2) throw SingularHit("billiard trajectory hits a reflex corner");
            if (w1) out.events.push_back('V');
            if (w2) out.events.push_back('H');
            s = t2;
            PX = sx > 0 ? 0 : sc.S;
            PY = sy > 0 ? 0 : sc.S;
        }
    }
    out.final_square = s;
    out.x = BigRat(to_big(PX), to_big(sc.S));
    out.y = BigRat(to_big(PY), to_big(sc.S));
    out.x.canonicalize();
    out.y.canonicalize();
    return out;
}

namespace {

struct Edge {
    double c, lo, hi;
};

struct FloatWalls {
    std::vector<Edge> vertical, horizontal;
    explicit FloatWalls(const WindTreeTable& t) {
        const size_t n = t.vertices.size();
        const double D = static_cast<double>(t.D);
        for (size_t k = 0; k < n; ++k) {
            auto [x0, y0] = t.vertices[k];
            auto [x1, y1] = t.vertices[(k + 1) % n];
            if (x0 == x1)
                vertical.push_back({x0 / D, std::min(y0, y1) / D, std::max(y0, y1) / D});
            else
                horizontal.push_back({y0 / D, std::min(x0, x1) / D, std::max(x0, x1) / D});
        }
    }
};

/// Advances the float billiard; calls seg(x0, y0, x1, y1, t0, t1) in global coordinates per straight piece.
/// seg returns false to stop.
template <class Seg>
EventSeq float_run(const FloatWalls& walls, FloatState& st, double length, std::size_t max_events, Seg&& seg) {
    constexpr double kTiny = 1e-13;
    constexpr double inf = std::numeric_limits<double>::infinity();
    EventSeq events;
    double t = 0;
    while (t < length && events.size() < max_events) {
        double tmin = inf;
        int kind = 0;  // 1 cell x, 2 cell y, 3 wall V, 4 wall H
        if (st.dx > 0) tmin = (1.0 - st.x) / st.dx, kind = 1;
        else if (st.dx < 0) tmin = -st.x / st.dx, kind = 1;
        if (st.dy != 0) {
            double ty = st.dy > 0 ? (1.0 - st.y) / st.dy : -st.y / st.dy;
            if (ty < tmin) tmin = ty, kind = 2;
        }
        if (st.dx != 0)
            for (const auto& e : walls.vertical) {
                double te = (e.c - st.x) / st.dx;
                if (te > kTiny && te < tmin) {
                    double yy = st.y + te * st.dy;
                    if (yy >= e.lo && yy <= e.hi) tmin = te, kind = 3;
                }
            }
        if (st.dy != 0)
            for (const auto& e : walls.horizontal) {
                double te = (e.c - st.y) / st.dy;
                if (te > kTiny && te < tmin) {
                    double xx = st.x + te * st.dx;
                    if (xx >= e.lo && xx <= e.hi) tmin = te, kind = 4;
                }
            }
        bool last = false;
        if (t + tmin >= length) {
            tmin = length - t;
            kind = 0;
            last = true;
        }
        double gx0 = static_cast<double>(st.cx) + st.x, gy0 = static_cast<double>(st.cy) + st.y;
        st.x += tmin * st.dx;
        st.y += tmin * st.dy;
        double gx1 = static_cast<double>(st.cx) + st.x, gy1 = static_cast<double>(st.cy) + st.y;
        bool go = seg(gx0, gy0, gx1, gy1, t, t + tmin);
        t += tmin;
        switch (kind) {
            case 1:
                if (st.dx > 0) st.x = 0, ++st.cx;
                else st.x = 1, --st.cx;
                break;
            case 2:
                if (st.dy > 0) st.y = 0, ++st.cy;
                else st.y = 1, --st.cy;
                break;
            case 3:
                st.dx = -st.dx;
                events.push_back('V');
                break;
            case 4:
                st.dy = -st.dy;
                events.push_back('H');
                break;
            default:
                break;
        }
        if (!go || last) break;
    }
    return events;
}

double uniform01(std::mt19937_64& eng) { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

}  // namespace

EventSeq trace_float(const WindTreeTable& table, FloatState& state, double length, std::size_t max_events) {
    FloatWalls walls(table);
    return float_run(walls, state, length, max_events, [](double, double, double, double, double, double) { return true; });
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 over (seed, index)
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

FloatState random_float_state(const WindTreeTable& table, std::uint64_t orbit_seed) {
    std::mt19937_64 eng(orbit_seed);
    FloatState st;
    double theta = 2.0 * std::numbers::pi * uniform01(eng);
    st.dx = std::cos(theta);
    st.dy = std::sin(theta);
    const double D = static_cast<double>(table.D);
    for (;;) {
        st.x = uniform01(eng);
        st.y = uniform01(eng);
        long a = static_cast<long>(st.x * D), b = static_cast<long>(st.y * D);
        if (!table.is_blocked(a, b)) break;
    }
    return st;
}

DiffusionReport diffusion_exponent(const WindTreeTable& table, long n_directions, double t_max, std::uint64_t seed,
                                   unsigned threads) {
    if (n_directions < 1) throw std::invalid_argument("n_directions must be >= 1");
    if (t_max < 1e4) throw std::invalid_argument("t_max must be >= 1e4");
    DiffusionReport rep;
    rep.m = table.m;
    rep.n_directions = n_directions;
    rep.t_max = t_max;
    rep.t_min = t_max * kDiffusionWindow;
    rep.seed = seed;
    rep.slopes.assign(static_cast<size_t>(n_directions), 0.0);
    rep.angles.assign(static_cast<size_t>(n_directions), 0.0);
    FloatWalls walls(table);

    std::vector<double> times(kDiffusionSamples), logt(kDiffusionSamples);
    for (int k = 0; k < kDiffusionSamples; ++k) {
        times[static_cast<size_t>(k)] = rep.t_min * std::pow(t_max / rep.t_min, static_cast<double>(k) / (kDiffusionSamples - 1));
        logt[static_cast<size_t>(k)] = std::log(times[static_cast<size_t>(k)]);
    }
    times.back() = t_max;

    parallel_for(static_cast<size_t>(n_directions), threads, [&](size_t idx) {
        FloatState st = random_float_state(table, derive_seed(seed, idx));
        rep.angles[idx] = std::atan2(st.dy, st.dx);
        const double x0 = st.x, y0 = st.y;
        double running = 0;
        size_t next = 0;
        std::vector<double> samples(times.size(), 0.0);
        float_run(walls, st, t_max, SIZE_MAX, [&](double gx0, double gy0, double gx1, double gy1, double t0, double t1) {
            while (next < times.size() && times[next] <= t1) {
                double f = t1 > t0 ? (times[next] - t0) / (t1 - t0) : 1.0;
                double px = gx0 + f * (gx1 - gx0), py = gy0 + f * (gy1 - gy0);
                samples[next] = std::max(running, std::hypot(px - x0, py - y0));
                ++next;
            }
            running = std::max(running, std::hypot(gx1 - x0, gy1 - y0));
            return true;
        });
        while (next < times.size()) samples[next++] = running;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double K = static_cast<double>(times.size());
        for (size_t k = 0; k < times.size(); ++k) {
            double ly = std::log(std::max(samples[k], 1e-12));
            sx += logt[k];
            sy += ly;
            sxx += logt[k] * logt[k];
            sxy += logt[k] * ly;
        }
        rep.slopes[idx] = (K * sxy - sx * sy) / (K * sxx - sx * sx);
    });
    double mean = 0;
    for (double s : rep.slopes) mean += s;
    mean /= static_cast<double>(n_directions);
    double var = 0;
    for (double s : rep.slopes) var += (s - mean) * (s - mean);
    rep.mean_slope = mean;
    rep.stderr_slope = n_directions > 1 ? std::sqrt(var / static_cast<double>(n_directions - 1) / static_cast<double>(n_directions)) : 0.0;
    return rep;
}

RecurrenceReport recurrence(const WindTreeTable& table, long n_orbits, double t_max, double eps, std::uint64_t seed,
                            unsigned threads) {
    if (n_orbits < 1) throw std::invalid_argument("n_orbits must be >= 1");
    if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
    RecurrenceReport rep;
    rep.n_orbits = n_orbits;
    rep.t_max = t_max;
    rep.eps = eps;
    rep.seed = seed;
    rep.return_times.assign(static_cast<size_t>(n_orbits), std::numeric_limits<double>::infinity());
    FloatWalls walls(table);
    parallel_for(static_cast<size_t>(n_orbits), threads, [&](size_t idx) {
        FloatState st = random_float_state(table, derive_seed(seed, idx));
        const double x0 = st.x, y0 = st.y;
        bool left = false;
        double ret = std::numeric_limits<double>::infinity();
        float_run(walls, st, t_max, SIZE_MAX, [&](double ax, double ay, double bx, double by, double t0, double t1) {
            if (!left) {
                left = std::hypot(bx - x0, by - y0) > eps;
                return true;
            }
            // First time on this piece within eps of the start.
            double ux = bx - ax, uy = by - ay, len2 = ux * ux + uy * uy;
            double wx = ax - x0, wy = ay - y0;
            double bq = wx * ux + wy * uy, cq = wx * wx + wy * wy - eps * eps;
            if (cq <= 0) {
                ret = t0;
                return false;
            }
            if (len2 <= 0) return true;
            double disc = bq * bq - len2 * cq;
            if (disc < 0) return true;
            double s = (-bq - std::sqrt(disc)) / len2;
            if (s >= 0 && s <= 1) {
                ret = t0 + s * (t1 - t0);
                return false;
            }
            return true;
        });
        // An orbit that never leaves the eps-ball stays recurrent.
        rep.return_times[idx] = left ? ret : 0.0;
    });
    long hits = 0;
    for (double r : rep.return_times)
        if (r <= t_max) ++hits;
    rep.fraction = static_cast<double>(hits) / static_cast<double>(n_orbits);
    return rep;
}

double recurrence_fraction(const WindTreeTable& table, long n_orbits, double t_max, double eps, std::uint64_t seed) {
    return recurrence(table, n_orbits, t_max, eps, seed).fraction;
}

}  // namespace windtree
