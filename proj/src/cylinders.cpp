#include "windtree/cylinders.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

namespace windtree {

std::vector<Direction> primitive_directions(const BigRat& L, long D) {
    if (L <= 0) return {};
    // p^2 + q^2 <= R2 with R2 = floor(L^2 D^2)
    BigRat r2 = L * L * D * D;
    BigInt R2 = r2.get_num() / r2.get_den();
    if (!R2.fits_slong_p()) throw std::overflow_error("L too large");
    long R2l = R2.get_si();
    long R = static_cast<long>(std::sqrt(static_cast<double>(R2l))) + 1;
    while (R * R > R2l) --R;
    std::vector<Direction> out;
    if (R2l >= 1) out.push_back({1, 0});
    for (long q = 1; q <= R; ++q)
        for (long p = -R; p <= R; ++p)
            if (p * p + q * q <= R2l && std::gcd(std::labs(p), q) == 1) out.push_back({p, q});
    std::sort(out.begin(), out.end(), [](const Direction& a, const Direction& b) {
        long na = a.p * a.p + a.q * a.q, nb = b.p * b.p + b.q * b.q;
        if (na != nb) return na < nb;
        if (a.q != b.q) return a.q < b.q;
        return a.p < b.p;
    });
    return out;
}

Mat2 reduce_direction(const Direction& d) {
    long p = d.p, q = d.q;
    if (std::gcd(std::labs(p), std::labs(q)) != 1) throw std::invalid_argument("direction not primitive");
    // extended gcd on (p, q)
    long old_r = p, r = q, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        long k = old_r / r;
        std::tie(old_r, r) = std::pair{r, old_r - k * r};
        std::tie(old_s, s) = std::pair{s, old_s - k * s};
        std::tie(old_t, t) = std::pair{t, old_t - k * t};
    }
    if (old_r < 0) old_s = -old_s, old_t = -old_t;
    long a0 = old_s, b0 = old_t;  // a0 p + b0 q = 1; general (a0 + k q, b0 - k p)
    auto better = [](long a, long b, long ba, long bb) {
        long c1 = std::labs(a) + std::labs(b), c2 = std::labs(ba) + std::labs(bb);
        if (c1 != c2) return c1 < c2;
        if ((a >= 0) != (ba >= 0)) return a >= 0;
        if ((b >= 0) != (bb >= 0)) return b >= 0;
        return false;
    };
    long best_a = a0, best_b = b0;
    std::vector<long> centres{0};
    if (q != 0) centres.push_back(-a0 / q);
    if (p != 0) centres.push_back(b0 / p);
    for (long c : centres)
        for (long k = c - 2; k <= c + 2; ++k) {
            long a = a0 + k * q, b = b0 - k * p;
            if (better(a, b, best_a, best_b)) best_a = a, best_b = b;
        }
    Mat2 M{best_a, best_b, -q, p};
    if (det(M) != 1) throw std::logic_error("reduce_direction: determinant is not 1");
    return M;
}

Origami sl2z_transform(const Origami& o, const Mat2& M) {
    std::vector<Cochain> zero(static_cast<size_t>(o.n), Cochain{});
    auto ts = windtree::sl2z_transform(o.right, o.up, perm_identity(o.n), zero, zero, M, false);
    Origami out = make_origami(ts.right, ts.up);
    return out;
}

std::vector<HorizontalCylinder> horizontal_cylinders(const Perm& right, const Perm& up) {
    const size_t n = right.size();
    auto rows = perm_cycles(right);
    std::vector<int> row_of(n);
    for (size_t r = 0; r < rows.size(); ++r)
        for (int s : rows[r]) row_of[static_cast<size_t>(s)] = static_cast<int>(r);
    Perm comm = commutator(right, up);
    // above[r]: the row glued on top of r across a boundary free of cone points, else -1.
    std::vector<int> above(rows.size(), -1), below(rows.size(), -1);
    for (size_t r = 0; r < rows.size(); ++r) {
        bool regular = true;
        for (int s : rows[r]) {
            int t = up[static_cast<size_t>(s)];
            if (comm[static_cast<size_t>(t)] != t) {
                regular = false;
                break;
            }
        }
        if (regular) {
            int a = row_of[static_cast<size_t>(up[static_cast<size_t>(rows[r][0])])];
            above[r] = a;
            below[static_cast<size_t>(a)] = static_cast<int>(r);
        }
    }
    std::vector<char> used(rows.size(), 0);
    std::vector<HorizontalCylinder> out;
    auto build_from = [&](size_t start) {
        HorizontalCylinder c;
        c.width = static_cast<int>(rows[start].size());
        for (int r = static_cast<int>(start); r != -1 && !used[static_cast<size_t>(r)]; r = above[static_cast<size_t>(r)]) {
            used[static_cast<size_t>(r)] = 1;
            if (static_cast<int>(rows[static_cast<size_t>(r)].size()) != c.width)
                throw std::logic_error("rows of one cylinder have different widths");
            auto row = rows[static_cast<size_t>(r)];
            std::rotate(row.begin(), std::min_element(row.begin(), row.end()), row.end());
            c.rows.push_back(std::move(row));
        }
        c.height = static_cast<int>(c.rows.size());
        out.push_back(std::move(c));
    };
    for (size_t r = 0; r < rows.size(); ++r)
        if (below[r] == -1) build_from(r);
    // Rows left over form closed stacks (a torus component without cone points).
    for (size_t r = 0; r < rows.size(); ++r)
        if (!used[r]) build_from(r);
    return out;
}

std::string to_string(CylClass c) {
    switch (c) {
        case CylClass::Good: return "good";
        case CylClass::ClosedBad: return "closed_bad";
        case CylClass::NonClosing: return "non_closing";
    }
    return "?";
}

CylClass cyl_class_from_string(const std::string& s) {
    if (s == "good") return CylClass::Good;
    if (s == "closed_bad") return CylClass::ClosedBad;
    if (s == "non_closing") return CylClass::NonClosing;
    throw std::invalid_argument("unknown cylinder class '" + s + "'");
}

bool length_at_most(long width, const Direction& d, const BigRat& L, long D) {
    BigInt lhs = BigInt(width) * width * (d.p * d.p + d.q * d.q) * L.get_den() * L.get_den();
    BigInt rhs = L.get_num() * L.get_num() * D * D;
    return lhs <= rhs;
}

namespace {

Profile profile_of_return(int g) {
    switch (g) {
        case 0: return {0, 0};
        case kTauH: return {0, 1};
        case kTauV: return {1, 0};
        default: return {1, 1};
    }
}

int count_orbits(const std::array<int, 8>& label, const std::array<int, 4>& H) {
    // Orbits of H (acting by multiplication) on the set of distinct labels.
    std::map<int, int> parent;
    for (int l : label) parent[l] = l;
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (int g = 0; g < 8; ++g)
        for (int h : H) {
            int a = find(label[static_cast<size_t>(g)]), b = find(label[static_cast<size_t>(g ^ h)]);
            if (a != b) parent[a] = b;
        }
    std::set<int> roots;
    for (auto& [k, v] : parent) roots.insert(find(k));
    return static_cast<int>(roots.size());
}

}  // namespace

DeckOrbit deck_orbit_structure(const Surface& surface, const DirectionDecomposition& dec, std::size_t cyl) {
    const auto& c = dec.cylinders[cyl];
    const int s0 = c.rows.front().front();
    DeckOrbit out;
    std::array<int, 8> label{};
    std::set<int> labels, cyls;
    for (int g = 0; g < 8; ++g) {
        int sq = s0;
        if (g & kTauH) sq = surface.deck.tau_h[static_cast<size_t>(sq)];
        if (g & kTauV) sq = surface.deck.tau_v[static_cast<size_t>(sq)];
        if (g & kIota) sq = dec.ts.iota[static_cast<size_t>(sq)];
        int row = dec.row_of[static_cast<size_t>(sq)];
        // A generic height in the row is sent to its mirror height by the rotations.
        label[static_cast<size_t>(g)] = 2 * row + (deck_rotates(g) ? 1 : 0);
        labels.insert(label[static_cast<size_t>(g)]);
        cyls.insert(dec.cylinder_of[static_cast<size_t>(row)]);
    }
    out.b = static_cast<int>(labels.size());
    out.n_X = static_cast<int>(cyls.size());
    out.s = 8 / out.b;
    out.pocket_like = out.b == 2 * out.n_X;
    out.b_h = count_orbits(label, {0, kTauH, kIota | kTauV, kIota | kTauH | kTauV});
    out.b_v = count_orbits(label, {0, kTauV, kIota | kTauH, kIota | kTauH | kTauV});

    const int th = surface.deck.tau_h[static_cast<size_t>(s0)], tv = surface.deck.tau_v[static_cast<size_t>(s0)];
    const int thv = surface.deck.tau_v[static_cast<size_t>(th)];
    int t = s0;
    for (int d = 1; d <= c.width; ++d) {
        t = dec.ts.right[static_cast<size_t>(t)];
        int g = t == s0 ? 0 : t == th ? kTauH : t == tv ? kTauV : t == thv ? (kTauH | kTauV) : -1;
        if (g >= 0) {
            out.return_element = g;
            out.s_trace = c.width / d;
            break;
        }
    }
    return out;
}

CylinderRecord classify_cylinder(const Surface& surface, const DirectionDecomposition& dec, std::size_t cyl,
                                 const WindingSignTable& signs) {
    const auto& c = dec.cylinders[cyl];
    CylinderRecord rec;
    rec.direction = dec.direction;
    rec.width = c.width;
    rec.height = c.height;
    const Direction& d = dec.direction;
    rec.holonomy_length = static_cast<double>(c.width) * std::sqrt(static_cast<double>(d.p * d.p + d.q * d.q)) /
                          static_cast<double>(surface.table.D);
    Cochain sum{};
    for (int s : c.rows.front())
        for (size_t e = 0; e < 8; ++e) sum[e] += dec.ts.c_right[static_cast<size_t>(s)][e];
    Windings w = apply_signs(sum, signs);
    rec.winding_h = w.h;
    rec.winding_v = w.v;
    rec.displacement = cover_displacement(sum);
    bool good = w.h[0] == 0 && w.h[1] == 0 && w.v[0] == 0 && w.v[1] == 0;
    bool closed = rec.displacement[0] == 0 && rec.displacement[1] == 0;
    rec.classification = good ? CylClass::Good : closed ? CylClass::ClosedBad : CylClass::NonClosing;
    if (good) {
        rec.deck_orbit = deck_orbit_structure(surface, dec, cyl);
        rec.profile = profile_of_return(rec.deck_orbit->return_element);
    }
    return rec;
}

DirectionDecomposition decompose_direction(const Surface& surface, const Direction& d, const WindingSignTable& signs,
                                           bool record_history) {
    DirectionDecomposition dec;
    dec.direction = d;
    dec.M = reduce_direction(d);
    const auto& o = surface.origami;
    dec.ts = sl2z_transform(o.right, o.up, surface.deck.iota, surface.c_right, surface.c_up, dec.M, record_history);
    dec.cylinders = horizontal_cylinders(dec.ts.right, dec.ts.up);
    dec.row_of.assign(static_cast<size_t>(o.n), -1);
    int row = 0;
    for (size_t k = 0; k < dec.cylinders.size(); ++k)
        for (const auto& r : dec.cylinders[k].rows) {
            for (int s : r) dec.row_of[static_cast<size_t>(s)] = row;
            dec.cylinder_of.push_back(static_cast<int>(k));
            ++row;
        }
    for (size_t k = 0; k < dec.cylinders.size(); ++k) dec.records.push_back(classify_cylinder(surface, dec, k, signs));
    return dec;
}

Profile monodromy_profile(const CylinderRecord& record) {
    if (record.classification != CylClass::Good || !record.profile) throw NotGood();
    return *record.profile;
}

BilliardState core_start(const Surface& surface, const DirectionDecomposition& dec, std::size_t cyl) {
    const Direction& d = dec.direction;
    if (dec.ts.history.empty() && !(dec.M == Mat2{})) throw std::invalid_argument("core_start needs a recorded decomposition");
    long K = std::labs(d.p) + std::labs(d.q) + 1;
    SurfacePoint p{dec.cylinders[cyl].rows.front().front(), BigRat(1, 2 * K), BigRat(1, 2)};
    p.x.canonicalize();
    SurfacePoint orig = map_back(dec.ts, p);
    return billiard_state_of(surface, orig, d.p, d.q);
}

BigRat core_period(const Surface& surface, const DirectionDecomposition& dec, std::size_t cyl) {
    return make_rat(BigInt(dec.cylinders[cyl].width), BigInt(surface.table.D));
}

CountReport count(const Surface& surface, std::vector<BigRat> L, unsigned threads, std::vector<CylinderRecord>* records,
                  const WindingSignTable* signs) {
    std::sort(L.begin(), L.end());
    CountReport rep;
    rep.L = L;
    const size_t B = L.size();
    rep.N_all.assign(B, 0);
    rep.N_closed.assign(B, 0);
    rep.N_good.assign(B, 0);
    rep.N_bad.assign(B, 0);
    rep.N_area_good.assign(B, BigRat(0));
    rep.good_pocket_like.assign(B, 0);
    rep.good_dumbbell_like.assign(B, 0);
    for (int rh = 0; rh <= 1; ++rh)
        for (int rv = 0; rv <= 1; ++rv) rep.good_by_profile[{rh, rv}].assign(B, 0);
    if (B == 0) return rep;
    const WindingSignTable& sg = signs ? *signs : surface.signs;
    const long D = surface.table.D;
    auto dirs = primitive_directions(L.back(), D);
    rep.directions = static_cast<long>(dirs.size());

    // First bucket index whose L admits the cylinder; B if none.
    auto bucket = [&](long w, const Direction& d) {
        size_t lo = 0, hi = B;
        while (lo < hi) {
            size_t mid = (lo + hi) / 2;
            if (length_at_most(w, d, L[mid], D)) hi = mid;
            else lo = mid + 1;
        }
        return lo;
    };

    struct Partial {
        std::vector<long> all, closed, good, pocket, dumb;
        std::vector<BigInt> area_num;  // in units of 1/n
        std::map<Profile, std::vector<long>> prof;
        std::vector<std::vector<CylinderRecord>> recs;
    };
    const unsigned nt = std::max(1u, threads);
    std::vector<Partial> parts(nt);
    for (auto& P : parts) {
        P.all.assign(B, 0);
        P.closed.assign(B, 0);
        P.good.assign(B, 0);
        P.pocket.assign(B, 0);
        P.dumb.assign(B, 0);
        P.area_num.assign(B, 0);
        for (auto& [k, v] : rep.good_by_profile) P.prof[k].assign(B, 0);
    }
    std::vector<std::vector<CylinderRecord>> per_dir(records ? dirs.size() : 0);

    parallel_for(nt, nt, [&](size_t w) {
        Partial& P = parts[w];
        for (size_t i = w; i < dirs.size(); i += nt) {
            auto dec = decompose_direction(surface, dirs[i], sg, false);
            for (auto& rec : dec.records) {
                size_t b = bucket(rec.width, rec.direction);
                if (b >= B) continue;
                P.all[b]++;
                if (rec.classification != CylClass::NonClosing) P.closed[b]++;
                if (rec.classification == CylClass::Good) {
                    P.good[b]++;
                    P.area_num[b] += rec.width * rec.height;
                    P.prof[*rec.profile][b]++;
                    (rec.deck_orbit->pocket_like ? P.pocket : P.dumb)[b]++;
                }
                if (records) per_dir[i].push_back(rec);
            }
        }
    });
    const long n = surface.origami.n;
    for (auto& P : parts)
        for (size_t b = 0; b < B; ++b) {
            rep.N_all[b] += P.all[b];
            rep.N_closed[b] += P.closed[b];
            rep.N_good[b] += P.good[b];
            rep.N_area_good[b] += make_rat(P.area_num[b], BigInt(n));
            rep.good_pocket_like[b] += P.pocket[b];
            rep.good_dumbbell_like[b] += P.dumb[b];
            for (auto& [k, v] : P.prof) rep.good_by_profile[k][b] += v[b];
        }
    // Cumulative in L.
    for (size_t b = 1; b < B; ++b) {
        rep.N_all[b] += rep.N_all[b - 1];
        rep.N_closed[b] += rep.N_closed[b - 1];
        rep.N_good[b] += rep.N_good[b - 1];
        rep.N_area_good[b] += rep.N_area_good[b - 1];
        rep.good_pocket_like[b] += rep.good_pocket_like[b - 1];
        rep.good_dumbbell_like[b] += rep.good_dumbbell_like[b - 1];
        for (auto& [k, v] : rep.good_by_profile) v[b] += v[b - 1];
    }
    for (size_t b = 0; b < B; ++b) rep.N_bad[b] = rep.N_closed[b] - rep.N_good[b];
    if (records)
        for (auto& v : per_dir) records->insert(records->end(), v.begin(), v.end());
    return rep;
}

CylinderRecord good_cylinder_search(const Surface& surface, long p_max) {
    if (p_max < 1) throw std::invalid_argument("p_max must be >= 1");
    std::vector<Direction> dirs{{1, 0}, {0, 1}};
    std::vector<Direction> rest;
    for (long q = 1; q <= p_max; ++q)
        for (long p = -p_max; p <= p_max; ++p)
            if (std::gcd(std::labs(p), q) == 1 && !(p == 0 && q == 1)) rest.push_back({p, q});
    std::sort(rest.begin(), rest.end(), [](const Direction& a, const Direction& b) {
        long ma = std::max(std::labs(a.p), a.q), mb = std::max(std::labs(b.p), b.q);
        if (ma != mb) return ma < mb;
        long na = a.p * a.p + a.q * a.q, nb = b.p * b.p + b.q * b.q;
        if (na != nb) return na < nb;
        return a < b;
    });
    dirs.insert(dirs.end(), rest.begin(), rest.end());
    for (const auto& d : dirs) {
        auto dec = decompose_direction(surface, d, surface.signs, false);
        const CylinderRecord* best = nullptr;
        for (const auto& r : dec.records)
            if (r.classification == CylClass::Good && (!best || r.width < best->width)) best = &r;
        if (best) return *best;
    }
    throw NotFound(p_max);
}

ConsistencyReport lifting_consistency_check(const Surface& surface, const BigRat& L, const WindingSignTable& signs,
                                            bool closure_sweep_all, unsigned threads) {
    ConsistencyReport rep;
    auto dirs = primitive_directions(L, surface.table.D);
    std::mutex mu;
    parallel_for(dirs.size(), std::max(1u, threads), [&](size_t i) {
        const Direction& d = dirs[i];
        auto dec = decompose_direction(surface, d, signs, true);
        std::vector<std::string> local;
        long good = 0, closures = 0;
        for (size_t k = 0; k < dec.records.size(); ++k) {
            const auto& rec = dec.records[k];
            if (!length_at_most(rec.width, d, L, surface.table.D)) continue;
            std::ostringstream where;
            where << "direction (" << d.p << "," << d.q << ") cylinder " << k << " width " << rec.width << ": ";
            bool is_good = rec.classification == CylClass::Good;
            if (is_good || closure_sweep_all) {
                ++closures;
                BilliardState st = core_start(surface, dec, k);
                BigRat period = core_period(surface, dec, k);
                try {
                    bool closes = closure_check(surface.table, st, period);
                    bool expect = rec.classification != CylClass::NonClosing;
                    if (closes != expect)
                        local.push_back(where.str() + "classified " + to_string(rec.classification) +
                                        (closes ? " but the billiard core closes" : " but the billiard core does not close"));
                } catch (const SingularHit& e) {
                    local.push_back(where.str() + "core hits a singularity: " + e.what());
                }
            }
            if (!is_good) continue;
            ++good;
            const Profile p = *rec.profile;
            const DeckOrbit& o = *rec.deck_orbit;
            auto fail = [&](const std::string& msg) { local.push_back(where.str() + msg); };
            if (!p.good()) fail("good cylinder with profile " + p.to_string());
            if ((o.b_h - p.r_h) % 2 != 0) fail("parity: b_h=" + std::to_string(o.b_h) + " but r_h=" + std::to_string(p.r_h));
            if ((o.b_v - p.r_v) % 2 != 0) fail("parity: b_v=" + std::to_string(o.b_v) + " but r_v=" + std::to_string(p.r_v));
            bool trivial = p.r_h == 0 && p.r_v == 0;
            if (trivial && (o.b != 8 || o.s != 1))
                fail("profile (0,0) needs b=8, s=1; got b=" + std::to_string(o.b) + ", s=" + std::to_string(o.s));
            if (!trivial && (o.b != 4 || o.s != 2))
                fail("profile " + p.to_string() + " needs b=4, s=2; got b=" + std::to_string(o.b) + ", s=" + std::to_string(o.s));
            if (o.s_trace != o.s) fail("length ratio along the core " + std::to_string(o.s_trace) + " differs from 8/b");
            if (o.n_X != o.b && 2 * o.n_X != o.b) fail("n_X=" + std::to_string(o.n_X) + " not in {b, b/2}");
            if (rec.winding_h != std::array<std::int64_t, 2>{0, 0} || rec.winding_v != std::array<std::int64_t, 2>{0, 0})
                fail("good cylinder with nonzero winding");
            if (rec.displacement != std::array<std::int64_t, 2>{0, 0}) fail("good cylinder with nonzero cover displacement");
        }
        std::lock_guard<std::mutex> lock(mu);
        rep.good_checked += good;
        rep.closure_checked += closures;
        rep.violations.insert(rep.violations.end(), local.begin(), local.end());
    });
    std::sort(rep.violations.begin(), rep.violations.end());
    rep.pass = rep.violations.empty();
    return rep;
}

}  // namespace windtree
