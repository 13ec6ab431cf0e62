#include "windtree/sv_constants.hpp"

#include "windtree/identities.hpp"

#include <vector>

namespace windtree {

BigRat delta(long m) {
    if (m < 1) throw std::invalid_argument("delta: m must be >= 1");
    BigRat a = make_rat(double_factorial(2 * m), double_factorial(2 * m + 1));
    BigInt fm = factorial(m);
    BigRat b = make_rat(pow_int(4, static_cast<unsigned long>(m)) * fm * fm, factorial(2 * m + 1));
    if (a != b) throw InternalMismatch("delta: double factorial and factorial forms disagree");
    return a;
}

std::map<Profile, BigInt> pocket_profile_counts(long m) {
    if (m < 1) throw std::invalid_argument("pocket_profile_counts: m must be >= 1");
    return {
        {{0, 0}, binomial(m - 1, 2)},
        {{1, 1}, BigInt(3 * m - 2)},
        {{1, 0}, BigInt(m - 1)},
        {{0, 1}, BigInt(m - 1)},
    };
}

std::map<Profile, BigInt> dumbbell_profile_counts(long m, long q) {
    if (q < 1 || q > m - 1) throw QOutOfRange(m, q);
    BigInt base = binomial(m, q) * q * (m - q);
    return {
        {{0, 0}, base * binomial(m - 1, q + 2)},
        {{1, 1}, base * (3 * binomial(m - 1, q + 1) + binomial(m - 1, q))},
        {{1, 0}, base * binomial(m - 1, q + 1)},
        {{0, 1}, base * binomial(m - 1, q + 1)},
    };
}

std::vector<ConfigClass> good_configurations(long m) {
    std::vector<ConfigClass> out;
    for (auto& [p, c] : pocket_profile_counts(m)) out.push_back({ConfigKind::Pocket, p, 0, c});
    for (long q = 1; q <= m - 1; ++q)
        for (auto& [p, c] : dumbbell_profile_counts(m, q)) out.push_back({ConfigKind::Dumbbell, p, q, c});
    return out;
}

int lifting_factor(const Profile& profile, bool pocket_like, bool area_weighted) {
    if (!profile.good()) throw NotGoodProfile(profile);
    bool trivial = profile.r_h == 0 && profile.r_v == 0;
    if (pocket_like && !area_weighted) return trivial ? 32 : 4;
    return trivial ? 64 : 8;
}

PiRational c_pocket_genus0() { return PiRational(BigRat(1, 2)); }

PiRational c_dumbbell_genus0(long m, long q) {
    if (q < 1 || q > m - 1) throw QOutOfRange(m, q);
    return PiRational(make_rat(2 * factorial(2 * q - 1) * factorial(2 * m - 2 * q - 1), factorial(2 * m)));
}

namespace {

PiRational assemble(long m, ConfigKind kind, bool area_weighted) {
    PiRational total;
    for (const auto& cfg : good_configurations(m)) {
        if (cfg.kind != kind) continue;
        bool pocket = cfg.kind == ConfigKind::Pocket;
        PiRational base = pocket ? c_pocket_genus0() : c_dumbbell_genus0(m, cfg.q);
        total += base * BigRat(cfg.multiplicity_count * lifting_factor(cfg.profile, pocket, area_weighted));
    }
    return total;
}

BigRat quad(long m, long a, long b, long c) { return BigRat(a * m * m + b * m + c); }

}  // namespace

PiRational c_pocket_good(long m) {
    PiRational assembled = assemble(m, ConfigKind::Pocket, false);
    PiRational closed(quad(m, 4, -7, 4) * 2);
    if (assembled != closed) throw InternalMismatch("c_pocket_good: assembly and closed form disagree");
    return closed;
}

PiRational c_dumbbell_good(long m) {
    PiRational assembled = assemble(m, ConfigKind::Dumbbell, false);
    BigRat direct = 0;
    for (long q = 1; q <= m - 1; ++q)
        direct += make_rat(binomial(m, q), binomial(2 * m, 2 * q)) *
                  BigRat(8 * binomial(m - 1, q + 2) + 5 * binomial(m - 1, q + 1) + binomial(m - 1, q));
    direct *= 4;
    PiRational closed((quad(m, 8, -74, -90) + 78 * central_ratio(m)) * BigRat(2, 3));
    if (assembled.coeff != direct || direct != closed.coeff)
        throw InternalMismatch("c_dumbbell_good: q-sum, assembly and closed form disagree");
    return closed;
}

PiRational c_area_good_unnormalised(long m) {
    return assemble(m, ConfigKind::Pocket, true) + assemble(m, ConfigKind::Dumbbell, true);
}

PiRational c_main_closed(long m) {
    return PiRational((quad(m, 20, -95, -78) + 78 * central_ratio(m)) / 6);
}

PiRational c_area_main_closed(long m) {
    BigInt fm = factorial(m);
    BigRat r = make_rat(pow_int(4, static_cast<unsigned long>(m)) * fm * fm, factorial(2 * m + 1));
    return PiRational((BigRat(8 * m - 33) + 39 * r) / 3);
}

ConstantsBundle constants_bundle(long m) {
    if (m < 1) throw std::invalid_argument("constants_bundle: m must be >= 1");
    ConstantsBundle b;
    b.m = m;
    b.delta = delta(m);
    b.c_pocket_good = c_pocket_good(m);
    b.c_dumbbell_good = c_dumbbell_good(m);
    b.c_good = b.c_pocket_good + b.c_dumbbell_good;
    b.c_main = b.c_good / BigRat(4);
    if (b.c_main != c_main_closed(m)) throw InternalMismatch("c_main disagrees with its closed form");
    b.c_area_good = c_area_good_unnormalised(m) / BigRat(2 * m + 1);
    b.c_area_main = b.c_area_good / BigRat(4);
    if (b.c_area_main != c_area_main_closed(m)) throw InternalMismatch("c_area_main disagrees with its closed form");
    return b;
}

}  // namespace windtree
