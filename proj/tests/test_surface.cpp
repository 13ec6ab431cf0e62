#include "doctest.h"
#include "windtree/cylinders.hpp"
#include "windtree/surface.hpp"

#include <set>

using namespace windtree;

TEST_CASE("m=1 surface") {
    auto s = build_surface(make_square_table(make_rat(1, 2), make_rat(1, 2)));
    CHECK(s.origami.n == 48);
    auto ct = cycle_type(commutator(s.origami.right, s.origami.up));
    CHECK(ct.size() == 2);
    CHECK(ct[3] == 4);
    CHECK(ct[1] == 36);
    // genus from Euler characteristic: 2 - 2g = n - 2n + vertices
    long vertices = 0;
    for (auto [len, mult] : ct) vertices += mult;
    CHECK(2 - (s.origami.n - 2 * s.origami.n + vertices) == 2 * 5);
}

TEST_CASE("plus surface") {
    auto s = build_surface(make_plus_table());
    CHECK(s.origami.n == 80);
    auto sp = singularity_profile(s.origami);
    CHECK(sp.size() == 1);
    CHECK(sp[3] == 8);
}

TEST_CASE("corpus strata") {
    for (const char* f : {"rect_half_quarter.tbl", "h_shape.tbl", "stepped_diamond.tbl", "notched_rect.tbl"}) {
        CAPTURE(f);
        auto t = load_table(std::string(WINDTREE_DATA_DIR) + "/tables/" + f);
        auto s = build_surface(t);
        auto sp = singularity_profile(s.origami);
        CHECK(sp.size() == 1);
        CHECK(sp[3] == 4 * t.m);
        CHECK(s.origami.n == 4 * (t.D * t.D - t.blocked_count));
    }
}

TEST_CASE("deck group") {
    for (auto table : {make_square_table(make_rat(1, 2), make_rat(1, 2)), make_plus_table()}) {
        auto s = build_surface(table);
        const auto& o = s.origami;
        const auto& d = s.deck;
        CHECK(perm_compose(d.tau_h, d.tau_h) == perm_identity(o.n));
        CHECK(perm_compose(d.tau_v, d.tau_v) == perm_identity(o.n));
        CHECK(perm_compose(d.iota, d.iota) == perm_identity(o.n));
        CHECK(perm_compose(d.tau_h, d.tau_v) == perm_compose(d.tau_v, d.tau_h));
        CHECK(perm_compose(d.tau_h, d.iota) == perm_compose(d.iota, d.tau_h));
        // translations commute with the gluings, the rotation inverts them
        for (const Perm* t : {&d.tau_h, &d.tau_v}) {
            CHECK(perm_compose(*t, o.right) == perm_compose(o.right, *t));
            CHECK(perm_compose(*t, o.up) == perm_compose(o.up, *t));
        }
        CHECK(perm_compose(d.iota, o.right) == perm_compose(perm_inverse(o.right), d.iota));
        CHECK(perm_compose(d.iota, o.up) == perm_compose(perm_inverse(o.up), d.iota));
        for (int sq = 0; sq < o.n; ++sq) {
            std::set<int> orbit_t, orbit_all;
            for (int e = 0; e < 8; ++e) {
                orbit_all.insert(deck_action(d, e, sq));
                if (!deck_rotates(e)) orbit_t.insert(deck_action(d, e, sq));
            }
            CHECK(orbit_t.size() == 4);
            CHECK(orbit_all.size() == 8);
        }
    }
}

TEST_CASE("sign tables and displacement") {
    auto st = default_sign_table();
    CHECK(st.h == std::array<int, 4>{1, 1, -1, -1});
    CHECK(st.v == std::array<int, 4>{1, -1, 1, -1});
    Cochain c{};
    c[0] = 1;
    auto w = apply_signs(c, st);
    CHECK(w.h[0] == 1);
    CHECK(w.v[0] == 1);
    CHECK(cover_displacement(c) == std::array<std::int64_t, 2>{1, 0});
    Cochain loop{};
    loop[0] = 1;
    loop[1] = 1;
    CHECK(cover_displacement(loop) == std::array<std::int64_t, 2>{0, 0});
    auto wl = apply_signs(loop, st);
    CHECK(wl.h[0] == 2);
    CHECK(wl.v[0] == 0);
}

TEST_CASE("cylinder partition identity") {
    auto s = build_surface(make_square_table(make_rat(1, 2), make_rat(1, 2)));
    for (Direction dir : {Direction{1, 0}, Direction{0, 1}, Direction{1, 1}, Direction{-2, 3}}) {
        auto dec = decompose_direction(s, dir, s.signs);
        long area = 0;
        for (auto& c : dec.cylinders) area += static_cast<long>(c.width) * c.height;
        CHECK(area == 48);
        std::vector<int> seen(static_cast<size_t>(s.origami.n), 0);
        for (auto& c : dec.cylinders)
            for (auto& row : c.rows)
                for (int sq : row) seen[static_cast<size_t>(sq)]++;
        for (int v : seen) CHECK(v == 1);
    }
}
