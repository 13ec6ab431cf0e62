#include "windtree/surface.hpp"

namespace windtree {

int deck_action(const DeckGroup& deck, int element, int square) {
    if (element & kTauH) square = deck.tau_h[static_cast<size_t>(square)];
    if (element & kTauV) square = deck.tau_v[static_cast<size_t>(square)];
    if (element & kIota) square = deck.iota[static_cast<size_t>(square)];
    return square;
}

WindingSignTable default_sign_table() {
    WindingSignTable t;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            t.h[static_cast<size_t>(i + 2 * j)] = (j == 0) ? 1 : -1;
            t.v[static_cast<size_t>(i + 2 * j)] = (i == 0) ? 1 : -1;
        }
    return t;
}

bool Surface::right_is_wall(int s) const {
    return origami.copy_of[static_cast<size_t>(s)][0] != origami.copy_of[static_cast<size_t>(origami.right[static_cast<size_t>(s)])][0];
}

bool Surface::up_is_wall(int s) const {
    return origami.copy_of[static_cast<size_t>(s)][1] != origami.copy_of[static_cast<size_t>(origami.up[static_cast<size_t>(s)])][1];
}

Surface build_surface(const WindTreeTable& table) {
    Surface S;
    S.table = table;
    const long D = table.D;
    S.square_index.assign(static_cast<size_t>(D * D * 4), -1);
    std::vector<std::array<long, 2>> cells;
    std::vector<std::array<int, 2>> copies;
    for (long b = 0; b < D; ++b)
        for (long a = 0; a < D; ++a) {
            if (table.is_blocked(a, b)) continue;
            for (int c = 0; c < 4; ++c) {
                S.square_index[static_cast<size_t>((a + D * b) * 4 + c)] = static_cast<int>(cells.size());
                cells.push_back({a, b});
                copies.push_back({c & 1, c >> 1});
            }
        }
    const int n = static_cast<int>(cells.size());
    if (n != 4 * (D * D - table.blocked_count)) throw ConstructionError("square count mismatch");

    Perm right(static_cast<size_t>(n)), up(static_cast<size_t>(n));
    Perm tau_h(static_cast<size_t>(n)), tau_v(static_cast<size_t>(n)), iota(static_cast<size_t>(n));
    S.c_right.assign(static_cast<size_t>(n), Cochain{});
    S.c_up.assign(static_cast<size_t>(n), Cochain{});
    auto wrap = [D](long x) { return ((x % D) + D) % D; };
    for (int s = 0; s < n; ++s) {
        auto [a, b] = cells[static_cast<size_t>(s)];
        auto [i, j] = copies[static_cast<size_t>(s)];
        // In copy (i,j) the drawn x-axis runs along (-1)^i in the billiard, the y-axis along (-1)^j.
        long dx = i ? -1 : 1, dy = j ? -1 : 1;
        long na = wrap(a + dx), nb = wrap(b + dy);
        right[static_cast<size_t>(s)] = table.is_blocked(na, b) ? S.square_of(a, b, 1 - i, j) : S.square_of(na, b, i, j);
        up[static_cast<size_t>(s)] = table.is_blocked(a, nb) ? S.square_of(a, b, i, 1 - j) : S.square_of(a, nb, i, j);
        tau_h[static_cast<size_t>(s)] = S.square_of(D - 1 - a, b, 1 - i, j);
        tau_v[static_cast<size_t>(s)] = S.square_of(a, D - 1 - b, i, 1 - j);
        iota[static_cast<size_t>(s)] = S.square_of(D - 1 - a, D - 1 - b, i, j);
        long drawn_x = i ? D - 1 - a : a, drawn_y = j ? D - 1 - b : b;
        int c = i + 2 * j;
        if (drawn_x == D - 1) S.c_right[static_cast<size_t>(s)][static_cast<size_t>(c)] = 1;
        if (drawn_y == D - 1) S.c_up[static_cast<size_t>(s)][static_cast<size_t>(4 + c)] = 1;
    }
    for (int s = 0; s < n; ++s)
        if (tau_h[static_cast<size_t>(s)] < 0 || tau_v[static_cast<size_t>(s)] < 0 || iota[static_cast<size_t>(s)] < 0)
            throw ConstructionError("obstacle is not symmetric");

    S.origami = make_origami(std::move(right), std::move(up));
    S.origami.copy_of = copies;
    S.origami.cell_pos = cells;
    S.deck = {std::move(tau_h), std::move(tau_v), std::move(iota)};
    S.signs = default_sign_table();

    const auto& o = S.origami;
    if (perm_inverse(o.right).size() != static_cast<size_t>(n)) throw ConstructionError("right is not a permutation");
    {
        std::vector<char> hit_r(static_cast<size_t>(n), 0), hit_u(static_cast<size_t>(n), 0);
        for (int s = 0; s < n; ++s) {
            hit_r[static_cast<size_t>(o.right[static_cast<size_t>(s)])] = 1;
            hit_u[static_cast<size_t>(o.up[static_cast<size_t>(s)])] = 1;
        }
        for (int s = 0; s < n; ++s)
            if (!hit_r[static_cast<size_t>(s)] || !hit_u[static_cast<size_t>(s)]) throw ConstructionError("gluing is not bijective");
    }
    if (!is_transitive(o.right, o.up)) throw ConstructionError("surface is disconnected");
    auto prof = singularity_profile(o);
    if (prof.size() != 1 || !prof.count(3) || prof.at(3) != 4 * table.m)
        throw ConstructionError("commutator cycle type is not 3^(4m)");
    return S;
}

Windings apply_signs(const Cochain& c, const WindingSignTable& signs) {
    Windings w;
    for (size_t k = 0; k < 4; ++k) {
        w.h[0] += signs.h[k] * c[k];
        w.h[1] += signs.h[k] * c[4 + k];
        w.v[0] += signs.v[k] * c[k];
        w.v[1] += signs.v[k] * c[4 + k];
    }
    return w;
}

std::array<std::int64_t, 2> cover_displacement(const Cochain& c) {
    // Crossing the drawn right boundary of copy (i,j) moves (-1)^i cells in x; similarly for y.
    std::int64_t dx = c[0] - c[1] + c[2] - c[3];
    std::int64_t dy = c[4] + c[5] - c[6] - c[7];
    return {dx, dy};
}

}  // namespace windtree
