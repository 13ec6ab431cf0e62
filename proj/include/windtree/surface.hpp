#pragma once

#include "windtree/origami.hpp"
#include "windtree/table.hpp"

#include <array>
#include <map>
#include <stdexcept>
#include <vector>

namespace windtree {

struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// tau_h, tau_v translate; iota rotates every square by pi.
struct DeckGroup {
    Perm tau_h, tau_v, iota;
};

/// Deck elements are encoded by bits: 1 = tau_h, 2 = tau_v, 4 = iota.
constexpr int kTauH = 1, kTauV = 2, kIota = 4;
inline bool deck_rotates(int element) { return (element & kIota) != 0; }
int deck_action(const DeckGroup& deck, int element, int square);

/// Sign per copy index c = i + 2j, for each quotient.
struct WindingSignTable {
    std::array<int, 4> h{};
    std::array<int, 4> v{};
};
WindingSignTable default_sign_table();

struct Surface {
    WindTreeTable table;
    Origami origami;
    DeckGroup deck;
    WindingSignTable signs;
    std::vector<Cochain> c_right, c_up;  // boundary-crossing counts of the original edges
    std::vector<int> square_index;       // (a + D*b)*4 + copy -> square, -1 if blocked

    int square_of(long a, long b, int i, int j) const {
        return square_index[static_cast<size_t>(((a + table.D * b) * 4) + i + 2 * j)];
    }
    /// Crossing the right (resp. top) edge of s passes through an obstacle wall.
    bool right_is_wall(int s) const;
    bool up_is_wall(int s) const;
};

Surface build_surface(const WindTreeTable& table);

/// Pairing of a cochain sum with the sign tables: (x, y) windings in W_h and W_v.
struct Windings {
    std::array<std::int64_t, 2> h{};
    std::array<std::int64_t, 2> v{};
};
Windings apply_signs(const Cochain& c, const WindingSignTable& signs);
/// Z^2 displacement (cells) of a closed path with crossing counts c.
std::array<std::int64_t, 2> cover_displacement(const Cochain& c);

}  // namespace windtree
