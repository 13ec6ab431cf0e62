#pragma once

#include "windtree/exactmath.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <vector>

namespace windtree {

using Perm = std::vector<int>;

Perm perm_identity(int n);
Perm perm_inverse(const Perm& p);
/// f o g (apply g first).
Perm perm_compose(const Perm& f, const Perm& g);
std::vector<std::vector<int>> perm_cycles(const Perm& p);
/// cycle length -> multiplicity
std::map<int, int> cycle_type(const Perm& p);
bool is_transitive(const Perm& a, const Perm& b);

/// Square-tiled surface: right/up neighbours of unit squares.
struct Origami {
    int n = 0;
    Perm right;
    Perm up;
    std::vector<std::array<int, 2>> copy_of;   // (i,j)
    std::vector<std::array<long, 2>> cell_pos;  // billiard subcell (a,b)
};

Origami make_origami(Perm right, Perm up);
/// up o right o up^-1 o right^-1; fixes exactly the squares whose lower-left vertex is regular.
Perm commutator(const Perm& right, const Perm& up);
/// Cycle lengths > 1 of the commutator (cone points of angle 2*pi*len).
std::map<int, int> singularity_profile(const Origami& o);

/// Two origamis are isomorphic if a relabelling conjugates both permutations.
bool origami_isomorphic(const Perm& r1, const Perm& u1, const Perm& r2, const Perm& u2);

struct Mat2 {
    long a = 1, b = 0, c = 0, d = 1;  // [[a,b],[c,d]]
    friend bool operator==(const Mat2&, const Mat2&) = default;
};
Mat2 operator*(const Mat2& x, const Mat2& y);
long det(const Mat2& m);

enum class Gen { T, V };  // T = [[1,1],[0,1]], V = [[1,0],[1,1]]
struct GenPower {
    Gen g;
    long k;
};
Mat2 gen_matrix(const GenPower& gp);
/// Word w_1 ... w_n with M = w_1 * ... * w_n.
std::vector<GenPower> factor_sl2z(const Mat2& M);

/// Crossing counts carried by an edge: X-boundary crossings per copy, then Y-boundary crossings per copy.
using Cochain = std::array<std::int64_t, 8>;

struct SurfacePoint {
    int square = 0;
    BigRat x, y;  // in [0,1)
};

/// M . X, tracked together with the rotation-by-pi involution and the edge cochains.
struct TransformedSurface {
    Perm right, up, iota;
    std::vector<Cochain> c_right, c_up;
    struct Step {
        GenPower gen;
        Perm perm;  // right for T, up for V (unchanged by the step)
    };
    std::vector<Step> history;  // in application order, filled when recording
};

TransformedSurface sl2z_transform(const Perm& right, const Perm& up, const Perm& iota, const std::vector<Cochain>& c_right,
                                  const std::vector<Cochain>& c_up, const Mat2& M, bool record);

/// Maps a point of M . X back to X (requires a recorded transform).
SurfacePoint map_back(const TransformedSurface& ts, SurfacePoint p);

}  // namespace windtree
