#pragma once

#include "windtree/dynamics.hpp"
#include "windtree/surface.hpp"
#include "windtree/sv_constants.hpp"

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace windtree {

/// Unoriented primitive direction: gcd(|p|,|q|) = 1 and (q > 0 or (p,q) = (1,0)).
struct Direction {
    long p = 1;
    long q = 0;
    auto operator<=>(const Direction&) const = default;
};

std::vector<Direction> primitive_directions(const BigRat& L, long D);
/// M = [[a,b],[-q,p]] with a*p + b*q = 1, minimal Bezout coefficients.
Mat2 reduce_direction(const Direction& d);
/// M . X for a bare origami.
Origami sl2z_transform(const Origami& o, const Mat2& M);

struct HorizontalCylinder {
    int width = 0;
    int height = 0;
    std::vector<std::vector<int>> rows;  // bottom to top, each a cycle of `right`
};
std::vector<HorizontalCylinder> horizontal_cylinders(const Perm& right, const Perm& up);

enum class CylClass { Good, ClosedBad, NonClosing };
std::string to_string(CylClass c);
CylClass cyl_class_from_string(const std::string& s);

struct DeckOrbit {
    int n_X = 0;
    int b = 0;
    int s = 0;
    bool pocket_like = false;
    int b_h = 0;
    int b_v = 0;
    int s_trace = 0;          // period of the core over the period of its image in the full quotient
    int return_element = 0;   // deck translation reached first along the core
    friend bool operator==(const DeckOrbit&, const DeckOrbit&) = default;
};

struct CylinderRecord {
    Direction direction;
    long width = 0;
    long height = 0;
    double holonomy_length = 0;
    std::array<std::int64_t, 2> winding_h{};
    std::array<std::int64_t, 2> winding_v{};
    std::array<std::int64_t, 2> displacement{};
    CylClass classification = CylClass::NonClosing;
    std::optional<Profile> profile;
    std::optional<DeckOrbit> deck_orbit;
    friend bool operator==(const CylinderRecord&, const CylinderRecord&) = default;
};

/// w^2 (p^2 + q^2) <= L^2 D^2, exactly.
bool length_at_most(long width, const Direction& d, const BigRat& L, long D);

struct DirectionDecomposition {
    Direction direction;
    Mat2 M;
    TransformedSurface ts;
    std::vector<HorizontalCylinder> cylinders;
    std::vector<int> row_of;       // square -> row index
    std::vector<int> cylinder_of;  // row index -> cylinder index
    std::vector<CylinderRecord> records;
};

DirectionDecomposition decompose_direction(const Surface& surface, const Direction& d, const WindingSignTable& signs,
                                           bool record_history = false);
CylinderRecord classify_cylinder(const Surface& surface, const DirectionDecomposition& dec, std::size_t cylinder,
                                 const WindingSignTable& signs);

struct NotGood : std::invalid_argument {
    NotGood() : std::invalid_argument("cylinder is not good") {}
};
Profile monodromy_profile(const CylinderRecord& record);
DeckOrbit deck_orbit_structure(const Surface& surface, const DirectionDecomposition& dec, std::size_t cylinder);

/// Start state of the core geodesic in the billiard and its period (time units); needs a recorded decomposition.
BilliardState core_start(const Surface& surface, const DirectionDecomposition& dec, std::size_t cylinder);
BigRat core_period(const Surface& surface, const DirectionDecomposition& dec, std::size_t cylinder);

struct CountReport {
    std::vector<BigRat> L;
    std::vector<long> N_all, N_closed, N_good, N_bad;
    std::vector<BigRat> N_area_good;
    std::map<Profile, std::vector<long>> good_by_profile;
    std::vector<long> good_pocket_like, good_dumbbell_like;
    long directions = 0;
    friend bool operator==(const CountReport&, const CountReport&) = default;
};

/// Counts cylinders of length <= each L (sorted ascending). Records are appended when requested.
CountReport count(const Surface& surface, std::vector<BigRat> L, unsigned threads = 1,
                  std::vector<CylinderRecord>* records = nullptr, const WindingSignTable* signs = nullptr);

struct NotFound : std::runtime_error {
    explicit NotFound(long p_max) : std::runtime_error("no good cylinder with |p|,|q| <= " + std::to_string(p_max)) {}
};
CylinderRecord good_cylinder_search(const Surface& surface, long p_max);

struct ConsistencyReport {
    bool pass = true;
    long good_checked = 0;
    long closure_checked = 0;
    std::vector<std::string> violations;
};

/// Lift checks on every good cylinder up to L; optionally replays every core in the billiard.
ConsistencyReport lifting_consistency_check(const Surface& surface, const BigRat& L, const WindingSignTable& signs,
                                            bool closure_sweep_all = false, unsigned threads = 1);

}  // namespace windtree
