#pragma once

#include "windtree/exactmath.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace windtree {

struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& reason) : std::runtime_error(reason), reason(reason) {}
    std::string reason;
};

using LatticePoint = std::pair<long, long>;

/// Axis-aligned obstacle polygon on the integer grid of a cell scaled by D.
struct WindTreeTable {
    long D = 1;
    std::vector<LatticePoint> vertices;  // counterclockwise

    // Filled by validation.
    long m = 0;
    std::vector<char> blocked;  // D*D, index a + D*b for subcell [a,a+1]x[b,b+1]
    long blocked_count = 0;

    bool is_blocked(long a, long b) const {
        a %= D; if (a < 0) a += D;
        b %= D; if (b < 0) b += D;
        return blocked[static_cast<size_t>(a + D * b)] != 0;
    }
};

/// Validates and fills the derived fields. Throws ValidationError naming the first failing invariant.
WindTreeTable make_table(long D, std::vector<LatticePoint> vertices);
WindTreeTable parse_table(const std::string& text);
WindTreeTable load_table(const std::string& path);
std::string format_table(const WindTreeTable& t);

long table_m(const WindTreeTable& t);
/// Free area of the cell, 1 - obstacle_area / D^2.
BigRat table_area(const WindTreeTable& t);
/// Number of reflex (3pi/2) corners.
long reflex_corners(const WindTreeTable& t);
/// True if some two consecutive corners of the obstacle are both reflex.
bool has_consecutive_reflex(const WindTreeTable& t);

/// Centered rectangle of width a and height b (fractions of the cell).
WindTreeTable make_square_table(const BigRat& a, const BigRat& b);
/// m = 2 cross made of five subcells of a 5x5 grid.
WindTreeTable make_plus_table();
/// Resolve "square a b", "plus" or a file path.
WindTreeTable table_from_spec(const std::string& spec);

}  // namespace windtree
