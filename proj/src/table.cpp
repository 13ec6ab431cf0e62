#include "windtree/table.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace windtree {

namespace {

long long cross_z(LatticePoint a, LatticePoint b, LatticePoint c) {
    return static_cast<long long>(b.first - a.first) * (c.second - b.second) -
           static_cast<long long>(b.second - a.second) * (c.first - b.first);
}

bool segments_touch(LatticePoint a, LatticePoint b, LatticePoint c, LatticePoint d) {
    // Axis-aligned segments only: bounding-box intersection is exact.
    long ax0 = std::min(a.first, b.first), ax1 = std::max(a.first, b.first);
    long ay0 = std::min(a.second, b.second), ay1 = std::max(a.second, b.second);
    long cx0 = std::min(c.first, d.first), cx1 = std::max(c.first, d.first);
    long cy0 = std::min(c.second, d.second), cy1 = std::max(c.second, d.second);
    return ax0 <= cx1 && cx0 <= ax1 && ay0 <= cy1 && cy0 <= ay1;
}

}  // namespace

WindTreeTable make_table(long D, std::vector<LatticePoint> vertices) {
    if (D < 1) throw ValidationError("denominator must be positive");
    const size_t n = vertices.size();
    if (n < 4) throw ValidationError("polygon needs at least 4 vertices");
    for (auto [x, y] : vertices)
        if (x < 0 || x > D || y < 0 || y > D) throw ValidationError("vertex outside [0,D]^2");

    for (size_t k = 0; k < n; ++k) {
        auto a = vertices[k], b = vertices[(k + 1) % n], c = vertices[(k + 2) % n];
        bool ab_h = a.second == b.second, ab_v = a.first == b.first;
        bool bc_h = b.second == c.second, bc_v = b.first == c.first;
        if ((ab_h && ab_v) || (!ab_h && !ab_v)) throw ValidationError("edges not axis-aligned and nondegenerate");
        if (ab_h == bc_h) throw ValidationError("edges do not alternate horizontal/vertical");
    }

    for (auto [x, y] : vertices)
        if (x <= 0 || x >= D || y <= 0 || y >= D) throw ValidationError("not strictly interior");

    for (size_t k = 0; k < n; ++k)
        for (size_t l = k + 1; l < n; ++l) {
            bool adjacent = (l == k + 1) || (k == 0 && l == n - 1);
            if (adjacent) continue;
            if (segments_touch(vertices[k], vertices[(k + 1) % n], vertices[l], vertices[(l + 1) % n]))
                throw ValidationError("polygon is not simple");
        }

    long long area2 = 0;
    for (size_t k = 0; k < n; ++k) {
        auto a = vertices[k], b = vertices[(k + 1) % n];
        area2 += static_cast<long long>(a.first) * b.second - static_cast<long long>(b.first) * a.second;
    }
    if (area2 <= 0) throw ValidationError("vertices not counterclockwise");

    std::set<LatticePoint> vs(vertices.begin(), vertices.end());
    for (auto [x, y] : vertices) {
        if (!vs.count({D - x, y})) throw ValidationError("not symmetric under x -> D-x");
        if (!vs.count({x, D - y})) throw ValidationError("not symmetric under y -> D-y");
    }

    long convex = 0, reflex = 0;
    for (size_t k = 0; k < n; ++k) {
        long long z = cross_z(vertices[(k + n - 1) % n], vertices[k], vertices[(k + 1) % n]);
        (z > 0 ? convex : reflex)++;
    }
    if (convex % 4 != 0 || reflex != convex - 4)
        throw ValidationError("corner census is not 4m convex and 4(m-1) reflex");

    WindTreeTable t;
    t.D = D;
    t.vertices = std::move(vertices);
    t.m = convex / 4;
    t.blocked.assign(static_cast<size_t>(D * D), 0);
    // Even-odd rule on subcell centres against the vertical edges.
    for (long b = 0; b < D; ++b)
        for (long a = 0; a < D; ++a) {
            int crossings = 0;
            for (size_t k = 0; k < n; ++k) {
                auto p = t.vertices[k], q = t.vertices[(k + 1) % n];
                if (p.first != q.first || p.first <= a) continue;
                long y0 = std::min(p.second, q.second), y1 = std::max(p.second, q.second);
                if (y0 <= b && b + 1 <= y1) ++crossings;
            }
            if (crossings % 2) {
                t.blocked[static_cast<size_t>(a + D * b)] = 1;
                ++t.blocked_count;
            }
        }
    if (2 * t.blocked_count != area2) throw ValidationError("rasterised area does not match polygon area");
    return t;
}

WindTreeTable parse_table(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    long D = -1;
    std::vector<LatticePoint> verts;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "denominator") {
            if (D != -1) throw ParseError(lineno, "duplicate denominator");
            if (!verts.empty()) throw ParseError(lineno, "denominator must precede vertices");
            if (!(ls >> D)) throw ParseError(lineno, "expected integer after 'denominator'");
        } else if (key == "vertex") {
            if (D == -1) throw ParseError(lineno, "vertex before denominator");
            long x, y;
            if (!(ls >> x >> y)) throw ParseError(lineno, "expected two integers after 'vertex'");
            verts.emplace_back(x, y);
        } else {
            throw ParseError(lineno, "unknown key '" + key + "'");
        }
        std::string extra;
        if (ls >> extra) throw ParseError(lineno, "trailing token '" + extra + "'");
    }
    if (D == -1) throw ParseError(lineno, "missing denominator");
    return make_table(D, std::move(verts));
}

WindTreeTable load_table(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open table file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_table(ss.str());
}

std::string format_table(const WindTreeTable& t) {
    std::ostringstream out;
    out << "denominator " << t.D << "\n";
    for (auto [x, y] : t.vertices) out << "vertex " << x << " " << y << "\n";
    return out.str();
}

long table_m(const WindTreeTable& t) { return t.m; }

BigRat table_area(const WindTreeTable& t) {
    return make_rat(BigInt(t.D * t.D - t.blocked_count), BigInt(t.D * t.D));
}

long reflex_corners(const WindTreeTable& t) { return 4 * (t.m - 1); }

bool has_consecutive_reflex(const WindTreeTable& t) {
    const size_t n = t.vertices.size();
    auto reflex = [&](size_t k) {
        return cross_z(t.vertices[(k + n - 1) % n], t.vertices[k], t.vertices[(k + 1) % n]) < 0;
    };
    for (size_t k = 0; k < n; ++k)
        if (reflex(k) && reflex((k + 1) % n)) return true;
    return false;
}

WindTreeTable make_square_table(const BigRat& a, const BigRat& b) {
    if (a <= 0 || a >= 1 || b <= 0 || b >= 1) throw ValidationError("obstacle sides must lie in (0,1)");
    BigInt den;
    mpz_lcm(den.get_mpz_t(), a.get_den().get_mpz_t(), b.get_den().get_mpz_t());
    BigInt D = den;
    auto margins_even = [&](const BigInt& d) {
        BigRat ma = d * (1 - a), mb = d * (1 - b);
        return ma.get_den() == 1 && mb.get_den() == 1 && mpz_even_p(ma.get_num().get_mpz_t()) &&
               mpz_even_p(mb.get_num().get_mpz_t());
    };
    while (!margins_even(D)) D += den;
    if (!D.fits_slong_p() || D > 4096) throw ValidationError("denominator too large");
    long d = D.get_si();
    BigRat ha = d * (1 - a) / 2, hb = d * (1 - b) / 2;
    long x0 = ha.get_num().get_si(), y0 = hb.get_num().get_si();
    return make_table(d, {{x0, y0}, {d - x0, y0}, {d - x0, d - y0}, {x0, d - y0}});
}

WindTreeTable make_plus_table() {
    return make_table(5, {{2, 1}, {3, 1}, {3, 2}, {4, 2}, {4, 3}, {3, 3}, {3, 4}, {2, 4}, {2, 3}, {1, 3}, {1, 2}, {2, 2}});
}

WindTreeTable table_from_spec(const std::string& spec) {
    std::istringstream ss(spec);
    std::string head;
    ss >> head;
    if (head == "plus") return make_plus_table();
    if (head == "square") {
        std::string a, b;
        if (!(ss >> a >> b)) throw ValidationError("usage: square <a> <b>");
        return make_square_table(parse_rational(a), parse_rational(b));
    }
    return load_table(spec);
}

}  // namespace windtree
