#include "windtree/origami.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace windtree {

Perm perm_identity(int n) {
    Perm p(static_cast<size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Perm perm_inverse(const Perm& p) {
    Perm q(p.size());
    for (size_t i = 0; i < p.size(); ++i) q[static_cast<size_t>(p[i])] = static_cast<int>(i);
    return q;
}

Perm perm_compose(const Perm& f, const Perm& g) {
    Perm h(g.size());
    for (size_t i = 0; i < g.size(); ++i) h[i] = f[static_cast<size_t>(g[i])];
    return h;
}

std::vector<std::vector<int>> perm_cycles(const Perm& p) {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(p.size(), 0);
    for (size_t s = 0; s < p.size(); ++s) {
        if (seen[s]) continue;
        std::vector<int> cyc;
        for (int t = static_cast<int>(s); !seen[static_cast<size_t>(t)]; t = p[static_cast<size_t>(t)]) {
            seen[static_cast<size_t>(t)] = 1;
            cyc.push_back(t);
        }
        out.push_back(std::move(cyc));
    }
    return out;
}

std::map<int, int> cycle_type(const Perm& p) {
    std::map<int, int> ct;
    for (auto& c : perm_cycles(p)) ct[static_cast<int>(c.size())]++;
    return ct;
}

bool is_transitive(const Perm& a, const Perm& b) {
    if (a.empty()) return true;
    std::vector<char> seen(a.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    size_t count = 1;
    while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        for (int t : {a[static_cast<size_t>(s)], b[static_cast<size_t>(s)]})
            if (!seen[static_cast<size_t>(t)]) {
                seen[static_cast<size_t>(t)] = 1;
                ++count;
                stack.push_back(t);
            }
    }
    // Finite permutations: forward reachability equals orbit.
    return count == a.size();
}

Origami make_origami(Perm right, Perm up) {
    if (right.size() != up.size()) throw std::invalid_argument("permutation sizes differ");
    Origami o;
    o.n = static_cast<int>(right.size());
    o.right = std::move(right);
    o.up = std::move(up);
    o.copy_of.assign(static_cast<size_t>(o.n), {0, 0});
    o.cell_pos.assign(static_cast<size_t>(o.n), {0, 0});
    return o;
}

Perm commutator(const Perm& right, const Perm& up) {
    return perm_compose(up, perm_compose(right, perm_compose(perm_inverse(up), perm_inverse(right))));
}

std::map<int, int> singularity_profile(const Origami& o) {
    auto ct = cycle_type(commutator(o.right, o.up));
    ct.erase(1);
    return ct;
}

bool origami_isomorphic(const Perm& r1, const Perm& u1, const Perm& r2, const Perm& u2) {
    const size_t n = r1.size();
    if (n != r2.size() || n != u1.size() || n != u2.size()) return false;
    if (n == 0) return true;
    // Transitive case: fix the image of square 0 and propagate.
    for (size_t t0 = 0; t0 < n; ++t0) {
        std::vector<int> phi(n, -1), inv(n, -1);
        phi[0] = static_cast<int>(t0);
        inv[t0] = 0;
        std::vector<int> stack{0};
        bool ok = true;
        while (ok && !stack.empty()) {
            int s = stack.back();
            stack.pop_back();
            int t = phi[static_cast<size_t>(s)];
            std::array<std::pair<int, int>, 2> pairs{{{r1[static_cast<size_t>(s)], r2[static_cast<size_t>(t)]},
                                                      {u1[static_cast<size_t>(s)], u2[static_cast<size_t>(t)]}}};
            for (auto [a, b] : pairs) {
                if (phi[static_cast<size_t>(a)] == -1 && inv[static_cast<size_t>(b)] == -1) {
                    phi[static_cast<size_t>(a)] = b;
                    inv[static_cast<size_t>(b)] = a;
                    stack.push_back(a);
                } else if (phi[static_cast<size_t>(a)] != b) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok && std::find(phi.begin(), phi.end(), -1) == phi.end()) return true;
    }
    return false;
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

long det(const Mat2& m) { return m.a * m.d - m.b * m.c; }

Mat2 gen_matrix(const GenPower& gp) {
    return gp.g == Gen::T ? Mat2{1, gp.k, 0, 1} : Mat2{1, 0, gp.k, 1};
}

std::vector<GenPower> factor_sl2z(const Mat2& M) {
    if (det(M) != 1) throw std::invalid_argument("factor_sl2z: determinant must be 1");
    // Left row operations E_n ... E_1 M = I; then M = E_1^-1 ... E_n^-1.
    Mat2 cur = M;
    std::vector<GenPower> ops;
    auto apply = [&](Gen g, long k) {
        if (k == 0) return;
        ops.push_back({g, k});
        cur = gen_matrix({g, k}) * cur;
    };
    while (cur.c != 0) {
        if (cur.a == 0) apply(Gen::T, 1);
        apply(Gen::V, -(cur.c / cur.a));
        if (cur.c == 0) break;
        apply(Gen::T, -(cur.a / cur.c));
    }
    if (cur.a == -1) {
        // -I = (T^-1 V T^-1)^2
        for (int rep = 0; rep < 2; ++rep) {
            apply(Gen::T, -1);
            apply(Gen::V, 1);
            apply(Gen::T, -1);
        }
    }
    apply(Gen::T, -cur.b);
    if (!(cur == Mat2{})) throw std::logic_error("factor_sl2z: reduction failed");
    std::vector<GenPower> word;
    for (auto& op : ops) word.push_back({op.g, -op.k});
    return word;
}

namespace {

struct CycleIndex {
    std::vector<int> cid, pos;
    std::vector<std::vector<int>> cycles;

    explicit CycleIndex(const Perm& p) : cid(p.size()), pos(p.size()), cycles(perm_cycles(p)) {
        for (size_t c = 0; c < cycles.size(); ++c)
            for (size_t k = 0; k < cycles[c].size(); ++k) {
                cid[static_cast<size_t>(cycles[c][k])] = static_cast<int>(c);
                pos[static_cast<size_t>(cycles[c][k])] = static_cast<int>(k);
            }
    }

    int power(int s, long k) const {
        const auto& cyc = cycles[static_cast<size_t>(cid[static_cast<size_t>(s)])];
        long len = static_cast<long>(cyc.size());
        long idx = (pos[static_cast<size_t>(s)] + k) % len;
        if (idx < 0) idx += len;
        return cyc[static_cast<size_t>(idx)];
    }
};

/// Prefix sums of a cochain along the cycles of a permutation.
struct CycleSums {
    const CycleIndex& ci;
    std::vector<std::vector<Cochain>> prefix;

    CycleSums(const CycleIndex& index, const std::vector<Cochain>& c) : ci(index) {
        prefix.resize(ci.cycles.size());
        for (size_t k = 0; k < ci.cycles.size(); ++k) {
            auto& pre = prefix[k];
            pre.assign(ci.cycles[k].size() + 1, Cochain{});
            for (size_t t = 0; t < ci.cycles[k].size(); ++t)
                for (size_t e = 0; e < 8; ++e)
                    pre[t + 1][e] = pre[t][e] + c[static_cast<size_t>(ci.cycles[k][t])][e];
        }
    }

    /// sum_{i=0}^{len-1} c(p^i s), len >= 0
    Cochain forward(int s, long len) const {
        size_t k = static_cast<size_t>(ci.cid[static_cast<size_t>(s)]);
        const auto& pre = prefix[k];
        long L = static_cast<long>(ci.cycles[k].size());
        long wraps = len / L, rem = len % L;
        long start = ci.pos[static_cast<size_t>(s)];
        Cochain out{};
        for (size_t e = 0; e < 8; ++e) {
            std::int64_t v = wraps * pre[static_cast<size_t>(L)][e];
            long end = start + rem;
            if (end <= L) {
                v += pre[static_cast<size_t>(end)][e] - pre[static_cast<size_t>(start)][e];
            } else {
                v += pre[static_cast<size_t>(L)][e] - pre[static_cast<size_t>(start)][e] + pre[static_cast<size_t>(end - L)][e];
            }
            out[e] = v;
        }
        return out;
    }
};

/// Shear along `along` (right for T, up for V); `other` and its cochain get rewritten.
void shear_step(const Perm& along, Perm& other, Perm& iota, const std::vector<Cochain>& c_along, std::vector<Cochain>& c_other,
                long k) {
    const size_t n = along.size();
    CycleIndex ci(along);
    CycleSums sums(ci, c_along);
    Perm new_other(n), new_iota(n);
    std::vector<Cochain> new_c(n);
    for (size_t s = 0; s < n; ++s) {
        int si = static_cast<int>(s);
        int base = ci.power(si, -k);
        new_other[s] = other[static_cast<size_t>(base)];
        Cochain v = c_other[static_cast<size_t>(base)];
        Cochain path = k > 0 ? sums.forward(base, k) : sums.forward(si, -k);
        for (size_t e = 0; e < 8; ++e) v[e] += k > 0 ? -path[e] : path[e];
        new_c[s] = v;
        new_iota[s] = ci.power(iota[s], k);
    }
    other = std::move(new_other);
    iota = std::move(new_iota);
    c_other = std::move(new_c);
}

}  // namespace

TransformedSurface sl2z_transform(const Perm& right, const Perm& up, const Perm& iota, const std::vector<Cochain>& c_right,
                                  const std::vector<Cochain>& c_up, const Mat2& M, bool record) {
    TransformedSurface ts{right, up, iota, c_right, c_up, {}};
    auto word = factor_sl2z(M);
    // M . X = w_1 . (w_2 . ( ... (w_n . X)))
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        if (it->k == 0) continue;
        if (record) ts.history.push_back({*it, it->g == Gen::T ? ts.right : ts.up});
        if (it->g == Gen::T)
            shear_step(ts.right, ts.up, ts.iota, ts.c_right, ts.c_up, it->k);
        else
            shear_step(ts.up, ts.right, ts.iota, ts.c_up, ts.c_right, it->k);
    }
    return ts;
}

SurfacePoint map_back(const TransformedSurface& ts, SurfacePoint p) {
    for (auto it = ts.history.rbegin(); it != ts.history.rend(); ++it) {
        CycleIndex ci(it->perm);
        BigRat& moving = it->gen.g == Gen::T ? p.x : p.y;
        const BigRat& fixed = it->gen.g == Gen::T ? p.y : p.x;
        BigRat shifted = moving - BigRat(it->gen.k) * fixed;
        BigInt fl;
        mpz_fdiv_q(fl.get_mpz_t(), shifted.get_num().get_mpz_t(), shifted.get_den().get_mpz_t());
        p.square = ci.power(p.square, fl.get_si());
        moving = shifted - BigRat(fl);
    }
    return p;
}

}  // namespace windtree
