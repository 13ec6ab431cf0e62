#include "windtree/identities.hpp"

namespace windtree {

namespace {

BigInt central(long n) { return binomial(2 * n, n); }

BigInt falling_ratio(long q, long s) {
    // (q+s)!/q!
    BigInt r = 1;
    for (long i = 1; i <= s; ++i) r *= q + i;
    return r;
}

}  // namespace

BigRat D_direct(long m, long s, long j) {
    BigRat sum = 0;
    for (long q = 0; q <= m; ++q) {
        BigInt qj = (j == 0) ? BigInt(1) : pow_int(BigInt(q), static_cast<unsigned long>(j));
        sum += make_rat(central(q) * central(m - q) * qj, falling_ratio(q, s));
    }
    return sum;
}

bool D_recurrence_check(long m, long s_max, long j_max) {
    for (long s = 1; s <= s_max; ++s)
        for (long j = 1; j <= j_max; ++j)
            if (D_direct(m, s, j) != D_direct(m, s - 1, j - 1) - BigRat(s) * D_direct(m, s, j - 1)) return false;
    return true;
}

BigRat X_closed(long m, long i) {
    return make_rat(binomial(2 * m + 2 * i - 1, m + i), binomial(2 * i - 1, i));
}

BigRat X_direct(long m, long i) {
    BigRat sum = 0;
    for (long q = 0; q <= m; ++q) sum += make_rat(central(q) * central(m - q) * i, BigInt(q + i));
    return sum;
}

std::vector<BigRat> P_coefficients(long m, long s) {
    std::vector<BigRat> poly{BigRat(1)};
    for (long i = 0; i <= s; ++i) {
        // multiply by (m - i) - q
        std::vector<BigRat> next(poly.size() + 1, BigRat(0));
        for (size_t k = 0; k < poly.size(); ++k) {
            next[k] += poly[k] * (m - i);
            next[k + 1] -= poly[k];
        }
        poly = std::move(next);
    }
    return poly;
}

BigRat A_from_D(long m, long s) {
    auto p = P_coefficients(m, s);
    BigRat a = 0;
    for (size_t j = 0; j < p.size(); ++j) a += p[j] * D_direct(m, s, static_cast<long>(j));
    return a;
}

BigRat B_from_A(long m, long s) {
    BigRat pre = make_rat(factorial(m) * factorial(m - 1), factorial(2 * m));
    return pre * A_from_D(m, s) - BigRat(binomial(m - 1, s));
}

BigRat B_direct(long m, long s) {
    BigRat sum = 0;
    for (long q = 1; q <= m - 1; ++q)
        sum += make_rat(binomial(m, q) * binomial(m - 1, q + s), binomial(2 * m, 2 * q));
    return sum;
}

BigRat central_ratio(long m) {
    BigInt fm = factorial(m);
    return make_rat(pow_int(4, static_cast<unsigned long>(m)) * fm * fm, factorial(2 * m));
}

BigRat B_closed(long m, int s) {
    BigRat r = central_ratio(m);
    BigRat mm(m);
    switch (s) {
        case 0: return BigRat(-1) + BigRat(1, 2) * r;
        case 1: return mm + 2 - BigRat(3, 2) * r;
        case 2: return BigRat(1, 6) * mm * mm - BigRat(13, 6) * mm - 3 + BigRat(5, 2) * r;
        default: throw UnsupportedS(s);
    }
}

std::vector<IdentityReport> verify_identities(long m_max) { return verify_identities(m_max, B_closed); }

std::vector<IdentityReport> verify_identities(long m_max, const ClosedForm& closed) {
    std::vector<IdentityReport> out;
    for (long m = 1; m <= m_max; ++m)
        for (int s = 0; s <= 2; ++s) {
            IdentityReport rep;
            rep.m = m;
            rep.s = s;
            rep.direct = B_direct(m, s);
            rep.closed = closed(m, s);
            rep.equal = rep.direct == rep.closed;
            out.push_back(std::move(rep));
        }
    return out;
}

}  // namespace windtree
