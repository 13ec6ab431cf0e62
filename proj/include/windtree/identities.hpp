#pragma once

#include "windtree/exactmath.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace windtree {

struct UnsupportedS : std::invalid_argument {
    explicit UnsupportedS(int s) : std::invalid_argument("closed form only available for s in {0,1,2}, got " + std::to_string(s)) {}
};

struct IdentityReport {
    long m = 0;
    int s = 0;
    BigRat direct;
    BigRat closed;
    bool equal = false;
};

/// sum_{q=0}^{m} C(2q,q) C(2m-2q,m-q) q!/(q+s)! q^j, with 0^0 = 1.
BigRat D_direct(long m, long s, long j);
bool D_recurrence_check(long m, long s_max, long j_max);

BigRat X_closed(long m, long i);
BigRat X_direct(long m, long i);

/// Coefficients p_0..p_{s+1} of prod_{i=0}^{s} (m - q - i) as a polynomial in q.
std::vector<BigRat> P_coefficients(long m, long s);

/// A(m,s) = sum_j p_j D(m,s,j).
BigRat A_from_D(long m, long s);
/// B(m,s) recovered from A(m,s).
BigRat B_from_A(long m, long s);

BigRat B_direct(long m, long s);
BigRat B_closed(long m, int s);

/// 4^m (m!)^2 / (2m)!
BigRat central_ratio(long m);

std::vector<IdentityReport> verify_identities(long m_max);
using ClosedForm = std::function<BigRat(long, int)>;
/// Same check against a caller-supplied closed form.
std::vector<IdentityReport> verify_identities(long m_max, const ClosedForm& closed);

}  // namespace windtree
