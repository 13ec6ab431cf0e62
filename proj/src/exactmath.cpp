#include "windtree/exactmath.hpp"

#include <cctype>
#include <stdexcept>

namespace windtree {

std::string PiRational::to_string() const {
    return rat_to_string(coeff) + " /pi^2";
}

BigInt binomial(long n, long k) {
    if (n < 0) throw std::invalid_argument("binomial: n must be nonnegative");
    if (k < 0 || k > n) return 0;
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

BigInt factorial(long n) {
    if (n < 0) throw std::invalid_argument("factorial: n must be nonnegative");
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

BigInt double_factorial(long n) {
    if (n < -1) throw std::invalid_argument("double_factorial: n must be >= -1");
    if (n <= 0) return 1;
    BigInt r;
    mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

BigInt pow_int(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

double pirational_eval(const PiRational& x) {
    if (x.coeff == 0) return 0.0;
    // mpf keeps the conversion accurate even when num/den overflow a double.
    mpf_class v(x.coeff, 256);
    static const mpf_class pi2(
        "9.86960440108935861883449099987615113531369940724079062641334937622004482241920524300177340371855223", 256);
    return mpf_class(v / pi2, 256).get_d();
}

BigRat make_rat(const BigInt& num, const BigInt& den) {
    BigRat r(num, den);
    r.canonicalize();
    return r;
}

BigRat parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty rational");
    auto is_int = [](const std::string& t) {
        size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    auto strip_plus = [](std::string t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };
    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string a = s.substr(0, slash), b = s.substr(slash + 1);
        if (!is_int(a) || !is_int(b)) throw std::invalid_argument("bad rational: " + text);
        BigInt den(strip_plus(b));
        if (den == 0) throw std::invalid_argument("zero denominator: " + text);
        return make_rat(BigInt(strip_plus(a)), den);
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        bool neg = !ip.empty() && ip[0] == '-';
        std::string digits = ip + fp;
        if (digits == "-" || digits == "+" || digits.empty()) throw std::invalid_argument("bad rational: " + text);
        if (ip.empty() || ip == "-" || ip == "+") digits = (neg ? "-0" : "0") + fp;
        if (!is_int(digits) || (!fp.empty() && !is_int(fp))) throw std::invalid_argument("bad rational: " + text);
        return make_rat(BigInt(strip_plus(digits)), pow_int(10, fp.size()));
    }
    if (!is_int(s)) throw std::invalid_argument("bad rational: " + text);
    return make_rat(BigInt(strip_plus(s)));
}

std::string rat_to_string(const BigRat& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace windtree
