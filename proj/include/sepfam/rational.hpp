// Exact rational/integer arithmetic used throughout the library.
// All density comparisons, thresholds and geometric predicates are exact;
// floating point never decides a branch.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>
#include <stdexcept>
#include <string>

namespace sepfam {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// 2^e as an exact integer.
inline Int pow2(unsigned e) { return Int(1) << e; }

// ceil(log2(n)) for n >= 1; 0 for n == 1.
inline int ceil_log2(unsigned long long n) {
    if (n == 0) throw std::invalid_argument("ceil_log2: n must be >= 1");
    int b = 0;
    while ((1ull << b) < n) ++b;
    return b;
}

// Least integer t >= lo with (t + 2) / 2^(t+1) < alpha, decided exactly.
// The left side is strictly decreasing for t >= 0, so the loop terminates
// for every alpha > 0.
inline int least_t_above_threshold(const Rat& alpha, int lo = 2) {
    if (alpha <= 0) throw std::invalid_argument("least_t_above_threshold: alpha must be > 0");
    const Int num = numerator(alpha), den = denominator(alpha);
    int t = lo;
    while (Int(t + 2) * den >= num * pow2(unsigned(t + 1))) ++t;
    return t;
}

// ceil(c * log2(1/alpha)) for alpha in (0, 1], decided exactly:
// the result is the least t with 2^t >= (1/alpha)^c.
inline int ceil_mul_log2_inv(const Rat& alpha, unsigned c) {
    if (alpha <= 0 || alpha > 1) throw std::invalid_argument("ceil_mul_log2_inv: alpha must be in (0,1]");
    const Int num = numerator(alpha), den = denominator(alpha);
    Int lhs = 1;                       // 2^t
    Int want_num = 1, want_den = 1;    // (den/num)^c
    for (unsigned i = 0; i < c; ++i) { want_num *= den; want_den *= num; }
    int t = 0;
    while (lhs * want_den < want_num) { lhs <<= 1; ++t; }
    return t;
}

inline std::string rat_to_string(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

// Accepts "num", "num/den" or "-num/den"; denominator must be positive.
inline Rat rat_from_string(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash)), den(s.substr(slash + 1));
        if (den <= 0) throw std::invalid_argument("rat_from_string: denominator must be positive");
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("rat_from_string: cannot parse '" + s + "'");
    }
}

}  // namespace sepfam
