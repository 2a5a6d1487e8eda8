#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace ccx {

// Exact integer/rational types used for all published counts. Convex-character
// totals reach F_{2n-1} and overflow 64 bits near n = 45, and the expectation
// formula carries n!-scale factors, so nothing in the counting paths uses
// machine integers or floating point.
using Count = boost::multiprecision::cpp_int;
using Ratio = boost::multiprecision::cpp_rational;

inline Count factorial(int n) {
    Count f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// C(n, k) with the usual convention: 0 when k < 0 or k > n.
inline Count binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Count r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

// F_1 = F_2 = 1.
inline Count fibonacci(long long m) {
    if (m <= 0) return 0;
    Count a = 0, b = 1; // F_0, F_1
    for (long long i = 1; i < m; ++i) {
        Count c = a + b;
        a = b;
        b = c;
    }
    return b;
}

inline Count pow2(int n) {
    Count r = 1;
    return r << n;
}

// Smallest integer >= num/den (den > 0).
inline Count ceil_div(const Count& num, const Count& den) {
    Count q = num / den;
    if (q * den < num) ++q;
    return q;
}

} // namespace ccx
