#pragma once

// Exact rational scalars. All linear algebra in this project is over Q;
// nothing here may ever round.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace opcat {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rat(long long num, long long den = 1) { return Rational(num, den); }

inline bool is_zero(const Rational& q) { return q.is_zero(); }

inline std::string to_string(const Rational& q) { return q.str(); }

inline BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned k = 2; k <= n; ++k) r *= k;
    return r;
}

inline BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    BigInt r = 1;
    for (unsigned j = 0; j < k; ++j) { r *= (n - j); r /= (j + 1); }
    return r;
}

// n(n+1)...(n+m-1); the count of (function, fibre order) pairs m -> n.
inline BigInt rising_factorial(unsigned n, unsigned m) {
    BigInt r = 1;
    for (unsigned j = 0; j < m; ++j) r *= (n + j);
    return r;
}

inline std::int64_t to_int64(const BigInt& v) { return v.convert_to<std::int64_t>(); }

} // namespace opcat
