#pragma once

#include <cstdint>
#include <limits>

#include "horolab/errors.hpp"

namespace horolab {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

// All integer products go through 128-bit intermediates; anything that would
// leave the 64-bit range aborts instead of wrapping.
inline i64 checked_narrow(i128 v) {
    if (v > i128(std::numeric_limits<i64>::max()) || v < i128(std::numeric_limits<i64>::min()))
        throw ArithmeticOverflow("value exceeds 64-bit range");
    return static_cast<i64>(v);
}

inline i64 checked_mul(i64 a, i64 b) { return checked_narrow(i128(a) * i128(b)); }

inline i64 checked_add(i64 a, i64 b) { return checked_narrow(i128(a) + i128(b)); }

inline i64 checked_sub(i64 a, i64 b) { return checked_narrow(i128(a) - i128(b)); }

inline i128 checked_mul128(i128 a, i128 b) {
    if (a == 0 || b == 0) return 0;
    i128 r = a * b;
    if (r / b != a) throw ArithmeticOverflow("128-bit product overflow");
    return r;
}

inline i64 checked_pow(i64 base, int exp) {
    i64 r = 1;
    for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

inline i128 checked_pow128(i64 base, int exp) {
    i128 r = 1;
    for (int i = 0; i < exp; ++i) r = checked_mul128(r, i128(base));
    return r;
}

inline double to_double(i128 v) {
    bool neg = v < 0;
    u128 u = neg ? u128(-v) : u128(v);
    double d = double(u64(u >> 64)) * 18446744073709551616.0 + double(u64(u));
    return neg ? -d : d;
}

}  // namespace horolab
