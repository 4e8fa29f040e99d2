#pragma once

// Shared low-level helpers: 64-bit modular arithmetic with 128-bit
// intermediates, deterministic Miller-Rabin, and a seeded RNG alias.

#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace recdiv {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

using Rng = std::mt19937_64;

inline u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

inline u64 add_mod(u64 a, u64 b, u64 m) {
    u64 s = a + b; // a, b < m <= 2^63 so no overflow
    return s >= m ? s - m : s;
}

inline u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

inline u64 pow_mod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// a mod m as a residue in [0, m). m must be < 2^63.
inline u64 reduce_signed(i64 a, u64 m) {
    i64 r = a % static_cast<i64>(m);
    if (r < 0) r += static_cast<i64>(m);
    return static_cast<u64>(r);
}

// Deterministic Miller-Rabin for 64-bit inputs (seven-base witness set).
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while (!(d & 1)) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        u64 base = a % n;
        if (base == 0) continue;
        u64 x = pow_mod(base, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }

// Overflow-checked a*b for u64; throws on overflow.
inline u64 checked_mul(u64 a, u64 b, const char* what = "integer overflow") {
    u128 p = u128(a) * b;
    if (p > u128(~0ull)) throw std::overflow_error(what);
    return static_cast<u64>(p);
}

inline u64 lcm_u64(u64 a, u64 b) {
    if (a == 0 || b == 0) return 0;
    return checked_mul(a / std::gcd(a, b), b, "lcm overflow");
}

} // namespace recdiv
