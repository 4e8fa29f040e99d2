#pragma once

// Residue computation of u_n mod m via companion-matrix binary
// exponentiation, the membership predicate n | u_n, and period detection.

#include <gmpxx.h>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "recdiv/recurrence.hpp"
#include "recdiv/util.hpp"

namespace recdiv {

// Fast path covers moduli below 2^63 (double-width products); larger moduli
// take the arbitrary-precision route.
constexpr u64 kModulusFastLimit = (1ull << 63);

namespace detail {

struct ModMatrix {
    int k;
    u64 m;
    std::vector<u64> a; // row-major k*k

    static ModMatrix companion(const RecurrenceSpec& s, u64 m) {
        int k = s.order();
        ModMatrix r{k, m, std::vector<u64>(static_cast<std::size_t>(k) * k, 0)};
        for (int i = 0; i + 1 < k; ++i) r.a[i * k + i + 1] = 1 % m;
        for (int j = 0; j < k; ++j) r.a[(k - 1) * k + j] = reduce_signed(s.coeffs[k - 1 - j], m);
        return r;
    }

    ModMatrix mul(const ModMatrix& o) const {
        ModMatrix r{k, m, std::vector<u64>(static_cast<std::size_t>(k) * k, 0)};
        for (int i = 0; i < k; ++i)
            for (int l = 0; l < k; ++l) {
                u64 x = a[i * k + l];
                if (x == 0) continue;
                for (int j = 0; j < k; ++j)
                    r.a[i * k + j] = add_mod(r.a[i * k + j], mul_mod(x, o.a[l * k + j], m), m);
            }
        return r;
    }

    std::vector<u64> apply(const std::vector<u64>& v) const {
        std::vector<u64> r(k, 0);
        for (int i = 0; i < k; ++i) {
            u64 acc = 0;
            for (int j = 0; j < k; ++j) acc = add_mod(acc, mul_mod(a[i * k + j], v[j], m), m);
            r[i] = acc;
        }
        return r;
    }
};

inline std::vector<u64> initial_state(const RecurrenceSpec& s, u64 m) {
    std::vector<u64> v(s.order());
    for (int i = 0; i < s.order(); ++i) v[i] = reduce_signed(s.init[i], m);
    return v;
}

inline void step_state(const RecurrenceSpec& s, u64 m, std::vector<u64>& w,
                       const std::vector<u64>& coeffs_mod) {
    int k = s.order();
    u64 next = 0;
    for (int j = 0; j < k; ++j) next = add_mod(next, mul_mod(coeffs_mod[j], w[k - 1 - j], m), m);
    for (int j = 0; j + 1 < k; ++j) w[j] = w[j + 1];
    w[k - 1] = next;
}

inline std::vector<u64> coeffs_mod(const RecurrenceSpec& s, u64 m) {
    std::vector<u64> c(s.order());
    for (int i = 0; i < s.order(); ++i) c[i] = reduce_signed(s.coeffs[i], m);
    return c;
}

// Generic binary-exponentiation walk over the bits of n (MSB to LSB).
template <typename BitRange>
u64 term_mod_bits(const RecurrenceSpec& s, u64 m, const BitRange& bits) {
    ModMatrix base = ModMatrix::companion(s, m);
    std::vector<u64> state = initial_state(s, m);
    bool have_acc = false;
    ModMatrix acc{s.order(), m, {}};
    for (bool bit : bits) {
        if (have_acc) acc = acc.mul(acc);
        if (bit) {
            acc = have_acc ? acc.mul(base) : base;
            have_acc = true;
        }
    }
    return have_acc ? acc.apply(state)[0] : state[0];
}

} // namespace detail

// u_n mod m, residue in [0, m).
inline u64 term_mod(const RecurrenceSpec& s, u64 n, u64 m) {
    if (m == 0) throw std::invalid_argument("term_mod: modulus must be >= 1");
    if (m >= kModulusFastLimit) throw std::invalid_argument("term_mod: modulus too large for fast path");
    if (m == 1) return 0;
    int k = s.order();
    if (n < static_cast<u64>(k)) return reduce_signed(s.init[n], m);
    if (n <= 64 * static_cast<u64>(k)) { // short indices: plain iteration wins
        auto w = detail::initial_state(s, m);
        auto cm = detail::coeffs_mod(s, m);
        for (u64 i = k; i <= n; ++i) detail::step_state(s, m, w, cm);
        return w[k - 1];
    }
    std::vector<bool> bits;
    for (u64 e = n; e; e >>= 1) bits.push_back(e & 1);
    std::reverse(bits.begin(), bits.end());
    return detail::term_mod_bits(s, m, bits);
}

// Index given as a big integer (moduli still word-sized).
inline u64 term_mod(const RecurrenceSpec& s, const mpz_class& n, u64 m) {
    if (n < 0) throw std::invalid_argument("term_mod: index must be >= 0");
    if (n.fits_ulong_p()) return term_mod(s, static_cast<u64>(n.get_ui()), m);
    if (m == 0) throw std::invalid_argument("term_mod: modulus must be >= 1");
    if (m >= kModulusFastLimit) throw std::invalid_argument("term_mod: modulus too large for fast path");
    if (m == 1) return 0;
    std::size_t nbits = mpz_sizeinbase(n.get_mpz_t(), 2);
    std::vector<bool> bits(nbits);
    for (std::size_t i = 0; i < nbits; ++i) bits[i] = mpz_tstbit(n.get_mpz_t(), nbits - 1 - i);
    return detail::term_mod_bits(s, m, bits);
}

// Arbitrary-precision modulus fallback.
inline mpz_class term_mod_big(const RecurrenceSpec& s, const mpz_class& n, const mpz_class& m) {
    if (m < 1) throw std::invalid_argument("term_mod_big: modulus must be >= 1");
    if (n < 0) throw std::invalid_argument("term_mod_big: index must be >= 0");
    if (m == 1) return 0;
    int k = s.order();
    if (n < k) {
        mpz_class r = mpz_class(s.init[mpz_get_ui(n.get_mpz_t())]) % m;
        if (r < 0) r += m;
        return r;
    }
    auto mul = [&](const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
        std::vector<mpz_class> r(static_cast<std::size_t>(k) * k, 0);
        for (int i = 0; i < k; ++i)
            for (int l = 0; l < k; ++l) {
                if (a[i * k + l] == 0) continue;
                for (int j = 0; j < k; ++j) r[i * k + j] += a[i * k + l] * b[l * k + j];
            }
        for (auto& x : r) x %= m;
        return r;
    };
    std::vector<mpz_class> base(static_cast<std::size_t>(k) * k, 0);
    for (int i = 0; i + 1 < k; ++i) base[i * k + i + 1] = 1;
    for (int j = 0; j < k; ++j) {
        mpz_class c = mpz_class(s.coeffs[k - 1 - j]) % m;
        if (c < 0) c += m;
        base[(k - 1) * k + j] = c;
    }
    std::vector<mpz_class> state(k);
    for (int i = 0; i < k; ++i) {
        state[i] = mpz_class(s.init[i]) % m;
        if (state[i] < 0) state[i] += m;
    }
    mpz_class e = n;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) {
            std::vector<mpz_class> ns(k, 0);
            for (int i = 0; i < k; ++i) {
                for (int j = 0; j < k; ++j) ns[i] += base[i * k + j] * state[j];
                ns[i] %= m;
            }
            state = std::move(ns);
        }
        e >>= 1;
        if (e > 0) base = mul(base, base);
    }
    return state[0];
}

// The defining predicate of the membership set: n | u_n.
inline bool divides_term(const RecurrenceSpec& s, u64 n) {
    if (n < 1) throw std::invalid_argument("divides_term: n must be >= 1");
    if (n < kModulusFastLimit) return term_mod(s, n, n) == 0;
    return term_mod_big(s, mpz_class(n), mpz_class(n)) == 0;
}

inline bool divides_term(const RecurrenceSpec& s, const mpz_class& n) {
    if (n < 1) throw std::invalid_argument("divides_term: n must be >= 1");
    if (n.fits_ulong_p() && n.get_ui() < kModulusFastLimit) {
        u64 v = n.get_ui();
        return term_mod(s, v, v) == 0;
    }
    return term_mod_big(s, n, n) == 0;
}

struct PeriodRecord {
    u64 modulus = 0;
    u64 period = 0;
    u64 preperiod = 0;
};

constexpr u64 kDefaultStateCap = 100'000'000;

namespace detail {

struct StateHash {
    std::size_t operator()(const std::vector<u64>& v) const {
        u64 h = 1469598103934665603ull;
        for (u64 x : v) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace detail

// Minimal t >= 1 with the state vector (u_n, ..., u_{n+k-1}) mod m repeating;
// preperiod is 0 exactly when the walk re-enters its starting state, which
// holds whenever gcd(a_k, m) = 1.
inline PeriodRecord period_mod(const RecurrenceSpec& s, u64 m, u64 state_cap = kDefaultStateCap) {
    if (m == 0) throw std::invalid_argument("period_mod: modulus must be >= 1");
    if (m == 1) return {1, 1, 0};
    auto w = detail::initial_state(s, m);
    auto cm = detail::coeffs_mod(s, m);
    std::unordered_map<std::vector<u64>, u64, detail::StateHash> seen;
    u64 i = 0;
    while (true) {
        auto [it, inserted] = seen.emplace(w, i);
        if (!inserted) return {m, i - it->second, it->second};
        if (i >= state_cap)
            throw std::runtime_error("period_mod: state cap exceeded (" + std::to_string(state_cap) + ")");
        detail::step_state(s, m, w, cm);
        ++i;
    }
}

} // namespace recdiv
