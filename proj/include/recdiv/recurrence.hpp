#pragma once

// Integer linear recurrences: validation (characteristic polynomial,
// discriminant, simple-root and degeneracy predicates) and exact term
// computation over arbitrary-precision integers.

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <vector>

#include "recdiv/poly.hpp"
#include "recdiv/util.hpp"

namespace recdiv {

// u_{n+k} = a_1 u_{n+k-1} + ... + a_k u_n with a_k != 0.
struct RecurrenceSpec {
    std::vector<i64> coeffs; // a_1 .. a_k
    std::vector<i64> init;   // u_0 .. u_{k-1}

    int order() const { return static_cast<int>(coeffs.size()); }
};

inline RecurrenceSpec fibonacci_spec() { return {{1, 1}, {0, 1}}; }
inline RecurrenceSpec pell_spec() { return {{2, 1}, {0, 1}}; }

// X^k - a_1 X^{k-1} - ... - a_k
inline IntPolynomial characteristic_poly(const RecurrenceSpec& s) {
    int k = s.order();
    std::vector<mpz_class> c(k + 1);
    c[k] = 1;
    for (int i = 1; i <= k; ++i) c[k - i] = -mpz_class(s.coeffs[i - 1]);
    return IntPolynomial(std::move(c));
}

struct ValidatedRecurrence {
    RecurrenceSpec spec;
    IntPolynomial char_poly;
    mpz_class discriminant;
    bool simple_roots = false;
    bool degenerate = false;
    std::optional<u64> degeneracy_order; // cyclotomic order of the witnessing ratio
};

inline ValidatedRecurrence validate_spec(const RecurrenceSpec& s) {
    if (s.coeffs.empty()) throw std::invalid_argument("recurrence order must be >= 1");
    if (s.coeffs.size() != s.init.size())
        throw std::invalid_argument("coeffs and init must have the same length");
    if (s.coeffs.back() == 0) throw std::invalid_argument("a_k must be nonzero");
    ValidatedRecurrence v;
    v.spec = s;
    v.char_poly = characteristic_poly(s);
    v.discriminant = recdiv::discriminant(v.char_poly);
    v.simple_roots = v.discriminant != 0;
    if (v.simple_roots) {
        auto d = is_degenerate(v.char_poly);
        v.degenerate = d.degenerate;
        v.degeneracy_order = d.witness_order;
    }
    return v;
}

inline void require_simple_nondegenerate(const ValidatedRecurrence& v) {
    if (!v.simple_roots)
        throw std::invalid_argument("characteristic polynomial has multiple roots (discriminant 0)");
    if (v.degenerate)
        throw std::invalid_argument("recurrence is degenerate (a root ratio is a root of unity)");
}

inline mpz_class exact_term_iterative(const RecurrenceSpec& s, u64 n) {
    int k = s.order();
    if (n < static_cast<u64>(k)) return s.init[n];
    std::vector<mpz_class> w(s.init.begin(), s.init.end());
    for (u64 i = k; i <= n; ++i) {
        mpz_class next = 0;
        for (int j = 0; j < k; ++j) next += mpz_class(s.coeffs[j]) * w[k - 1 - j];
        for (int j = 0; j + 1 < k; ++j) w[j] = std::move(w[j + 1]);
        w[k - 1] = std::move(next);
    }
    return w[k - 1];
}

namespace detail {

// k x k companion matrix acting on the state column (u_n, ..., u_{n+k-1}).
inline std::vector<mpz_class> companion_mul(const std::vector<mpz_class>& a,
                                            const std::vector<mpz_class>& b, int k) {
    std::vector<mpz_class> r(static_cast<std::size_t>(k) * k, 0);
    for (int i = 0; i < k; ++i)
        for (int l = 0; l < k; ++l) {
            const mpz_class& x = a[i * k + l];
            if (x == 0) continue;
            for (int j = 0; j < k; ++j) r[i * k + j] += x * b[l * k + j];
        }
    return r;
}

} // namespace detail

inline mpz_class exact_term_matrix(const RecurrenceSpec& s, u64 n) {
    int k = s.order();
    if (n < static_cast<u64>(k)) return s.init[n];
    std::vector<mpz_class> base(static_cast<std::size_t>(k) * k, 0);
    for (int i = 0; i + 1 < k; ++i) base[i * k + i + 1] = 1;
    for (int j = 0; j < k; ++j) base[(k - 1) * k + j] = s.coeffs[k - 1 - j];
    std::vector<mpz_class> state(s.init.begin(), s.init.end());
    u64 e = n;
    while (e) {
        if (e & 1) {
            std::vector<mpz_class> ns(k, 0);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) ns[i] += base[i * k + j] * state[j];
            state = std::move(ns);
        }
        e >>= 1;
        if (e) base = detail::companion_mul(base, base, k);
    }
    return state[0];
}

inline mpz_class exact_term(const RecurrenceSpec& s, u64 n) {
    return n <= 512 ? exact_term_iterative(s, n) : exact_term_matrix(s, n);
}

// All indices n <= bound with u_n = 0. Candidate indices are filtered by the
// residue modulo a fixed large prime, then confirmed exactly, so the scan
// stays cheap even when terms grow to thousands of digits.
inline std::vector<u64> zero_terms(const RecurrenceSpec& s, u64 bound) {
    if (bound < 1) throw std::invalid_argument("zero_terms: bound must be >= 1");
    constexpr u64 filter_p = (1ull << 61) - 1;
    int k = s.order();
    std::vector<u64> out;
    std::vector<u64> w(k);
    for (int i = 0; i < k; ++i) w[i] = reduce_signed(s.init[i], filter_p);
    std::vector<u64> cm(k);
    for (int j = 0; j < k; ++j) cm[j] = reduce_signed(s.coeffs[j], filter_p);
    for (u64 n = 0; n <= bound; ++n) {
        u64 r;
        if (n < static_cast<u64>(k)) {
            r = w[n];
        } else {
            u64 next = 0;
            for (int j = 0; j < k; ++j) next = add_mod(next, mul_mod(cm[j], w[k - 1 - j], filter_p), filter_p);
            for (int j = 0; j + 1 < k; ++j) w[j] = w[j + 1];
            w[k - 1] = next;
            r = next;
        }
        if (r == 0 && exact_term(s, n) == 0) out.push_back(n);
    }
    return out;
}

} // namespace recdiv
