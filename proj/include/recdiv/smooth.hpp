#pragma once

// Sieve-backed utilities: smallest-prime-factor table, factorization
// (sieve lookup, trial division, Brent rho), smooth counting Psi(x,y),
// the prime count Pi(x,y) for p^2-1 smooth, and L(x).

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "recdiv/util.hpp"

namespace recdiv {

inline std::vector<u64> primes_up_to(u64 limit) {
    std::vector<u64> primes;
    if (limit < 2) return primes;
    std::vector<bool> comp(limit + 1, false);
    for (u64 i = 2; i <= limit; ++i) {
        if (!comp[i]) {
            primes.push_back(i);
            for (u64 j = i * i; j <= limit; j += i) comp[j] = true;
        }
        if (i * i > limit) break;
    }
    for (u64 i = primes.empty() ? 2 : primes.back() + 1; i <= limit; ++i)
        if (!comp[i]) primes.push_back(i);
    return primes;
}

struct FactorList {
    u64 n = 1;
    std::vector<std::pair<u64, u32>> factors; // (prime, exponent), primes increasing

    u32 omega() const { return static_cast<u32>(factors.size()); }
    u64 tau() const {
        u64 t = 1;
        for (auto& [p, e] : factors) t *= (e + 1);
        return t;
    }
    // P(n); P(1) = 1 by convention.
    u64 largest_prime() const { return factors.empty() ? 1 : factors.back().first; }
};

// Smallest-prime-factor table for 2..limit.
class SmoothSieve {
public:
    explicit SmoothSieve(u64 limit) : limit_(limit) {
        if (limit >= (1ull << 32)) throw std::invalid_argument("SmoothSieve: limit must be < 2^32");
        spf_.assign(limit + 1, 0);
        for (u64 i = 2; i <= limit; ++i) {
            if (spf_[i] == 0) {
                for (u64 j = i; j <= limit; j += i)
                    if (spf_[j] == 0) spf_[j] = static_cast<u32>(i);
            }
        }
    }

    u64 limit() const { return limit_; }
    bool is_prime(u64 n) const { return n >= 2 && spf_[n] == n; }

    FactorList factorize(u64 n) const {
        if (n > limit_) throw std::invalid_argument("SmoothSieve: n exceeds sieve limit");
        FactorList f;
        f.n = n;
        while (n > 1) {
            u64 p = spf_[n];
            u32 e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            f.factors.emplace_back(p, e);
        }
        return f;
    }

    bool is_smooth(u64 n, u64 y) const {
        if (n > limit_) throw std::invalid_argument("SmoothSieve: n exceeds sieve limit");
        while (n > 1) {
            u64 p = spf_[n];
            if (p > y) return false;
            while (n % p == 0) n /= p;
        }
        return true;
    }

    std::vector<u64> primes() const {
        std::vector<u64> ps;
        for (u64 i = 2; i <= limit_; ++i)
            if (spf_[i] == i) ps.push_back(i);
        return ps;
    }

private:
    u64 limit_;
    std::vector<u32> spf_;
};

namespace detail {

inline u64 pollard_brent(u64 n, Rng& rng) {
    if (n % 2 == 0) return 2;
    while (true) {
        u64 y = rng() % (n - 1) + 1;
        u64 c = rng() % (n - 1) + 1;
        u64 m = 128, g = 1, r = 1, q = 1, x = 0, ys = 0;
        while (g == 1) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = add_mod(mul_mod(y, y, n), c, n);
            for (u64 k = 0; k < r && g == 1; k += m) {
                ys = y;
                u64 lim = std::min(m, r - k);
                for (u64 i = 0; i < lim; ++i) {
                    y = add_mod(mul_mod(y, y, n), c, n);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = gcd_u64(q, n);
            }
            r <<= 1;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                ys = add_mod(mul_mod(ys, ys, n), c, n);
                g = gcd_u64(x > ys ? x - ys : ys - x, n);
            }
        }
        if (g != n) return g;
    }
}

inline void factor_rec(u64 n, Rng& rng, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    u64 d = pollard_brent(n, rng);
    factor_rec(d, rng, out);
    factor_rec(n / d, rng, out);
}

} // namespace detail

// General 64-bit factorization: small trial division, then Brent rho with a
// deterministic seed.
inline FactorList factorize(u64 n, u64 seed = 0) {
    FactorList f;
    f.n = n;
    if (n <= 1) return f;
    std::vector<u64> primes;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull,
                  41ull, 43ull, 47ull, 53ull, 59ull, 61ull, 67ull, 71ull, 73ull, 79ull, 83ull,
                  89ull, 97ull}) {
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
    }
    if (n > 1) {
        Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
        detail::factor_rec(n, rng, primes);
    }
    std::sort(primes.begin(), primes.end());
    for (std::size_t i = 0; i < primes.size();) {
        std::size_t j = i;
        while (j < primes.size() && primes[j] == primes[i]) ++j;
        f.factors.emplace_back(primes[i], static_cast<u32>(j - i));
        i = j;
    }
    return f;
}

inline std::vector<u64> divisors_sorted(const FactorList& f) {
    std::vector<u64> divs{1};
    for (auto& [p, e] : f.factors) {
        std::size_t sz = divs.size();
        u64 pe = 1;
        for (u32 i = 1; i <= e; ++i) {
            pe = checked_mul(pe, p, "divisor overflow");
            for (std::size_t j = 0; j < sz; ++j) divs.push_back(checked_mul(divs[j], pe, "divisor overflow"));
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

// Arbitrary-precision factorization with an explicit work budget. When the
// budget runs out the remaining composite cofactor is reported instead of
// spinning forever.
struct BigFactorization {
    mpz_class n;
    std::vector<std::pair<mpz_class, u32>> factors;
    bool complete = true;
    mpz_class cofactor = 1; // composite remainder when incomplete
};

namespace detail {

inline bool pollard_brent_mpz(const mpz_class& n, Rng& rng, u64 iter_budget, mpz_class& out) {
    if (n % 2 == 0) {
        out = 2;
        return true;
    }
    gmp_randclass grand(gmp_randinit_mt);
    grand.seed(static_cast<unsigned long>(rng()));
    u64 spent = 0;
    while (spent < iter_budget) {
        mpz_class y = grand.get_z_range(n - 2) + 1;
        mpz_class c = grand.get_z_range(n - 2) + 1;
        mpz_class g = 1, q = 1, x, ys;
        u64 r = 1, m = 128;
        while (g == 1 && spent < iter_budget) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = (y * y + c) % n;
            for (u64 k = 0; k < r && g == 1; k += m) {
                ys = y;
                u64 lim = std::min(m, r - k);
                for (u64 i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                spent += lim;
            }
            r <<= 1;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                mpz_class d = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (g != n && g != 1) {
            out = g;
            return true;
        }
    }
    return false;
}

inline void factor_big_rec(mpz_class n, Rng& rng, u64 iter_budget,
                           std::vector<mpz_class>& primes, std::vector<mpz_class>& stuck) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
        primes.push_back(n);
        return;
    }
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        for (unsigned long e = 2; e <= mpz_sizeinbase(n.get_mpz_t(), 2); ++e) {
            mpz_class root;
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), e)) {
                for (unsigned long i = 0; i < e; ++i) factor_big_rec(root, rng, iter_budget, primes, stuck);
                return;
            }
        }
    }
    mpz_class d;
    if (!pollard_brent_mpz(n, rng, iter_budget, d)) {
        stuck.push_back(n);
        return;
    }
    factor_big_rec(d, rng, iter_budget, primes, stuck);
    factor_big_rec(n / d, rng, iter_budget, primes, stuck);
}

} // namespace detail

inline BigFactorization factorize_big(const mpz_class& n_in, u64 seed = 0,
                                      u64 trial_limit = 100'000, u64 rho_iter_budget = 5'000'000) {
    if (n_in < 1) throw std::invalid_argument("factorize_big: n must be >= 1");
    BigFactorization out;
    out.n = n_in;
    mpz_class n = n_in;
    std::vector<mpz_class> primes;
    for (u64 p : primes_up_to(trial_limit)) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                n /= static_cast<unsigned long>(p);
                primes.emplace_back(p);
            }
        }
        if (n == 1) break;
    }
    std::vector<mpz_class> stuck;
    if (n > 1) {
        Rng rng(seed ^ 0xd1b54a32d192ed03ull);
        detail::factor_big_rec(n, rng, rho_iter_budget, primes, stuck);
    }
    std::sort(primes.begin(), primes.end());
    for (std::size_t i = 0; i < primes.size();) {
        std::size_t j = i;
        while (j < primes.size() && primes[j] == primes[i]) ++j;
        out.factors.emplace_back(primes[i], static_cast<u32>(j - i));
        i = j;
    }
    if (!stuck.empty()) {
        out.complete = false;
        for (auto& s : stuck) out.cofactor *= s;
    }
    return out;
}

// Psi(x, y): integers n <= x with P(n) <= y, by a segmented division scan.
inline u64 psi(u64 x, u64 y) {
    if (x < 1 || y < 1) throw std::invalid_argument("psi: x and y must be >= 1");
    std::vector<u64> ps = primes_up_to(std::min(x, y));
    u64 count = 0;
    const u64 seg = 1 << 18;
    std::vector<u64> rem(seg);
    for (u64 lo = 1; lo <= x; lo += seg) {
        u64 hi = std::min(x, lo + seg - 1);
        u64 len = hi - lo + 1;
        for (u64 i = 0; i < len; ++i) rem[i] = lo + i;
        for (u64 p : ps) {
            for (u64 m = (lo + p - 1) / p * p; m <= hi; m += p) {
                u64& v = rem[m - lo];
                while (v % p == 0) v /= p;
            }
        }
        for (u64 i = 0; i < len; ++i)
            if (rem[i] == 1) ++count;
    }
    return count;
}

// Pi(x, y): primes p <= x with p^2 - 1 y-smooth.
inline u64 pi_smooth(u64 x, u64 y) {
    if (x < 2 || y < 2) throw std::invalid_argument("pi_smooth: x and y must be >= 2");
    SmoothSieve sieve(x + 1);
    u64 count = 0;
    for (u64 p = 2; p <= x; ++p) {
        if (!sieve.is_prime(p)) continue;
        if (sieve.is_smooth(p - 1, y) && sieve.is_smooth(p + 1, y)) ++count;
    }
    return count;
}

// True iff some p^e | n with e >= 2 and p^e > y.
inline bool has_large_proper_prime_power(u64 n, u64 y, u64 seed = 0) {
    if (n < 1) throw std::invalid_argument("has_large_proper_prime_power: n must be >= 1");
    for (auto& [p, e] : factorize(n, seed).factors) {
        if (e < 2) continue;
        u128 pe = 1;
        for (u32 i = 0; i < e; ++i) pe *= p;
        if (pe > y) return true;
    }
    return false;
}

// Clamped iterated logarithms, as in log_1 x := max(log x, 1).
inline double log1(double x) { return std::max(std::log(x), 1.0); }

// L(x) = exp(sqrt(log x * log log x)) with clamped logs.
inline double big_l(double x) {
    if (x < 1) throw std::invalid_argument("big_l: x must be >= 1");
    double l1 = log1(x);
    double l2 = log1(l1);
    return std::exp(std::sqrt(l1 * l2));
}

} // namespace recdiv
