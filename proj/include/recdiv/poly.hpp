#pragma once

// Exact integer polynomial arithmetic: subresultant resultants,
// discriminants, cyclotomic polynomials, and the root-of-unity ratio test
// that decides degeneracy of a recurrence.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "recdiv/util.hpp"

namespace recdiv {

// Coefficients lowest degree first; trimmed so the leading coefficient is
// nonzero (the zero polynomial has an empty coefficient vector).
struct IntPolynomial {
    std::vector<mpz_class> c;

    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<mpz_class> coeffs) : c(std::move(coeffs)) { trim(); }

    static IntPolynomial from_i64(const std::vector<i64>& coeffs) {
        std::vector<mpz_class> v(coeffs.begin(), coeffs.end());
        return IntPolynomial(std::move(v));
    }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    bool is_zero() const { return c.empty(); }
    int degree() const { return c.empty() ? -1 : static_cast<int>(c.size()) - 1; }
    const mpz_class& lc() const { return c.back(); }
    mpz_class coeff(std::size_t i) const { return i < c.size() ? c[i] : mpz_class(0); }

    bool operator==(const IntPolynomial& o) const { return c == o.c; }

    mpz_class eval(const mpz_class& x) const {
        mpz_class r = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
        return r;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            if (c[i] == 0) continue;
            if (!out.empty()) out += (c[i] > 0) ? " + " : " - ";
            else if (c[i] < 0) out += "-";
            mpz_class a = abs(c[i]);
            if (a != 1 || i == 0) out += a.get_str();
            if (i > 0) out += (i == 1) ? "X" : "X^" + std::to_string(i);
        }
        return out;
    }
};

inline IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<mpz_class> r(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
    return IntPolynomial(std::move(r));
}

inline IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<mpz_class> r(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
    return IntPolynomial(std::move(r));
}

inline IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpz_class> r(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return IntPolynomial(std::move(r));
}

inline IntPolynomial operator*(const mpz_class& s, const IntPolynomial& a) {
    if (s == 0) return {};
    std::vector<mpz_class> r(a.c);
    for (auto& x : r) x *= s;
    return IntPolynomial(std::move(r));
}

inline IntPolynomial derivative(const IntPolynomial& a) {
    if (a.degree() < 1) return {};
    std::vector<mpz_class> r(a.c.size() - 1);
    for (std::size_t i = 1; i < a.c.size(); ++i) r[i - 1] = a.c[i] * static_cast<long>(i);
    return IntPolynomial(std::move(r));
}

inline mpz_class content(const IntPolynomial& a) {
    mpz_class g = 0;
    for (const auto& x : a.c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

inline IntPolynomial exact_div_scalar(const IntPolynomial& a, const mpz_class& s) {
    std::vector<mpz_class> r(a.c.size());
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        mpz_class q, rem;
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), a.c[i].get_mpz_t(), s.get_mpz_t());
        if (rem != 0) throw std::logic_error("exact_div_scalar: not divisible");
        r[i] = q;
    }
    return IntPolynomial(std::move(r));
}

inline IntPolynomial primitive_part(const IntPolynomial& a) {
    if (a.is_zero()) return {};
    mpz_class g = content(a);
    if (a.lc() < 0) g = -g;
    return exact_div_scalar(a, g);
}

// Pseudo-remainder: lc(B)^(deg A - deg B + 1) * A = Q*B + R with deg R < deg B.
inline IntPolynomial pseudo_rem(IntPolynomial A, const IntPolynomial& B) {
    if (B.is_zero()) throw std::invalid_argument("pseudo_rem: division by zero polynomial");
    int e = A.degree() - B.degree() + 1;
    const mpz_class& d = B.lc();
    while (!A.is_zero() && A.degree() >= B.degree()) {
        int shift = A.degree() - B.degree();
        mpz_class a = A.lc();
        // A <- d*A - a * X^shift * B
        std::vector<mpz_class> r(A.c.size(), 0);
        for (std::size_t i = 0; i < A.c.size(); ++i) r[i] = d * A.c[i];
        for (std::size_t i = 0; i < B.c.size(); ++i) r[i + shift] -= a * B.c[i];
        A = IntPolynomial(std::move(r));
        --e;
    }
    if (e > 0) {
        mpz_class de;
        mpz_pow_ui(de.get_mpz_t(), d.get_mpz_t(), e);
        A = de * A;
    }
    return A;
}

// Division by a monic divisor stays in Z[X]; returns {quotient, remainder}.
inline std::pair<IntPolynomial, IntPolynomial> divrem_monic(const IntPolynomial& a,
                                                            const IntPolynomial& b) {
    if (b.is_zero() || b.lc() != 1) throw std::invalid_argument("divrem_monic: divisor must be monic");
    std::vector<mpz_class> rem(a.c);
    int db = b.degree();
    int da = a.degree();
    if (da < db) return {IntPolynomial{}, a};
    std::vector<mpz_class> q(da - db + 1, 0);
    for (int i = da; i >= db; --i) {
        mpz_class t = rem[i];
        if (t == 0) continue;
        q[i - db] = t;
        for (int j = 0; j <= db; ++j) rem[i - db + j] -= t * b.c[j];
    }
    return {IntPolynomial(std::move(q)), IntPolynomial(std::move(rem))};
}

// Subresultant resultant over Z (Cohen, Alg. 3.3.7). Exact, no floating point.
inline mpz_class resultant(IntPolynomial A, IntPolynomial B) {
    auto ipow = [](const mpz_class& b, unsigned long e) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
        return r;
    };
    if (A.is_zero() || B.is_zero()) return 0;
    if (A.degree() == 0) return ipow(A.c[0], B.degree());
    if (B.degree() == 0) return ipow(B.c[0], A.degree());
    int sign = 1;
    if (A.degree() < B.degree()) {
        if ((A.degree() & 1) && (B.degree() & 1)) sign = -sign;
        std::swap(A, B);
    }
    mpz_class ca = content(A), cb = content(B);
    A = exact_div_scalar(A, ca);
    B = exact_div_scalar(B, cb);
    mpz_class t = ipow(ca, B.degree()) * ipow(cb, A.degree());
    mpz_class g = 1, h = 1;
    while (true) {
        int delta = A.degree() - B.degree();
        if ((A.degree() & 1) && (B.degree() & 1)) sign = -sign;
        IntPolynomial R = pseudo_rem(A, B);
        A = B;
        mpz_class divisor = g * ipow(h, delta);
        B = R.is_zero() ? IntPolynomial{} : exact_div_scalar(R, divisor);
        if (B.is_zero()) return 0; // common factor
        g = A.lc();
        if (delta == 1)
            h = g;
        else if (delta > 1) {
            mpz_class num = ipow(g, delta), den = ipow(h, delta - 1), q, rem;
            mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            if (rem != 0) throw std::logic_error("subresultant: inexact h update");
            h = q;
        }
        if (B.degree() == 0) break;
    }
    // B is a nonzero constant now; deg A >= 1.
    mpz_class num = ipow(B.c[0], A.degree());
    mpz_class den = ipow(h, A.degree() - 1);
    mpz_class q, rem;
    mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (rem != 0) throw std::logic_error("subresultant: inexact final division");
    return sign * t * q;
}

// disc(f) = (-1)^{k(k-1)/2} Res(f, f') / lc(f). Degree-1 polynomials give 1.
inline mpz_class discriminant(const IntPolynomial& f) {
    int k = f.degree();
    if (k < 1) throw std::invalid_argument("discriminant: degree must be >= 1");
    if (k == 1) return 1;
    mpz_class res = resultant(f, derivative(f));
    mpz_class q, rem;
    mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), res.get_mpz_t(), f.lc().get_mpz_t());
    if (rem != 0) throw std::logic_error("discriminant: resultant not divisible by lc");
    return ((u64(k) * (k - 1) / 2) % 2) ? mpz_class(-q) : q;
}

// gcd over Q (primitive PRS); result is primitive with positive leading coeff.
inline IntPolynomial poly_gcd(IntPolynomial a, IntPolynomial b) {
    if (a.is_zero()) return primitive_part(b);
    if (b.is_zero()) return primitive_part(a);
    a = primitive_part(a);
    b = primitive_part(b);
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPolynomial r = pseudo_rem(a, b);
        a = b;
        b = r.is_zero() ? IntPolynomial{} : primitive_part(r);
    }
    return a;
}

inline u64 euler_phi_u64(u64 n) {
    u64 result = n;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

// Phi_m via the quotient (X^m - 1) / prod_{d|m, d<m} Phi_d. Memoized.
inline const IntPolynomial& cyclotomic(u64 m) {
    static std::map<u64, IntPolynomial> cache;
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    IntPolynomial num;
    {
        std::vector<mpz_class> v(m + 1, 0);
        v[0] = -1;
        v[m] = 1;
        num = IntPolynomial(std::move(v));
    }
    for (u64 d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        auto [q, r] = divrem_monic(num, cyclotomic(d));
        if (!r.is_zero()) throw std::logic_error("cyclotomic: inexact division");
        num = std::move(q);
    }
    return cache.emplace(m, std::move(num)).first->second;
}

// Lagrange interpolation of integer-valued data; throws if the interpolant
// is not an integer polynomial.
inline IntPolynomial interpolate_integer(const std::vector<i64>& xs,
                                         const std::vector<mpz_class>& ys) {
    std::size_t n = xs.size();
    // master product W(X) = prod (X - x_i)
    std::vector<mpz_class> w{1};
    for (i64 xi : xs) {
        std::vector<mpz_class> nw(w.size() + 1, 0);
        for (std::size_t i = 0; i < w.size(); ++i) {
            nw[i + 1] += w[i];
            nw[i] -= xi * w[i];
        }
        w = std::move(nw);
    }
    std::vector<mpq_class> acc(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        // Q_i = W / (X - x_i) by synthetic division
        std::vector<mpz_class> q(n);
        mpz_class carry = 0;
        for (std::size_t j = n; j-- > 0;) {
            carry = w[j + 1] + carry * xs[i];
            q[j] = carry;
        }
        mpz_class den = 1;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) den *= mpz_class(xs[i] - xs[j]);
        mpq_class scale(ys[i], den);
        scale.canonicalize();
        for (std::size_t j = 0; j < n; ++j) acc[j] += scale * mpq_class(q[j]);
    }
    std::vector<mpz_class> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (acc[j].get_den() != 1) throw std::logic_error("interpolate_integer: non-integer result");
        out[j] = acc[j].get_num();
    }
    return IntPolynomial(std::move(out));
}

// Res_Y(f(Y), f(x*Y)) as a polynomial in x: its roots are all quotients
// alpha_j / alpha_i of roots of f, each diagonal pair contributing X = 1.
inline IntPolynomial ratio_poly(const IntPolynomial& f) {
    int k = f.degree();
    std::size_t pts = static_cast<std::size_t>(k) * k + 1;
    std::vector<i64> xs;
    std::vector<mpz_class> ys;
    i64 x = -static_cast<i64>(pts) / 2;
    while (xs.size() < pts) {
        if (x != 0) {
            // f(x*Y) in Y
            std::vector<mpz_class> g(f.c.size());
            mpz_class xp = 1;
            for (std::size_t i = 0; i < f.c.size(); ++i) {
                g[i] = f.c[i] * xp;
                xp *= x;
            }
            xs.push_back(x);
            ys.push_back(resultant(f, IntPolynomial(std::move(g))));
        }
        ++x;
    }
    return interpolate_integer(xs, ys);
}

struct DegeneracyResult {
    bool degenerate = false;
    std::optional<u64> witness_order; // cyclotomic order m of a root-of-unity ratio
};

// True iff some ratio of distinct roots of f is a root of unity. Requires f
// squarefree. The ratios live in a field of degree <= k^2, so only orders m
// with phi(m) <= k^2 can occur.
inline DegeneracyResult is_degenerate(const IntPolynomial& f) {
    int k = f.degree();
    if (k < 1) throw std::invalid_argument("is_degenerate: degree must be >= 1");
    if (discriminant(f) == 0) throw std::invalid_argument("is_degenerate: polynomial must be squarefree");
    if (k == 1) return {};
    IntPolynomial h = ratio_poly(f);
    // strip the k diagonal (X - 1) factors
    for (int i = 0; i < k; ++i) {
        std::vector<mpz_class> q(h.c.size() - 1);
        mpz_class carry = 0;
        for (std::size_t j = h.c.size() - 1; j-- > 0;) {
            carry = h.c[j + 1] + carry; // synthetic division by (X - 1)
            q[j] = carry;
        }
        if (carry + h.c[0] != 0) throw std::logic_error("is_degenerate: expected root at X=1");
        h = IntPolynomial(std::move(q));
    }
    u64 k2 = static_cast<u64>(k) * k;
    u64 bound = 2 * k2 * k2 + 1; // phi(m) >= sqrt(m/2), so phi(m) <= k^2 forces m <= 2k^4
    for (u64 m = 2; m <= bound; ++m) {
        if (euler_phi_u64(m) > k2) continue;
        auto [q, r] = divrem_monic(h, cyclotomic(m));
        (void)q;
        if (r.is_zero()) return {true, m};
    }
    return {};
}

// Reciprocal polynomial X^deg * f(1/X) (used by the degeneracy symmetry test).
inline IntPolynomial reciprocal(const IntPolynomial& f) {
    std::vector<mpz_class> r(f.c.rbegin(), f.c.rend());
    return IntPolynomial(std::move(r));
}

} // namespace recdiv
