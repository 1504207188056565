#pragma once

// Arithmetic in Z[i]: division with nearest rounding, gcd, primary
// associates, splitting of rational primes, and the quadratic / quartic
// residue symbols, including the rational quartic symbol.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twistsel/arith.hpp"

namespace twistsel::gaussian {

struct GaussInt {
    i64 re = 0, im = 0;

    bool is_zero() const { return re == 0 && im == 0; }
    GaussInt conj() const { return {re, -im}; }
    u64 norm() const {
        i64 a = checked_mul(re, re);
        i64 b = checked_mul(im, im);
        return static_cast<u64>(checked_add(a, b));
    }
    bool operator==(const GaussInt&) const = default;

    GaussInt operator+(const GaussInt& o) const { return {checked_add(re, o.re), checked_add(im, o.im)}; }
    GaussInt operator-(const GaussInt& o) const { return {checked_add(re, -o.re), checked_add(im, -o.im)}; }
    GaussInt operator-() const { return {-re, -im}; }
    GaussInt operator*(const GaussInt& o) const {
        i128 r = (i128)re * o.re - (i128)im * o.im;
        i128 i = (i128)re * o.im + (i128)im * o.re;
        if (r > INT64_MAX || r < INT64_MIN || i > INT64_MAX || i < INT64_MIN)
            throw std::overflow_error("GaussInt mul overflow");
        return {static_cast<i64>(r), static_cast<i64>(i)};
    }

    std::string to_string() const {
        std::string s = std::to_string(re);
        if (im >= 0) s += "+" + std::to_string(im) + "i";
        else s += std::to_string(im) + "i";
        return s;
    }
};

inline bool is_unit(const GaussInt& z) { return z.norm() == 1; }

namespace detail {

inline i64 round_div(i128 num, i128 den) {
    // nearest integer to num/den, den > 0; halves round towards +infinity
    i128 q = (2 * num + den) ;
    // floor((2num+den)/(2den))
    i128 d2 = 2 * den;
    i128 fl = q >= 0 ? q / d2 : -(((-q) + d2 - 1) / d2);
    return static_cast<i64>(fl);
}

}  // namespace detail

// a = q*b + r with norm(r) <= norm(b)/2 (nearest-integer rounding).
inline std::pair<GaussInt, GaussInt> divmod(const GaussInt& a, const GaussInt& b) {
    if (b.is_zero()) throw std::invalid_argument("GaussInt division by zero");
    i128 nb = (i128)b.re * b.re + (i128)b.im * b.im;
    i128 xr = (i128)a.re * b.re + (i128)a.im * b.im;
    i128 xi = (i128)a.im * b.re - (i128)a.re * b.im;
    GaussInt q{detail::round_div(xr, nb), detail::round_div(xi, nb)};
    GaussInt r = a - q * b;
    return {q, r};
}

inline bool divides(const GaussInt& d, const GaussInt& a) {
    if (d.is_zero()) return a.is_zero();
    return divmod(a, d).second.is_zero();
}

inline GaussInt gcd(GaussInt a, GaussInt b) {
    while (!b.is_zero()) {
        auto [q, r] = divmod(a, b);
        a = b;
        b = r;
    }
    return a;
}

inline GaussInt mod(const GaussInt& a, const GaussInt& m) { return divmod(a, m).second; }

// z is primary when z = 1 mod (2+2i); each odd-norm element has exactly one
// primary associate.
inline bool is_primary(const GaussInt& z) {
    return divides(GaussInt{2, 2}, z - GaussInt{1, 0});
}

inline GaussInt primary_associate(const GaussInt& z) {
    if ((z.norm() & 1) == 0) throw std::invalid_argument("primary_associate: even norm");
    const std::array<GaussInt, 4> units{GaussInt{1, 0}, GaussInt{-1, 0}, GaussInt{0, 1}, GaussInt{0, -1}};
    for (auto& u : units) {
        GaussInt c = u * z;
        if (is_primary(c)) return c;
    }
    throw std::logic_error("no primary associate found");  // unreachable for odd norm
}

struct PrimaryPrime {
    GaussInt value;  // primary, prime, positive imaginary part
};

// The unique primary prime with positive imaginary part above p = 1 mod 4.
inline PrimaryPrime split_prime(u64 p) {
    if (p % 4 != 1 || !is_prime(p)) throw std::invalid_argument("split_prime: need a prime p = 1 mod 4");
    auto x = sqrt_mod(-1, p);
    if (!x) throw std::logic_error("split_prime: -1 not a residue");
    GaussInt g = gcd(GaussInt{static_cast<i64>(p), 0}, GaussInt{static_cast<i64>(*x), 1});
    if (g.norm() != p) throw std::logic_error("split_prime: gcd failed");
    GaussInt lam = primary_associate(g);
    if (lam.im < 0) lam = primary_associate(lam.conj());
    if (lam.im <= 0 || !is_primary(lam)) throw std::logic_error("split_prime: normalization failed");
    return PrimaryPrime{lam};
}

namespace detail {

inline GaussInt powmod_gauss(GaussInt a, u64 e, const GaussInt& m) {
    GaussInt r{1, 0};
    a = mod(a, m);
    while (e) {
        if (e & 1) r = mod(r * a, m);
        a = mod(a * a, m);
        e >>= 1;
    }
    return r;
}

// prime factorization of an odd-norm Gaussian integer, primes with
// multiplicity; units are dropped
inline std::vector<std::pair<GaussInt, u32>> factor_gauss(GaussInt z) {
    if (z.is_zero()) throw std::invalid_argument("factor_gauss(0)");
    u64 n = z.norm();
    if ((n & 1) == 0) throw std::invalid_argument("factor_gauss: norm must be odd");
    std::vector<std::pair<GaussInt, u32>> out;
    for (auto& [p, e] : factorize(n).factors) {
        if (p % 4 == 3) {
            GaussInt q{static_cast<i64>(p), 0};
            u32 m = e / 2;  // inert: v_p(norm) = 2 * multiplicity
            for (u32 i = 0; i < m; ++i) z = divmod(z, q).first;
            out.emplace_back(q, m);
        } else {
            GaussInt pi = split_prime(p).value;
            GaussInt pib = pi.conj();
            u32 m1 = 0, m2 = 0;
            while (divides(pi, z)) {
                z = divmod(z, pi).first;
                ++m1;
            }
            while (divides(pib, z)) {
                z = divmod(z, pib).first;
                ++m2;
            }
            if (m1) out.emplace_back(pi, m1);
            if (m2) out.emplace_back(pib, m2);
            if (m1 + m2 != e) throw std::logic_error("factor_gauss: multiplicity mismatch");
        }
    }
    if (!is_unit(z)) throw std::logic_error("factor_gauss: non-unit cofactor");
    return out;
}

// match a residue known to be congruent to a fourth root of unity
inline std::optional<GaussInt> match_unit(const GaussInt& r, const GaussInt& m) {
    const std::array<GaussInt, 4> units{GaussInt{1, 0}, GaussInt{-1, 0}, GaussInt{0, 1}, GaussInt{0, -1}};
    for (auto& u : units)
        if (divides(m, r - u)) return u;
    return std::nullopt;
}

}  // namespace detail

// Quadratic residue symbol (alpha / lambda)_2 for lambda coprime to 1+i,
// extended multiplicatively over the prime factorization of lambda.
inline SymbolValue quad_symbol(const GaussInt& alpha, const GaussInt& lambda) {
    if (lambda.is_zero() || (lambda.norm() & 1) == 0)
        throw std::invalid_argument("quad_symbol: modulus must be coprime to 1+i");
    int acc = 1;
    for (auto& [pi, m] : detail::factor_gauss(lambda)) {
        if (divides(pi, alpha)) return SymbolValue{0};
        if (m % 2 == 0) continue;
        GaussInt r = detail::powmod_gauss(alpha, (pi.norm() - 1) / 2, pi);
        auto u = detail::match_unit(r, pi);
        if (!u || u->im != 0) throw std::logic_error("quad_symbol: residue not +-1");
        acc *= static_cast<int>(u->re);
    }
    return SymbolValue{acc};
}

// Quartic residue symbol (alpha / lambda)_4 for primary lambda, extended
// multiplicatively over the primary prime factorization. Value is a fourth
// root of unity, or 0 on a shared factor.
inline GaussInt quartic_symbol(const GaussInt& alpha, const GaussInt& lambda) {
    if (!is_primary(lambda)) throw std::invalid_argument("quartic_symbol: modulus must be primary");
    GaussInt acc{1, 0};
    for (auto& [pi0, m] : detail::factor_gauss(lambda)) {
        GaussInt pi = primary_associate(pi0);
        if (divides(pi, alpha)) return GaussInt{0, 0};
        GaussInt r = detail::powmod_gauss(alpha, (pi.norm() - 1) / 4, pi);
        auto u = detail::match_unit(r, pi);
        if (!u) throw std::logic_error("quartic_symbol: residue not a unit");
        for (u32 i = 0; i < m; ++i) acc = acc * *u;
    }
    return acc;
}

// Rational quartic residue symbol (a / d)_4 for squarefree d whose prime
// factors are 1 mod 4 and satisfy (a/p) = 1; the product over the primary
// primes above the factors of d.
inline GaussInt rational_quartic(i64 a, u64 d) {
    auto f = factorize(d);
    if (!f.squarefree()) throw std::invalid_argument("rational_quartic: d must be squarefree");
    GaussInt acc{1, 0};
    for (auto& [p, e] : f.factors) {
        (void)e;
        if (p % 4 != 1) throw std::invalid_argument("rational_quartic: factor " + std::to_string(p) + " is not 1 mod 4");
        if (legendre(a, p) != 1)
            throw std::invalid_argument("rational_quartic: (a/" + std::to_string(p) + ") != 1");
        acc = acc * quartic_symbol(GaussInt{a, 0}, split_prime(p).value);
    }
    return acc;
}

}  // namespace twistsel::gaussian
