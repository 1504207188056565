#pragma once

// Exact 64-bit integer arithmetic: factorization, Jacobi / Legendre /
// Hilbert symbols, modular square roots. Overflow is a hard error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twistsel {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

inline i64 checked_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("i64 add overflow");
    return r;
}

inline i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("i64 mul overflow");
    return r;
}

inline u64 checked_mul_u(u64 a, u64 b) {
    u64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("u64 mul overflow");
    return r;
}

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

inline u64 powmod(u64 a, u64 e, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

inline u64 isqrt_u(u64 n) {
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && (u128)r * r > n) --r;
    while ((u128)(r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_square_u(u64 n) {
    // quick reject mod 64 before the exact isqrt
    static constexpr u64 kSq64 = [] {
        u64 mask = 0;
        for (u64 i = 0; i < 64; ++i) mask |= u64{1} << ((i * i) & 63);
        return mask;
    }();
    if (!((kSq64 >> (n & 63)) & 1)) return false;
    u64 r = isqrt_u(n);
    return r * r == n;
}

inline int valuation(u64 n, u64 p) {
    if (n == 0) throw std::invalid_argument("valuation of zero");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

// ---------------------------------------------------------------------------
// primality and factorization

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a % n, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace detail {

inline u64 pollard_rho(u64 n) {
    // Brent's variant; n must be odd composite, not a prime power issue here
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        auto f = [&](u64 x) { return (mulmod(x, x, n) + c) % n; };
        u64 x = 2, y = 2, d = 1;
        u64 power = 1, lam = 1;
        while (d == 1) {
            if (power == lam) {
                x = y;
                power *= 2;
                lam = 0;
            }
            y = f(y);
            ++lam;
            u64 diff = x > y ? x - y : y - x;
            if (diff == 0) break;
            d = std::gcd(diff, n);
        }
        if (d != 1 && d != n) return d;
    }
}

}  // namespace detail

struct Factorization {
    u64 value = 1;
    std::vector<std::pair<u64, u32>> factors;  // (prime, exponent), primes ascending

    bool squarefree() const {
        for (auto& [p, e] : factors)
            if (e > 1) return false;
        return true;
    }
    u32 omega() const { return static_cast<u32>(factors.size()); }
};

inline Factorization factorize(u64 n) {
    if (n == 0) throw std::invalid_argument("factorize(0)");
    Factorization f;
    f.value = n;
    auto strip = [&](u64 p) {
        if (n % p) return;
        u32 e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.factors.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    strip(5);
    for (u64 p = 7; p <= 1000000 && p * p <= n; p += 2) strip(p);
    if (n > 1) {
        // remaining cofactor: prime, prime square, or a rho split
        std::vector<u64> stack{n};
        std::vector<u64> primes;
        while (!stack.empty()) {
            u64 m = stack.back();
            stack.pop_back();
            if (m == 1) continue;
            if (is_prime(m)) {
                primes.push_back(m);
                continue;
            }
            u64 r = isqrt_u(m);
            if (r * r == m) {
                stack.push_back(r);
                stack.push_back(r);
                continue;
            }
            u64 d = detail::pollard_rho(m);
            stack.push_back(d);
            stack.push_back(m / d);
        }
        std::sort(primes.begin(), primes.end());
        for (size_t i = 0; i < primes.size();) {
            size_t j = i;
            while (j < primes.size() && primes[j] == primes[i]) ++j;
            f.factors.emplace_back(primes[i], static_cast<u32>(j - i));
            i = j;
        }
        std::sort(f.factors.begin(), f.factors.end());
    }
    return f;
}

inline u64 squarefree_part_u(u64 n) {
    u64 r = 1;
    for (auto& [p, e] : factorize(n).factors)
        if (e & 1) r = checked_mul_u(r, p);
    return r;
}

// signed squarefree kernel
inline i64 squarefree_part(i64 n) {
    if (n == 0) throw std::invalid_argument("squarefree_part(0)");
    u64 a = squarefree_part_u(static_cast<u64>(n < 0 ? -n : n));
    return n < 0 ? -static_cast<i64>(a) : static_cast<i64>(a);
}

// product of two squarefree integers modulo squares, via gcd (no factoring)
inline i64 sf_mul(i64 a, i64 b) {
    if (a == 0 || b == 0) throw std::invalid_argument("sf_mul(0)");
    i64 g = std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
    return checked_mul(a / g, b / g);
}

// ---------------------------------------------------------------------------
// symbols

// A quadratic symbol: multiplicative value in {-1, 0, +1}; the additive form
// lives in F2 and is defined only when the value is nonzero.
struct SymbolValue {
    int mult = 1;

    int additive() const {
        if (mult == 0) throw std::logic_error("additive form of zero symbol");
        return mult == 1 ? 0 : 1;
    }
    bool operator==(const SymbolValue&) const = default;
};

// Jacobi symbol core: b odd positive; returns 0 when gcd(a,b) > 1.
inline int jacobi_core(i64 a, u64 b) {
    u64 ua = static_cast<u64>(((a % static_cast<i64>(b)) + static_cast<i64>(b)) % static_cast<i64>(b));
    int t = 1;
    while (ua != 0) {
        while ((ua & 1) == 0) {
            ua >>= 1;
            u64 r = b & 7;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(ua, b);
        if ((ua & 3) == 3 && (b & 3) == 3) t = -t;
        ua %= b;
    }
    return b == 1 ? t : 0;
}

// Jacobi symbol with p | b counted with multiplicity (coincides with the
// usual Jacobi symbol); requires b odd positive and gcd(a, b) = 1.
inline SymbolValue jacobi(i64 a, u64 b) {
    if (b == 0 || (b & 1) == 0) throw std::invalid_argument("jacobi: modulus must be odd positive");
    int r = jacobi_core(a, b);
    if (r == 0) throw std::invalid_argument("jacobi: arguments not coprime");
    return SymbolValue{r};
}

// Legendre symbol at an odd prime p (0 if p | a).
inline int legendre(i64 a, u64 p) { return jacobi_core(a, p); }

// Legendre symbol of the rational num/den at p; num, den must have equal
// p-adic valuation.
inline int legendre_rational(i64 num, i64 den, u64 p) {
    i64 n = num, d = den;
    while (n % static_cast<i64>(p) == 0 && d % static_cast<i64>(p) == 0) {
        n /= static_cast<i64>(p);
        d /= static_cast<i64>(p);
    }
    if (n % static_cast<i64>(p) == 0 || d % static_cast<i64>(p) == 0)
        throw std::invalid_argument("legendre_rational: unequal valuations");
    i64 m = static_cast<i64>(p);
    i64 prod = ((n % m) * (d % m)) % m;
    return jacobi_core(prod, p);
}

// A place of Q: an odd prime, 2, or the real place.
class Place {
  public:
    static Place infinity() { return Place{0}; }
    static Place at(u64 p) {
        if (p == 0) throw std::invalid_argument("Place::at(0)");
        return Place{p};
    }
    bool is_infinite() const { return p_ == 0; }
    u64 prime() const {
        if (p_ == 0) throw std::logic_error("prime() of the real place");
        return p_;
    }
    bool operator==(const Place&) const = default;

  private:
    explicit Place(u64 p) : p_(p) {}
    u64 p_;
};

namespace detail {

inline int eps4(i64 u) {  // (u-1)/2 mod 2 for odd u
    u %= 4;
    if (u < 0) u += 4;
    return u == 1 ? 0 : 1;
}

inline int omega8(i64 u) {  // (u^2-1)/8 mod 2 for odd u
    u %= 8;
    if (u < 0) u += 8;
    return (u == 1 || u == 7) ? 0 : 1;
}

}  // namespace detail

// Hilbert symbol (a, b)_v for nonzero integers via the standard local
// formulas; multiplicative in each argument.
inline SymbolValue hilbert(i64 a, i64 b, Place v) {
    if (a == 0 || b == 0) throw std::invalid_argument("hilbert: zero argument");
    if (v.is_infinite()) return SymbolValue{(a < 0 && b < 0) ? -1 : 1};
    u64 p = v.prime();
    if (p == 2) {
        i64 u = a, w = b;
        int al = 0, be = 0;
        while ((u & 1) == 0) {
            u /= 2;
            ++al;
        }
        while ((w & 1) == 0) {
            w /= 2;
            ++be;
        }
        int e = detail::eps4(u) * detail::eps4(w) + al * detail::omega8(w) + be * detail::omega8(u);
        return SymbolValue{(e & 1) ? -1 : 1};
    }
    i64 u = a, w = b;
    int al = 0, be = 0;
    i64 ip = static_cast<i64>(p);
    while (u % ip == 0) {
        u /= ip;
        ++al;
    }
    while (w % ip == 0) {
        w /= ip;
        ++be;
    }
    int s = (al & 1) && (be & 1) && ((p & 3) == 3) ? -1 : 1;
    int lu = (be & 1) ? legendre(u, p) : 1;
    int lw = (al & 1) ? legendre(w, p) : 1;
    return SymbolValue{s * lu * lw};
}

// Hilbert symbol of rationals given as integer pairs.
inline SymbolValue hilbert_rational(std::pair<i64, i64> a, std::pair<i64, i64> b, Place v) {
    if (a.second == 0 || b.second == 0) throw std::invalid_argument("hilbert: zero denominator");
    return hilbert(checked_mul(a.first, a.second), checked_mul(b.first, b.second), v);
}

// additive Hilbert symbol [a, b]_v
inline int hilbert_additive(i64 a, i64 b, Place v) { return hilbert(a, b, v).additive(); }

// Square root of a mod an odd prime p (Tonelli-Shanks); the smaller of the
// two roots. Empty when a is a non-residue.
inline std::optional<u64> sqrt_mod(i64 a, u64 p) {
    if (p == 2) {
        return static_cast<u64>(((a % 2) + 2) % 2);
    }
    u64 ua = static_cast<u64>(((a % static_cast<i64>(p)) + static_cast<i64>(p)) % static_cast<i64>(p));
    if (ua == 0) return 0;
    if (legendre(static_cast<i64>(ua), p) != 1) return std::nullopt;
    u64 r;
    if ((p & 3) == 3) {
        r = powmod(ua, (p + 1) / 4, p);
    } else {
        // Tonelli-Shanks with the smallest non-residue as generator
        u64 q = p - 1;
        int s = 0;
        while ((q & 1) == 0) {
            q >>= 1;
            ++s;
        }
        u64 z = 2;
        while (legendre(static_cast<i64>(z), p) != -1) ++z;
        u64 m = s;
        u64 c = powmod(z, q, p);
        u64 t = powmod(ua, q, p);
        r = powmod(ua, (q + 1) / 2, p);
        while (t != 1) {
            u64 t2 = t;
            u64 i = 0;
            while (t2 != 1) {
                t2 = mulmod(t2, t2, p);
                ++i;
            }
            u64 bexp = m - i - 1;
            u64 bb = c;
            for (u64 j = 0; j < bexp; ++j) bb = mulmod(bb, bb, p);
            m = i;
            c = mulmod(bb, bb, p);
            t = mulmod(t, c, p);
            r = mulmod(r, bb, p);
        }
    }
    return std::min(r, p - r);
}

}  // namespace twistsel
