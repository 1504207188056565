#pragma once

// Gauss genus theory for K = Q(sqrt(-n)): the Redei matrix and 4-rank, the
// distinguished 2-torsion class, norm-equation solutions, the quartic-symbol
// 8-rank criteria, and an independent class-group oracle built on reduced
// binary quadratic forms with Gauss composition.

#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "twistsel/arith.hpp"
#include "twistsel/errors.hpp"
#include "twistsel/f2.hpp"
#include "twistsel/gaussian.hpp"
#include "twistsel/twist.hpp"

namespace twistsel::genus {

// ---------------------------------------------------------------------------
// symbol matrices shared by the genus and descent paths

// A = ([p_j, -n]_{p_i}), k x k; rows always sum to zero.
inline f2::F2Matrix symbol_matrix_A(const TwistN& n) {
    const std::size_t k = n.k();
    f2::F2Matrix a(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            a.set(i, j, hilbert_additive(static_cast<i64>(n.primes[j]), -static_cast<i64>(n.n),
                                         Place::at(n.primes[i])));
    return a;
}

// b_u = (additive (u/p_1), ..., (u/p_k))
inline f2::F2Vector b_vector(i64 u, const TwistN& n) {
    f2::F2Vector b(n.k());
    for (std::size_t i = 0; i < n.k(); ++i) b.set(i, jacobi(u, n.primes[i]).additive());
    return b;
}

// D_u = diag(additive (u/p_i))
inline f2::F2Matrix diag_symbol_matrix(i64 u, const TwistN& n) {
    f2::F2Matrix d(n.k(), n.k());
    for (std::size_t i = 0; i < n.k(); ++i) d.set(i, i, jacobi(u, n.primes[i]).additive());
    return d;
}

// ---------------------------------------------------------------------------
// Redei matrix and the 4-rank

// k x (k+1) matrix ([p_j, -n]_{p_i}) with p_{k+1} = 2; needs n = 1 mod 4.
inline f2::F2Matrix redei_matrix(const TwistN& n) {
    if (n.n % 4 != 1) throw std::invalid_argument("redei_matrix: n must be 1 mod 4");
    const std::size_t k = n.k();
    f2::F2Matrix r(k, k + 1);
    r.set_block(0, 0, symbol_matrix_A(n));
    for (std::size_t i = 0; i < k; ++i)
        r.set(i, k, hilbert_additive(2, -static_cast<i64>(n.n), Place::at(n.primes[i])));
    return r;
}

inline int h4(const TwistN& n) {
    return static_cast<int>(n.k() - f2::rank(redei_matrix(n)));
}

// ---------------------------------------------------------------------------
// distinguished divisor (h4 = 1 only)

struct Distinguished {
    i64 d0;     // smaller representative of the kernel pair, divides 2n
    i64 d_odd;  // odd part of d0
};

namespace detail {

inline i64 decode_divisor(const f2::F2Vector& v, const TwistN& n) {
    i64 d = 1;
    for (std::size_t i = 0; i < n.k(); ++i)
        if (v.get(i)) d = checked_mul(d, static_cast<i64>(n.primes[i]));
    if (v.get(n.k())) d = checked_mul(d, 2);
    return d;
}

}  // namespace detail

inline Distinguished distinguished_divisor(const TwistN& n) {
    if (h4(n) != 1) throw std::invalid_argument("distinguished_divisor: h4(n) != 1 for n = " + std::to_string(n.n));
    auto r = redei_matrix(n);
    auto basis = f2::kernel_basis(r);
    if (basis.size() != 2) throw std::logic_error("distinguished_divisor: kernel dimension != 2");
    std::vector<i64> divisors;
    for (int m = 1; m < 4; ++m) {
        f2::F2Vector v(n.k() + 1);
        if (m & 1) v ^= basis[0];
        if (m & 2) v ^= basis[1];
        i64 d = detail::decode_divisor(v, n);
        if (d != static_cast<i64>(n.n)) divisors.push_back(d);
    }
    if (divisors.size() != 2) throw std::logic_error("distinguished_divisor: kernel missing the class of n");
    i64 d0 = std::min(divisors[0], divisors[1]);
    return Distinguished{d0, (d0 % 2 == 0) ? d0 / 2 : d0};
}

// ---------------------------------------------------------------------------
// norm equation d a^2 + d' b^2 = 2^r c^2

struct NormEquationSolution {
    i64 d = 1, dprime = 1;
    int r = 0;
    i64 alpha = 0, beta = 0, gamma = 0;

    bool check() const {
        i128 lhs = (i128)d * alpha * alpha + (i128)dprime * beta * beta;
        i128 rhs = ((i128)1 << r) * gamma * gamma;
        return lhs == rhs && alpha > 0 && beta > 0 && gamma > 0 &&
               std::gcd(std::gcd(alpha, beta), gamma) == 1;
    }
};

// Primitive solutions with gamma <= bound, ordered by (gamma, alpha); at most
// `want` of them. The search sweeps gamma radii in doubling rounds, so the
// first entry is the canonical minimal solution.
inline std::vector<NormEquationSolution> norm_equation_solutions(i64 d, i64 dprime, int r, i64 bound,
                                                                 std::size_t want) {
    if (d < 1 || dprime < 1 || r < 0 || r > 2 || bound < 1)
        throw std::invalid_argument("norm_equation_solutions: bad arguments");
    const i128 pw = i128{1} << r;
    i64 gamma_min = 1;
    while ((i128)gamma_min * gamma_min * pw < d + dprime) ++gamma_min;

    i64 radius = std::max<i64>(gamma_min, 16);
    while (true) {
        radius = std::min(radius, bound);
        std::vector<NormEquationSolution> found;
        const i128 cap = pw * radius * radius;
        for (i64 beta = 1; (i128)dprime * beta * beta + d <= cap; ++beta) {
            const i128 base = (i128)dprime * beta * beta;
            for (i64 alpha = 1; base + (i128)d * alpha * alpha <= cap; ++alpha) {
                i128 s = base + (i128)d * alpha * alpha;
                if (s % pw) continue;
                u64 g2 = static_cast<u64>(s / pw);
                if (!is_square_u(g2)) continue;
                i64 gamma = static_cast<i64>(isqrt_u(g2));
                if (std::gcd(std::gcd(alpha, beta), gamma) != 1) continue;
                found.push_back(NormEquationSolution{d, dprime, r, alpha, beta, gamma});
            }
        }
        std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
            return std::tie(x.gamma, x.alpha, x.beta) < std::tie(y.gamma, y.alpha, y.beta);
        });
        if (found.size() >= want || radius >= bound) {
            if (found.size() > want) found.resize(want);
            return found;
        }
        radius = checked_mul(radius, 2);
    }
}

inline NormEquationSolution solve_norm_equation(i64 d, i64 dprime, int r, i64 bound = 0) {
    if (bound <= 0) bound = checked_mul(10, checked_mul(d, dprime));
    auto sols = norm_equation_solutions(d, dprime, r, bound, 1);
    if (sols.empty())
        throw norm_equation_not_found("no primitive solution of " + std::to_string(d) + "*a^2 + " +
                                      std::to_string(dprime) + "*b^2 = 2^" + std::to_string(r) +
                                      "*c^2 with c <= " + std::to_string(bound));
    return sols.front();
}

// For r = 0 and d = d' = 5 mod 8: return a primitive solution with alpha
// even (then alpha/2, beta, gamma are all odd), applying the quadratic
// transformation when the input alpha is odd.
inline NormEquationSolution adjust_parity(const NormEquationSolution& sol) {
    if (sol.r != 0) throw std::invalid_argument("adjust_parity: needs r = 0");
    if (sol.d % 8 != 5 || sol.dprime % 8 != 5)
        throw std::invalid_argument("adjust_parity: needs d = d' = 5 mod 8");
    if (!sol.check()) throw std::invalid_argument("adjust_parity: input is not a primitive solution");
    NormEquationSolution out = sol;
    if (sol.alpha % 2 != 0) {
        const i64 d = sol.d, dp = sol.dprime;
        i64 half = (d - dp) / 2;
        out.alpha = std::abs(checked_add(checked_mul(half, sol.alpha), checked_mul(dp, sol.beta)));
        out.beta = std::abs(checked_add(checked_mul(half, sol.beta), -checked_mul(d, sol.alpha)));
        out.gamma = checked_mul((d + dp) / 2, sol.gamma);
    }
    if (!out.check() || out.alpha % 2 != 0 || (out.alpha / 2) % 2 != 1 || out.beta % 2 != 1 ||
        out.gamma % 2 != 1)
        throw std::invalid_argument("adjust_parity: transformed solution violates the parity pattern");
    return out;
}

// ---------------------------------------------------------------------------
// 8-rank via the norm-equation criterion

// b_gamma built from a given solution, image-tested against the Redei matrix
inline int h8_from_solution(const TwistN& n, const NormEquationSolution& sol) {
    auto bg = b_vector(sol.gamma, n);
    return f2::in_image(redei_matrix(n), bg) ? 1 : 0;
}

inline int h8_indicator(const TwistN& n, i64 bound = 0) {
    auto dist = distinguished_divisor(n);
    int r = (dist.d0 % 2 == 0) ? 1 : 0;
    i64 d = dist.d_odd;
    i64 dp = static_cast<i64>(n.n) / d;
    if (bound <= 0) bound = checked_mul(10, static_cast<i64>(n.n));
    auto sols = norm_equation_solutions(d, dp, r, bound, 1);
    if (sols.empty())
        throw norm_equation_not_found("h8_indicator: no norm-equation solution for n = " + std::to_string(n.n));
    return h8_from_solution(n, sols.front());
}

// ---------------------------------------------------------------------------
// 8-rank via rational quartic symbols (all p | n must be 1 mod 4)

enum class RankCase { k_minus_2, k_minus_1 };

inline int h8_via_quartic(const TwistN& n, RankCase rank_case, i64 d, i64 dprime) {
    if (!n.all_primes_1_mod_4())
        throw std::invalid_argument("h8_via_quartic: every prime factor of n must be 1 mod 4");
    if (n.k() == 0 || checked_mul(d, dprime) != static_cast<i64>(n.n))
        throw std::invalid_argument("h8_via_quartic: d * d' must equal n");
    auto a = symbol_matrix_A(n);
    std::size_t rank_a = f2::rank(a);
    f2::F2Vector dv(n.k());
    for (std::size_t i = 0; i < n.k(); ++i)
        if (d % static_cast<i64>(n.primes[i]) == 0) dv.set(i, true);
    if (rank_case == RankCase::k_minus_2) {
        if (rank_a != n.k() - 2 || !a.mul(dv).is_zero())
            throw std::invalid_argument("h8_via_quartic: case tag inconsistent with rank A");
        auto q = gaussian::rational_quartic(d, static_cast<u64>(dprime)) *
                 gaussian::rational_quartic(dprime, static_cast<u64>(d));
        if (q.im != 0) throw std::logic_error("h8_via_quartic: symbol product not +-1");
        return q.re == -1 ? 1 : 0;
    }
    if (rank_a != n.k() - 1 || !(a.mul(dv) == b_vector(2, n)))
        throw std::invalid_argument("h8_via_quartic: case tag inconsistent with rank A");
    // rank k-1 forces b_2 in Im A, hence (2/n) = 1, hence n = 1 mod 8
    if (n.n % 8 != 1) throw std::logic_error("h8_via_quartic: rank k-1 with n != 1 mod 8");
    auto q = gaussian::rational_quartic(checked_mul(2, d), static_cast<u64>(dprime)) *
             gaussian::rational_quartic(checked_mul(2, dprime), static_cast<u64>(d));
    if (q.im != 0) throw std::logic_error("h8_via_quartic: symbol product not +-1");
    int target = ((n.n - 1) / 8) % 2 == 0 ? 1 : -1;
    return q.re == target ? 1 : 0;
}

// ---------------------------------------------------------------------------
// class-group oracle: reduced forms of discriminant -4n under composition

struct Form {
    i64 a = 1, b = 0, c = 0;
    auto operator<=>(const Form&) const = default;
};

namespace detail {

inline Form reduce_form(Form f, i64 D) {
    while (true) {
        i64 twoa = 2 * f.a;
        i64 r = ((f.b % twoa) + twoa) % twoa;
        if (r > f.a) r -= twoa;
        if (r != f.b) {
            f.b = r;
            f.c = static_cast<i64>(((i128)f.b * f.b - D) / (4 * (i128)f.a));
        }
        if (f.a > f.c) {
            f = Form{f.c, -f.b, f.a};
            continue;
        }
        break;
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    if (f.b == -f.a) f.b = f.a;
    return f;
}

inline i64 eval_form(const Form& f, i64 x, i64 y) {
    return static_cast<i64>((i128)f.a * x * x + (i128)f.b * x * y + (i128)f.c * y * y);
}

inline i64 inv_mod(i64 a, i64 m) {
    i64 g = m, x = 0, x1 = 1, a1 = ((a % m) + m) % m;
    while (a1) {
        i64 q = g / a1;
        g -= q * a1;
        std::swap(g, a1);
        x -= q * x1;
        std::swap(x, x1);
    }
    if (g != 1) throw std::logic_error("inv_mod: not invertible");
    return ((x % m) + m) % m;
}

// equivalent form whose leading coefficient is coprime to m
inline Form make_coprime(const Form& f, i64 m) {
    if (std::gcd(f.a, m) == 1) return f;
    for (i64 s = 1; s <= 64; ++s) {
        for (i64 x = -s; x <= s; ++x) {
            for (i64 y = -s; y <= s; ++y) {
                if (std::max(std::abs(x), std::abs(y)) != s) continue;
                if (std::gcd(x, y) != 1) continue;
                i64 v = eval_form(f, x, y);
                if (v == 0 || std::gcd(((v % m) + m) % m, m) != 1) continue;
                // complete (x, y) to a unimodular matrix [[x, u], [y, w]]
                i64 r0 = x, r1 = y, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
                while (r1) {
                    i64 q = r0 / r1;
                    r0 -= q * r1;
                    std::swap(r0, r1);
                    s0 -= q * s1;
                    std::swap(s0, s1);
                    t0 -= q * t1;
                    std::swap(t0, t1);
                }
                // r0 = gcd = ±1 = s0*x + t0*y
                i64 sign = r0;  // ±1
                i64 u = -t0 * sign, w = s0 * sign;
                // now x*w - y*u = 1
                if ((i128)x * w - (i128)y * u != 1) continue;
                Form out;
                out.a = v;
                out.b = static_cast<i64>(2 * (i128)f.a * x * u + (i128)f.b * ((i128)x * w + (i128)y * u) +
                                         2 * (i128)f.c * y * w);
                out.c = eval_form(f, u, w);
                return out;
            }
        }
    }
    throw std::logic_error("make_coprime: no representation found");
}

inline Form compose(const Form& f1, const Form& f2in, i64 D) {
    Form f2 = make_coprime(f2in, f1.a);
    const i64 a1 = f1.a, a2 = f2.a;
    // B = b1 mod 2a1 and B = b2 mod 2a2; the moduli share only the factor 2
    // and b1 = b2 mod 2, so CRT with gcd(a1, a2) = 1 applies.
    i64 t = (((f2.b - f1.b) / 2) % a2 + a2) % a2;
    if (a2 > 1) t = static_cast<i64>((i128)t * inv_mod(a1, a2) % a2);
    i128 B = f1.b + 2 * (i128)a1 * t;
    i128 A = (i128)a1 * a2;
    i128 Bred = B % (2 * A);
    if (Bred < 0) Bred += 2 * A;
    Form g;
    g.a = static_cast<i64>(A);
    g.b = static_cast<i64>(Bred);
    g.c = static_cast<i64>(((i128)g.b * g.b - D) / (4 * (i128)g.a));
    return reduce_form(g, D);
}

}  // namespace detail

struct ClassGroupRanks {
    u64 order = 1;
    std::vector<int> two_power_ranks;  // h2, h4, h8, ...
};

// Enumerates the reduced primitive forms of discriminant -4n, then extracts
// the 2-power ranks by repeatedly applying the squaring endomorphism. Kept
// deliberately independent of the Redei / Hilbert-symbol code paths.
inline ClassGroupRanks class_group_oracle(const TwistN& n) {
    if (n.n > 25'000'000) throw std::invalid_argument("class_group_oracle: discriminant too large");
    const i64 D = -4 * static_cast<i64>(n.n);
    std::vector<Form> els;
    for (i64 a = 1; (i128)3 * a * a <= -(i128)D; ++a) {
        for (i64 b = -a + 1; b <= a; ++b) {
            if ((b & 1) != 0) continue;  // D even
            i128 num = (i128)b * b - D;
            if (num % (4 * a)) continue;
            i64 c = static_cast<i64>(num / (4 * a));
            if (c < a) continue;
            if (a == c && b < 0) continue;
            if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
            els.push_back(Form{a, b, c});
        }
    }
    std::sort(els.begin(), els.end());

    ClassGroupRanks out;
    out.order = els.size();
    std::vector<Form> layer = els;
    while (true) {
        std::set<Form> sq;
        for (auto& f : layer) sq.insert(detail::compose(f, f, D));
        std::vector<Form> next(sq.begin(), sq.end());
        if (next.size() == layer.size()) break;
        u64 ratio = layer.size() / next.size();
        int rk = 0;
        while ((u64{1} << rk) < ratio) ++rk;
        if ((u64{1} << rk) != ratio || layer.size() % next.size())
            throw std::logic_error("class_group_oracle: non-2-power quotient");
        out.two_power_ranks.push_back(rk);
        layer = std::move(next);
        if (layer.size() == 1) break;
    }
    while (out.two_power_ranks.size() < 3) out.two_power_ranks.push_back(0);
    return out;
}

// ---------------------------------------------------------------------------
// bundled genus data

struct GenusData {
    TwistN n;
    f2::F2Matrix redei;
    int h2 = 0;
    int h4 = 0;
    std::optional<i64> d0;
    std::optional<i64> d_odd;
    std::optional<int> h8;
};

inline GenusData analyze(const TwistN& n, i64 norm_bound = 0) {
    GenusData g{n, redei_matrix(n), static_cast<int>(n.k()), 0, {}, {}, {}};
    g.h4 = static_cast<int>(n.k() - f2::rank(g.redei));
    if (g.h4 == 1) {
        auto dist = distinguished_divisor(n);
        g.d0 = dist.d0;
        g.d_odd = dist.d_odd;
        g.h8 = h8_indicator(n, norm_bound);
    }
    return g;
}

}  // namespace twistsel::genus
