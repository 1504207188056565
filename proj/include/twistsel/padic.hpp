#pragma once

// Local solvability of systems of diagonal quadrics over Q_p by exhaustive
// search modulo p^j with Hensel certification. Verdicts are sound in both
// directions; `inconclusive` is returned when the depth or node budget runs
// out before a certificate appears.
//
// A point counts only if some coordinate is a p-adic unit. The search walks
// normalized representatives (first unit coordinate scaled to 1) level by
// level; a node certifies as liftable when the Jacobian of the system has an
// m x m minor of valuation v with 2v < level.

#include <array>
#include <cstdint>
#include <vector>

#include "twistsel/arith.hpp"

namespace twistsel::padic {

enum class Verdict { solvable, insolvable, inconclusive };

struct QuadricSystem {
    // coeff[r][t]: coefficient of x_t^2 in equation r
    std::vector<std::vector<i64>> coeff;

    std::size_t nvars() const { return coeff.empty() ? 0 : coeff[0].size(); }
};

namespace detail {

constexpr std::size_t kMaxVars = 4;

struct PreparedSystem {
    std::vector<std::array<i64, kMaxVars>> c;
    std::array<bool, kMaxVars> unit_allowed{};
    std::size_t nv = 0;
    bool degenerate = false;  // no coordinate may be a unit
};

// Static minimization: divide out equations that vanish mod p, and replace
// x_t by p x_t when an equation forces x_t = 0 mod p. Both transformations
// preserve the solution set exactly; substituted coordinates can no longer
// serve as the unit coordinate.
inline PreparedSystem prepare(const QuadricSystem& sys, u64 p) {
    PreparedSystem ps;
    ps.nv = sys.nvars();
    for (auto& row : sys.coeff) {
        std::array<i64, kMaxVars> a{};
        for (std::size_t t = 0; t < ps.nv; ++t) a[t] = row[t];
        ps.c.push_back(a);
    }
    for (std::size_t t = 0; t < ps.nv; ++t) ps.unit_allowed[t] = true;

    i64 ip = static_cast<i64>(p);
    for (int pass = 0; pass < 16; ++pass) {
        bool changed = false;
        for (auto& row : ps.c) {
            bool all_div = true, nonzero = false;
            for (std::size_t t = 0; t < ps.nv; ++t) {
                if (row[t] % ip != 0) all_div = false;
                if (row[t] != 0) nonzero = true;
            }
            if (all_div && nonzero) {
                for (std::size_t t = 0; t < ps.nv; ++t) row[t] /= ip;
                changed = true;
            }
        }
        if (changed) continue;
        for (auto& row : ps.c) {
            int units = 0;
            std::size_t ut = 0;
            bool any = false;
            for (std::size_t t = 0; t < ps.nv; ++t) {
                if (row[t] == 0) continue;
                any = true;
                if (row[t] % ip != 0) {
                    ++units;
                    ut = t;
                }
            }
            if (any && units == 1) {
                bool safe = true;
                for (auto& r2 : ps.c) {
                    i128 scaled = (i128)r2[ut] * ip * ip;
                    if (scaled > (i128{1} << 55) || scaled < -(i128{1} << 55)) safe = false;
                }
                if (!safe) return ps;  // stop minimizing, search as-is
                for (auto& r2 : ps.c) r2[ut] = static_cast<i64>((i128)r2[ut] * ip * ip);
                ps.unit_allowed[ut] = false;
                changed = true;
                break;
            }
        }
        if (!changed) break;
    }
    bool any_unit = false;
    for (std::size_t t = 0; t < ps.nv; ++t)
        if (ps.unit_allowed[t]) any_unit = true;
    ps.degenerate = !any_unit;
    return ps;
}

struct Node {
    std::array<u64, kMaxVars> x{};
    std::size_t pat = 0;  // the coordinate frozen at 1
};

inline u64 eval_mod(const std::array<i64, kMaxVars>& row, const std::array<u64, kMaxVars>& x,
                    std::size_t nv, u64 modulus) {
    u128 acc = 0;
    for (std::size_t t = 0; t < nv; ++t) {
        if (row[t] == 0) continue;
        u64 cr = static_cast<u64>(((row[t] % static_cast<i64>(modulus)) + static_cast<i64>(modulus)) %
                                  static_cast<i64>(modulus));
        u128 sq = (u128)(x[t] % modulus) * (x[t] % modulus) % modulus;
        acc += (u128)cr * static_cast<u64>(sq) % modulus;
        acc %= modulus;
    }
    return static_cast<u64>(acc);
}

inline int val_capped(i128 v, u64 p, int cap) {
    if (v < 0) v = -v;
    if (v == 0) return cap;
    int r = 0;
    while (r < cap && v % static_cast<i128>(p) == 0) {
        v /= static_cast<i128>(p);
        ++r;
    }
    return r;
}

// true when some m x m Jacobian minor over columns != nd.pat has valuation v
// with 2v < level (entries computed mod p^level)
inline bool certify(const std::vector<std::array<i64, kMaxVars>>& c, const Node& nd, std::size_t nv,
                    u64 p, int level, u64 plevel) {
    std::size_t m = c.size();
    std::array<std::array<u64, kMaxVars>, 2> g{};
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t t = 0; t < nv; ++t) {
            u64 cr = static_cast<u64>((((2 * (i128)c[r][t]) % (i128)plevel) + (i128)plevel) % (i128)plevel);
            g[r][t] = static_cast<u64>((u128)cr * (nd.x[t] % plevel) % plevel);
        }
    if (m == 1) {
        for (std::size_t t = 0; t < nv; ++t) {
            if (t == nd.pat) continue;
            if (2 * val_capped((i128)g[0][t], p, level) < level) return true;
        }
        return false;
    }
    for (std::size_t t1 = 0; t1 < nv; ++t1) {
        if (t1 == nd.pat) continue;
        for (std::size_t t2 = t1 + 1; t2 < nv; ++t2) {
            if (t2 == nd.pat) continue;
            i128 det = (i128)g[0][t1] * g[1][t2] - (i128)g[0][t2] * g[1][t1];
            if (2 * val_capped(det, p, level) < level) return true;
        }
    }
    return false;
}

}  // namespace detail

// Decide whether the system has a common zero over Q_p with a unit
// coordinate. `depth` bounds the search level.
inline Verdict solvable_at(const QuadricSystem& sys, u64 p, int depth, u64 node_budget = 400000) {
    using namespace detail;
    if (sys.coeff.empty() || sys.nvars() == 0 || sys.nvars() > kMaxVars || sys.coeff.size() > 2)
        throw std::invalid_argument("solvable_at: unsupported system shape");
    if (depth < 1) depth = 1;

    PreparedSystem ps = prepare(sys, p);
    const std::size_t nv = ps.nv;
    if (ps.degenerate) return Verdict::insolvable;

    // keep p^(depth+1) far below 2^59 so u128 products never overflow
    {
        int d = 0;
        u64 pw = 1;
        const u64 lim = u64{1} << 59;
        while (pw <= lim / p) {
            pw *= p;
            ++d;
        }
        depth = std::min(depth, d - 1);
        if (depth < 1) return Verdict::inconclusive;
    }

    u64 budget_used = 0;
    std::vector<Node> cur;

    // level 1: normalized sweep
    for (std::size_t pat = 0; pat < nv; ++pat) {
        if (!ps.unit_allowed[pat]) continue;
        std::vector<std::size_t> free_t;
        for (std::size_t t = 0; t < nv; ++t) {
            if (t == pat) continue;
            if (!ps.unit_allowed[t] || t > pat) free_t.push_back(t);
        }
        std::vector<u64> idx(free_t.size(), 0);
        while (true) {
            Node nd;
            nd.pat = pat;
            nd.x[pat] = 1;
            for (std::size_t k = 0; k < free_t.size(); ++k) nd.x[free_t[k]] = idx[k];
            bool ok = true;
            for (auto& row : ps.c)
                if (eval_mod(row, nd.x, nv, p) != 0) {
                    ok = false;
                    break;
                }
            if (ok) {
                if (certify(ps.c, nd, nv, p, 1, p)) return Verdict::solvable;
                cur.push_back(nd);
                if (++budget_used > node_budget) return Verdict::inconclusive;
            }
            std::size_t k = 0;
            while (k < idx.size() && ++idx[k] == p) idx[k++] = 0;
            if (idx.empty() || k == idx.size()) break;
        }
    }

    u64 pj = p;
    for (int level = 1; level < depth; ++level) {
        if (cur.empty()) return Verdict::insolvable;
        const u64 pj1 = pj * p;
        std::vector<Node> next;
        for (auto& nd : cur) {
            std::vector<std::size_t> vars;
            for (std::size_t t = 0; t < nv; ++t)
                if (t != nd.pat) vars.push_back(t);
            const std::size_t m = ps.c.size();
            const std::size_t nu = vars.size();

            // linear lift conditions: sum_t g[r][t] delta_t = -H_r(x)/p^level
            std::array<std::array<u64, kMaxVars>, 2> a{};
            std::array<u64, 2> rhs{};
            for (std::size_t r = 0; r < m; ++r) {
                for (std::size_t k = 0; k < nu; ++k) {
                    u64 cr = static_cast<u64>((((2 * (i128)ps.c[r][vars[k]]) % (i128)p) + (i128)p) % (i128)p);
                    a[r][k] = mulmod(cr, nd.x[vars[k]] % p, p);
                }
                u64 hv = eval_mod(ps.c[r], nd.x, nv, pj1);
                rhs[r] = (p - (hv / pj) % p) % p;
            }

            std::vector<std::size_t> pivot_col;
            std::size_t rr = 0;
            for (std::size_t col = 0; col < nu && rr < m; ++col) {
                std::size_t sel = rr;
                while (sel < m && a[sel][col] == 0) ++sel;
                if (sel == m) continue;
                std::swap(a[sel], a[rr]);
                std::swap(rhs[sel], rhs[rr]);
                u64 inv = powmod(a[rr][col], p - 2, p);
                for (std::size_t k = col; k < nu; ++k) a[rr][k] = mulmod(a[rr][k], inv, p);
                rhs[rr] = mulmod(rhs[rr], inv, p);
                for (std::size_t r2 = 0; r2 < m; ++r2) {
                    if (r2 == rr || a[r2][col] == 0) continue;
                    u64 f = a[r2][col];
                    for (std::size_t k = col; k < nu; ++k)
                        a[r2][k] = (a[r2][k] + p - mulmod(f, a[rr][k], p)) % p;
                    rhs[r2] = (rhs[r2] + p - mulmod(f, rhs[rr], p)) % p;
                }
                pivot_col.push_back(col);
                ++rr;
            }
            bool inconsistent = false;
            for (std::size_t r2 = rr; r2 < m; ++r2)
                if (rhs[r2] != 0) inconsistent = true;
            if (inconsistent) continue;

            std::vector<std::size_t> free_cols;
            for (std::size_t col = 0; col < nu; ++col) {
                bool isp = false;
                for (auto pc : pivot_col) isp |= (pc == col);
                if (!isp) free_cols.push_back(col);
            }
            std::vector<u64> fidx(free_cols.size(), 0);
            while (true) {
                std::array<u64, kMaxVars> delta{};
                for (std::size_t k = 0; k < free_cols.size(); ++k) delta[free_cols[k]] = fidx[k];
                for (std::size_t r2 = 0; r2 < pivot_col.size(); ++r2) {
                    u64 v = rhs[r2];
                    for (std::size_t fc : free_cols)
                        v = (v + p - mulmod(a[r2][fc], delta[fc], p)) % p;
                    delta[pivot_col[r2]] = v;
                }
                Node child = nd;
                for (std::size_t k = 0; k < nu; ++k)
                    child.x[vars[k]] = nd.x[vars[k]] + pj * delta[k];
                if (certify(ps.c, child, nv, p, level + 1, pj1)) return Verdict::solvable;
                next.push_back(child);
                if (++budget_used > node_budget) return Verdict::inconclusive;
                std::size_t k = 0;
                while (k < fidx.size() && ++fidx[k] == p) fidx[k++] = 0;
                if (fidx.empty() || k == fidx.size()) break;
            }
        }
        cur.swap(next);
        pj = pj1;
    }
    return cur.empty() ? Verdict::insolvable : Verdict::inconclusive;
}

}  // namespace twistsel::padic
