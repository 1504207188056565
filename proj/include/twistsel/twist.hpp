#pragma once

// A square-free positive twisting integer with its factorization and
// residue data.

#include <vector>

#include "twistsel/arith.hpp"

namespace twistsel {

struct TwistN {
    u64 n = 1;
    std::vector<u64> primes;      // ascending
    std::vector<u32> residues16;  // primes mod 16

    std::size_t k() const { return primes.size(); }

    bool all_primes_1_mod_4() const {
        for (u32 r : residues16)
            if (r % 4 != 1) return false;
        return true;
    }
    bool all_primes_pm1_mod_8() const {
        for (u32 r : residues16) {
            u32 m = r % 8;
            if (m != 1 && m != 7) return false;
        }
        return true;
    }
    bool all_primes_1_mod_8() const {
        for (u32 r : residues16)
            if (r % 8 != 1) return false;
        return true;
    }
};

inline TwistN make_twist(u64 n) {
    if (n == 0) throw std::invalid_argument("twist n must be positive");
    TwistN t;
    t.n = n;
    auto f = factorize(n);
    if (!f.squarefree()) throw std::invalid_argument("twist n must be square-free: " + std::to_string(n));
    for (auto& [p, e] : f.factors) {
        (void)e;
        t.primes.push_back(p);
        t.residues16.push_back(static_cast<u32>(p % 16));
    }
    return t;
}

// fast path when the (sorted, distinct) prime factors are already known
inline TwistN make_twist_factored(u64 n, const std::vector<u64>& primes) {
    TwistN t;
    t.n = n;
    t.primes = primes;
    t.residues16.reserve(primes.size());
    for (u64 p : primes) t.residues16.push_back(static_cast<u32>(p % 16));
    return t;
}

}  // namespace twistsel
