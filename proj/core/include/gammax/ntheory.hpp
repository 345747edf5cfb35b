#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gammax/errors.hpp"

namespace gammax {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// (a * b) mod m without overflow, any m that fits 64 bits.
inline u64 mul_mod(u64 a, u64 b, u64 m) {
    if (m <= 0xFFFFFFFFu) return (a % m) * (b % m) % m;
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m);

/// Deterministic Miller-Rabin. True iff n is prime and n != 2.
bool is_odd_prime(u64 n);

/// Barrett-style reduction for a fixed modulus d < 2^32; valid for x < 2^63.
struct Reducer {
    u64 d = 1;
    u64 magic = 0; // floor((2^64 - 1) / d); q-estimate never overshoots

    Reducer() = default;
    explicit Reducer(u64 d);
    u64 reduce(u64 x) const {
        u64 q = static_cast<u64>((static_cast<u128>(x) * magic) >> 64);
        u64 r = x - q * d;
        while (r >= d) r -= d;
        return r;
    }
};

/// An odd prime p together with the derived generators used everywhere else:
/// g is the smallest primitive root mod p and w = g^p mod p^2 has
/// multiplicative order exactly p-1 mod p^2, so its powers enumerate the
/// subgroup U of (p-1)-th roots of unity mod p^2.
struct PrimeContext {
    u64 p = 0;
    u64 p_squared = 0;
    u64 g = 0;
    u64 w = 0;
};

/// Builds the context. Throws NotOddPrime unless is_odd_prime(p); throws
/// OutOfRange when p^2 does not fit 64 bits.
PrimeContext make_context(u64 p);

/// Smallest primitive root mod an odd prime p.
u64 smallest_primitive_root(u64 p);

/// Fermat quotient q_p(k): the unique q in [0, p) with
/// k^(p-1) = 1 + q*p mod p^2. k is reduced mod p^2 first; throws NotCoprime
/// when p divides k.
u64 fermat_quotient(const PrimeContext& ctx, u64 k);

/// f(x) = p when p | x, else q_p(x). Throws OutOfRange unless x < p^2.
u64 f_map(const PrimeContext& ctx, u64 x);

/// Least q >= 1 with q_p(q) != 0. Always exists (q_p is not identically
/// zero on [1, p)); known to be O(sqrt p).
u64 kappa(const PrimeContext& ctx);

/// Modular inverses 1..p-1 by the linear-time recurrence; inv[0] is unused.
std::vector<u64> inverse_table(u64 p);

/// Mirimanoff polynomial gamma_p(t) = sum_{j=1}^{p-1} t^j / j mod p,
/// evaluated by Horner over the inverse table in O(p). t reduced mod p.
u64 mirimanoff_eval(const PrimeContext& ctx, u64 t);
u64 mirimanoff_eval(const PrimeContext& ctx, u64 t, std::span<const u64> inv);

/// Fermat-quotient form (t-1)q_p(t-1) - t*q_p(t) mod p. Equals
/// mirimanoff_eval for t in [2, p); throws UndefinedAt for t = 0, 1.
u64 mirimanoff_eval_fast(const PrimeContext& ctx, u64 t);

/// eta_p: number of roots of gamma_p in [0, p), trivial roots included.
u64 mirimanoff_zero_count(const PrimeContext& ctx);

/// Least n >= 1 with gamma_p(n) != 0 mod p; equals kappa(ctx).
u64 kappa_via_mirimanoff(const PrimeContext& ctx);

struct TeichmuellerParts {
    u64 d = 0; // discrete log of k to base w, in [0, p-1)
    u64 q = 0; // Fermat quotient q_p(k)
};

/// Writes k (coprime to p, taken mod p^2) as w^d * (1 - q*p) mod p^2.
/// d is recovered by baby-step/giant-step mod p in O(sqrt p).
TeichmuellerParts teichmueller_decompose(const PrimeContext& ctx, u64 k);

/// Inverse of teichmueller_decompose: w^d * (1 - q*p) mod p^2.
u64 teichmueller_reconstruct(const PrimeContext& ctx, TeichmuellerParts parts);

/// All primes in [lo, hi], ascending (simple sieve).
std::vector<u64> primes_in_range(u64 lo, u64 hi);

} // namespace gammax
