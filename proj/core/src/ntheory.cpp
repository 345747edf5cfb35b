#include "gammax/ntheory.hpp"

#include <algorithm>
#include <unordered_map>

namespace gammax {

u64 pow_mod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    if (m <= 0xFFFFFFFFu) {
        // products of two residues fit 64 bits
        base %= m;
        while (exp > 0) {
            if (exp & 1) result = result * base % m;
            base = base * base % m;
            exp >>= 1;
        }
        return result;
    }
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = static_cast<u64>(static_cast<u128>(result) * base % m);
        base = static_cast<u64>(static_cast<u128>(base) * base % m);
        exp >>= 1;
    }
    return result;
}

namespace {

bool miller_rabin_witness(u64 n, u64 a, u64 d, int r) {
    u64 x = pow_mod(a % n, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < r; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return false;
    }
    return true; // composite witness
}

} // namespace

bool is_odd_prime(u64 n) {
    if (n < 3 || n % 2 == 0) return false;
    u64 d = n - 1;
    int r = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++r;
    }
    // deterministic for all n < 2^64
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (a % n == 0) return true;
        if (miller_rabin_witness(n, a, d, r)) return false;
    }
    return true;
}

Reducer::Reducer(u64 d_) : d(d_), magic(~0ull / d_) {}

u64 smallest_primitive_root(u64 p) {
    // prime factors of p-1 by trial division
    std::vector<u64> factors;
    u64 m = p - 1;
    for (u64 f = 2; f * f <= m; ++f) {
        if (m % f == 0) {
            factors.push_back(f);
            while (m % f == 0) m /= f;
        }
    }
    if (m > 1) factors.push_back(m);

    for (u64 g = 2; g < p; ++g) {
        bool ok = true;
        for (u64 f : factors) {
            if (pow_mod(g, (p - 1) / f, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw Error("no primitive root found; p is not prime?");
}

PrimeContext make_context(u64 p) {
    if (!is_odd_prime(p)) throw NotOddPrime("p = " + std::to_string(p) + " is not an odd prime");
    if (p > 0xFFFFFFFFull) throw OutOfRange("p^2 must fit 64 bits");
    PrimeContext ctx;
    ctx.p = p;
    ctx.p_squared = p * p;
    ctx.g = smallest_primitive_root(p);
    ctx.w = pow_mod(ctx.g, p, ctx.p_squared);
    return ctx;
}

u64 fermat_quotient(const PrimeContext& ctx, u64 k) {
    k %= ctx.p_squared;
    if (k % ctx.p == 0) throw NotCoprime("k shares a factor with p");
    u64 r = pow_mod(k, ctx.p - 1, ctx.p_squared);
    // r = 1 mod p by Fermat, so (r - 1) / p is exact
    return (r - 1) / ctx.p;
}

u64 f_map(const PrimeContext& ctx, u64 x) {
    if (x >= ctx.p_squared) throw OutOfRange("x must lie in [0, p^2)");
    if (x % ctx.p == 0) return ctx.p;
    return fermat_quotient(ctx, x);
}

u64 kappa(const PrimeContext& ctx) {
    for (u64 q = 1;; ++q) {
        if (q % ctx.p == 0) continue;
        if (fermat_quotient(ctx, q) != 0) return q;
    }
}

std::vector<u64> inverse_table(u64 p) {
    std::vector<u64> inv(p);
    if (p < 2) return inv;
    inv[1] = 1;
    for (u64 j = 2; j < p; ++j) inv[j] = (p - (p / j) * inv[p % j] % p) % p;
    return inv;
}

namespace {

u64 horner_eval(u64 p, u64 t, std::span<const u64> inv) {
    // sum_{j=1}^{p-1} inv[j] t^j = t*(inv[1] + t*(inv[2] + ... + t*inv[p-1]))
    Reducer red(p);
    u64 acc = 0;
    for (u64 j = p - 1; j >= 1; --j) acc = red.reduce(acc * t + inv[j]);
    return red.reduce(acc * t);
}

} // namespace

u64 mirimanoff_eval(const PrimeContext& ctx, u64 t, std::span<const u64> inv) {
    t %= ctx.p;
    if (t == 0) return 0;
    return horner_eval(ctx.p, t, inv);
}

u64 mirimanoff_eval(const PrimeContext& ctx, u64 t) {
    t %= ctx.p;
    if (t == 0) return 0;
    auto inv = inverse_table(ctx.p);
    return horner_eval(ctx.p, t, inv);
}

u64 mirimanoff_eval_fast(const PrimeContext& ctx, u64 t) {
    t %= ctx.p;
    if (t == 0 || t == 1) throw UndefinedAt("gamma_p fast form needs t outside {0, 1}");
    u64 p = ctx.p;
    u64 a = (t - 1) % p * fermat_quotient(ctx, t - 1) % p;
    u64 b = t % p * fermat_quotient(ctx, t) % p;
    return (a + p - b) % p;
}

u64 mirimanoff_zero_count(const PrimeContext& ctx) {
    // t = 0 vanishes identically; t = 1 is the harmonic sum, evaluated
    // directly rather than assumed zero. For t >= 2 walk the
    // Fermat-quotient form, reusing q_p(t-1) from the previous step; this
    // keeps the full scan at O(p log p) instead of O(p^2).
    u64 p = ctx.p;
    u64 count = 1 + (mirimanoff_eval(ctx, 1) == 0 ? 1 : 0);
    u64 q_prev = 0; // q_p(1)
    for (u64 t = 2; t < p; ++t) {
        u64 q_t = fermat_quotient(ctx, t);
        u64 a = (t - 1) % p * q_prev % p;
        u64 b = t % p * q_t % p;
        if (a == b) ++count;
        q_prev = q_t;
    }
    return count;
}

u64 kappa_via_mirimanoff(const PrimeContext& ctx) {
    // power-sum route, independent of the Fermat-quotient scan in kappa()
    auto inv = inverse_table(ctx.p);
    for (u64 n = 1;; ++n) {
        if (mirimanoff_eval(ctx, n, inv) != 0) return n;
    }
}

namespace {

// discrete log of k to base w in (Z/p)^x, both of order dividing p-1
u64 bsgs_dlog(u64 p, u64 w, u64 k) {
    u64 order = p - 1;
    u64 m = 1;
    while (m * m < order) ++m;
    std::unordered_map<u64, u64> baby;
    baby.reserve(m);
    u64 cur = 1;
    for (u64 j = 0; j < m; ++j) {
        baby.emplace(cur, j);
        cur = mul_mod(cur, w, p);
    }
    // w^{-m}
    u64 giant = pow_mod(pow_mod(w, order - 1, p), m, p);
    cur = k % p;
    for (u64 i = 0; i * m <= order; ++i) {
        auto it = baby.find(cur);
        if (it != baby.end()) return (i * m + it->second) % order;
        cur = mul_mod(cur, giant, p);
    }
    throw Error("discrete log not found; w is not a generator?");
}

} // namespace

TeichmuellerParts teichmueller_decompose(const PrimeContext& ctx, u64 k) {
    k %= ctx.p_squared;
    if (k % ctx.p == 0) throw NotCoprime("k shares a factor with p");
    TeichmuellerParts parts;
    parts.d = bsgs_dlog(ctx.p, ctx.w % ctx.p, k % ctx.p);
    parts.q = fermat_quotient(ctx, k);
    return parts;
}

u64 teichmueller_reconstruct(const PrimeContext& ctx, TeichmuellerParts parts) {
    u64 unit = pow_mod(ctx.w, parts.d, ctx.p_squared);
    u64 one_minus_qp = (1 + ctx.p_squared - parts.q % ctx.p * ctx.p % ctx.p_squared) % ctx.p_squared;
    return mul_mod(unit, one_minus_qp, ctx.p_squared);
}

std::vector<u64> primes_in_range(u64 lo, u64 hi) {
    std::vector<u64> out;
    if (hi < 2 || hi < lo) return out;
    std::vector<bool> composite(hi + 1, false);
    for (u64 i = 2; i * i <= hi; ++i) {
        if (composite[i]) continue;
        for (u64 j = i * i; j <= hi; j += i) composite[j] = true;
    }
    for (u64 n = std::max<u64>(lo, 2); n <= hi; ++n) {
        if (!composite[n]) out.push_back(n);
    }
    return out;
}

} // namespace gammax
