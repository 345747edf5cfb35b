#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include "gammax/ntheory.hpp"
#include "gammax/rng.hpp"

using namespace gammax;

namespace {

// test-side oracles, kept independent of the library paths they check

bool trial_division_odd_prime(u64 n) {
    if (n < 3 || n % 2 == 0) return false;
    for (u64 f = 3; f * f <= n; f += 2) {
        if (n % f == 0) return false;
    }
    return true;
}

u64 naive_fermat_quotient(u64 p, u64 k) {
    // k^(p-1) mod p^2 by repeated multiplication, no fast exponentiation
    const u64 p2 = p * p;
    u64 r = 1;
    for (u64 i = 0; i + 1 < p; ++i) r = r * (k % p2) % p2;
    return (r - 1) / p;
}

u64 brute_mirimanoff(u64 p, u64 t) {
    // sum t^j * j^(p-2) mod p, term by term
    u64 acc = 0;
    for (u64 j = 1; j < p; ++j) {
        u64 term = pow_mod(t, j, p) * pow_mod(j, p - 2, p) % p;
        acc = (acc + term) % p;
    }
    return acc;
}

// (1 - t^p - (1-t)^p)/p mod p with the numerator exact mod p^2
u64 binomial_mirimanoff(const PrimeContext& ctx, u64 t) {
    const u64 p = ctx.p, p2 = ctx.p_squared;
    u64 tp = pow_mod(t, p, p2);
    u64 one_minus_t = (1 + p2 - t % p2) % p2;
    u64 omtp = pow_mod(one_minus_t, p, p2);
    u64 numerator = (1 + 2 * p2 - tp - omtp) % p2;
    REQUIRE(numerator % p == 0);
    return (numerator / p) % p;
}

} // namespace

TEST_CASE("is_odd_prime basics") {
    CHECK_FALSE(is_odd_prime(0));
    CHECK_FALSE(is_odd_prime(1));
    CHECK_FALSE(is_odd_prime(2)); // prime but even
    CHECK(is_odd_prime(3));
    CHECK_FALSE(is_odd_prime(9));
    CHECK(is_odd_prime(1093));
    CHECK(is_odd_prime((1ull << 61) - 1)); // Mersenne
    CHECK_FALSE(is_odd_prime(1ull << 62));
}

TEST_CASE("is_odd_prime agrees with trial division below 10^4") {
    for (u64 n = 0; n <= 10'000; ++n) CHECK(is_odd_prime(n) == trial_division_odd_prime(n));
}

TEST_CASE("make_context picks the smallest primitive root and w = g^p") {
    auto c3 = make_context(3);
    CHECK(c3.g == 2);
    CHECK(c3.w == 8);
    auto c5 = make_context(5);
    CHECK(c5.g == 2);
    CHECK(c5.w == 7);
    auto c7 = make_context(7);
    CHECK(c7.g == 3);
    CHECK(c7.w == 31);
    auto c97 = make_context(97);
    CHECK(c97.g == 5);
    CHECK(c97.w == 5340);

    CHECK_THROWS_AS(make_context(4), NotOddPrime);
    CHECK_THROWS_AS(make_context(2), NotOddPrime);
    CHECK_THROWS_AS(make_context(9), NotOddPrime);
}

TEST_CASE("context invariants for all primes below 500") {
    for (u64 p : primes_in_range(3, 500)) {
        const auto ctx = make_context(p);
        CHECK(ctx.p_squared == p * p);
        CHECK(pow_mod(ctx.w, p - 1, ctx.p_squared) == 1);
        CHECK(std::gcd(ctx.w - 1, p) == 1);
        // w mod p generates the full group of order p-1
        const u64 w0 = ctx.w % p;
        for (u64 d = 1; d < p - 1; ++d) {
            if ((p - 1) % d == 0) CHECK(pow_mod(w0, d, p) != 1);
        }
        // powers of w mod p^2 are pairwise distinct
        std::set<u64> seen;
        u64 u = 1;
        for (u64 j = 0; j + 1 < p; ++j) {
            seen.insert(u);
            u = mul_mod(u, ctx.w, ctx.p_squared);
        }
        CHECK(seen.size() == p - 1);
        CHECK(u == 1); // closes the cycle
    }
}

TEST_CASE("fermat_quotient matches the defining congruence") {
    const auto c3 = make_context(3);
    CHECK(fermat_quotient(c3, 1) == 0);
    CHECK(fermat_quotient(c3, 2) == 1);
    const auto c5 = make_context(5);
    CHECK(fermat_quotient(c5, 2) == 3);
    const auto c1093 = make_context(1093);
    CHECK(fermat_quotient(c1093, 2) == 0); // Wieferich prime
    CHECK(fermat_quotient(c1093, 3) == 312);

    CHECK_THROWS_AS(fermat_quotient(c3, 6), NotCoprime);
    CHECK_THROWS_AS(fermat_quotient(c3, 0), NotCoprime);
}

TEST_CASE("fermat_quotient vs naive multiplication oracle") {
    for (u64 p : {3ull, 5ull, 7ull, 11ull, 13ull, 31ull, 47ull}) {
        const auto ctx = make_context(p);
        for (u64 k = 1; k < p * p; ++k) {
            if (k % p == 0) continue;
            CHECK(fermat_quotient(ctx, k) == naive_fermat_quotient(p, k));
        }
    }
}

TEST_CASE("fermat_quotient depends only on k mod p^2") {
    Rng rng(123);
    for (u64 p : {5ull, 13ull, 101ull}) {
        const auto ctx = make_context(p);
        for (int i = 0; i < 50; ++i) {
            u64 k = rng() % ctx.p_squared;
            if (k % p == 0) continue;
            CHECK(fermat_quotient(ctx, k) == fermat_quotient(ctx, k + ctx.p_squared));
            CHECK(fermat_quotient(ctx, k) == fermat_quotient(ctx, k + 7 * ctx.p_squared));
        }
    }
}

TEST_CASE("f_map splits multiples of p from units") {
    const auto c3 = make_context(3);
    CHECK(f_map(c3, 6) == 3);
    CHECK(f_map(c3, 0) == 3);
    CHECK(f_map(c3, 2) == 1);
    CHECK(f_map(c3, 8) == 0); // 8^2 = 64 = 1 mod 9
    CHECK_THROWS_AS(f_map(c3, 9), OutOfRange);
    // class sizes: p multiples, p classes of p-1 units
    for (u64 p : {3ull, 5ull, 11ull}) {
        const auto ctx = make_context(p);
        std::vector<u64> sizes(p + 1, 0);
        for (u64 x = 0; x < ctx.p_squared; ++x) ++sizes[f_map(ctx, x)];
        CHECK(sizes[p] == p);
        for (u64 s = 0; s < p; ++s) CHECK(sizes[s] == p - 1);
    }
}

TEST_CASE("kappa scans to the first nonzero quotient") {
    CHECK(kappa(make_context(3)) == 2);
    CHECK(kappa(make_context(5)) == 2);
    CHECK(kappa(make_context(1093)) == 3); // q(2) = 0, q(3) != 0
    CHECK(kappa(make_context(3511)) == 3);
    for (u64 p : primes_in_range(3, 2000)) {
        const u64 k = kappa(make_context(p));
        CHECK(k >= 2); // q_p(1) = 0 always
        CHECK(k < p);
    }
}

TEST_CASE("inverse_table inverts") {
    for (u64 p : primes_in_range(3, 300)) {
        const auto inv = inverse_table(p);
        for (u64 j = 1; j < p; ++j) CHECK(j * inv[j] % p == 1);
    }
}

TEST_CASE("mirimanoff_eval examples and brute-force agreement") {
    const auto c3 = make_context(3);
    CHECK(mirimanoff_eval(c3, 0) == 0);
    CHECK(mirimanoff_eval(c3, 1) == 0);
    CHECK(mirimanoff_eval(c3, 2) == 1);
    const auto c5 = make_context(5);
    const u64 expected5[] = {0, 0, 4, 3, 4};
    for (u64 t = 0; t < 5; ++t) CHECK(mirimanoff_eval(c5, t) == expected5[t]);

    for (u64 p : primes_in_range(3, 100)) {
        const auto ctx = make_context(p);
        for (u64 t = 0; t < p; ++t) CHECK(mirimanoff_eval(ctx, t) == brute_mirimanoff(p, t));
    }
}

TEST_CASE("mirimanoff_eval_fast equals the power sum on [2, p)") {
    const auto c3 = make_context(3);
    CHECK(mirimanoff_eval_fast(c3, 2) == 1);
    CHECK_THROWS_AS(mirimanoff_eval_fast(c3, 0), UndefinedAt);
    CHECK_THROWS_AS(mirimanoff_eval_fast(c3, 1), UndefinedAt);
    const auto c5 = make_context(5);
    CHECK(mirimanoff_eval_fast(c5, 2) == mirimanoff_eval(c5, 2));
}

TEST_CASE("three gamma_p evaluations agree for primes below 300") {
    for (u64 p : primes_in_range(3, 300)) {
        const auto ctx = make_context(p);
        const auto inv = inverse_table(p);
        for (u64 t = 2; t < p; ++t) {
            const u64 direct = mirimanoff_eval(ctx, t, inv);
            CHECK(direct == mirimanoff_eval_fast(ctx, t));
            CHECK(direct == binomial_mirimanoff(ctx, t));
        }
    }
}

TEST_CASE("mirimanoff_zero_count examples and brute-force agreement") {
    CHECK(mirimanoff_zero_count(make_context(3)) == 2);
    CHECK(mirimanoff_zero_count(make_context(5)) == 2);
    CHECK(mirimanoff_zero_count(make_context(7)) == 4);
    CHECK(mirimanoff_zero_count(make_context(11)) == 2);
    CHECK(mirimanoff_zero_count(make_context(13)) == 4);
    CHECK(mirimanoff_zero_count(make_context(97)) == 4);

    for (u64 p : primes_in_range(3, 500)) {
        const auto ctx = make_context(p);
        const auto inv = inverse_table(p);
        u64 brute = 0;
        for (u64 t = 0; t < p; ++t) {
            if (mirimanoff_eval(ctx, t, inv) == 0) ++brute;
        }
        CHECK(mirimanoff_zero_count(ctx) == brute);
    }
}

TEST_CASE("eta dominates kappa: 0..kappa-1 are all roots") {
    for (u64 p : primes_in_range(3, 2000)) {
        const auto ctx = make_context(p);
        CHECK(mirimanoff_zero_count(ctx) >= kappa(ctx));
    }
}

TEST_CASE("kappa_via_mirimanoff equals kappa below 2000") {
    CHECK(kappa_via_mirimanoff(make_context(3)) == 2);
    CHECK(kappa_via_mirimanoff(make_context(5)) == kappa(make_context(5)));
    CHECK(kappa_via_mirimanoff(make_context(7)) == kappa(make_context(7)));
    for (u64 p : primes_in_range(3, 2000)) {
        const auto ctx = make_context(p);
        CHECK(kappa_via_mirimanoff(ctx) == kappa(ctx));
    }
}

TEST_CASE("teichmueller decomposition round-trips") {
    const auto c3 = make_context(3);
    auto parts = teichmueller_decompose(c3, 1);
    CHECK(parts.d == 0);
    CHECK(parts.q == 0);
    parts = teichmueller_decompose(c3, 8);
    CHECK(parts.d == 1);
    CHECK(parts.q == 0);
    CHECK_THROWS_AS(teichmueller_decompose(c3, 6), NotCoprime);

    Rng rng(987);
    for (u64 p : {5ull, 97ull, 1093ull}) {
        const auto ctx = make_context(p);
        int done = 0;
        while (done < 200) {
            const u64 k = rng() % ctx.p_squared;
            if (k % p == 0) continue;
            const auto tp = teichmueller_decompose(ctx, k);
            CHECK(tp.d < p - 1);
            CHECK(tp.q < p);
            CHECK(teichmueller_reconstruct(ctx, tp) == k);
            ++done;
        }
    }
}

TEST_CASE("Reducer agrees with the native modulo") {
    Rng rng(5);
    for (u64 d : {3ull, 7ull, 9973ull, 65537ull, 4294967291ull}) {
        const Reducer red(d);
        for (int i = 0; i < 2000; ++i) {
            const u64 x = rng() >> 1; // < 2^63
            CHECK(red.reduce(x) == x % d);
        }
    }
}

TEST_CASE("pow_mod against naive repeated multiplication") {
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const u64 m = 2 + rng() % 100000;
        const u64 b = rng() % m;
        const u64 e = rng() % 40;
        u64 naive = 1;
        for (u64 j = 0; j < e; ++j) naive = naive * b % m;
        CHECK(pow_mod(b, e, m) == naive);
    }
    // big modulus path
    const u64 m = (1ull << 62) + 11;
    CHECK(mul_mod(m - 1, m - 1, m) == pow_mod(m - 1, 2, m));
}

TEST_CASE("primes_in_range") {
    CHECK(primes_in_range(3, 3) == std::vector<u64>{3});
    CHECK(primes_in_range(3, 10'000).size() == 1228); // 1229 primes minus {2}
    for (u64 p : primes_in_range(3, 1000)) CHECK(is_odd_prime(p));
}
