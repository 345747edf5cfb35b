#include "gammax/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

namespace gammax {

double log_of(double x, LogBase base) {
    return base == LogBase::natural ? std::log(x) : std::log2(x);
}

std::vector<u64> subgroup_units(const PrimeContext& ctx) {
    std::vector<u64> units(ctx.p - 1);
    u64 u = 1;
    for (u64 j = 0; j + 1 < ctx.p; ++j) {
        units[j] = u;
        u = mul_mod(u, ctx.w, ctx.p_squared);
    }
    return units;
}

namespace {

// The exponent of the (j, a) term is w^j * (1 - a*p) mod p^2. Writing
// w^j = h*p + l, the reduction is exact in integers:
//
//   e(j, a) = l + p * ((h - a*l) mod p)
//
// so the low digit l is независent of a and the high digit walks down by l
// steps of the a loop. cos(2*pi*e/p^2) then splits over the digits:
//
//   cos(2*pi*hi/p + 2*pi*l/p^2)
//
// which turns the inner loop into two table lookups, one subtraction and a
// fused multiply-add per term. values[a] accumulates with Kahan
// compensation; the summation order (j ascending) is fixed and independent
// of the thread count, so tables are bit-identical however the a range is
// split.
struct TrigTables {
    std::vector<double> hi; // interleaved {cos, sin}(2*pi*h/p), h in [0, p)
    std::vector<double> lo; // interleaved {cos, sin}(2*pi*l/p^2), l in [0, p)
};

TrigTables build_trig(u64 p, u64 p2) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    TrigTables t;
    t.hi.resize(2 * p);
    t.lo.resize(2 * p);
    for (u64 k = 0; k < p; ++k) {
        double ah = two_pi * static_cast<double>(k) / static_cast<double>(p);
        double al = two_pi * static_cast<double>(k) / static_cast<double>(p2);
        t.hi[2 * k] = std::cos(ah);
        t.hi[2 * k + 1] = std::sin(ah);
        t.lo[2 * k] = std::cos(al);
        t.lo[2 * k + 1] = std::sin(al);
    }
    return t;
}

void accumulate_range(const PrimeContext& ctx, const TrigTables& trig, u64 a_begin, u64 a_end,
                      std::span<double> sum, std::span<double> comp) {
    const u64 p = ctx.p;
    const u64 n = a_end - a_begin;
    u64 unit = 1; // w^j mod p^2
    for (u64 j = 0; j + 1 < p; ++j) {
        const u64 h = unit / p;
        const u64 l = unit % p;
        const double cl = trig.lo[2 * l];
        const double sl = trig.lo[2 * l + 1];
        // hi(j, a) = (h - a*l) mod p, stepped down by l per unit of a
        u64 hi = (h + p - a_begin % p * l % p) % p;
        for (u64 i = 0; i < n; ++i) {
            const double term = trig.hi[2 * hi] * cl - trig.hi[2 * hi + 1] * sl;
            const double y = term - comp[i];
            const double t = sum[i] + y;
            comp[i] = (t - sum[i]) - y;
            sum[i] = t;
            hi -= l;
            if (hi >= p) hi += p; // unsigned wrap
        }
        unit = mul_mod(unit, ctx.w, ctx.p_squared);
    }
}

} // namespace

ConjugateTable gamma_conjugates(const PrimeContext& ctx, unsigned threads) {
    const u64 p = ctx.p;
    ConjugateTable table;
    table.p = p;
    table.values.assign(p, 0.0);
    std::vector<double> comp(p, 0.0);

    const TrigTables trig = build_trig(p, ctx.p_squared);

    if (threads <= 1 || p < 512) {
        accumulate_range(ctx, trig, 0, p, table.values, comp);
    } else {
        const unsigned n_workers = static_cast<unsigned>(std::min<u64>(threads, p));
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned widx = 0; widx < n_workers; ++widx) {
            const u64 a_begin = p * widx / n_workers;
            const u64 a_end = p * (widx + 1) / n_workers;
            pool.emplace_back([&, a_begin, a_end] {
                accumulate_range(ctx, trig, a_begin, a_end,
                                 std::span<double>(table.values).subspan(a_begin, a_end - a_begin),
                                 std::span<double>(comp).subspan(a_begin, a_end - a_begin));
            });
        }
        for (auto& th : pool) th.join();
    }

    auto [gmax, argmax] = gamma_max_of(table.values);
    table.gamma_max = gmax;
    table.argmax = std::move(argmax);
    return table;
}

std::pair<double, std::vector<u64>> gamma_max_of(std::span<const double> values) {
    double gmax = 0.0;
    for (double v : values) gmax = std::max(gmax, std::abs(v));
    constexpr double tie_tol = 1e-12;
    std::vector<u64> argmax;
    for (u64 a = 0; a < values.size(); ++a) {
        if (std::abs(values[a]) >= gmax - tie_tol) argmax.push_back(a);
    }
    return {gmax, argmax};
}

MaxGammaSet maxgamma_set(const ConjugateTable& table, unsigned t, LogBase base) {
    if (t < 1) throw OutOfRange("MAXGAMMA exponent t must be >= 1");
    MaxGammaSet out;
    out.threshold = 1.0 - 1.0 / std::pow(log_of(static_cast<double>(table.p), base), static_cast<double>(t));
    out.degenerate = out.threshold <= 0.0;
    for (u64 a = 0; a < table.p; ++a) {
        if (std::abs(table.values[a]) / table.gamma_max > out.threshold) out.indices.push_back(a);
    }
    return out;
}

double alpha(const ConjugateTable& table, u64 a) {
    if (a >= table.p) throw OutOfRange("conjugate index out of range");
    return std::abs(table.values[a]) / table.gamma_max;
}

} // namespace gammax
