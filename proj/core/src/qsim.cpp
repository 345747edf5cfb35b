#include "gammax/qsim.hpp"

#include <cmath>
#include <numbers>

namespace gammax {

double OutcomeDistribution::total() const {
    double acc = failure_total();
    for (double s : sigma_probs) acc += s;
    return acc;
}

OutcomeDistribution build_distribution(const ConjugateTable& table) {
    const double p = static_cast<double>(table.p);
    OutcomeDistribution dist;
    dist.p = table.p;
    dist.prob_fail_sp = 1.0 / p;
    dist.prob_fail_a0 = (p - 1.0) * (p - 1.0) / (p * p * p);
    dist.prob_fail_akp = (p - 1.0) / (p * p * p);
    dist.sigma_probs.resize(table.p);
    const double success_scale = 1.0 - 1.0 / p;
    for (u64 a = 0; a < table.p; ++a) {
        const double amp = table.values[a] / p;
        dist.sigma_probs[a] = success_scale * amp * amp;
    }
    if (std::abs(dist.total() - 1.0) > 1e-9) {
        throw NormalizationFailure("outcome masses sum to " + std::to_string(dist.total()));
    }
    return dist;
}

double StatevectorTable::total() const {
    double acc = 0.0;
    for (double v : prob) acc += v;
    return acc;
}

StatevectorTable statevector_distribution(const PrimeContext& ctx) {
    if (ctx.p > 101) throw TooLarge("statevector oracle is limited to p <= 101");
    const u64 p = ctx.p;
    const u64 p2 = ctx.p_squared;

    // partition x in [0, p^2) by f(x): s = p collects the multiples of p,
    // each s in [0, p) collects the p-1 units with that Fermat quotient
    std::vector<std::vector<u64>> classes(p + 1);
    classes[p].reserve(p);
    for (u64 x = 0; x < p2; ++x) classes[f_map(ctx, x)].push_back(x);

    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> cs(2 * p2);
    for (u64 k = 0; k < p2; ++k) {
        double angle = two_pi * static_cast<double>(k) / static_cast<double>(p2);
        cs[2 * k] = std::cos(angle);
        cs[2 * k + 1] = std::sin(angle);
    }

    StatevectorTable sv;
    sv.p = p;
    sv.prob.assign(p2 * (p + 1), 0.0);
    const double norm = 1.0 / (static_cast<double>(p2) * static_cast<double>(p2));
    for (u64 a = 0; a < p2; ++a) {
        for (u64 s = 0; s <= p; ++s) {
            double re = 0.0, im = 0.0;
            for (u64 x : classes[s]) {
                const u64 e = a * x % p2;
                re += cs[2 * e];
                im += cs[2 * e + 1];
            }
            sv.prob[a * (p + 1) + s] = (re * re + im * im) * norm;
        }
    }
    return sv;
}

OutcomeDistribution aggregate_statevector(const StatevectorTable& sv, const PrimeContext& ctx) {
    const u64 p = ctx.p;
    const u64 p2 = ctx.p_squared;
    OutcomeDistribution dist;
    dist.p = p;
    dist.sigma_probs.assign(p, 0.0);

    double leaked = 0.0;
    for (u64 a = 0; a < p2; ++a) {
        const bool a_multiple = (a % p == 0);
        const u64 q_a = a_multiple ? 0 : fermat_quotient(ctx, a);
        for (u64 s = 0; s <= p; ++s) {
            const double mass = sv.at(a, s);
            if (s == p) {
                if (a_multiple) {
                    dist.prob_fail_sp += mass;
                } else {
                    leaked += mass; // zero by the vanishing geometric sum
                }
            } else if (a == 0) {
                dist.prob_fail_a0 += mass;
            } else if (a_multiple) {
                dist.prob_fail_akp += mass;
            } else {
                dist.sigma_probs[(q_a + s) % p] += mass;
            }
        }
    }
    if (leaked > 1e-12) {
        throw LeakedMass("probability " + std::to_string(leaked) + " fits no outcome bucket");
    }
    return dist;
}

OutcomeSampler::OutcomeSampler(const OutcomeDistribution& dist) : p_(dist.p) {
    // Vose alias construction over the 3 + p categories
    const std::size_t n = 3 + dist.p;
    std::vector<double> scaled(n);
    scaled[0] = dist.prob_fail_sp * static_cast<double>(n);
    scaled[1] = dist.prob_fail_a0 * static_cast<double>(n);
    scaled[2] = dist.prob_fail_akp * static_cast<double>(n);
    for (u64 a = 0; a < dist.p; ++a) scaled[3 + a] = dist.sigma_probs[a] * static_cast<double>(n);

    accept_.assign(n, 1.0);
    alias_.assign(n, 0);
    std::vector<std::uint32_t> small, large;
    for (std::uint32_t i = 0; i < n; ++i) (scaled[i] < 1.0 ? small : large).push_back(i);
    while (!small.empty() && !large.empty()) {
        const std::uint32_t s = small.back();
        small.pop_back();
        const std::uint32_t l = large.back();
        accept_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] = (scaled[l] + scaled[s]) - 1.0;
        if (scaled[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    // leftovers are 1 up to rounding
    for (std::uint32_t i : small) accept_[i] = 1.0;
    for (std::uint32_t i : large) accept_[i] = 1.0;
}

MeasurementOutcome OutcomeSampler::sample(Rng& rng) const {
    const u64 column = uniform_below(rng, accept_.size());
    const u64 idx = uniform01(rng) < accept_[column] ? column : alias_[column];
    MeasurementOutcome out;
    switch (idx) {
        case 0: out.kind = MeasurementOutcome::Kind::fail_sp_multiple; break;
        case 1: out.kind = MeasurementOutcome::Kind::fail_a_zero; break;
        case 2: out.kind = MeasurementOutcome::Kind::fail_a_multiple; break;
        default:
            out.kind = MeasurementOutcome::Kind::sigma;
            out.sigma_prime = idx - 3;
            break;
    }
    return out;
}

std::vector<MeasurementOutcome> sample_many(const OutcomeDistribution& dist, u64 count, Rng& rng) {
    OutcomeSampler sampler(dist);
    std::vector<MeasurementOutcome> out;
    out.reserve(count);
    for (u64 i = 0; i < count; ++i) out.push_back(sampler.sample(rng));
    return out;
}

} // namespace gammax
