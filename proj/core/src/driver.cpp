#include "gammax/driver.hpp"

#include <algorithm>
#include <cmath>

namespace gammax {

u64 repetitions(u64 p, unsigned k, u64 cap) {
    if (k < 1 || cap < 1) throw OutOfRange("repetitions needs k >= 1 and cap >= 1");
    const double raw = std::pow(std::log(static_cast<double>(p)), static_cast<double>(k));
    if (!(raw < static_cast<double>(cap))) return cap;
    const u64 rounded = static_cast<u64>(std::llround(raw));
    return std::max<u64>(1, std::min(cap, rounded));
}

std::pair<u64, bool> pick_winner(std::span<const u64> tally, Rng& rng) {
    const u64 top = *std::max_element(tally.begin(), tally.end());
    std::vector<u64> leaders;
    for (u64 a = 0; a < tally.size(); ++a) {
        if (tally[a] == top) leaders.push_back(a);
    }
    if (leaders.size() == 1) return {leaders.front(), false};
    return {leaders[uniform_below(rng, leaders.size())], true};
}

RunReport run(const PrimeContext& ctx, const ConjugateTable& table, const RunConfig& config, Rng& rng) {
    if (table.p != ctx.p) throw InvalidInput("conjugate table does not match the prime context");

    RunReport report;
    report.p = ctx.p;
    report.seed = config.seed;
    const double raw = std::pow(std::log(static_cast<double>(ctx.p)), static_cast<double>(config.k));
    report.capped = !(raw < static_cast<double>(config.rep_cap));
    report.repetitions_used = repetitions(ctx.p, config.k, config.rep_cap);

    const OutcomeDistribution dist = build_distribution(table);
    const OutcomeSampler sampler(dist);
    report.tally.assign(ctx.p, 0);
    for (u64 i = 0; i < report.repetitions_used; ++i) {
        const MeasurementOutcome outcome = sampler.sample(rng);
        if (!outcome.is_failure()) ++report.tally[outcome.sigma_prime];
    }

    u64 tallied = 0;
    for (u64 c : report.tally) tallied += c;
    report.empty_tally = tallied == 0; // every tally ties at zero: uniform guess below

    auto [winner, tie] = pick_winner(report.tally, rng);
    report.winner_sigma_prime = winner;
    report.tie_detected = tie;
    report.alpha_winner = alpha(table, winner);
    const MaxGammaSet max_set = maxgamma_set(table, config.t, config.log_base);
    report.in_maxgamma =
        std::find(max_set.indices.begin(), max_set.indices.end(), winner) != max_set.indices.end();
    report.galois_multiplier = winner == 0 ? 1 : ctx.p_squared - winner * ctx.p + 1;
    return report;
}

RunReport run(const PrimeContext& ctx, const ConjugateTable& table, const RunConfig& config) {
    Rng rng(config.seed);
    return run(ctx, table, config, rng);
}

bool success(const RunReport& report, const ConjugateTable& table, unsigned t, LogBase base) {
    const MaxGammaSet max_set = maxgamma_set(table, t, base);
    return std::find(max_set.indices.begin(), max_set.indices.end(), report.winner_sigma_prime) !=
           max_set.indices.end();
}

} // namespace gammax
