#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gammax/cyclotomic.hpp"
#include "gammax/qsim.hpp"
#include "gammax/rng.hpp"

namespace gammax {

struct RunConfig {
    unsigned t = 1;          // MAXGAMMA membership exponent
    unsigned k = 13;         // repetition exponent: R = (log p)^k
    u64 rep_cap = 1'000'000; // hard ceiling on drawn samples
    u64 seed = 0;
    LogBase log_base = LogBase::natural;
};

struct RunReport {
    u64 p = 0;
    u64 repetitions_used = 0;
    std::vector<u64> tally; // per sigma'; failed draws are discarded, not tallied
    u64 winner_sigma_prime = 0;
    bool tie_detected = false;
    double alpha_winner = 0.0;
    bool in_maxgamma = false;
    u64 seed = 0;
    bool capped = false;      // rep_cap bound the repetition count
    bool empty_tally = false; // every draw failed; winner is a flagged uniform guess
    u64 galois_multiplier = 0; // (1 - winner*p) mod p^2, the j_p image datum
};

/// min(cap, round((ln p)^k)), floored at one repetition.
u64 repetitions(u64 p, unsigned k, u64 cap);

/// Argmax of the tally with a uniform random tie-break among the leaders.
/// Returns {winner, tie_detected}.
std::pair<u64, bool> pick_winner(std::span<const u64> tally, Rng& rng);

/// End-to-end run: draw repetitions(p, k, cap) samples from the closed-form
/// distribution, tally the sigma' outcomes, pick the modal value and check
/// it against MAXGAMMA_{p,t}.
RunReport run(const PrimeContext& ctx, const ConjugateTable& table, const RunConfig& config, Rng& rng);

/// Seeds a fresh engine from config.seed and runs.
RunReport run(const PrimeContext& ctx, const ConjugateTable& table, const RunConfig& config);

/// Whether the report's winner lies in MAXGAMMA_{p,t}.
bool success(const RunReport& report, const ConjugateTable& table, unsigned t,
             LogBase base = LogBase::natural);

} // namespace gammax
