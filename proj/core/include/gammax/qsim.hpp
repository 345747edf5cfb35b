#pragma once

#include <cstdint>
#include <vector>

#include "gammax/cyclotomic.hpp"
#include "gammax/ntheory.hpp"
#include "gammax/rng.hpp"

namespace gammax {

/// One measurement of the subroutine. Either a recorded residue sigma' or
/// one of the three failure shapes that produce no integer.
struct MeasurementOutcome {
    enum class Kind : std::uint8_t {
        fail_sp_multiple, // s = p and p | a
        fail_a_zero,      // s != p and a = 0
        fail_a_multiple,  // s != p and a = kp, k != 0
        sigma,            // s != p, p does not divide a
    };
    Kind kind = Kind::sigma;
    u64 sigma_prime = 0; // meaningful only when kind == sigma

    bool is_failure() const { return kind != Kind::sigma; }
};

/// Exact outcome law of one subroutine run: three failure masses plus the p
/// success probabilities, sigma_probs[a] = (1 - 1/p) * (values[a]/p)^2.
struct OutcomeDistribution {
    u64 p = 0;
    double prob_fail_sp = 0.0;  // 1/p
    double prob_fail_a0 = 0.0;  // (p-1)^2 / p^3
    double prob_fail_akp = 0.0; // (p-1) / p^3
    std::vector<double> sigma_probs;

    double failure_total() const { return prob_fail_sp + prob_fail_a0 + prob_fail_akp; }
    double total() const;
};

/// Closed-form distribution from a conjugate table. Throws
/// NormalizationFailure if the masses stray from 1 by more than 1e-9,
/// which signals a broken table upstream.
OutcomeDistribution build_distribution(const ConjugateTable& table);

/// Brute-force measurement table: prob(a, s) for every a in [0, p^2) and
/// s in [0, p], straight from the defining Fourier sums.
struct StatevectorTable {
    u64 p = 0;
    std::vector<double> prob; // row-major: prob[a * (p + 1) + s]

    double at(u64 a, u64 s) const { return prob[a * (p + 1) + s]; }
    double total() const;
};

/// Enumerates all p^2 basis states and their exact DFT masses. Guarded to
/// p <= 101 (cost grows like p^4); throws TooLarge beyond.
StatevectorTable statevector_distribution(const PrimeContext& ctx);

/// Buckets every (a, s) cell of the statevector table into the outcome
/// categories of the closed form. Throws LeakedMass if probability lands in
/// a cell outside every bucket.
OutcomeDistribution aggregate_statevector(const StatevectorTable& sv, const PrimeContext& ctx);

/// O(1)-per-draw sampler over an OutcomeDistribution (Vose alias table).
class OutcomeSampler {
  public:
    explicit OutcomeSampler(const OutcomeDistribution& dist);

    MeasurementOutcome sample(Rng& rng) const;

  private:
    u64 p_;
    std::vector<double> accept_;
    std::vector<std::uint32_t> alias_;
};

/// Convenience wrapper: builds the alias table and draws count outcomes.
std::vector<MeasurementOutcome> sample_many(const OutcomeDistribution& dist, u64 count, Rng& rng);

} // namespace gammax
