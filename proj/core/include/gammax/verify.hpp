#pragma once

#include <span>
#include <string>
#include <vector>

#include "gammax/ntheory.hpp"

namespace gammax {

/// One row of the oracle-equivalence check: the largest componentwise gap
/// between the aggregated statevector distribution and the closed form.
struct LemmaCheck {
    u64 p = 0;
    double max_deviation = 0.0;
    bool pass = false;
    std::string error; // e.g. "TooLarge" for p > 101; empty when the check ran
};

/// Runs the equivalence suite for each prime. Failures come back as rows,
/// never exceptions.
std::vector<LemmaCheck> verify_lemmas(std::span<const u64> primes);

bool all_pass(std::span<const LemmaCheck> checks);

} // namespace gammax
