#pragma once

#include <string>

#include "gammax/cyclotomic.hpp"
#include "gammax/driver.hpp"

namespace gammax {

/// RunReport as a single-line JSON object with the fixed key set
/// p, repetitions_used, tally, winner_sigma_prime, tie_detected,
/// alpha_winner, in_maxgamma, seed, capped (in that order).
std::string run_report_json(const RunReport& report);

/// Conjugate table as {p, values, gamma_max, argmax}.
std::string conjugate_table_json(const ConjugateTable& table);

} // namespace gammax
