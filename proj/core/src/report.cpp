#include "gammax/report.hpp"

#include <nlohmann/json.hpp>

namespace gammax {

using json = nlohmann::ordered_json;

std::string run_report_json(const RunReport& report) {
    json j;
    j["p"] = report.p;
    j["repetitions_used"] = report.repetitions_used;
    j["tally"] = report.tally;
    j["winner_sigma_prime"] = report.winner_sigma_prime;
    j["tie_detected"] = report.tie_detected;
    j["alpha_winner"] = report.alpha_winner;
    j["in_maxgamma"] = report.in_maxgamma;
    j["seed"] = report.seed;
    j["capped"] = report.capped;
    return j.dump();
}

std::string conjugate_table_json(const ConjugateTable& table) {
    json j;
    j["p"] = table.p;
    j["values"] = table.values;
    j["gamma_max"] = table.gamma_max;
    j["argmax"] = table.argmax;
    return j.dump();
}

} // namespace gammax
