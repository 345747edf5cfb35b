#include "gammax/verify.hpp"

#include <cmath>

#include "gammax/cyclotomic.hpp"
#include "gammax/qsim.hpp"

namespace gammax {

namespace {

double max_componentwise_gap(const OutcomeDistribution& a, const OutcomeDistribution& b) {
    double dev = std::abs(a.prob_fail_sp - b.prob_fail_sp);
    dev = std::max(dev, std::abs(a.prob_fail_a0 - b.prob_fail_a0));
    dev = std::max(dev, std::abs(a.prob_fail_akp - b.prob_fail_akp));
    for (u64 i = 0; i < a.p; ++i) {
        dev = std::max(dev, std::abs(a.sigma_probs[i] - b.sigma_probs[i]));
    }
    return dev;
}

} // namespace

std::vector<LemmaCheck> verify_lemmas(std::span<const u64> primes) {
    std::vector<LemmaCheck> out;
    out.reserve(primes.size());
    for (u64 p : primes) {
        LemmaCheck check;
        check.p = p;
        try {
            const PrimeContext ctx = make_context(p);
            const OutcomeDistribution closed = build_distribution(gamma_conjugates(ctx));
            const OutcomeDistribution oracle = aggregate_statevector(statevector_distribution(ctx), ctx);
            check.max_deviation = max_componentwise_gap(closed, oracle);
            check.pass = check.max_deviation < 1e-9;
        } catch (const TooLarge&) {
            check.error = "TooLarge";
        } catch (const NotOddPrime&) {
            check.error = "NotOddPrime";
        }
        out.push_back(std::move(check));
    }
    return out;
}

bool all_pass(std::span<const LemmaCheck> checks) {
    for (const LemmaCheck& c : checks) {
        if (!c.pass) return false;
    }
    return !checks.empty();
}

} // namespace gammax
