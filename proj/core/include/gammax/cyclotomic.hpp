#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gammax/ntheory.hpp"

namespace gammax {

/// Which logarithm Eq-style thresholds use; the membership set at small p
/// depends on the choice, so it is a visible knob rather than a constant.
enum class LogBase { natural, two };

double log_of(double x, LogBase base);

/// The p real conjugate values of the Gauss period: values[a] is the sum of
/// cos(2*pi*e/p^2) over e in U*(1-ap) mod p^2, where U is the subgroup of
/// (p-1)-th roots of unity mod p^2.
struct ConjugateTable {
    u64 p = 0;
    std::vector<double> values;  // size p
    double gamma_max = 0.0;      // max |values[a]|
    std::vector<u64> argmax;     // all a within 1e-12 of the max
};

/// The subgroup U = {w^j mod p^2 : j = 0..p-2}, in power order.
std::vector<u64> subgroup_units(const PrimeContext& ctx);

/// Builds the conjugate table. Work splits over disjoint ranges of a, so the
/// result is identical for every thread count.
ConjugateTable gamma_conjugates(const PrimeContext& ctx, unsigned threads = 1);

/// Maximum of |values| plus every index within absolute 1e-12 of it.
std::pair<double, std::vector<u64>> gamma_max_of(std::span<const double> values);

struct MaxGammaSet {
    std::vector<u64> indices;
    double threshold = 0.0; // 1 - 1/(log p)^t
    bool degenerate = false; // threshold <= 0: every element qualifies trivially
};

/// Indices a with |values[a]| / gamma_max > 1 - 1/(log p)^t. Always contains
/// the argmax set. Requires t >= 1.
MaxGammaSet maxgamma_set(const ConjugateTable& table, unsigned t, LogBase base = LogBase::natural);

/// |values[a]| / gamma_max, in [0, 1]. Throws OutOfRange unless a < p.
double alpha(const ConjugateTable& table, u64 a);

} // namespace gammax
