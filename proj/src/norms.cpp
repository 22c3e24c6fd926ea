#include "sodkit/norms.hpp"

#include "sodkit/errors.hpp"
#include "sodkit/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sodkit {

NormKind parse_norm(std::string_view name) {
    if (name == "D" || name == "discrepancy") {
        return NormKind::discrepancy;
    }
    if (name == "A" || name == "alexiewicz") {
        return NormKind::alexiewicz;
    }
    if (name == "M" || name == "max_max_sum") {
        return NormKind::max_max_sum;
    }
    throw DomainError("unknown norm '" + std::string(name) + "' (expected D|A|M)");
}

std::string_view norm_name(NormKind kind) {
    switch (kind) {
    case NormKind::discrepancy:
        return "D";
    case NormKind::alexiewicz:
        return "A";
    case NormKind::max_max_sum:
        return "M";
    }
    return "?";
}

double discrepancy_norm(std::span<const double> values) {
    const auto s = simd::prefix_stats(values);
    return s.max_prefix - s.min_prefix;
}

double discrepancy_norm(const EventSequence& eta) {
    return discrepancy_norm(eta.values());
}

double discrepancy_bruteforce(std::span<const double> values) {
    if (values.size() > kBruteforceLimit) {
        throw SizeGuardError("discrepancy_bruteforce: " + std::to_string(values.size()) +
                             " events exceed the limit of " + std::to_string(kBruteforceLimit));
    }
    // Differences of prefix sums, so rounding matches the O(n) walk.
    std::vector<double> prefix(values.size() + 1, 0.0);
    for (std::size_t k = 0; k < values.size(); ++k) {
        prefix[k + 1] = prefix[k] + values[k];
    }
    double best = 0.0;
    for (std::size_t a = 0; a < prefix.size(); ++a) {
        for (std::size_t b = a + 1; b < prefix.size(); ++b) {
            best = std::max(best, std::fabs(prefix[b] - prefix[a]));
        }
    }
    return best;
}

double discrepancy_bruteforce(const EventSequence& eta) {
    return discrepancy_bruteforce(eta.values());
}

double alexiewicz_norm(std::span<const double> values) {
    const auto s = simd::prefix_stats(values);
    return std::max(s.max_prefix, -s.min_prefix);
}

double alexiewicz_norm(const EventSequence& eta) {
    return alexiewicz_norm(eta.values());
}

double max_max_sum_norm(std::span<const double> values) {
    const auto s = simd::prefix_stats(values);
    return std::max(s.max_abs, std::fabs(s.total));
}

double max_max_sum_norm(const EventSequence& eta) {
    return max_max_sum_norm(eta.values());
}

double norm(NormKind kind, std::span<const double> values) {
    switch (kind) {
    case NormKind::discrepancy:
        return discrepancy_norm(values);
    case NormKind::alexiewicz:
        return alexiewicz_norm(values);
    case NormKind::max_max_sum:
        return max_max_sum_norm(values);
    }
    throw DomainError("unknown norm");
}

double norm(NormKind kind, const EventSequence& eta) {
    return norm(kind, eta.values());
}

} // namespace sodkit
