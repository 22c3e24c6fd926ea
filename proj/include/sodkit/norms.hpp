#pragma once

#include "sodkit/events.hpp"

#include <span>
#include <string_view>

namespace sodkit {

enum class NormKind { discrepancy, alexiewicz, max_max_sum };

/// Accepts "D", "A", "M" (and the long names).
NormKind parse_norm(std::string_view name);
std::string_view norm_name(NormKind kind);

/// Range of the prefix-sum walk: max(max P, 0) - min(min P, 0).
double discrepancy_norm(std::span<const double> values);
double discrepancy_norm(const EventSequence& eta);

/// Direct maximum of |sum| over all index intervals. O(n^2); n <= 10000.
double discrepancy_bruteforce(std::span<const double> values);
double discrepancy_bruteforce(const EventSequence& eta);

/// Largest |prefix sum|.
double alexiewicz_norm(std::span<const double> values);
double alexiewicz_norm(const EventSequence& eta);

/// max(max |v_k|, |sum v_k|).
double max_max_sum_norm(std::span<const double> values);
double max_max_sum_norm(const EventSequence& eta);

double norm(NormKind kind, std::span<const double> values);
double norm(NormKind kind, const EventSequence& eta);

inline constexpr std::size_t kBruteforceLimit = 10000;

} // namespace sodkit
