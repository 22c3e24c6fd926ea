#pragma once

#include "sodkit/events.hpp"

#include <stdexcept>
#include <string_view>
#include <vector>

namespace sodkit {

struct VanRossumParams {
    /// Decay rate 1/t_c; 0 selects the unit-step kernel.
    double alpha = 1.0;
};

/// ||R_a - R_b||_2 over [0, T], R_eta(t) = sum_k v_k exp(-alpha (t - t_k)) 1[t >= t_k].
double van_rossum(const EventSequence& a, const EventSequence& b, VanRossumParams p);
/// ||R_eta||_2^2 over [0, T].
double van_rossum_energy(const EventSequence& eta, VanRossumParams p);
/// R_eta(t).
double van_rossum_trace(const EventSequence& eta, VanRossumParams p, double t);
/// inf |R_eta(t)| over [t_1, T]. |R_eta| decays between events, so the
/// infimum is min_k |R_eta(t_k)| exp(-alpha gap_k), the last gap ending at T.
double van_rossum_floor(const EventSequence& eta, VanRossumParams p);

/// Undefined similarity: an input has zero smoothed energy.
class UndefinedSimilarity : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class SchreiberKernel { causal_exponential, gaussian };
enum class SchreiberDistance { one_minus_s, arccos };

struct SchreiberParams {
    SchreiberKernel kernel = SchreiberKernel::causal_exponential;
    /// Decay rate for the causal kernel, width for the Gaussian.
    double alpha = 1.0;
    double sigma = 0.05;
    SchreiberDistance h = SchreiberDistance::one_minus_s;
};

/// Normalized inner product of the kernel-smoothed trains over [0, T].
double schreiber_similarity(const EventSequence& a, const EventSequence& b, const SchreiberParams& p);
/// h(S) with the configured h.
double schreiber_distance(const EventSequence& a, const EventSequence& b, const SchreiberParams& p);

enum class VpMode {
    /// DP(a+, b+) + DP(a-, b-).
    split,
    /// One DP between a+ + b- and a- + b+.
    combined,
};

VpMode parse_vp_mode(std::string_view name);

struct VictorPurpuraParams {
    double s = 1.0;
    VpMode mode = VpMode::split;
};

/// Edit distance between non-negative spike trains given as sorted times
/// (repeats allowed): insert/delete cost 1, shift cost s |dt|.
double victor_purpura_trains(const std::vector<double>& a, const std::vector<double>& b, double s);

/// Signed extension. Amplitudes must be integers; an event of amplitude v
/// stands for |v| coincident unit spikes.
double victor_purpura(const EventSequence& a, const EventSequence& b, const VictorPurpuraParams& p);

} // namespace sodkit
