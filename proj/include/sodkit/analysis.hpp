#pragma once

#include "sodkit/events.hpp"
#include "sodkit/norms.hpp"
#include "sodkit/random.hpp"
#include "sodkit/sampler.hpp"
#include "sodkit/signal.hpp"
#include "sodkit/spike_metrics.hpp"
#include "sodkit/structure.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace sodkit {

struct VanRossumMetric {
    VanRossumParams params;
};
struct VictorPurpuraMetric {
    VictorPurpuraParams params;
};
struct SchreiberMetric {
    SchreiberParams params;
};

using EventMetric = std::variant<NormKind, VanRossumMetric, VictorPurpuraMetric, SchreiberMetric>;

std::string metric_name(const EventMetric& metric);
double distance(const EventMetric& metric, const EventSequence& a, const EventSequence& b);

// ---------------------------------------------------------------------------
// Generated event-sequence families.

namespace families {

/// n events of alternating sign, starting with `first_sign`, at
/// t_k = k * spacing (k = 0..n-1).
EventSequence alternating(std::size_t n, int first_sign, double spacing, double horizon);
/// ceil(n/2) events +1 followed by floor(n/2) events -1 at t = k/n on [0, 1].
EventSequence mmsn(std::size_t n);
/// k events -1 followed by 2k events +1 on [0, 1].
EventSequence dip(std::size_t k);
/// n events +1 on [0, 1].
EventSequence all_positive(std::size_t n);
/// n random-sign unit events at distinct random times in (0, T].
EventSequence random_units(Rng& rng, std::size_t n, double horizon);
/// Random +-theta events at distinct random times in (0, T].
EventSequence random_pure(Rng& rng, std::size_t n, double theta, double horizon);

} // namespace families

// ---------------------------------------------------------------------------
// EMDM.

struct EmdmOptions {
    /// Largest perturbation as a fraction of theta; halved down to eps_floor.
    double eps_start = 0x1.0p-4;
    double eps_floor = 1e-6;
    /// Consecutive grid points closer than this count as stabilized.
    double tolerance = 1e-9;
};

struct EmdmThetaRow {
    double theta = 0.0;
    double value = 0.0;
    bool stabilized = false;
    double eps = 0.0;
    std::size_t events_at = 0;
    std::size_t events_above = 0;
};

struct EmdmSweepReport {
    std::string metric;
    double lambda = 0.0;
    double argmax_theta = 0.0;
    std::vector<double> eps_grid;
    std::vector<EmdmThetaRow> rows;
};

/// Estimates Lambda_f: for each theta, the distance between
/// (1/theta) Phi_theta(f) and the eps -> 0+ limit of
/// (1/(theta+eps)) Phi_{theta+eps}(f). Event times of the perturbed samples
/// are extrapolated to eps = 0 from the two smallest grid points.
EmdmSweepReport emdm_sweep(const Signal& f, const EventMetric& metric, std::span<const double> thetas,
                           const EmdmOptions& options = {});

struct GrowthRow {
    std::size_t n = 0;
    double horizon = 0.0;
    double spacing = 0.0;
    double value = 0.0;
    /// Bounds the row is checked against; NaN when none apply.
    double lower = 0.0;
    double upper = 0.0;
};

struct EmdmCharacterization {
    std::string metric;
    double value = 0.0;
    std::size_t n_max = 0;
    std::vector<GrowthRow> growth;
};

/// sup of d(eta, 0) over alternating unit sequences. Norms: all counts up to
/// n_max, both starting signs. Time-sensitive metrics: equidistant trains
/// t_k = k * spacing on each horizon (rows with more than n_max events are
/// skipped); van Rossum rows report ||R||^2 with bounds kappa * T and T.
EmdmCharacterization emdm_characterize(const EventMetric& metric, std::size_t n_max,
                                       std::span<const double> horizons, std::span<const double> spacings);

/// e^{-2 alpha D} (1 - e^{-alpha D})^2, or 1/2 for alpha = 0.
double van_rossum_kappa(double alpha, double spacing);

// ---------------------------------------------------------------------------
// Quasi-isometry.

struct SignalPair {
    Signal f;
    Signal g;
};

/// Seeded pairs of random piecewise-linear walks.
std::vector<SignalPair> random_corpus(std::uint64_t seed, std::size_t trials, double horizon = 1.0);

struct QiTrial {
    std::size_t index = 0;
    double theta = 0.0;
    double dx = 0.0;
    double dy = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    bool violated = false;
};

struct EnvelopePoint {
    double dx = 0.0;
    double rho1 = 0.0;
    double rho2 = 0.0;
};

struct QiReport {
    std::string norm;
    double theta = 0.0;
    std::size_t trials = 0;
    /// False for norms without a derived sandwich (M).
    bool bounds_apply = false;
    std::size_t violations = 0;
    double a = 1.0;
    double b = 0.0;
    double b_at_unit_a = 0.0;
    double c = 0.0;
    std::vector<QiTrial> rows;
    std::vector<EnvelopePoint> envelope;
};

/// Slack added to both sides of the sandwich.
inline constexpr double kQiSlack = 1e-9;

/// Checks dx - 4 theta <= ||Phi f - Phi g||_D <= dx + 2 theta (norm D) and
/// dx/2 - 2 theta <= ||.||_A <= dx + 2 theta (norm A), dx = ||f - g||_diam.
QiReport qi_verify(std::span<const SignalPair> corpus, Threshold theta, NormKind kind);

struct IsometryRow {
    double theta = 0.0;
    double dx = 0.0;
    double dy = 0.0;
    double gap = 0.0;
    double ratio = 0.0;
    bool within = false;
};

/// Fixed pair on [0, 4] with ||f - g||_diam = 1 exactly.
SignalPair isometry_reference_pair();
std::vector<IsometryRow> asymptotic_isometry(const SignalPair& pair, std::span<const double> thetas);

// ---------------------------------------------------------------------------
// Left-continuity.

struct ProbeStep {
    int n = 0;
    double theta = 0.0;
    std::vector<double> times;
};

struct ContinuityReport {
    double theta0 = 0.0;
    std::vector<double> reference_times;
    /// theta0 (1 - 2^-n) and the control run theta0 (1 + 2^-n).
    std::vector<ProbeStep> below;
    std::vector<ProbeStep> above;
    std::optional<int> stabilized_at;
    bool monotone = false;
    bool from_below = false;
    double final_gap = 0.0;
    bool converges = false;
    std::size_t control_count = 0;
    bool control_drop = false;
};

ContinuityReport left_continuity_probe(const Signal& f, Threshold theta0, int n_steps);

/// 0 -> 1 at t = 1, back to 0 at t = 2, up to 1.5 at T = 3. At theta = 1 the
/// local maximum triggers an event that any larger threshold loses.
Signal local_max_signal();

// ---------------------------------------------------------------------------
// Schreiber conflation.

struct SchreiberWitness {
    double s12 = 0.0;
    double s34 = 0.0;
    double d12 = 0.0;
    double d34 = 0.0;
    std::vector<EventSequence> sequences;
};

/// eta1: +1 at k/n for k <= n/2, -1 after; eta2 = -eta1; eta3: (-1)^k at
/// k/n; eta4 = -eta3. All on [0, 1].
SchreiberWitness schreiber_witness(std::size_t n, const SchreiberParams& params);

// ---------------------------------------------------------------------------
// Norm certification.

struct FamilyConfig {
    std::vector<std::size_t> sizes{8, 16, 32, 64};
    std::size_t random_per_size = 4;
    std::uint64_t seed = 1;
    /// A supremum growing by this factor at the last doubling counts as
    /// unbounded (an infimum shrinking by it as vanishing).
    double growth_factor = 1.5;
};

struct Witness {
    std::string family;
    EventSequence sequence{1.0};
    double norm_value = 0.0;
    /// The condition's value on this sequence.
    double value = 0.0;
    std::optional<SweepResult> sweep;
};

struct ConditionResult {
    std::string name;
    bool holds = false;
    double estimate = 0.0;
    /// Per size of the ladder.
    std::vector<double> ladder;
    Witness witness;
};

struct CertificationReport {
    std::string norm;
    ConditionResult alt;
    ConditionResult same_sign;
    ConditionResult sweep;
    bool equivalent = false;
};

CertificationReport certify_norm(NormKind kind, const FamilyConfig& config = {});
/// Recomputes a witness' condition value from its sequence.
double reevaluate(NormKind kind, const ConditionResult& condition);

} // namespace sodkit
