#include "sodkit/structure.hpp"

#include "sodkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sodkit {

namespace {

void require_units(std::span<const double> values, bool zeros_allowed, const char* what) {
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double v = values[k];
        if (v == 1.0 || v == -1.0 || (zeros_allowed && v == 0.0)) {
            continue;
        }
        throw DomainError(std::string(what) + ": value " + std::to_string(v) + " at index " + std::to_string(k) +
                          " is not a unit amplitude");
    }
}

std::vector<double> prefix_sums(std::span<const double> values) {
    std::vector<double> p(values.size() + 1, 0.0);
    for (std::size_t k = 0; k < values.size(); ++k) {
        p[k + 1] = p[k] + values[k];
    }
    return p;
}

struct IndexInterval {
    std::size_t first;
    std::size_t last;
    double sum;
};

// MMD intervals on index ranges, computed from one prefix array so the
// comparisons against r are exact for integer amplitudes.
std::vector<IndexInterval> mmd_index_intervals(std::span<const double> values, double& r_out) {
    const auto p = prefix_sums(values);
    const double r = *std::max_element(p.begin(), p.end()) - *std::min_element(p.begin(), p.end());
    r_out = r;
    std::vector<IndexInterval> out;
    std::size_t start = 0;
    while (start < values.size()) {
        double lo = p[start];
        double hi = p[start];
        std::size_t b = values.size();
        for (std::size_t j = start; j < values.size(); ++j) {
            lo = std::min(lo, p[j + 1]);
            hi = std::max(hi, p[j + 1]);
            if (hi - lo >= r) {
                b = j;
                break;
            }
        }
        if (b == values.size()) {
            break;
        }
        std::size_t a = b;
        for (std::size_t i = b + 1; i-- > start;) {
            if (std::fabs(p[b + 1] - p[i]) >= r) {
                a = i;
                break;
            }
        }
        out.push_back({a, b, p[b + 1] - p[a]});
        start = b + 1;
    }
    return out;
}

bool is_opener(double v, Pattern p) {
    return p == Pattern::plus_minus ? v > 0.0 : v < 0.0;
}

} // namespace

EventSequence DenseEvents::sparse() const {
    std::vector<double> t;
    std::vector<double> v;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (values[k] != 0.0) {
            t.push_back(times[k]);
            v.push_back(values[k]);
        }
    }
    return EventSequence(horizon, std::move(t), std::move(v));
}

std::size_t DenseEvents::nonzero_count() const {
    return static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [](double v) { return v != 0.0; }));
}

DenseEvents to_dense(const EventSequence& eta) {
    return {eta.horizon(), {eta.times().begin(), eta.times().end()}, {eta.values().begin(), eta.values().end()}};
}

MmdDecomposition mmd_intervals(const EventSequence& eta) {
    if (eta.empty()) {
        throw DomainError("mmd_intervals: empty event sequence");
    }
    MmdDecomposition d;
    for (const auto& iv : mmd_index_intervals(eta.values(), d.discrepancy)) {
        d.intervals.push_back({eta.times()[iv.first], eta.times()[iv.last], iv.first, iv.last, iv.sum});
    }
    return d;
}

ChainDecomposition chain_decompose(const EventSequence& eta) {
    if (eta.empty()) {
        throw DomainError("chain_decompose: empty event sequence");
    }
    require_units(eta.values(), false, "chain_decompose");

    DenseEvents stage = to_dense(eta);
    std::vector<DenseEvents> reversed{stage};
    for (;;) {
        std::vector<std::size_t> support;
        std::vector<double> compact;
        for (std::size_t k = 0; k < stage.values.size(); ++k) {
            if (stage.values[k] != 0.0) {
                support.push_back(k);
                compact.push_back(stage.values[k]);
            }
        }
        if (compact.empty()) {
            break;
        }
        double r = 0.0;
        for (const auto& iv : mmd_index_intervals(compact, r)) {
            stage.values[support[iv.first]] = 0.0;
        }
        reversed.push_back(stage);
    }
    std::reverse(reversed.begin(), reversed.end());
    return {std::move(reversed)};
}

std::vector<std::pair<std::size_t, std::size_t>> transcription_pairs(std::span<const double> values, Pattern p) {
    // Leftmost-first removal closes pairs in the same order as a stack scan:
    // unmatched openers left of the scan position never face a closer.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<std::size_t> stack;
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double v = values[k];
        if (v == 0.0) {
            continue;
        }
        if (is_opener(v, p)) {
            stack.push_back(k);
        } else if (!stack.empty()) {
            pairs.emplace_back(stack.back(), k);
            stack.pop_back();
        }
    }
    return pairs;
}

DenseEvents transcribe(const DenseEvents& eta, Pattern p, std::size_t n) {
    require_units(eta.values, true, "transcribe");
    DenseEvents out = eta;
    auto& v = out.values;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t prev = v.size();
        bool applied = false;
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (v[k] == 0.0) {
                continue;
            }
            if (prev != v.size() && is_opener(v[prev], p) && !is_opener(v[k], p)) {
                v[prev] = 0.0;
                v[k] = 0.0;
                applied = true;
                break;
            }
            prev = k;
        }
        if (!applied) {
            break;
        }
    }
    return out;
}

std::size_t transcription_depth(const DenseEvents& eta, Pattern p) {
    require_units(eta.values, true, "transcription_depth");
    return transcription_pairs(eta.values, p).size();
}

SweepResult transcription_sweep(const EventSequence& eta, NormKind kind) {
    if (eta.size() > kSweepLimit) {
        throw SizeGuardError("transcription_sweep: " + std::to_string(eta.size()) + " events exceed the limit of " +
                             std::to_string(kSweepLimit));
    }
    require_units(eta.values(), false, "transcription_sweep");
    const auto values = eta.values();
    SweepResult best;
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = i; j < values.size(); ++j) {
            x.assign(values.begin() + static_cast<std::ptrdiff_t>(i), values.begin() + static_cast<std::ptrdiff_t>(j) + 1);
            const auto outer = transcription_pairs(x, Pattern::plus_minus);
            for (std::size_t m = 0; m <= outer.size(); ++m) {
                if (m > 0) {
                    x[outer[m - 1].first] = 0.0;
                    x[outer[m - 1].second] = 0.0;
                }
                const auto inner = transcription_pairs(x, Pattern::minus_plus);
                y = x;
                for (std::size_t n = 0; n <= inner.size(); ++n) {
                    if (n > 0) {
                        y[inner[n - 1].first] = 0.0;
                        y[inner[n - 1].second] = 0.0;
                    }
                    const double value = norm(kind, y);
                    if (value > best.value) {
                        best = {value, i, j, m, n};
                    }
                }
            }
        }
    }
    return best;
}

double sweep_witness_value(const EventSequence& eta, NormKind kind, const SweepResult& w) {
    if (eta.empty()) {
        return 0.0;
    }
    DenseEvents d = to_dense(restrict_indices(eta, w.first, w.last));
    d = transcribe(transcribe(d, Pattern::plus_minus, w.m), Pattern::minus_plus, w.n);
    return norm(kind, d.values);
}

DenseEvents pi_map(const EventSequence& eta) {
    if (eta.empty()) {
        throw DomainError("pi_map: empty event sequence");
    }
    require_units(eta.values(), false, "pi_map");
    const auto mmd = mmd_intervals(eta);
    const auto& first = mmd.intervals.front();
    DenseEvents d = to_dense(restrict_indices(eta, first.first, first.last));
    return transcribe(transcribe(d, Pattern::plus_minus), Pattern::minus_plus);
}

} // namespace sodkit
